#pragma once

#include <stdexcept>
#include <string>

namespace ordo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (DIMACS, smodels, weight files, manifests, CSV).
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what) : Error(format(line, what)), line_(line) {}
    [[nodiscard]] int line() const { return line_; }

private:
    static std::string format(int line, const std::string& what) {
        return "line " + std::to_string(line) + ": " + what;
    }
    int line_ = 0;
};

// Numeric format limits, e.g. the atom-id space is exhausted.
class FormatError : public Error {
public:
    using Error::Error;
};

// A brute-force oracle was asked to enumerate beyond its configured cap.
class CapError : public Error {
public:
    using Error::Error;
};

// An operation was called on input that violates its stated precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace ordo
