#pragma once

#include <string>
#include <vector>

namespace ordo {

// Collected while reading an input file. In strict mode every warning is
// promoted to a ParseError at the point it would have been recorded.
struct ParseDiagnostics {
    struct Warning {
        int         line;
        std::string message;
    };
    std::vector<Warning> warnings;
    bool                 strict = false;
};

} // namespace ordo
