#pragma once

#include <string>

namespace ordo {

// Whole-file text helpers; throw ordo::Error on I/O failure.
std::string read_file(const std::string& path);
void        write_file(const std::string& path, const std::string& content);
bool        file_exists(const std::string& path);
void        append_file(const std::string& path, const std::string& content);

} // namespace ordo
