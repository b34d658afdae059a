#pragma once

#include <string>

namespace coact {

// Reads a whole file; transparently inflates when the path ends in .gz or the
// content starts with the gzip magic. Throws Error(Io) on failure.
std::string read_file_maybe_gzip(const std::string& path);

void write_file(const std::string& path, const std::string& content);

}  // namespace coact
