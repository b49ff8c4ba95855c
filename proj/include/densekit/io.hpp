#pragma once

#include <string>

namespace densekit {

// Writes via a sibling temp file and renames into place, so readers never
// observe a partially written output.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path, const std::string& module);

} // namespace densekit
