#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace swingcount {

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal text that parses back to the same double.
std::string format_shortest(double value);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

}  // namespace swingcount
