#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace sparse_expand::io {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Shortest text form that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view s);

// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 14695981039346656037ull);

}  // namespace sparse_expand::io
