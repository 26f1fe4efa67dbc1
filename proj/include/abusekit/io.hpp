#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace abusekit::io {

std::vector<std::string> read_lines(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view content);

// Minimal CSV splitting: no quoting, fields may not contain commas. All the
// file formats here are machine-generated identifiers and numbers.
std::vector<std::string> split_csv(std::string_view line);

std::string join_csv(const std::vector<std::string>& fields);

// Shortest decimal form that round-trips a double.
std::string format_double(double v);

}  // namespace abusekit::io
