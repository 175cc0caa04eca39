#pragma once

// Small formatting and file helpers shared by the exporters.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lexevo {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Fixed-point text with `decimals` digits, "C"-locale, no "-0.00".
std::string format_fixed(double value, int decimals);

/// Integer with comma thousands separators: 4590 -> "4,590".
std::string format_thousands(std::int64_t value);

double parse_double(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// 64-bit FNV-1a, printed as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Splits on '\t' without trimming.
std::vector<std::string> split_tabs(std::string_view line);

/// Splits into lines on '\n', dropping a trailing empty line and any '\r'.
std::vector<std::string> split_lines(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace lexevo
