#pragma once

// RFC 4180 reading and minimal-quoting writing.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexevo::csv {

using Row = std::vector<std::string>;

struct Record {
  std::size_t line = 0;  // 1-based physical line where the record starts
  Row fields;
};

/// Splits `text` into records. Accepts "\n" and "\r\n" terminators and
/// skips blank lines. Throws Error(parse) on an unterminated quoted field.
std::vector<Record> read_records(std::string_view text);

/// Quotes only when the field holds ',', '"', '\r' or '\n'.
std::string quote_field(std::string_view field);

/// One record terminated by "\n".
std::string write_row(const Row& fields);

}  // namespace lexevo::csv
