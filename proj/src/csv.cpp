#include "lexevo/csv.hpp"

#include "lexevo/error.hpp"

namespace lexevo::csv {

std::vector<Record> read_records(std::string_view text) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t line = 1;
  std::size_t quote_line = 0;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      if (c == '\n') ++line;
      field.push_back(c);
      ++i;
      continue;
    }
    if (c == '"' && field.empty() && !field_was_quoted) {
      in_quotes = true;
      field_was_quoted = true;
      quote_line = line;
      ++i;
      continue;
    }
    if (c == ',') {
      end_field();
      ++i;
      continue;
    }
    if (c == '\n' || (c == '\r' && i + 1 < n && text[i + 1] == '\n')) {
      const bool blank = current.fields.empty() && field.empty() && !field_was_quoted;
      if (blank) {
        field.clear();
      } else {
        end_field();
        records.push_back(std::move(current));
      }
      current = Record{};
      i += (c == '\r') ? 2 : 1;
      ++line;
      current.line = line;
      continue;
    }
    field.push_back(c);
    ++i;
  }
  if (in_quotes) {
    throw Error(ErrorCode::parse,
                "unterminated quoted field starting on line " + std::to_string(quote_line));
  }
  if (!current.fields.empty() || !field.empty() || field_was_quoted) {
    end_field();
    records.push_back(std::move(current));
  }
  return records;
}

std::string quote_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string write_row(const Row& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += quote_field(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace lexevo::csv
