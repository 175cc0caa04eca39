#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace lexevo {

/// Compressed sparse rows with sorted column indices in each row.
template <class T>
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_index;
  std::vector<T> values;

  std::size_t nnz() const noexcept { return values.size(); }

  std::span<const std::size_t> row_columns(std::size_t row) const {
    return {col_index.data() + row_ptr[row], row_ptr[row + 1] - row_ptr[row]};
  }
  std::span<const T> row_values(std::size_t row) const {
    return {values.data() + row_ptr[row], row_ptr[row + 1] - row_ptr[row]};
  }

  T at(std::size_t row, std::size_t col) const {
    const auto columns = row_columns(row);
    const auto it = std::lower_bound(columns.begin(), columns.end(), col);
    if (it == columns.end() || *it != col) return T{};
    return values[row_ptr[row] + static_cast<std::size_t>(it - columns.begin())];
  }

  /// Appends one row; `entries` must be sorted by column.
  template <class Entries>
  void push_row(const Entries& entries) {
    for (const auto& [col, value] : entries) {
      col_index.push_back(col);
      values.push_back(value);
    }
    row_ptr.push_back(values.size());
    ++rows;
  }
};

}  // namespace lexevo
