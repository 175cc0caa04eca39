#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lexevo {

enum class ErrorCode {
  config,             // bad configuration or command-line values
  argument,           // caller passed an out-of-range argument
  dependency,         // a stage ran before its upstream producer
  schema,             // CSV header does not match the column mapping
  encoding,           // input is not valid UTF-8
  parse,              // structurally malformed input
  io,                 // file could not be read or written
  consistency,        // cross-structure mismatch (ids, labels)
  empty_matrix,       // every row or column was pruned
  degenerate,         // statistic undefined for the given data
  insufficient_data,  // too few points for the requested fit
  empty_period,       // period holds no usable documents
  shape,              // vector/matrix length mismatch
  lookup,             // unknown label
  layout,             // figure cannot be laid out on the canvas
  dimensionality,     // model has too few retained dimensions
  internal,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Process exit status for an error: 1 validation, 2 data, 3 internal.
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lexevo
