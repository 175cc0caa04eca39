#include "lexevo/error.hpp"

namespace lexevo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::config: return "config";
    case ErrorCode::argument: return "argument";
    case ErrorCode::dependency: return "dependency";
    case ErrorCode::schema: return "schema";
    case ErrorCode::encoding: return "encoding";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
    case ErrorCode::consistency: return "consistency";
    case ErrorCode::empty_matrix: return "empty-matrix";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::insufficient_data: return "insufficient-data";
    case ErrorCode::empty_period: return "empty-period";
    case ErrorCode::shape: return "shape";
    case ErrorCode::lookup: return "lookup";
    case ErrorCode::layout: return "layout";
    case ErrorCode::dimensionality: return "dimensionality";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::config:
    case ErrorCode::dependency:
      return 1;
    case ErrorCode::schema:
    case ErrorCode::encoding:
    case ErrorCode::parse:
    case ErrorCode::io:
    case ErrorCode::consistency:
    case ErrorCode::empty_matrix:
    case ErrorCode::degenerate:
    case ErrorCode::insufficient_data:
    case ErrorCode::empty_period:
    case ErrorCode::layout:
    case ErrorCode::dimensionality:
      return 2;
    case ErrorCode::argument:
    case ErrorCode::shape:
    case ErrorCode::lookup:
    case ErrorCode::internal:
      return 3;
  }
  return 3;
}

}  // namespace lexevo
