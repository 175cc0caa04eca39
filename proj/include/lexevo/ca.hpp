#pragma once

// Correspondence analysis of a non-negative table: masses, SVD of the
// standardized residuals, coordinates, inertia and supplementary points.

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lexevo/corpus.hpp"
#include "lexevo/text.hpp"

namespace lexevo {

/// Singular values below this are treated as zero and their dimensions dropped.
inline constexpr double kSingularValueFloor = 1e-12;
inline constexpr std::size_t kDefaultCaDims = 2;
inline constexpr std::string_view kSignConvention = "max-abs-column-standard-positive/v1";

struct CaInput {
  Eigen::MatrixXd matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  static CaInput from_counts(const DocTermMatrix& dtm);
  static CaInput from_weighted(const WeightedMatrix& weighted);

  /// Copy without all-zero rows and columns.
  CaInput pruned() const;

  /// Throws Error(consistency) listing offending rows/columns when the
  /// table has negative or non-finite entries, zero margins, mismatched
  /// or duplicate labels, or a zero grand total.
  void validate() const;
};

enum class Side { row, column };

class CaModel {
 public:
  struct Parts {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Eigen::VectorXd row_masses;
    Eigen::VectorXd col_masses;
    std::vector<double> singular_values;  // every non-trivial value, descending
    Eigen::MatrixXd row_standard;         // rows x dims
    Eigen::MatrixXd col_standard;         // cols x dims
  };

  CaModel() = default;
  /// Derives principal coordinates and inertia from the parts.
  explicit CaModel(Parts parts);

  std::size_t dims() const noexcept { return static_cast<std::size_t>(parts_.row_standard.cols()); }
  std::size_t rows() const noexcept { return parts_.row_labels.size(); }
  std::size_t cols() const noexcept { return parts_.col_labels.size(); }

  const std::vector<std::string>& labels(Side side) const noexcept {
    return side == Side::row ? parts_.row_labels : parts_.col_labels;
  }
  const Eigen::VectorXd& masses(Side side) const noexcept {
    return side == Side::row ? parts_.row_masses : parts_.col_masses;
  }
  const Eigen::MatrixXd& standard(Side side) const noexcept {
    return side == Side::row ? parts_.row_standard : parts_.col_standard;
  }
  const Eigen::MatrixXd& principal(Side side) const noexcept {
    return side == Side::row ? row_principal_ : col_principal_;
  }
  const std::vector<double>& singular_values() const noexcept { return parts_.singular_values; }
  double inertia_total() const noexcept { return inertia_total_; }
  const std::vector<double>& inertia_share() const noexcept { return inertia_share_; }

  /// Index of `label` on `side`; throws Error(lookup) if absent.
  std::size_t index_of(Side side, std::string_view label) const;

  /// Share of `dim`'s inertia contributed by point `index`.
  double contribution(Side side, std::size_t index, std::size_t dim) const;

 private:
  Parts parts_;
  Eigen::MatrixXd row_principal_;
  Eigen::MatrixXd col_principal_;
  double inertia_total_ = 0.0;
  std::vector<double> inertia_share_;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::unordered_map<std::string, std::size_t> col_index_;
};

/// Requires 1 <= dims <= min(rows, cols) - 1; keeps at most `dims` of the
/// dimensions whose singular value clears kSingularValueFloor.
CaModel compute_ca(const CaInput& input, std::size_t dims = kDefaultCaDims);

struct SupplementaryProjection {
  std::string label;
  std::vector<double> profile;  // normalized to sum 1
  std::vector<double> coords;   // principal coordinates, one per dimension
};

/// Projects a row profile over the model's columns through the transition
/// formula: coords = profile^T * column standard coordinates.
SupplementaryProjection project_supplementary(const CaModel& model, std::span<const double> profile,
                                              std::string label);

struct YearProfile {
  int year = 0;
  std::vector<double> profile;  // column sums over the year's documents
};

struct YearProfiles {
  std::vector<YearProfile> profiles;  // ascending by year
  std::vector<int> omitted_years;     // years whose profile sums to zero
};

/// Throws Error(consistency) when a DTM row id has no corpus document.
YearProfiles aggregate_year_profiles(const DocTermMatrix& dtm, const Corpus& corpus);

/// Re-indexes a profile over `terms` onto the model's columns by label;
/// terms the model lacks are dropped.
std::vector<double> align_to_columns(const CaModel& model, std::span<const std::string> terms,
                                     std::span<const double> profile);

/// Euclidean distance between principal coordinates.
double point_distance(const CaModel& model, Side side, std::string_view label_a,
                      std::string_view label_b);

struct Neighbor {
  std::string label;
  double distance = 0.0;
};

using Anchor = std::variant<std::string, std::vector<double>>;

/// The `k` closest points on `side`, ascending by distance, ties by label.
std::vector<Neighbor> nearest_points(const CaModel& model, Side side, const Anchor& anchor,
                                     std::size_t k);

/// TSV: kind, label, mass, dim1..dimK (principal), contribution_dim1..K.
std::string format_coordinates_tsv(const CaModel& model);

/// JSON manifest: singular values, inertia, shares, dims, sign convention.
std::string format_model_manifest(const CaModel& model);

/// Rebuilds a model from format_coordinates_tsv + format_model_manifest output.
CaModel parse_model(std::string_view coordinates_tsv, std::string_view manifest_json);

}  // namespace lexevo
