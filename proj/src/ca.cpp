#include "lexevo/ca.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "lexevo/error.hpp"
#include "lexevo/io.hpp"
#include "lexevo/svd.hpp"

namespace lexevo {
namespace {

std::string join_labels(const std::vector<std::string>& labels, std::size_t limit = 10) {
  std::string out;
  for (std::size_t i = 0; i < labels.size() && i < limit; ++i) {
    if (i > 0) out += ", ";
    out += labels[i];
  }
  if (labels.size() > limit) out += ", ... (" + std::to_string(labels.size()) + " total)";
  return out;
}

void check_unique(const std::vector<std::string>& labels, const char* side) {
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::consistency, std::string("duplicate ") + side + " label '" + label + "'");
    }
  }
}

// Flips each dimension so its largest-magnitude column standard coordinate
// is positive. Near-ties go to the lexicographically first label.
void canonicalize_signs(Eigen::MatrixXd& row_std, Eigen::MatrixXd& col_std,
                        const std::vector<std::string>& col_labels) {
  for (Eigen::Index k = 0; k < col_std.cols(); ++k) {
    const double max_abs = col_std.col(k).cwiseAbs().maxCoeff();
    const double cutoff = max_abs * (1.0 - 1e-9);
    Eigen::Index pick = -1;
    for (Eigen::Index j = 0; j < col_std.rows(); ++j) {
      if (std::abs(col_std(j, k)) < cutoff) continue;
      if (pick < 0 || col_labels[static_cast<std::size_t>(j)] < col_labels[static_cast<std::size_t>(pick)]) {
        pick = j;
      }
    }
    if (pick >= 0 && col_std(pick, k) < 0.0) {
      col_std.col(k) *= -1.0;
      row_std.col(k) *= -1.0;
    }
  }
}

}  // namespace

CaInput CaInput::from_counts(const DocTermMatrix& dtm) {
  CaInput input{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dtm.rows()),
                                      static_cast<Eigen::Index>(dtm.cols())),
                dtm.row_ids, dtm.terms};
  for (std::size_t i = 0; i < dtm.rows(); ++i) {
    const auto cols = dtm.counts.row_columns(i);
    const auto vals = dtm.counts.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      input.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[k])) =
          static_cast<double>(vals[k]);
    }
  }
  return input;
}

CaInput CaInput::from_weighted(const WeightedMatrix& weighted) {
  CaInput input{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(weighted.row_ids.size()),
                                      static_cast<Eigen::Index>(weighted.terms.size())),
                weighted.row_ids, weighted.terms};
  for (std::size_t i = 0; i < weighted.row_ids.size(); ++i) {
    const auto cols = weighted.values.row_columns(i);
    const auto vals = weighted.values.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      input.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[k])) = vals[k];
    }
  }
  return input;
}

CaInput CaInput::pruned() const {
  std::vector<Eigen::Index> keep_rows;
  std::vector<Eigen::Index> keep_cols;
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    if (matrix.row(i).sum() > 0.0) keep_rows.push_back(i);
  }
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    if (matrix.col(j).sum() > 0.0) keep_cols.push_back(j);
  }
  CaInput out;
  out.matrix.resize(static_cast<Eigen::Index>(keep_rows.size()), static_cast<Eigen::Index>(keep_cols.size()));
  for (std::size_t r = 0; r < keep_rows.size(); ++r) {
    out.row_labels.push_back(row_labels[static_cast<std::size_t>(keep_rows[r])]);
    for (std::size_t c = 0; c < keep_cols.size(); ++c) {
      out.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = matrix(keep_rows[r], keep_cols[c]);
    }
  }
  for (auto j : keep_cols) out.col_labels.push_back(col_labels[static_cast<std::size_t>(j)]);
  return out;
}

void CaInput::validate() const {
  if (static_cast<std::size_t>(matrix.rows()) != row_labels.size() ||
      static_cast<std::size_t>(matrix.cols()) != col_labels.size()) {
    throw Error(ErrorCode::consistency, "CA input labels do not match the matrix shape");
  }
  if (!matrix.allFinite() || (matrix.size() > 0 && matrix.minCoeff() < 0.0)) {
    throw Error(ErrorCode::consistency, "CA input must be finite and non-negative");
  }
  std::vector<std::string> zero_rows;
  std::vector<std::string> zero_cols;
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    if (matrix.row(i).sum() <= 0.0) zero_rows.push_back(row_labels[static_cast<std::size_t>(i)]);
  }
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    if (matrix.col(j).sum() <= 0.0) zero_cols.push_back(col_labels[static_cast<std::size_t>(j)]);
  }
  if (!zero_rows.empty() || !zero_cols.empty()) {
    std::string message = "CA input has empty margins;";
    if (!zero_rows.empty()) message += " rows: " + join_labels(zero_rows) + ";";
    if (!zero_cols.empty()) message += " columns: " + join_labels(zero_cols) + ";";
    throw Error(ErrorCode::consistency, message);
  }
  if (matrix.size() == 0 || matrix.sum() <= 0.0) {
    throw Error(ErrorCode::consistency, "CA input has a zero grand total");
  }
  check_unique(row_labels, "row");
  check_unique(col_labels, "column");
}

CaModel::CaModel(Parts parts) : parts_(std::move(parts)) {
  const auto dims = parts_.row_standard.cols();
  if (parts_.col_standard.cols() != dims ||
      static_cast<std::size_t>(dims) > parts_.singular_values.size() ||
      static_cast<std::size_t>(parts_.row_standard.rows()) != parts_.row_labels.size() ||
      static_cast<std::size_t>(parts_.col_standard.rows()) != parts_.col_labels.size() ||
      static_cast<std::size_t>(parts_.row_masses.size()) != parts_.row_labels.size() ||
      static_cast<std::size_t>(parts_.col_masses.size()) != parts_.col_labels.size()) {
    throw Error(ErrorCode::shape, "inconsistent CA model parts");
  }
  Eigen::VectorXd lambda(dims);
  for (Eigen::Index k = 0; k < dims; ++k) lambda(k) = parts_.singular_values[static_cast<std::size_t>(k)];
  row_principal_ = parts_.row_standard * lambda.asDiagonal();
  col_principal_ = parts_.col_standard * lambda.asDiagonal();

  for (double s : parts_.singular_values) inertia_total_ += s * s;
  for (double s : parts_.singular_values) {
    inertia_share_.push_back(inertia_total_ > 0.0 ? s * s / inertia_total_ : 0.0);
  }
  for (std::size_t i = 0; i < parts_.row_labels.size(); ++i) row_index_.emplace(parts_.row_labels[i], i);
  for (std::size_t j = 0; j < parts_.col_labels.size(); ++j) col_index_.emplace(parts_.col_labels[j], j);
}

std::size_t CaModel::index_of(Side side, std::string_view label) const {
  const auto& index = side == Side::row ? row_index_ : col_index_;
  const auto it = index.find(std::string(label));
  if (it == index.end()) {
    throw Error(ErrorCode::lookup, std::string("unknown ") + (side == Side::row ? "row" : "column") +
                                       " label '" + std::string(label) + "'");
  }
  return it->second;
}

double CaModel::contribution(Side side, std::size_t index, std::size_t dim) const {
  const double lambda = parts_.singular_values.at(dim);
  const double f = principal(side)(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(dim));
  return masses(side)(static_cast<Eigen::Index>(index)) * f * f / (lambda * lambda);
}

CaModel compute_ca(const CaInput& input, std::size_t dims) {
  input.validate();
  const auto n_rows = input.matrix.rows();
  const auto n_cols = input.matrix.cols();
  const auto max_dims = static_cast<std::size_t>(std::min(n_rows, n_cols)) - 1;
  if (dims < 1 || dims > max_dims) {
    throw Error(ErrorCode::argument, "dims must be in [1, " + std::to_string(max_dims) + "], got " +
                                         std::to_string(dims));
  }

  const Eigen::MatrixXd p = input.matrix / input.matrix.sum();
  const Eigen::VectorXd a = p.rowwise().sum();
  const Eigen::VectorXd b = p.colwise().sum().transpose();
  const Eigen::VectorXd a_isqrt = a.cwiseSqrt().cwiseInverse();
  const Eigen::VectorXd b_isqrt = b.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd residual = a_isqrt.asDiagonal() * (p - a * b.transpose()) * b_isqrt.asDiagonal();

  // TODO: swap in a truncated Lanczos SVD once corpora exceed a few
  // thousand documents; the dense Jacobi route is cubic in the short side.
  const SvdResult svd = jacobi_svd(residual);

  CaModel::Parts parts;
  parts.row_labels = input.row_labels;
  parts.col_labels = input.col_labels;
  parts.row_masses = a;
  parts.col_masses = b;
  for (Eigen::Index k = 0; k < svd.singular_values.size(); ++k) {
    if (svd.singular_values(k) < kSingularValueFloor) break;
    parts.singular_values.push_back(svd.singular_values(k));
  }
  const auto kept = static_cast<Eigen::Index>(std::min(dims, parts.singular_values.size()));
  parts.row_standard = a_isqrt.asDiagonal() * svd.u.leftCols(kept);
  parts.col_standard = b_isqrt.asDiagonal() * svd.v.leftCols(kept);
  canonicalize_signs(parts.row_standard, parts.col_standard, parts.col_labels);
  return CaModel(std::move(parts));
}

SupplementaryProjection project_supplementary(const CaModel& model, std::span<const double> profile,
                                              std::string label) {
  if (profile.size() != model.cols()) {
    throw Error(ErrorCode::shape, "profile has " + std::to_string(profile.size()) +
                                      " entries, model has " + std::to_string(model.cols()) + " columns");
  }
  double total = 0.0;
  for (double v : profile) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::argument, "profile entries must be finite and non-negative");
    }
    total += v;
  }
  if (total <= 0.0) throw Error(ErrorCode::argument, "profile for '" + label + "' is all zero");

  SupplementaryProjection out;
  out.label = std::move(label);
  out.profile.reserve(profile.size());
  for (double v : profile) out.profile.push_back(v / total);
  const Eigen::Map<const Eigen::VectorXd> normalized(out.profile.data(),
                                                     static_cast<Eigen::Index>(out.profile.size()));
  const Eigen::VectorXd coords = model.standard(Side::column).transpose() * normalized;
  out.coords.assign(coords.data(), coords.data() + coords.size());
  return out;
}

YearProfiles aggregate_year_profiles(const DocTermMatrix& dtm, const Corpus& corpus) {
  std::map<int, std::vector<double>> by_year;
  for (std::size_t i = 0; i < dtm.rows(); ++i) {
    const Document* doc = corpus.find(dtm.row_ids[i]);
    if (doc == nullptr) {
      throw Error(ErrorCode::consistency, "matrix row '" + dtm.row_ids[i] + "' has no corpus document");
    }
    auto& profile = by_year[doc->year];
    profile.resize(dtm.cols(), 0.0);
    const auto cols = dtm.counts.row_columns(i);
    const auto vals = dtm.counts.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) profile[cols[k]] += static_cast<double>(vals[k]);
  }
  YearProfiles out;
  for (auto& [year, profile] : by_year) {
    double total = 0.0;
    for (double v : profile) total += v;
    if (total > 0.0) {
      out.profiles.push_back({year, std::move(profile)});
    } else {
      out.omitted_years.push_back(year);
    }
  }
  return out;
}

std::vector<double> align_to_columns(const CaModel& model, std::span<const std::string> terms,
                                     std::span<const double> profile) {
  if (terms.size() != profile.size()) throw Error(ErrorCode::shape, "terms and profile lengths differ");
  std::vector<double> out(model.cols(), 0.0);
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t j = 0; j < model.cols(); ++j) position.emplace(model.labels(Side::column)[j], j);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (const auto it = position.find(terms[t]); it != position.end()) out[it->second] = profile[t];
  }
  return out;
}

double point_distance(const CaModel& model, Side side, std::string_view label_a,
                      std::string_view label_b) {
  const auto& coords = model.principal(side);
  const auto ia = static_cast<Eigen::Index>(model.index_of(side, label_a));
  const auto ib = static_cast<Eigen::Index>(model.index_of(side, label_b));
  return (coords.row(ia) - coords.row(ib)).norm();
}

std::vector<Neighbor> nearest_points(const CaModel& model, Side side, const Anchor& anchor,
                                     std::size_t k) {
  if (k < 1) throw Error(ErrorCode::argument, "k must be at least 1");
  const auto& coords = model.principal(side);
  Eigen::RowVectorXd origin;
  if (const auto* label = std::get_if<std::string>(&anchor)) {
    origin = coords.row(static_cast<Eigen::Index>(model.index_of(side, *label)));
  } else {
    const auto& point = std::get<std::vector<double>>(anchor);
    if (point.size() != model.dims()) {
      throw Error(ErrorCode::shape, "anchor has " + std::to_string(point.size()) + " coordinates, model has " +
                                        std::to_string(model.dims()) + " dimensions");
    }
    origin = Eigen::Map<const Eigen::RowVectorXd>(point.data(), static_cast<Eigen::Index>(point.size()));
  }
  const auto& labels = model.labels(side);
  std::vector<Neighbor> all;
  all.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    all.push_back({labels[i], (coords.row(static_cast<Eigen::Index>(i)) - origin).norm()});
  }
  const auto take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                    [](const Neighbor& x, const Neighbor& y) {
                      if (x.distance != y.distance) return x.distance < y.distance;
                      return x.label < y.label;
                    });
  all.resize(take);
  return all;
}

std::string format_coordinates_tsv(const CaModel& model) {
  const std::size_t dims = model.dims();
  std::string out = "kind\tlabel\tmass";
  for (std::size_t k = 1; k <= dims; ++k) out += "\tdim" + std::to_string(k);
  for (std::size_t k = 1; k <= dims; ++k) out += "\tcontribution_dim" + std::to_string(k);
  out += '\n';
  for (Side side : {Side::row, Side::column}) {
    const auto& labels = model.labels(side);
    const auto& coords = model.principal(side);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out += side == Side::row ? "row" : "column";
      out += '\t' + labels[i] + '\t' + format_double(model.masses(side)(static_cast<Eigen::Index>(i)));
      for (std::size_t k = 0; k < dims; ++k) {
        out += '\t' + format_double(coords(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      }
      for (std::size_t k = 0; k < dims; ++k) out += '\t' + format_double(model.contribution(side, i, k));
      out += '\n';
    }
  }
  return out;
}

std::string format_model_manifest(const CaModel& model) {
  nlohmann::json j;
  j["dims"] = model.dims();
  j["rows"] = model.rows();
  j["cols"] = model.cols();
  j["singular_values"] = model.singular_values();
  j["inertia_total"] = model.inertia_total();
  j["inertia_share"] = model.inertia_share();
  j["sign_convention"] = kSignConvention;
  return j.dump(2) + "\n";
}

CaModel parse_model(std::string_view coordinates_tsv, std::string_view manifest_json) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("CA manifest: ") + e.what());
  }
  const auto dims = manifest.at("dims").get<std::size_t>();
  CaModel::Parts parts;
  parts.singular_values = manifest.at("singular_values").get<std::vector<double>>();
  if (dims > parts.singular_values.size()) throw Error(ErrorCode::parse, "CA manifest dims exceed singular values");

  std::vector<std::vector<double>> rows;
  std::vector<std::vector<double>> cols;
  std::vector<double> row_mass;
  std::vector<double> col_mass;
  const auto lines = split_lines(coordinates_tsv);
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (lines[n].empty()) continue;
    const auto fields = split_tabs(lines[n]);
    if (fields.size() != 3 + 2 * dims) throw Error(ErrorCode::parse, "CA coordinates line " + std::to_string(n + 1));
    std::vector<double> point;
    for (std::size_t k = 0; k < dims; ++k) point.push_back(parse_double(fields[3 + k]));
    if (fields[0] == "row") {
      parts.row_labels.push_back(fields[1]);
      row_mass.push_back(parse_double(fields[2]));
      rows.push_back(std::move(point));
    } else if (fields[0] == "column") {
      parts.col_labels.push_back(fields[1]);
      col_mass.push_back(parse_double(fields[2]));
      cols.push_back(std::move(point));
    } else {
      throw Error(ErrorCode::parse, "CA coordinates: unknown kind '" + fields[0] + "'");
    }
  }
  auto to_standard = [&](const std::vector<std::vector<double>>& points) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(dims));
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t k = 0; k < dims; ++k) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = points[i][k] / parts.singular_values[k];
      }
    }
    return m;
  };
  parts.row_standard = to_standard(rows);
  parts.col_standard = to_standard(cols);
  parts.row_masses = Eigen::Map<Eigen::VectorXd>(row_mass.data(), static_cast<Eigen::Index>(row_mass.size()));
  parts.col_masses = Eigen::Map<Eigen::VectorXd>(col_mass.data(), static_cast<Eigen::Index>(col_mass.size()));
  return CaModel(std::move(parts));
}

}  // namespace lexevo
