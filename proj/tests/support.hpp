#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.
// Nothing here calls into the library code it is used to check.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace lexevo::testkit {

inline std::filesystem::path source_dir() { return LEXEVO_SOURCE_DIR; }
inline std::filesystem::path data_path(const std::string& name) { return source_dir() / "data" / name; }
inline std::filesystem::path golden_path(const std::string& name) { return source_dir() / "tests" / "golden" / name; }

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lexevo-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Dense CA from the eigendecomposition of S^T S.
struct CaOracle {
  Eigen::VectorXd row_mass, col_mass;
  std::vector<double> singular_values;
  Eigen::MatrixXd row_principal, col_principal;  // all non-trivial dims
  double chi2_over_n = 0.0;
};

inline CaOracle ca_oracle(const Eigen::MatrixXd& f) {
  CaOracle o;
  const double n = f.sum();
  const Eigen::MatrixXd p = f / n;
  o.row_mass = p.rowwise().sum();
  o.col_mass = p.colwise().sum().transpose();

  double chi2 = 0.0;
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (Eigen::Index j = 0; j < f.cols(); ++j) {
      const double e = f.row(i).sum() * f.col(j).sum() / n;
      chi2 += (f(i, j) - e) * (f(i, j) - e) / e;
    }
  }
  o.chi2_over_n = chi2 / n;

  Eigen::MatrixXd s(f.rows(), f.cols());
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (Eigen::Index j = 0; j < f.cols(); ++j) {
      s(i, j) = (p(i, j) - o.row_mass(i) * o.col_mass(j)) / std::sqrt(o.row_mass(i) * o.col_mass(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.transpose() * s);
  std::vector<std::pair<double, Eigen::Index>> order;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) order.emplace_back(eig.eigenvalues()(k), k);
  std::sort(order.begin(), order.end(), [](auto a, auto b) { return a.first > b.first; });

  std::vector<Eigen::Index> keep;
  for (auto [value, k] : order) {
    const double sv = std::sqrt(std::max(value, 0.0));
    if (sv < 1e-7) break;
    o.singular_values.push_back(sv);
    keep.push_back(k);
  }
  const auto dims = static_cast<Eigen::Index>(keep.size());
  o.col_principal.resize(f.cols(), dims);
  o.row_principal.resize(f.rows(), dims);
  for (Eigen::Index d = 0; d < dims; ++d) {
    const Eigen::VectorXd v = eig.eigenvectors().col(keep[static_cast<std::size_t>(d)]);
    const double sv = o.singular_values[static_cast<std::size_t>(d)];
    const Eigen::VectorXd u = s * v / sv;
    for (Eigen::Index j = 0; j < f.cols(); ++j) o.col_principal(j, d) = v(j) / std::sqrt(o.col_mass(j)) * sv;
    for (Eigen::Index i = 0; i < f.rows(); ++i) o.row_principal(i, d) = u(i) / std::sqrt(o.row_mass(i)) * sv;
  }
  return o;
}

// Random integer table with strictly positive margins and at least two
// distinct non-trivial singular values.
inline Eigen::MatrixXd random_table(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> cell(0, 9);
  while (true) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) m(i, j) = cell(rng);
    }
    if ((m.rowwise().sum().array() <= 0).any() || (m.colwise().sum().array() <= 0).any()) continue;
    const auto o = ca_oracle(m);
    const auto limit = static_cast<std::size_t>(std::min(rows, cols) - 1);
    if (o.singular_values.size() < limit) continue;
    bool separated = true;
    for (std::size_t k = 0; k + 1 < o.singular_values.size(); ++k) {
      if (o.singular_values[k] - o.singular_values[k + 1] < 1e-4) separated = false;
    }
    if (separated) return m;
  }
}

// Plain 3x3 normal equations for y = c2 x^2 + c1 x + c0 via Cramer's rule.
inline std::array<double, 3> normal_equations_fit(const std::vector<double>& x, const std::vector<double>& y) {
  long double s[5] = {0, 0, 0, 0, 0};
  long double t[3] = {0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    long double p = 1;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) t[k] += p * y[i];
      p *= x[i];
    }
  }
  // unknowns ordered (c0, c1, c2)
  const long double a[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
  auto det = [](const long double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const long double d = det(a);
  std::array<double, 3> c{};
  for (int col = 0; col < 3; ++col) {
    long double m[3][3];
    for (int r = 0; r < 3; ++r) {
      for (int k = 0; k < 3; ++k) m[r][k] = (k == col) ? t[r] : a[r][k];
    }
    c[static_cast<std::size_t>(col)] = static_cast<double>(det(m) / d);
  }
  return {c[2], c[1], c[0]};
}

struct Rect {
  double x0, y0, x1, y1;
};

inline std::size_t count_overlaps(const std::vector<Rect>& boxes) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      const bool apart = boxes[i].x1 <= boxes[j].x0 || boxes[j].x1 <= boxes[i].x0 || boxes[i].y1 <= boxes[j].y0 ||
                         boxes[j].y1 <= boxes[i].y0;
      if (!apart) ++hits;
    }
  }
  return hits;
}

}  // namespace lexevo::testkit
