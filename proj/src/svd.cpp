#include "lexevo/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace lexevo {
namespace {

// Orthogonalizes the columns of `work` (m >= n) in place, accumulating the
// rotations into `v`.
void orthogonalize_columns(Eigen::MatrixXd& work, Eigen::MatrixXd& v, int max_sweeps) {
  constexpr double tol = 1e-15;
  const Eigen::Index n = work.cols();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = work.col(p).squaredNorm();
        const double beta = work.col(q).squaredNorm();
        const double gamma = work.col(p).dot(work.col(q));
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index i = 0; i < work.rows(); ++i) {
          const double wp = work(i, p);
          const double wq = work(i, q);
          work(i, p) = c * wp - s * wq;
          work(i, q) = s * wp + c * wq;
        }
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) return;
  }
}

}  // namespace

SvdResult jacobi_svd(const Eigen::MatrixXd& a, int max_sweeps) {
  const bool transposed = a.rows() < a.cols();
  Eigen::MatrixXd work = transposed ? Eigen::MatrixXd(a.transpose()) : a;
  const Eigen::Index n = work.cols();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  orthogonalize_columns(work, v, max_sweeps);

  Eigen::VectorXd sigma(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sigma(k) = work.col(k).norm();
    if (sigma(k) > 0.0) work.col(k) /= sigma(k);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return sigma(x) > sigma(y); });

  SvdResult out;
  out.singular_values.resize(n);
  Eigen::MatrixXd left(work.rows(), n);
  Eigen::MatrixXd right(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.singular_values(k) = sigma(src);
    left.col(k) = work.col(src);
    right.col(k) = v.col(src);
  }
  if (transposed) {
    out.u = std::move(right);
    out.v = std::move(left);
  } else {
    out.u = std::move(left);
    out.v = std::move(right);
  }
  return out;
}

}  // namespace lexevo
