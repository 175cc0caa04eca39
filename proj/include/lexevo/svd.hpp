#pragma once

#include <Eigen/Core>

namespace lexevo {

/// Thin SVD A = U diag(s) V^T with s sorted descending.
struct SvdResult {
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd u;  // m x r
  Eigen::MatrixXd v;  // n x r
};

/// One-sided (Hestenes) Jacobi SVD. Accurate to working precision for the
/// small singular values CA cares about; sweep order is fixed, so results
/// are bit-reproducible. Columns of U/V paired with zero singular values
/// are unspecified.
SvdResult jacobi_svd(const Eigen::MatrixXd& a, int max_sweeps = 80);

}  // namespace lexevo
