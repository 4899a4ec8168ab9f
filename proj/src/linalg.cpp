#include "vprop/linalg.hpp"

#include <cmath>
#include <string>

namespace vprop {

bool all_finite(const Vec& v) { return v.allFinite(); }
bool all_finite(const Mat& m) { return m.allFinite(); }

void require_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw Error(std::string(what) + ": non-finite entries");
}

void require_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string(what) + ": non-finite entries");
}

bool is_symmetric(const Mat& a, double rtol) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.cwiseAbs().maxCoeff();
  const double tol = rtol * (scale > 0.0 ? scale : 1.0);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

void require_symmetric(const Mat& a, const char* what) {
  if (!is_symmetric(a))
    throw Error(std::string(what) + ": matrix is not symmetric");
}

Mat cholesky_factor(const Mat& a) {
  require_symmetric(a, "cholesky_factor");
  const Eigen::Index n = a.rows();
  const double max_diag = n > 0 ? a.diagonal().maxCoeff() : 0.0;
  const double pivot_tol = 1e-12 * max_diag;

  Mat chol = Mat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= chol(j, k) * chol(j, k);
    if (d <= pivot_tol || d <= 0.0)
      throw NotPdError("cholesky_factor", static_cast<int>(j));
    chol(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= chol(i, k) * chol(j, k);
      chol(i, j) = v / chol(j, j);
    }
  }
  return chol;
}

Vec cholesky_solve(const Mat& chol_lower, const Vec& b) {
  const Eigen::Index n = chol_lower.rows();
  Vec x = b;
  // forward: L y = b
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = x(i);
    for (Eigen::Index k = 0; k < i; ++k) v -= chol_lower(i, k) * x(k);
    x(i) = v / chol_lower(i, i);
  }
  // backward: L^T x = y
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double v = x(i);
    for (Eigen::Index k = i + 1; k < n; ++k) v -= chol_lower(k, i) * x(k);
    x(i) = v / chol_lower(i, i);
  }
  return x;
}

double cholesky_log_det(const Mat& chol_lower) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < chol_lower.rows(); ++i)
    acc += std::log(chol_lower(i, i));
  return 2.0 * acc;
}

}  // namespace vprop
