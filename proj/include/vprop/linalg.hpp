#pragma once

#include <Eigen/Core>

#include "vprop/errors.hpp"

namespace vprop {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

bool all_finite(const Vec& v);
bool all_finite(const Mat& m);
void require_finite(const Vec& v, const char* what);
void require_finite(const Mat& m, const char* what);

// Symmetry to within `rtol` relative to the largest entry magnitude.
bool is_symmetric(const Mat& a, double rtol = 1e-12);
void require_symmetric(const Mat& a, const char* what);

// Lower-triangular L with L*L^T = a. Pivots at or below
// 1e-12 * max(diag(a)) raise NotPdError carrying the pivot index.
Mat cholesky_factor(const Mat& a);

// Solves (L*L^T) x = b for a factor produced by cholesky_factor.
Vec cholesky_solve(const Mat& chol_lower, const Vec& b);

// log det(L*L^T) from the factor.
double cholesky_log_det(const Mat& chol_lower);

}  // namespace vprop
