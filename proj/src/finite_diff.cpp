#include "vprop/finite_diff.hpp"

namespace vprop {

Vec fd_grad(const ScalarFn& f, const Vec& x, double h) {
  if (!(h > 0.0)) throw Error("fd_grad: h must be > 0");
  require_finite(x, "fd_grad");
  Vec g(x.size());
  Vec xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    const double fp = f(xp);
    xp(i) = x(i) - h;
    const double fm = f(xp);
    xp(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

Vec fd_hessian_diag(const ScalarFn& f, const Vec& x, double h) {
  if (!(h > 0.0)) throw Error("fd_hessian_diag: h must be > 0");
  require_finite(x, "fd_hessian_diag");
  const double f0 = f(x);
  Vec d(x.size());
  Vec xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    const double fp = f(xp);
    xp(i) = x(i) - h;
    const double fm = f(xp);
    xp(i) = x(i);
    d(i) = (fp - 2.0 * f0 + fm) / (h * h);
  }
  return d;
}

}  // namespace vprop
