#pragma once

#include <functional>

#include "vprop/linalg.hpp"

namespace vprop {

using ScalarFn = std::function<double(const Vec&)>;

// Central differences, (f(x+h e_i) - f(x-h e_i)) / 2h per coordinate.
Vec fd_grad(const ScalarFn& f, const Vec& x, double h = 1e-5);

// Second central differences, (f(x+h e_i) - 2 f(x) + f(x-h e_i)) / h^2.
Vec fd_hessian_diag(const ScalarFn& f, const Vec& x, double h = 1e-3);

}  // namespace vprop
