#pragma once

#include "vprop/linalg.hpp"

namespace vprop {

/// Differentiable objective f(theta) = -log p(y | X, theta). Implementations
/// are immutable after construction; evaluation is pure.
class Objective {
public:
  virtual ~Objective() = default;

  virtual int dim() const = 0;
  virtual double value(const Vec& theta) const = 0;
  virtual Vec grad(const Vec& theta) const = 0;

  virtual bool has_hessian_diag() const { return false; }
  virtual bool has_hessian_full() const { return false; }

  virtual Vec hessian_diag(const Vec& /*theta*/) const {
    throw CapabilityError("objective does not provide hessian_diag");
  }
  virtual Mat hessian_full(const Vec& /*theta*/) const {
    throw CapabilityError("objective does not provide hessian_full");
  }

protected:
  void check_dim(const Vec& theta, const char* what) const {
    if (static_cast<int>(theta.size()) != dim())
      throw DimensionError(std::string(what) + ": theta has " +
                           std::to_string(theta.size()) + " entries, expected " +
                           std::to_string(dim()));
  }
};

/// Binary classifiers expose the raw logit so predictive probabilities can be
/// computed from posterior samples.
class BinaryClassifier {
public:
  virtual ~BinaryClassifier() = default;
  virtual double logit(const Vec& theta, const Vec& x) const = 0;

  /// Logits for every row of X at once; overridden where a batched evaluation
  /// is cheaper than the row loop.
  virtual Vec batch_logits(const Vec& theta, const Mat& x_rows) const {
    Vec out(x_rows.rows());
    for (Eigen::Index i = 0; i < x_rows.rows(); ++i)
      out(i) = logit(theta, x_rows.row(i).transpose());
    return out;
  }
};

}  // namespace vprop
