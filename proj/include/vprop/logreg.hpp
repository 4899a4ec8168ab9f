#pragma once

#include <memory>
#include <vector>

#include "vprop/dataset.hpp"
#include "vprop/objective.hpp"

namespace vprop {

// Numerically safe log(1 + exp(z)) and 1 / (1 + exp(-z)).
double softplus(double z);
double sigmoid(double z);

/// Bernoulli-logistic negative log-likelihood over a dataset,
///   f(theta) = sum_i log(1 + exp(-y_i x_i' theta)).
/// A minibatch view evaluates on a row subset scaled by N/M, so stochastic
/// gradients stay unbiased estimates of the full-data gradient.
class LogisticRegression : public Objective, public BinaryClassifier {
public:
  explicit LogisticRegression(std::shared_ptr<const Dataset> data);

  /// View over `idx` (indices into the full dataset), scaled by N/M.
  LogisticRegression minibatch(std::vector<int> idx) const;

  int dim() const override;
  double value(const Vec& theta) const override;
  Vec grad(const Vec& theta) const override;

  bool has_hessian_diag() const override { return true; }
  bool has_hessian_full() const override { return dim() <= kMaxDenseDim; }

  Vec hessian_diag(const Vec& theta) const override;
  /// Dense D x D Gauss matrix sum_i p_i (1-p_i) x_i x_i'; guarded to
  /// D <= 2000 to keep memory bounded.
  Mat hessian_full(const Vec& theta) const override;

  double logit(const Vec& theta, const Vec& x) const override {
    return x.dot(theta);
  }
  Vec batch_logits(const Vec& theta, const Mat& x_rows) const override {
    return x_rows * theta;
  }

  const Dataset& data() const { return *data_; }
  std::shared_ptr<const Dataset> data_ptr() const { return data_; }
  int batch_rows() const;
  /// Row indices this view evaluates (empty = all rows) and its N/M scale.
  const std::vector<int>& row_subset() const { return rows_; }
  double scale() const { return scale_; }

  static constexpr int kMaxDenseDim = 2000;

private:
  std::shared_ptr<const Dataset> data_;
  std::vector<int> rows_;  // empty = all rows
  double scale_ = 1.0;

  template <class Fn>
  void for_each_row(Fn&& fn) const;
};

}  // namespace vprop
