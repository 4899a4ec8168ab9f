#include "vprop/logreg.hpp"

#include <cmath>
#include <utility>

namespace vprop {

double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LogisticRegression::LogisticRegression(std::shared_ptr<const Dataset> data)
    : data_(std::move(data)) {}

LogisticRegression LogisticRegression::minibatch(std::vector<int> idx) const {
  if (idx.empty()) throw Error("LogisticRegression::minibatch: empty batch");
  LogisticRegression view(data_);
  view.scale_ = static_cast<double>(data_->n()) / static_cast<double>(idx.size());
  view.rows_ = std::move(idx);
  return view;
}

int LogisticRegression::dim() const { return data_->d(); }

int LogisticRegression::batch_rows() const {
  return rows_.empty() ? data_->n() : static_cast<int>(rows_.size());
}

template <class Fn>
void LogisticRegression::for_each_row(Fn&& fn) const {
  if (rows_.empty()) {
    for (int i = 0; i < data_->n(); ++i) fn(i);
  } else {
    for (int i : rows_) fn(i);
  }
}

double LogisticRegression::value(const Vec& theta) const {
  check_dim(theta, "logreg value");
  double acc = 0.0;
  for_each_row([&](int i) {
    const double m = data_->X.row(i).dot(theta);
    acc += softplus(-data_->y(i) * m);
  });
  return scale_ * acc;
}

Vec LogisticRegression::grad(const Vec& theta) const {
  check_dim(theta, "logreg grad");
  Vec g = Vec::Zero(theta.size());
  for_each_row([&](int i) {
    const double m = data_->X.row(i).dot(theta);
    const double yi = data_->y(i);
    g -= yi * sigmoid(-yi * m) * data_->X.row(i).transpose();
  });
  return scale_ * g;
}

Vec LogisticRegression::hessian_diag(const Vec& theta) const {
  check_dim(theta, "logreg hessian_diag");
  Vec h = Vec::Zero(theta.size());
  for_each_row([&](int i) {
    const double p = sigmoid(data_->X.row(i).dot(theta));
    h += p * (1.0 - p) *
         data_->X.row(i).transpose().cwiseProduct(data_->X.row(i).transpose());
  });
  return scale_ * h;
}

Mat LogisticRegression::hessian_full(const Vec& theta) const {
  check_dim(theta, "logreg hessian_full");
  if (dim() > kMaxDenseDim)
    throw DimensionError("logreg hessian_full: D exceeds dense guard of " +
                         std::to_string(kMaxDenseDim));
  Mat h = Mat::Zero(theta.size(), theta.size());
  for_each_row([&](int i) {
    const double p = sigmoid(data_->X.row(i).dot(theta));
    h.noalias() +=
        p * (1.0 - p) * data_->X.row(i).transpose() * data_->X.row(i);
  });
  return scale_ * h;
}

}  // namespace vprop
