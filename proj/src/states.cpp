#include "vprop/states.hpp"

#include <cmath>

namespace vprop {

StepConfig StepConfig::at_pass(int pass) const {
  if (decay <= 0.0) return *this;
  StepConfig scaled = *this;
  const double factor = 1.0 / (1.0 + decay * pass);
  scaled.alpha *= factor;
  scaled.beta *= factor;
  scaled.rho *= factor;
  return scaled;
}

void StepConfig::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_unit(alpha)) throw Error("StepConfig: alpha must be in (0, 1]");
  if (!in_unit(beta)) throw Error("StepConfig: beta must be in (0, 1]");
  if (!in_unit(rho)) throw Error("StepConfig: rho must be in (0, 1]");
  if (delta < 0.0) throw Error("StepConfig: delta must be >= 0");
  if (k_samples < 0) throw Error("StepConfig: k_samples must be >= 0");
  if (!(lambda > 0.0)) throw Error("StepConfig: lambda must be > 0");
  if (decay < 0.0) throw Error("StepConfig: decay must be >= 0");
}

RmsState RmsState::init(int d) {
  return {Vec::Zero(d), Vec::Zero(d)};
}

std::size_t RmsState::real_count() const {
  return static_cast<std::size_t>(mu.size() + s.size());
}

Vec MeanFieldState::precision() const {
  return (s.array() + lambda).matrix();
}

Vec MeanFieldState::variance() const {
  return (s.array() + lambda).inverse().matrix();
}

DiagGaussian MeanFieldState::posterior() const { return {mu, variance()}; }

MeanFieldState MeanFieldState::init(int d, double lambda) {
  return {Vec::Zero(d), Vec::Zero(d), lambda};
}

std::size_t MeanFieldState::real_count() const {
  return static_cast<std::size_t>(mu.size() + s.size()) + 1;
}

DiagGaussian BbviState::posterior() const {
  return {mu, sigma.cwiseProduct(sigma)};
}

BbviState BbviState::init(int d, double lambda) {
  return {Vec::Zero(d), Vec::Constant(d, 1.0 / std::sqrt(lambda))};
}

std::size_t BbviState::real_count() const {
  return static_cast<std::size_t>(mu.size() + sigma.size());
}

Mat FullCovState::precision() const {
  Mat p = S;
  p.diagonal().array() += lambda;
  return p;
}

FullGaussian FullCovState::posterior() const { return {mu, precision()}; }

FullCovState FullCovState::init(int d, double lambda) {
  return {Vec::Zero(d), Mat::Zero(d, d), lambda};
}

std::size_t FullCovState::real_count() const {
  return static_cast<std::size_t>(mu.size() + S.size()) + 1;
}

NaturalParams NaturalParams::from_moments(const Vec& mu, const Vec& var) {
  if (mu.size() != var.size())
    throw DimensionError("NaturalParams::from_moments: size mismatch");
  for (Eigen::Index i = 0; i < var.size(); ++i)
    if (!(var(i) > 0.0))
      throw NonPositivePrecisionError("NaturalParams::from_moments",
                                      static_cast<int>(i));
  NaturalParams p;
  p.lam1 = (mu.array() / var.array()).matrix();
  p.lam2 = (-0.5 / var.array()).matrix();
  return p;
}

Vec NaturalParams::mu() const {
  return (-lam1.array() / (2.0 * lam2.array())).matrix();
}

Vec NaturalParams::variance() const {
  return (-0.5 / lam2.array()).matrix();
}

Vec NaturalParams::m2() const {
  const Vec m = mu();
  return variance() + m.cwiseProduct(m);
}

void NaturalParams::require_valid(const char* where) const {
  for (Eigen::Index i = 0; i < lam2.size(); ++i)
    if (!(lam2(i) < 0.0))
      throw NonPositivePrecisionError(where, static_cast<int>(i));
}

}  // namespace vprop
