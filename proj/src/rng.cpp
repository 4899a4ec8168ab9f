#include "vprop/rng.hpp"

#include <cmath>
#include <numbers>

namespace vprop {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer (Vigna / Steele et al.).
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), counter_(seed) {}

std::uint64_t RngStream::next_u64() {
  counter_ += kGolden;
  return mix64(counter_);
}

double RngStream::next_unit() {
  // top 53 bits, shifted into (0, 1]
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

RngStream RngStream::fork(std::uint64_t tag) const {
  return RngStream(mix64(seed_ + kGolden * (tag + 1)));
}

Vec sample_std_normal(RngStream& rng, int d) {
  if (d < 1) throw DimensionError("sample_std_normal: d must be >= 1");
  Vec out(d);
  for (int i = 0; i < d; ++i) out(i) = rng.next_normal();
  return out;
}

Vec sample_gaussian_diag_precision(const Vec& mu, const Vec& prec,
                                   RngStream& rng, bool deterministic) {
  if (mu.size() != prec.size())
    throw DimensionError("sample_gaussian_diag_precision: size mismatch");
  for (Eigen::Index i = 0; i < prec.size(); ++i)
    if (!(prec(i) > 0.0))
      throw NonPositivePrecisionError("sample_gaussian_diag_precision",
                                      static_cast<int>(i));
  if (deterministic) return mu;
  Vec eps = sample_std_normal(rng, static_cast<int>(mu.size()));
  return mu + (eps.array() / prec.array().sqrt()).matrix();
}

Vec sample_gaussian_full_precision(const Vec& mu, const Mat& prec,
                                   RngStream& rng, bool deterministic) {
  if (mu.size() != prec.rows() || prec.rows() != prec.cols())
    throw DimensionError("sample_gaussian_full_precision: size mismatch");
  if (deterministic) return mu;
  const Mat chol = cholesky_factor(prec);
  Vec eps = sample_std_normal(rng, static_cast<int>(mu.size()));
  // back-substitution: L^T x = eps
  const Eigen::Index n = chol.rows();
  Vec x = eps;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double v = x(i);
    for (Eigen::Index k = i + 1; k < n; ++k) v -= chol(k, i) * x(k);
    x(i) = v / chol(i, i);
  }
  return mu + x;
}

}  // namespace vprop
