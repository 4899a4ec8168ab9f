#pragma once

#include <cstdint>

#include "vprop/linalg.hpp"

namespace vprop {

/// Deterministic random stream. The generator is splitmix64: a 64-bit counter
/// advances by a fixed odd constant and each output is a finalizer hash of the
/// counter, so the sequence is a pure function of the seed and is identical
/// across platforms. Uniforms take the top 53 bits of an output; normals come
/// from the plain (ziggurat-free) Box-Muller transform, two per uniform pair,
/// with the second draw cached. Reconstructing a stream from the same seed
/// replays the exact sample sequence.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform on (0, 1]; never zero, so log() is safe.
  double next_unit();
  double next_normal();

  /// Independent child stream; does not advance this stream.
  RngStream fork(std::uint64_t tag) const;

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
  std::uint64_t counter_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// d i.i.d. N(0,1) draws. d must be >= 1.
Vec sample_std_normal(RngStream& rng, int d);

/// mu + eps ./ sqrt(prec) with eps ~ N(0, I). Every prec entry must be > 0.
/// deterministic=true returns mu without touching the stream.
Vec sample_gaussian_diag_precision(const Vec& mu, const Vec& prec,
                                   RngStream& rng, bool deterministic = false);

/// Draw from N(mu, prec^{-1}) via theta = mu + L^{-T} eps with L the Cholesky
/// factor of prec. deterministic=true returns mu.
Vec sample_gaussian_full_precision(const Vec& mu, const Mat& prec,
                                   RngStream& rng, bool deterministic = false);

}  // namespace vprop
