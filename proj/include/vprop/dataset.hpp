#pragma once

#include <cstdint>
#include <vector>

#include "vprop/linalg.hpp"

namespace vprop {

/// Dense design matrix with labels in {-1, +1}.
struct Dataset {
  Mat X;  // N x D
  Vec y;  // length N

  int n() const { return static_cast<int>(X.rows()); }
  int d() const { return static_cast<int>(X.cols()); }

  /// New dataset from the given row indices, in order.
  Dataset rows(const std::vector<int>& idx) const;

  /// Checks labels are +/-1, features finite, N>=1, D>=1. Loaders call this;
  /// programmatic fixtures may skip it (an empty set is a legal test input).
  void validate() const;
};

/// Minibatch protocol for one data pass.
struct BatchSpec {
  int batch_size = 0;  // 0 (or >= N) means full batch
  std::uint64_t shuffle_seed = 0;
};

/// Disjoint minibatches covering [0, n), shuffled deterministically per pass.
std::vector<std::vector<int>> make_minibatches(int n, const BatchSpec& spec,
                                               int pass);

}  // namespace vprop
