#include "vprop/dataset.hpp"

#include <numeric>

#include "vprop/rng.hpp"

namespace vprop {

Dataset Dataset::rows(const std::vector<int>& idx) const {
  Dataset out;
  out.X.resize(static_cast<Eigen::Index>(idx.size()), X.cols());
  out.y.resize(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.X.row(static_cast<Eigen::Index>(i)) = X.row(idx[i]);
    out.y(static_cast<Eigen::Index>(i)) = y(idx[i]);
  }
  return out;
}

void Dataset::validate() const {
  if (n() < 1 || d() < 1) throw Error("Dataset: need N >= 1 and D >= 1");
  if (y.size() != X.rows()) throw DimensionError("Dataset: label count != row count");
  require_finite(X, "Dataset features");
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y(i) != 1.0 && y(i) != -1.0)
      throw Error("Dataset: label at row " + std::to_string(i) +
                  " is not +/-1");
}

std::vector<std::vector<int>> make_minibatches(int n, const BatchSpec& spec,
                                               int pass) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  const int m = spec.batch_size;
  if (m <= 0 || m >= n) return {order};

  // Fisher-Yates with a per-pass stream so replaying a pass replays the order.
  RngStream rng =
      RngStream(spec.shuffle_seed).fork(static_cast<std::uint64_t>(pass));
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_u64() %
                                   static_cast<std::uint64_t>(i + 1));
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(j)]);
  }

  std::vector<std::vector<int>> batches;
  for (int start = 0; start < n; start += m) {
    const int end = std::min(start + m, n);
    batches.emplace_back(order.begin() + start, order.begin() + end);
  }
  return batches;
}

}  // namespace vprop
