#include "vprop/split.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "vprop/rng.hpp"

namespace vprop {

std::pair<Dataset, Dataset> train_test_split(const Dataset& data,
                                             double fraction,
                                             std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw Error("train_test_split: fraction must be in (0, 1)");
  const int n = data.n();
  const int n_train = static_cast<int>(std::floor(fraction * n));
  if (n_train < 1 || n_train >= n)
    throw Error("train_test_split: a side would be empty");

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  RngStream rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j =
        static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(j)]);
  }

  std::vector<int> train_idx(order.begin(), order.begin() + n_train);
  std::vector<int> test_idx(order.begin() + n_train, order.end());
  return {data.rows(train_idx), data.rows(test_idx)};
}

void maxabs_scale(Dataset& train, Dataset& test) {
  if (train.d() != test.d())
    throw DimensionError("maxabs_scale: dimension mismatch");
  for (Eigen::Index j = 0; j < train.X.cols(); ++j) {
    const double m = train.X.col(j).cwiseAbs().maxCoeff();
    if (m > 0.0) {
      train.X.col(j) /= m;
      test.X.col(j) /= m;
    }
  }
}

}  // namespace vprop
