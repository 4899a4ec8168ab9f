#pragma once

#include <cstdint>
#include <utility>

#include "vprop/dataset.hpp"

namespace vprop {

/// Deterministic shuffled split: floor(fraction * N) rows for train, rest for
/// test. Same seed, same split. Throws if either side would be empty.
std::pair<Dataset, Dataset> train_test_split(const Dataset& data,
                                             double fraction,
                                             std::uint64_t seed);

/// Max-abs scaling fit on the train columns and applied to both sides, so the
/// test set never leaks into the fit. Zero columns are left alone.
void maxabs_scale(Dataset& train, Dataset& test);

}  // namespace vprop
