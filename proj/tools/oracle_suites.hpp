#pragma once

#include <string>
#include <vector>

namespace vprop {

/// Named brute-force oracle suites. Each prints the independently computed
/// values that the test suite freezes as expected results.
std::vector<std::string> oracle_suite_names();
void run_oracle_suite(const std::string& name);  // "all" runs every suite

}  // namespace vprop
