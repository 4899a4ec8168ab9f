#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "vprop/dataset.hpp"

namespace vprop {

/// One sparse LIBSVM record. Indices are 1-based and strictly increasing.
struct RawRecord {
  double label;  // -1 or +1 after parsing
  std::vector<std::pair<int, double>> entries;

  bool operator==(const RawRecord&) const = default;
};

struct LibsvmData {
  std::vector<RawRecord> records;
  int dim = 0;  // max feature index seen
};

/// Parses `<label> <idx>:<val> ...`, one record per line. Blank lines are
/// skipped and `#` starts a comment. Labels may be encoded {0,1} or {-1,+1};
/// both map to {-1,+1}. Malformed tokens and non-increasing indices raise
/// ParseError with the line number.
LibsvmData parse_libsvm(std::istream& in);
LibsvmData load_libsvm_file(const std::string& path);

std::string serialize_libsvm(const std::vector<RawRecord>& records);

/// Dense N x (dim+1) matrix; the trailing column is a constant-1 bias.
Dataset add_bias_and_densify(const std::vector<RawRecord>& records, int dim);

}  // namespace vprop
