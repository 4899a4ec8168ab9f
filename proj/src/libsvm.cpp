#include "vprop/libsvm.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vprop {

namespace {

double parse_number(const std::string& tok, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + tok + "'", line);
  }
  if (pos != tok.size())
    throw ParseError("malformed number '" + tok + "'", line);
  return v;
}

double map_label(double raw, int line) {
  if (raw == 1.0 || raw == -1.0) return raw;
  if (raw == 0.0) return -1.0;
  throw ParseError("label must be -1, 0, or +1; got " + std::to_string(raw),
                   line);
}

}  // namespace

LibsvmData parse_libsvm(std::istream& in) {
  LibsvmData out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);

    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;  // blank line

    RawRecord rec;
    rec.label = map_label(parse_number(tok, line_no), line_no);

    int prev_idx = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw ParseError("malformed feature token '" + tok + "'", line_no);
      const double idx_raw = parse_number(tok.substr(0, colon), line_no);
      const int idx = static_cast<int>(idx_raw);
      if (idx_raw != static_cast<double>(idx) || idx < 1)
        throw ParseError("feature index must be a positive integer in '" +
                             tok + "'",
                         line_no);
      if (idx <= prev_idx)
        throw ParseError("feature indices must be strictly increasing", line_no);
      prev_idx = idx;
      rec.entries.emplace_back(idx, parse_number(tok.substr(colon + 1), line_no));
      out.dim = std::max(out.dim, idx);
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

LibsvmData load_libsvm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_libsvm(in);
}

std::string serialize_libsvm(const std::vector<RawRecord>& records) {
  std::string out;
  char buf[64];
  for (const auto& rec : records) {
    out += rec.label > 0 ? "+1" : "-1";
    for (const auto& [idx, val] : rec.entries) {
      std::snprintf(buf, sizeof(buf), " %d:%.17g", idx, val);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Dataset add_bias_and_densify(const std::vector<RawRecord>& records, int dim) {
  for (const auto& rec : records)
    if (!rec.entries.empty() && rec.entries.back().first > dim)
      throw Error("add_bias_and_densify: dim smaller than a feature index");

  Dataset out;
  const Eigen::Index n = static_cast<Eigen::Index>(records.size());
  out.X = Mat::Zero(n, dim + 1);
  out.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& rec = records[static_cast<std::size_t>(i)];
    out.y(i) = rec.label;
    for (const auto& [idx, val] : rec.entries) out.X(i, idx - 1) = val;
    out.X(i, dim) = 1.0;  // bias column
  }
  return out;
}

}  // namespace vprop
