#include "vprop/trace_csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vprop {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& tok, int line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw ParseError("bad float '" + tok + "'", line);
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string trace_csv_string(const std::vector<TraceRecord>& records) {
  if (records.empty()) throw Error("trace_csv: no records to write");
  std::string out = kTraceCsvHeader;
  out += '\n';
  for (const TraceRecord& r : records) {
    out += r.run_id;
    out += ',';
    out += r.algorithm;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.pass);
    out += ',';
    out += format_double(r.elbo);
    out += ',';
    out += format_double(r.elbo_se);
    out += ',';
    out += format_double(r.test_logloss);
    out += ',';
    out += format_double(r.wall_ms);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const std::vector<TraceRecord>& records,
                     const std::string& path) {
  const std::string body = trace_csv_string(records);  // may throw; no file yet
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("trace_csv: cannot write '" + path + "'");
  out << body;
}

std::vector<TraceRecord> parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader)
    throw ParseError("unexpected trace CSV header", 1);

  std::vector<TraceRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 8)
      throw ParseError("expected 8 fields", line_no);
    TraceRecord r;
    r.run_id = fields[0];
    r.algorithm = fields[1];
    r.seed = static_cast<std::uint64_t>(std::stoull(fields[2]));
    r.pass = std::stoi(fields[3]);
    r.elbo = parse_double(fields[4], line_no);
    r.elbo_se = parse_double(fields[5], line_no);
    r.test_logloss = parse_double(fields[6], line_no);
    r.wall_ms = parse_double(fields[7], line_no);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("trace_csv: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trace_csv(buffer.str());
}

}  // namespace vprop
