#pragma once

#include <string>
#include <vector>

#include "vprop/experiment.hpp"

namespace vprop {

inline constexpr const char* kTraceCsvHeader =
    "run_id,algorithm,seed,pass,elbo,elbo_se,test_logloss,wall_ms";

/// CSV with the fixed header above, one row per record, floats at 17
/// significant digits, LF line endings. Empty record lists are an error and
/// leave no file behind.
std::string trace_csv_string(const std::vector<TraceRecord>& records);
void write_trace_csv(const std::vector<TraceRecord>& records,
                     const std::string& path);

std::vector<TraceRecord> parse_trace_csv(const std::string& text);
std::vector<TraceRecord> read_trace_csv(const std::string& path);

}  // namespace vprop
