#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace caliblab {

enum class ReportFormat { Csv, Json };

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  long count = 0;
};

// One result line per (parameter point x mode).  The histogram, when
// present, goes to the sidecar file only.
struct ReportRow {
  std::string vignette;
  std::string param_name;
  double param_value = 0.0;
  std::string mode;
  double statistic = 0.0;
  double p_value = 1.0;
  long n = 0;
  std::uint64_t seed = 0;
  long wall_ms = 0;
  std::vector<HistogramBin> histogram;
};

// Writes rows to `path` as CSV with the fixed header
//   vignette,param_name,param_value,mode,statistic,p_value,n,seed,wall_ms
// or as a JSON array of objects with those keys.  Histograms are written
// to the sidecar `<path>.hist.csv` with header bin_lo,bin_hi,count, rows
// grouped in report order.  Output is byte-deterministic for equal input.
void emit_report(const std::vector<ReportRow>& rows, const std::string& path,
                 ReportFormat format);

// Reads back a CSV report (histograms are not recovered).
std::vector<ReportRow> parse_report_csv(const std::string& path);

ReportFormat parse_report_format(const std::string& name);

}  // namespace caliblab
