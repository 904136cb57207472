#include "caliblab/cli/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace caliblab {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_u64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
  return buf;
}

[[noreturn]] void io_failure(const std::string& path, const char* what) {
  throw std::runtime_error(std::string(what) + ": " + path);
}

}  // namespace

void emit_report(const std::vector<ReportRow>& rows, const std::string& path,
                 ReportFormat format) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) io_failure(path, "emit_report: cannot open output file");
    if (format == ReportFormat::Csv) {
      out << "vignette,param_name,param_value,mode,statistic,p_value,n,seed,wall_ms\n";
      for (const ReportRow& r : rows) {
        out << r.vignette << ',' << r.param_name << ',' << format_double(r.param_value) << ','
            << r.mode << ',' << format_double(r.statistic) << ',' << format_double(r.p_value)
            << ',' << r.n << ',' << format_u64(r.seed) << ',' << r.wall_ms << '\n';
      }
    } else {
      nlohmann::json doc = nlohmann::json::array();
      for (const ReportRow& r : rows) {
        doc.push_back({{"vignette", r.vignette},
                       {"param_name", r.param_name},
                       {"param_value", r.param_value},
                       {"mode", r.mode},
                       {"statistic", r.statistic},
                       {"p_value", r.p_value},
                       {"n", r.n},
                       {"seed", r.seed},
                       {"wall_ms", r.wall_ms}});
      }
      out << doc.dump(2) << '\n';
    }
    if (!out.good()) io_failure(path, "emit_report: write failed");
  }
  {
    const std::string side_path = path + ".hist.csv";
    std::ofstream side(side_path, std::ios::binary | std::ios::trunc);
    if (!side) io_failure(side_path, "emit_report: cannot open histogram sidecar");
    side << "bin_lo,bin_hi,count\n";
    for (const ReportRow& r : rows) {
      for (const HistogramBin& b : r.histogram) {
        side << format_double(b.lo) << ',' << format_double(b.hi) << ',' << b.count << '\n';
      }
    }
    if (!side.good()) io_failure(side_path, "emit_report: write failed");
  }
}

std::vector<ReportRow> parse_report_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_failure(path, "parse_report_csv: cannot open file");
  std::string line;
  if (!std::getline(in, line)) io_failure(path, "parse_report_csv: missing header");
  if (line != "vignette,param_name,param_value,mode,statistic,p_value,n,seed,wall_ms") {
    io_failure(path, "parse_report_csv: unexpected header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    ReportRow r;
    std::getline(ss, r.vignette, ',');
    std::getline(ss, r.param_name, ',');
    std::getline(ss, field, ',');
    r.param_value = std::stod(field);
    std::getline(ss, r.mode, ',');
    std::getline(ss, field, ',');
    r.statistic = std::stod(field);
    std::getline(ss, field, ',');
    r.p_value = std::stod(field);
    std::getline(ss, field, ',');
    r.n = std::stol(field);
    std::getline(ss, field, ',');
    r.seed = std::stoull(field);
    std::getline(ss, field, ',');
    r.wall_ms = std::stol(field);
    rows.push_back(std::move(r));
  }
  return rows;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format: " + name);
}

}  // namespace caliblab
