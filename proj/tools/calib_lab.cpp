// Command-line vignette runner: simulates a calibration study for the
// selected vignette and writes a CSV/JSON report plus a histogram sidecar.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "caliblab/cli/report.hpp"
#include "caliblab/cli/vignettes.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitSimulationFailure = 3;

std::pair<int, int> parse_int_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int v = std::stoi(text);
    return {v, v};
  }
  const int lo = std::stoi(text.substr(0, colon));
  const int hi = std::stoi(text.substr(colon + 1));
  if (lo > hi) throw std::invalid_argument("range must satisfy lo <= hi: " + text);
  return {lo, hi};
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  if (values.empty()) throw std::invalid_argument("empty list: " + text);
  return values;
}

// lo:step:hi inclusive grid.
std::vector<double> parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return parse_double_list(text);
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("grid must be lo:step:hi: " + text);
  const double lo = std::stod(text.substr(0, c1));
  const double step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  const double hi = std::stod(text.substr(c2 + 1));
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("bad grid: " + text);
  std::vector<double> values;
  for (double v = lo; v <= hi + 1e-12; v += step) values.push_back(v);
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calib-lab: simulation-based calibration tests for learning procedures"};

  caliblab::VignetteConfig cfg;
  std::string vignette;
  std::string out_path = "report.csv";
  std::string format_name = "csv";
  std::string nu_range, n_obs_range, eps_range, t_set, contam_range;
  int threads = 0;
  long n = 0;

  app.add_option("--vignette", vignette, "One of: laplace, abc, fractional, gp-split, robust")
      ->required();
  app.add_option("--n", n, "Replicates for the main test of the vignette");
  app.add_option("--seed", cfg.seed, "Master seed");
  app.add_option("--out", out_path, "Report path");
  app.add_option("--format", format_name, "csv or json");
  app.add_option("--threads", threads, "Worker threads (default: CALIB_LAB_THREADS or hardware)");
  app.add_option("--nu-range", nu_range, "Degrees-of-freedom sweep lo:hi (laplace)");
  app.add_option("--n-obs-range", n_obs_range, "Dataset-size sweep lo:hi (laplace)");
  app.add_option("--eps-range", eps_range, "Tolerance sweep lo:hi (abc)");
  app.add_option("--t-set", t_set, "Comma list of fractional exponents");
  app.add_option("--contam-range", contam_range, "Contamination grid lo:step:hi (robust)");
  app.add_option("--abc-strong-n", cfg.abc_strong_n, "Replicates for the ABC rank test");
  app.add_option("--abc-m", cfg.abc_ensemble, "ABC ensemble size M");
  app.add_option("--gp-realizations", cfg.gp_realizations, "Realizations per S (gp-split)");
  app.add_flag("--paper-scale", cfg.paper_scale, "Restore the published sample sizes");
  app.add_flag("--timings", cfg.timings,
               "Record wall-clock per row (makes reports non-reproducible)");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.vignette = vignette;
    cfg.n = n;
    if (!nu_range.empty()) cfg.nu_range = parse_int_range(nu_range);
    if (!n_obs_range.empty()) cfg.n_obs_range = parse_int_range(n_obs_range);
    if (!eps_range.empty()) cfg.eps_range = parse_int_range(eps_range);
    if (!t_set.empty()) cfg.t_set = parse_double_list(t_set);
    if (!contam_range.empty()) cfg.contamination_grid = parse_grid(contam_range);
    if (threads == 0) {
      if (const char* env = std::getenv("CALIB_LAB_THREADS")) threads = std::atoi(env);
    }
    cfg.exec.threads = threads;
    const caliblab::ReportFormat format = caliblab::parse_report_format(format_name);

    const caliblab::VignetteOutcome outcome = caliblab::run_vignette(cfg);
    caliblab::emit_report(outcome.rows, out_path, format);
    for (const std::string& warning : outcome.warnings) {
      std::cerr << "warning: " << warning << '\n';
    }
    std::cout << out_path << ": " << outcome.rows.size() << " rows\n";
    if (outcome.incomplete_rows > 0) {
      std::cerr << outcome.incomplete_rows << " row(s) incomplete\n";
      return kExitSimulationFailure;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSimulationFailure;
  }
  return 0;
}
