#pragma once

#include <string>
#include <utility>
#include <vector>

#include "caliblab/calib/harness.hpp"
#include "caliblab/cli/report.hpp"

namespace caliblab {

// Sweep configuration for the vignette runner.  Default sizes are desk
// scale; paper_scale restores the sample sizes used to produce the
// published figures.  A sweep range with lo > hi is skipped (programmatic
// use only; the command line rejects empty ranges).
struct VignetteConfig {
  std::string vignette;  // laplace | abc | fractional | gp-split | robust
  long n = 0;            // main replicate count; 0 = vignette default
  std::uint64_t seed = 20260811u;

  std::pair<int, int> nu_range{1, 20};
  std::pair<int, int> n_obs_range{1, 20};
  std::pair<int, int> eps_range{1, 10};
  std::vector<double> t_set;  // empty = vignette default
  std::vector<double> contamination_grid{0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30};

  long abc_strong_n = 2000;
  int abc_ensemble = 100;
  long abc_max_proposals = 0;  // per inference call; 0 = auto

  int gp_realizations = 100;
  std::vector<int> gp_sizes{10, 50, 100, 150};

  int contamination_n_obs = 1;

  bool paper_scale = false;
  bool timings = false;  // record wall-clock in rows (breaks byte determinism)
  ExecutionConfig exec;
};

struct VignetteOutcome {
  std::vector<ReportRow> rows;
  long incomplete_rows = 0;
  std::vector<std::string> warnings;
};

VignetteOutcome run_laplace_vignette(const VignetteConfig& cfg);
VignetteOutcome run_abc_vignette(const VignetteConfig& cfg);
VignetteOutcome run_fractional_vignette(const VignetteConfig& cfg);
VignetteOutcome run_robust_vignette(const VignetteConfig& cfg);
VignetteOutcome run_gp_split_vignette(const VignetteConfig& cfg);

// Dispatch on cfg.vignette; throws std::invalid_argument for unknown names.
VignetteOutcome run_vignette(const VignetteConfig& cfg);

}  // namespace caliblab
