#include "caliblab/cli/vignettes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>

#include "caliblab/gof/chi2.hpp"
#include "caliblab/procedures/abc.hpp"
#include "caliblab/procedures/conjugate.hpp"
#include "caliblab/procedures/gk.hpp"
#include "caliblab/procedures/gp.hpp"
#include "caliblab/procedures/laplace.hpp"

namespace caliblab {

namespace {

constexpr double kLogPFloor = 1e-300;

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<HistogramBin> report_bins(const CalibrationReport& report) {
  std::vector<HistogramBin> bins;
  bins.reserve(report.histogram.size());
  for (std::size_t b = 0; b < report.histogram.size(); ++b) {
    bins.push_back({report.bin_edges[b], report.bin_edges[b + 1], report.histogram[b]});
  }
  return bins;
}

class RowTimer {
 public:
  explicit RowTimer(bool enabled) : enabled_(enabled), start_(clock::now()) {}
  long elapsed_ms() const {
    if (!enabled_) return 0;
    return std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start_)
        .count();
  }

 private:
  using clock = std::chrono::steady_clock;
  bool enabled_;
  clock::time_point start_;
};

ReportRow make_row(const VignetteConfig& cfg, std::string vignette, std::string param_name,
                   double param_value, std::string mode, const CalibrationReport& report,
                   long wall_ms) {
  ReportRow row;
  row.vignette = std::move(vignette);
  row.param_name = std::move(param_name);
  row.param_value = param_value;
  row.mode = std::move(mode);
  row.statistic = report.gof.statistic;
  row.p_value = report.gof.p_value;
  row.n = report.n_replicates;
  row.seed = cfg.seed;
  row.wall_ms = wall_ms;
  row.histogram = report_bins(report);
  return row;
}

const Normal& scalar_normal(const Belief& belief) {
  return std::get<Normal>(std::get<ScalarDistribution>(belief));
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double standard_error_of_mean(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

double variance_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / (static_cast<double>(v.size()) - 1.0);
}

}  // namespace

VignetteOutcome run_laplace_vignette(const VignetteConfig& cfg) {
  VignetteOutcome outcome;
  const long n = cfg.n > 0 ? cfg.n : (cfg.paper_scale ? 1000000L : 100000L);
  const Belief prior = ScalarDistribution{Normal{0.0, 1.0}};
  const RngStream root(cfg.seed, 0);
  long point_index = 0;

  auto run_point = [&](const char* param_name, double param_value, double dof, int n_obs) {
    DataGeneratingModel model;
    model.sample = [dof, n_obs](const ParamPoint& theta, RngStream& rng) {
      const ScalarDistribution law = StudentT{theta[0], 1.0, dof};
      Dataset y(n_obs);
      for (int j = 0; j < n_obs; ++j) y[j] = sample(law, rng);
      return y;
    };
    LearningProcedure proc;
    proc.infer = [dof](const Belief& belief, const Dataset& y, RngStream&) -> PosteriorOutput {
      return ScalarDistribution{laplace_student_t(scalar_normal(belief), dof, y)};
    };
    const RngStream point_root = root.substream(static_cast<std::uint64_t>(point_index++));
    for (int which = 0; which < 2; ++which) {
      RowTimer timer(cfg.timings);
      const CalibrationReport report =
          which == 0 ? strong_test(proc, prior, model, Identity{}, n,
                                   point_root.substream(0), cfg.exec, FailurePolicy::Skip)
                     : weak_test(proc, prior, model, Identity{}, n, point_root.substream(1),
                                 cfg.exec, FailurePolicy::Skip);
      if (report.failures > 0 &&
          static_cast<double>(report.failures) > 0.001 * static_cast<double>(n)) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "laplace %s=%g: %ld of %ld replicates failed to converge",
                      param_name, param_value, report.failures, n);
        outcome.warnings.emplace_back(msg);
        ++outcome.incomplete_rows;
      }
      outcome.rows.push_back(make_row(cfg, "laplace", param_name, param_value,
                                      which == 0 ? "strong" : "weak", report,
                                      timer.elapsed_ms()));
    }
  };

  for (int nu = cfg.nu_range.first; nu <= cfg.nu_range.second; ++nu) {
    run_point("nu", nu, static_cast<double>(nu), 5);
  }
  for (int n_obs = cfg.n_obs_range.first; n_obs <= cfg.n_obs_range.second; ++n_obs) {
    run_point("n_obs", n_obs, 3.0, n_obs);
  }
  return outcome;
}

VignetteOutcome run_abc_vignette(const VignetteConfig& cfg) {
  VignetteOutcome outcome;
  const long strong_n = cfg.paper_scale ? 10000L : cfg.abc_strong_n;
  const long weak_n = cfg.paper_scale ? 1000000L : (cfg.n > 0 ? cfg.n : 100000L);
  const int ensemble = cfg.abc_ensemble;
  const int bins = default_rank_bins(ensemble);
  const Belief prior = ScalarDistribution{Normal{0.0, 1.0}};
  const GKParams params{1.0, 2.0, 0.5};
  constexpr int kObsCount = 20;

  DataGeneratingModel model;
  model.sample = [params](const ParamPoint& theta, RngStream& rng) {
    return gk_simulate(theta[0], params, kObsCount, rng);
  };
  const SummaryFunction summary = [](const Dataset& y) { return quartile_summary(y); };

  auto make_proc = [&](double eps, bool noisy, int m) {
    const long max_proposals =
        cfg.abc_max_proposals > 0 ? cfg.abc_max_proposals : std::max(2000000L, 40000L * m);
    LearningProcedure proc;
    proc.infer = [=, &model](const Belief& belief, const Dataset& y,
                             RngStream& rng) -> PosteriorOutput {
      const AbcConfig abc_cfg{eps, m, max_proposals, noisy};
      return abc_infer(std::get<ScalarDistribution>(belief), model, summary, abc_cfg, y, rng);
    };
    return proc;
  };

  const RngStream root(cfg.seed, 0);
  long point_index = 0;
  for (int eps = cfg.eps_range.first; eps <= cfg.eps_range.second; ++eps) {
    const RngStream point_root = root.substream(static_cast<std::uint64_t>(point_index++));
    struct Variant {
      const char* mode;
      bool noisy;
      bool strong;
    };
    const Variant variants[] = {{"strong-rank:plain", false, true},
                                {"strong-rank:noisy", true, true},
                                {"weak:plain", false, false},
                                {"weak:noisy", true, false}};
    for (int v = 0; v < 4; ++v) {
      const Variant& variant = variants[v];
      RowTimer timer(cfg.timings);
      try {
        const CalibrationReport report =
            variant.strong
                ? strong_rank_test(make_proc(eps, variant.noisy, ensemble), prior, model,
                                   Identity{}, strong_n, ensemble, bins,
                                   point_root.substream(static_cast<std::uint64_t>(v)),
                                   cfg.exec)
                : weak_test(make_proc(eps, variant.noisy, 1), prior, model, Identity{},
                            weak_n, point_root.substream(static_cast<std::uint64_t>(v)),
                            cfg.exec);
        outcome.rows.push_back(make_row(cfg, "abc", "epsilon", eps, variant.mode, report,
                                        timer.elapsed_ms()));
      } catch (const AbcExhausted& e) {
        char msg[200];
        std::snprintf(msg, sizeof(msg),
                      "abc epsilon=%d %s: proposal budget exhausted at replicate %ld "
                      "(acceptance rate %.3g)",
                      eps, variant.mode, e.replicate_id, e.acceptance_rate);
        outcome.warnings.emplace_back(msg);
        ++outcome.incomplete_rows;
        ReportRow row;
        row.vignette = "abc";
        row.param_name = "epsilon";
        row.param_value = eps;
        row.mode = std::string(variant.mode) + "(incomplete)";
        row.statistic = 0.0;
        row.p_value = 1.0;
        row.n = 0;
        row.seed = cfg.seed;
        row.wall_ms = timer.elapsed_ms();
        outcome.rows.push_back(std::move(row));
      }
    }
  }
  return outcome;
}

VignetteOutcome run_fractional_vignette(const VignetteConfig& cfg) {
  VignetteOutcome outcome;
  const long n = cfg.n > 0 ? cfg.n : (cfg.paper_scale ? 1000000L : 100000L);
  const std::vector<double> t_set =
      cfg.t_set.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0} : cfg.t_set;
  const Belief prior = ScalarDistribution{Normal{0.0, 1.0}};
  DataGeneratingModel model;
  model.sample = [](const ParamPoint& theta, RngStream& rng) {
    Dataset y(1);
    y[0] = theta[0] + rng.normal();
    return y;
  };
  const RngStream root(cfg.seed, 0);
  long point_index = 0;
  for (double t : t_set) {
    LearningProcedure proc;
    proc.infer = [t](const Belief& belief, const Dataset& y, RngStream&) -> PosteriorOutput {
      return ScalarDistribution{fractional_posterior(scalar_normal(belief), 1.0, t, y)};
    };
    RowTimer timer(cfg.timings);
    const CalibrationReport report =
        weak_test(proc, prior, model, Identity{}, n,
                  root.substream(static_cast<std::uint64_t>(point_index++)), cfg.exec);
    outcome.rows.push_back(make_row(cfg, "fractional", "t", t, "weak", report,
                                    timer.elapsed_ms()));
  }
  return outcome;
}

VignetteOutcome run_robust_vignette(const VignetteConfig& cfg) {
  VignetteOutcome outcome;
  const long n = cfg.n > 0 ? cfg.n : (cfg.paper_scale ? 1000000L : 100000L);
  const std::vector<double> t_set =
      cfg.t_set.empty() ? std::vector<double>{0.1, 0.2, 0.3} : cfg.t_set;
  const Belief prior = ScalarDistribution{Normal{0.0, 3.0}};
  const int n_obs = cfg.contamination_n_obs;

  struct Procedure {
    std::string mode;
    LearningProcedure proc;
  };
  std::vector<Procedure> procedures;
  {
    LearningProcedure bayes;
    bayes.infer = [](const Belief& belief, const Dataset& y, RngStream&) -> PosteriorOutput {
      return ScalarDistribution{bayes_gaussian_location(scalar_normal(belief), 1.0, y)};
    };
    procedures.push_back({"strong:bayes", std::move(bayes)});
    for (double t : t_set) {
      LearningProcedure frac;
      frac.infer = [t](const Belief& belief, const Dataset& y, RngStream&) -> PosteriorOutput {
        return ScalarDistribution{fractional_posterior(scalar_normal(belief), 1.0, t, y)};
      };
      procedures.push_back({"strong:fractional-" + format_value(t), std::move(frac)});
    }
  }

  const RngStream root(cfg.seed, 0);
  long point_index = 0;
  for (double contamination : cfg.contamination_grid) {
    DataGeneratingModel model;
    model.sample = [contamination, n_obs](const ParamPoint& theta, RngStream& rng) {
      Dataset y(n_obs);
      for (int j = 0; j < n_obs; ++j) {
        if (rng.uniform() < contamination) {
          y[j] = 5.0 + rng.normal();
        } else {
          y[j] = theta[0] + rng.normal();
        }
      }
      return y;
    };
    for (const Procedure& procedure : procedures) {
      RowTimer timer(cfg.timings);
      const CalibrationReport report =
          strong_test(procedure.proc, prior, model, Identity{}, n,
                      root.substream(static_cast<std::uint64_t>(point_index++)), cfg.exec);
      outcome.rows.push_back(make_row(cfg, "robust", "contamination", contamination,
                                      procedure.mode, report, timer.elapsed_ms()));
    }
  }
  return outcome;
}

VignetteOutcome run_gp_split_vignette(const VignetteConfig& cfg) {
  VignetteOutcome outcome;
  const GpConfig gp;
  const int realizations = cfg.gp_realizations;
  if (realizations < 2) throw std::invalid_argument("gp-split: need at least 2 realizations");

  // Candidate test functions: the evaluation functional at every grid
  // point; the user-specified baseline sits at x = 0.5.
  std::vector<TestFunction> candidates;
  candidates.reserve(static_cast<std::size_t>(gp.grid_size));
  for (int j = 0; j < gp.grid_size; ++j) candidates.push_back(Evaluation{j});
  const int baseline_index = (gp.grid_size - 1) / 2;

  LearningProcedure proc;
  proc.infer = [gp](const Belief&, const Dataset& packed, RngStream&) -> PosteriorOutput {
    const Eigen::Index n_obs = packed.size() / 2;
    const Eigen::VectorXd x_obs = packed.head(n_obs);
    const Eigen::VectorXd y_obs = packed.tail(n_obs);
    const StationaryGpFit fit = gp_fit_stationary(gp, x_obs, y_obs);
    Eigen::VectorXd grid(gp.grid_size);
    for (int j = 0; j < gp.grid_size; ++j) {
      grid[j] = static_cast<double>(j) / static_cast<double>(gp.grid_size - 1);
    }
    return fit.predict_grid(grid);
  };

  // The belief handed to the procedure (which ignores it): the stationary
  // unit-amplitude prior on the grid.
  Belief belief;
  {
    Eigen::VectorXd grid(gp.grid_size);
    for (int j = 0; j < gp.grid_size; ++j) {
      grid[j] = static_cast<double>(j) / static_cast<double>(gp.grid_size - 1);
    }
    Eigen::MatrixXd k(gp.grid_size, gp.grid_size);
    for (int i = 0; i < gp.grid_size; ++i) {
      for (int j = 0; j < gp.grid_size; ++j) {
        const double d = grid[i] - grid[j];
        k(i, j) = std::exp(-d * d / (gp.length_scale * gp.length_scale));
      }
    }
    k.diagonal().array() += 1e-10;
    belief = GaussianVector{Eigen::VectorXd::Zero(gp.grid_size), std::move(k)};
  }

  const RngStream root(cfg.seed, 0);
  long clamped_total = 0;
  std::mutex merge_mutex;

  for (std::size_t size_idx = 0; size_idx < cfg.gp_sizes.size(); ++size_idx) {
    const int total_pairs = cfg.gp_sizes[size_idx];
    if (total_pairs < 4 || total_pairs % 2 != 0) {
      throw std::invalid_argument("gp-split: sizes must be even and at least 4");
    }
    const int split = total_pairs / 2;
    const RngStream size_root = root.substream(size_idx);

    std::vector<double> log_p_star(static_cast<std::size_t>(realizations));
    std::vector<double> log_p_base(static_cast<std::size_t>(realizations));
    std::vector<double> chosen_x(static_cast<std::size_t>(realizations));
    RowTimer timer(cfg.timings);

    parallel_for(realizations, cfg.exec, [&](long r) {
      const RngStream realization_root = size_root.substream(static_cast<std::uint64_t>(r));
      std::vector<HierarchicalSample> s1;
      s1.reserve(static_cast<std::size_t>(split));
      std::vector<HierarchicalSample> s2;
      s2.reserve(static_cast<std::size_t>(split));
      for (int i = 0; i < total_pairs; ++i) {
        RngStream pair_stream = realization_root.substream(static_cast<std::uint64_t>(i));
        GpTruth truth = gp_simulate_truth(gp, pair_stream);
        HierarchicalSample sample;
        sample.theta = std::move(truth.theta_on_grid);
        sample.y.resize(2 * gp.n_obs);
        sample.y.head(gp.n_obs) = truth.x_obs;
        sample.y.tail(gp.n_obs) = truth.y_obs;
        sample.replicate_id = i;
        (i < split ? s1 : s2).push_back(std::move(sample));
      }

      const SelectionResult selection =
          select_test_function(candidates, s1, proc, belief, ExecutionConfig{1});
      chosen_x[static_cast<std::size_t>(r)] =
          static_cast<double>(std::get<Evaluation>(selection.chosen).grid_index) /
          static_cast<double>(gp.grid_size - 1);

      // Held-out test on s2 for the selected and the baseline functions.
      std::vector<double> pits_star;
      pits_star.reserve(s2.size());
      std::vector<double> pits_base;
      pits_base.reserve(s2.size());
      long clamped = selection.clamped;
      RngStream dummy(0, 0);
      for (const HierarchicalSample& sample : s2) {
        const PosteriorOutput post = proc.infer(belief, sample.y, dummy);
        for (int which = 0; which < 2; ++which) {
          const TestFunction& f =
              which == 0 ? selection.chosen : candidates[static_cast<std::size_t>(baseline_index)];
          double pit = pushforward_cdf(post, f, evaluate(f, sample.theta));
          if (pit < 1e-12 || pit > 1.0 - 1e-12) {
            pit = std::clamp(pit, 1e-12, 1.0 - 1e-12);
            ++clamped;
          }
          (which == 0 ? pits_star : pits_base).push_back(pit);
        }
      }
      log_p_star[static_cast<std::size_t>(r)] =
          std::log(std::max(chi2_pit_test(pits_star).p_value, kLogPFloor));
      log_p_base[static_cast<std::size_t>(r)] =
          std::log(std::max(chi2_pit_test(pits_base).p_value, kLogPFloor));
      if (clamped > 0) {
        std::lock_guard<std::mutex> lock(merge_mutex);
        clamped_total += clamped;
      }
    });

    std::vector<double> diff(static_cast<std::size_t>(realizations));
    for (std::size_t r = 0; r < diff.size(); ++r) diff[r] = log_p_star[r] - log_p_base[r];

    const long wall = timer.elapsed_ms();
    auto aggregate_row = [&](const std::string& mode, double statistic, double p_value) {
      ReportRow row;
      row.vignette = "gp-split";
      row.param_name = "S";
      row.param_value = total_pairs;
      row.mode = mode;
      row.statistic = statistic;
      row.p_value = std::clamp(p_value, 0.0, 1.0);
      row.n = realizations;
      row.seed = cfg.seed;
      row.wall_ms = wall;
      return row;
    };

    const double mean_star = mean_of(log_p_star);
    const double mean_base = mean_of(log_p_base);
    const double mean_diff = mean_of(diff);
    outcome.rows.push_back(aggregate_row("strong-chi2:x-star:mean-log-p", mean_star,
                                         std::exp(mean_star)));
    outcome.rows.push_back(aggregate_row("strong-chi2:x-star:se-log-p",
                                         standard_error_of_mean(log_p_star),
                                         std::exp(mean_star)));
    outcome.rows.push_back(aggregate_row("strong-chi2:x-base:mean-log-p", mean_base,
                                         std::exp(mean_base)));
    outcome.rows.push_back(aggregate_row("strong-chi2:x-base:se-log-p",
                                         standard_error_of_mean(log_p_base),
                                         std::exp(mean_base)));
    outcome.rows.push_back(aggregate_row("strong-chi2:diff:mean-log-p", mean_diff,
                                         std::exp(std::min(0.0, mean_diff))));
    outcome.rows.push_back(aggregate_row("strong-chi2:diff:se-log-p",
                                         standard_error_of_mean(diff),
                                         std::exp(std::min(0.0, mean_diff))));

    ReportRow location_row = aggregate_row("x-star:mean", mean_of(chosen_x), 1.0);
    const std::vector<long> counts = bin_values(chosen_x, 0.0, 1.0, 20);
    for (int b = 0; b < 20; ++b) {
      location_row.histogram.push_back(
          {b / 20.0, (b + 1) / 20.0, counts[static_cast<std::size_t>(b)]});
    }
    outcome.rows.push_back(std::move(location_row));
    outcome.rows.push_back(aggregate_row("x-star:variance", variance_of(chosen_x), 1.0));
  }

  if (clamped_total > 0) {
    char msg[120];
    std::snprintf(msg, sizeof(msg), "gp-split: clamped %ld saturated pit values", clamped_total);
    outcome.warnings.emplace_back(msg);
  }
  return outcome;
}

VignetteOutcome run_vignette(const VignetteConfig& cfg) {
  if (cfg.vignette == "laplace") return run_laplace_vignette(cfg);
  if (cfg.vignette == "abc") return run_abc_vignette(cfg);
  if (cfg.vignette == "fractional") return run_fractional_vignette(cfg);
  if (cfg.vignette == "robust") return run_robust_vignette(cfg);
  if (cfg.vignette == "gp-split") return run_gp_split_vignette(cfg);
  throw std::invalid_argument("unknown vignette: " + cfg.vignette);
}

}  // namespace caliblab
