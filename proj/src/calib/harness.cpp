#include "caliblab/calib/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "caliblab/gof/chi2.hpp"
#include "caliblab/gof/ks.hpp"
#include "caliblab/gof/mmd.hpp"
#include "caliblab/procedures/abc.hpp"

namespace caliblab {

namespace {

constexpr int kPitHistogramBins = 20;

int resolve_threads(const ExecutionConfig& exec, long n) {
  int t = exec.threads;
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  return static_cast<int>(std::min<long>(t, n));
}

// Shared pipeline for the PIT-based runners: per replicate, draw the
// hierarchical pair, run the procedure, and reduce to one value in [0,1].
// NaN marks a skipped replicate.
std::vector<double> run_pit_pipeline(
    const std::function<double(long, RngStream&)>& replicate, long n,
    const ExecutionConfig& exec, FailurePolicy policy, const RngStream& root,
    long* failures_out) {
  std::vector<double> values(static_cast<std::size_t>(n));
  std::atomic<long> failures{0};
  parallel_for(n, exec, [&](long i) {
    RngStream stream = root.substream(static_cast<std::uint64_t>(i));
    try {
      values[static_cast<std::size_t>(i)] = replicate(i, stream);
    } catch (const NoClosedFormPushforward&) {
      throw;  // a structural error, never skippable
    } catch (const AbcExhausted& e) {
      throw AbcExhausted(e.acceptance_rate, e.proposals, i);
    } catch (const std::runtime_error&) {
      if (policy == FailurePolicy::Throw) throw;
      values[static_cast<std::size_t>(i)] = std::numeric_limits<double>::quiet_NaN();
      ++failures;
    }
  });
  if (failures.load() > 0) {
    values.erase(std::remove_if(values.begin(), values.end(),
                                [](double v) { return std::isnan(v); }),
                 values.end());
  }
  *failures_out = failures.load();
  return values;
}

void attach_pit_histogram(CalibrationReport& report) {
  report.histogram = bin_values(report.pit_values, 0.0, 1.0, kPitHistogramBins);
  report.bin_edges.resize(kPitHistogramBins + 1);
  for (int b = 0; b <= kPitHistogramBins; ++b) {
    report.bin_edges[static_cast<std::size_t>(b)] =
        static_cast<double>(b) / kPitHistogramBins;
  }
}

}  // namespace

void parallel_for(long n, const ExecutionConfig& exec, const std::function<void(long)>& body) {
  if (n <= 0) return;
  const int threads = resolve_threads(exec, n);
  if (threads == 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  // Dynamic chunked scheduling: per-item cost can be wildly uneven (ABC
  // rejection loops), and results depend only on the item index, never on
  // which worker runs it.
  const long chunk = std::max(1L, n / (16L * threads));
  std::atomic<long> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      try {
        for (;;) {
          const long begin = next.fetch_add(chunk);
          if (begin >= n || failed.load(std::memory_order_relaxed)) break;
          const long end = std::min(n, begin + chunk);
          for (long i = begin; i < end; ++i) body(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

const char* to_string(CalibrationReport::Mode mode) {
  switch (mode) {
    case CalibrationReport::Mode::Strong: return "strong";
    case CalibrationReport::Mode::StrongRank: return "strong-rank";
    case CalibrationReport::Mode::Weak: return "weak";
    case CalibrationReport::Mode::WeakMmd: return "weak-mmd";
  }
  return "unknown";
}

std::vector<long> bin_values(const std::vector<double>& values, double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("bin_values: bad bin layout");
  std::vector<long> counts(static_cast<std::size_t>(bins), 0);
  const double width = (hi - lo) / bins;
  for (double v : values) {
    long b = static_cast<long>(std::floor((v - lo) / width));
    b = std::clamp<long>(b, 0, bins - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  return counts;
}

std::vector<HierarchicalSample> simulate_hierarchical(const Belief& belief,
                                                      const DataGeneratingModel& model,
                                                      long n, const RngStream& root,
                                                      const ExecutionConfig& exec) {
  if (n < 1) throw std::invalid_argument("simulate_hierarchical: need n >= 1");
  if (!model.sample) throw std::invalid_argument("simulate_hierarchical: model has no sampler");
  std::vector<HierarchicalSample> samples(static_cast<std::size_t>(n));
  parallel_for(n, exec, [&](long i) {
    RngStream stream = root.substream(static_cast<std::uint64_t>(i));
    HierarchicalSample& s = samples[static_cast<std::size_t>(i)];
    s.theta = sample_belief(belief, stream);
    s.y = model.sample(s.theta, stream);
    s.replicate_id = i;
  });
  return samples;
}

CalibrationReport strong_test(const LearningProcedure& proc, const Belief& belief,
                              const DataGeneratingModel& model, const TestFunction& f, long n,
                              const RngStream& root, const ExecutionConfig& exec,
                              FailurePolicy policy) {
  if (n < 1) throw std::invalid_argument("strong_test: need n >= 1");
  CalibrationReport report;
  report.mode = CalibrationReport::Mode::Strong;
  report.seed = root.master_seed();
  report.pit_values = run_pit_pipeline(
      [&](long, RngStream& stream) {
        const ParamPoint theta = sample_belief(belief, stream);
        const Dataset y = model.sample(theta, stream);
        const PosteriorOutput post = proc.infer(belief, y, stream);
        return pushforward_cdf(post, f, evaluate(f, theta));
      },
      n, exec, policy, root, &report.failures);
  report.n_replicates = static_cast<long>(report.pit_values.size());
  report.gof = ks_uniformity_test(report.pit_values);
  attach_pit_histogram(report);
  return report;
}

CalibrationReport strong_rank_test(const LearningProcedure& proc, const Belief& belief,
                                   const DataGeneratingModel& model, const TestFunction& f,
                                   long n, int ensemble_size, int bins, const RngStream& root,
                                   const ExecutionConfig& exec, FailurePolicy policy) {
  if (n < 1) throw std::invalid_argument("strong_rank_test: need n >= 1");
  std::vector<int> ranks(static_cast<std::size_t>(n), -1);
  std::atomic<long> failures{0};
  parallel_for(n, exec, [&](long i) {
    RngStream stream = root.substream(static_cast<std::uint64_t>(i));
    try {
      const ParamPoint theta = sample_belief(belief, stream);
      const Dataset y = model.sample(theta, stream);
      const PosteriorOutput post = proc.infer(belief, y, stream);
      const auto* emp = std::get_if<EmpiricalSample>(&post);
      if (emp == nullptr) {
        throw std::invalid_argument("strong_rank_test: procedure output is not empirical");
      }
      if (emp->draws.rows() != ensemble_size) {
        throw std::invalid_argument("strong_rank_test: ensemble size mismatch");
      }
      std::vector<double> ensemble(static_cast<std::size_t>(ensemble_size));
      for (int m = 0; m < ensemble_size; ++m) {
        ensemble[static_cast<std::size_t>(m)] = evaluate(f, ParamPoint(emp->draws.row(m).transpose()));
      }
      ranks[static_cast<std::size_t>(i)] = rank_statistic(ensemble, evaluate(f, theta));
    } catch (const AbcExhausted& e) {
      throw AbcExhausted(e.acceptance_rate, e.proposals, i);
    } catch (const std::runtime_error&) {
      if (policy == FailurePolicy::Throw) throw;
      ++failures;
    }
  });
  CalibrationReport report;
  report.mode = CalibrationReport::Mode::StrongRank;
  report.seed = root.master_seed();
  report.failures = failures.load();
  if (report.failures > 0) {
    ranks.erase(std::remove(ranks.begin(), ranks.end(), -1), ranks.end());
  }
  report.ranks = std::move(ranks);
  report.n_replicates = static_cast<long>(report.ranks.size());
  auto [hist, gof] = rank_uniformity_test(report.ranks, ensemble_size, bins);
  report.gof = gof;
  report.histogram = hist.counts;
  report.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) {
    report.bin_edges[static_cast<std::size_t>(b)] =
        static_cast<double>(b) * (ensemble_size + 1) / bins;
  }
  return report;
}

CalibrationReport weak_test(const LearningProcedure& proc, const Belief& belief,
                            const DataGeneratingModel& model, const TestFunction& f, long n,
                            const RngStream& root, const ExecutionConfig& exec,
                            FailurePolicy policy) {
  if (n < 1) throw std::invalid_argument("weak_test: need n >= 1");
  CalibrationReport report;
  report.mode = CalibrationReport::Mode::Weak;
  report.seed = root.master_seed();
  report.pit_values = run_pit_pipeline(
      [&](long, RngStream& stream) {
        const ParamPoint theta = sample_belief(belief, stream);
        const Dataset y = model.sample(theta, stream);
        const PosteriorOutput post = proc.infer(belief, y, stream);
        const ParamPoint vartheta = sample_output(post, stream);
        return pushforward_cdf(belief, f, evaluate(f, vartheta));
      },
      n, exec, policy, root, &report.failures);
  report.n_replicates = static_cast<long>(report.pit_values.size());
  report.gof = ks_uniformity_test(report.pit_values);
  attach_pit_histogram(report);
  return report;
}

CalibrationReport weak_mmd_test(const LearningProcedure& proc, const Belief& belief,
                                const std::function<ParamPoint(RngStream&)>& belief_sampler,
                                const DataGeneratingModel& model, long n, int n_perm,
                                const RngStream& root, const ExecutionConfig& exec) {
  if (n < 2) throw std::invalid_argument("weak_mmd_test: need n >= 2");
  // Replicate pipeline draws occupy substreams [0, n); fresh belief draws
  // [n, 2n); the permutation stream is substream 2n.
  Eigen::Index dim = 0;
  {
    RngStream probe = root.substream(0);
    dim = belief_sampler(probe).size();
  }
  Eigen::MatrixXd sampled(n, dim);
  Eigen::MatrixXd reference(n, dim);
  parallel_for(n, exec, [&](long i) {
    RngStream stream = root.substream(static_cast<std::uint64_t>(i));
    const ParamPoint theta = belief_sampler(stream);
    const Dataset y = model.sample(theta, stream);
    const PosteriorOutput post = proc.infer(belief, y, stream);
    sampled.row(i) = sample_output(post, stream).transpose();
    RngStream fresh = root.substream(static_cast<std::uint64_t>(n + i));
    reference.row(i) = belief_sampler(fresh).transpose();
  });
  RngStream perm_stream = root.substream(static_cast<std::uint64_t>(2 * n));
  CalibrationReport report;
  report.mode = CalibrationReport::Mode::WeakMmd;
  report.seed = root.master_seed();
  report.n_replicates = n;
  report.gof = mmd_permutation_test(sampled, reference, 0.0, n_perm, perm_stream);
  report.pushforward_samples = std::move(sampled);
  // Histogram over the first coordinate of the sampled outputs.
  std::vector<double> first(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) first[static_cast<std::size_t>(i)] = report.pushforward_samples(i, 0);
  const auto [lo_it, hi_it] = std::minmax_element(first.begin(), first.end());
  double lo = *lo_it, hi = *hi_it;
  if (!(hi > lo)) hi = lo + 1.0;
  report.histogram = bin_values(first, lo, hi, kPitHistogramBins);
  report.bin_edges.resize(kPitHistogramBins + 1);
  for (int b = 0; b <= kPitHistogramBins; ++b) {
    report.bin_edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / kPitHistogramBins;
  }
  return report;
}

SelectionResult select_test_function(const std::vector<TestFunction>& candidates,
                                     const std::vector<HierarchicalSample>& s1,
                                     const LearningProcedure& proc, const Belief& belief,
                                     const ExecutionConfig& exec) {
  if (candidates.empty()) throw std::invalid_argument("select_test_function: no candidates");
  if (s1.size() < 2) throw std::invalid_argument("select_test_function: need |S1| >= 2");
  const std::size_t n = s1.size();
  const std::size_t c = candidates.size();
  Eigen::MatrixXd pits(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(c));
  std::atomic<long> clamped{0};
  parallel_for(static_cast<long>(n), exec, [&](long i) {
    const HierarchicalSample& s = s1[static_cast<std::size_t>(i)];
    // Procedures used with selection are deterministic in their data; the
    // stream identity below merely keeps stochastic ones reproducible.
    RngStream stream(0x5e1ec7u, static_cast<std::uint64_t>(s.replicate_id));
    const PosteriorOutput post = proc.infer(belief, s.y, stream);
    for (std::size_t j = 0; j < c; ++j) {
      double pit = pushforward_cdf(post, candidates[j], evaluate(candidates[j], s.theta));
      if (pit < 1e-12 || pit > 1.0 - 1e-12) {
        pit = std::clamp(pit, 1e-12, 1.0 - 1e-12);
        ++clamped;
      }
      pits(i, static_cast<Eigen::Index>(j)) = pit;
    }
  });
  SelectionResult result;
  result.clamped = clamped.load();
  result.p_values.resize(c);
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<double> column(n);
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = pits(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    result.p_values[j] = chi2_pit_test(column).p_value;
  }
  result.chosen_index = static_cast<std::size_t>(
      std::min_element(result.p_values.begin(), result.p_values.end()) -
      result.p_values.begin());
  result.chosen = candidates[result.chosen_index];
  return result;
}

}  // namespace caliblab
