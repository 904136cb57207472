#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "caliblab/core/model.hpp"
#include "caliblab/gof/rank.hpp"
#include "caliblab/gof/result.hpp"
#include "caliblab/testfn/test_functions.hpp"

namespace caliblab {

// Replicate-level parallelism.  threads <= 0 means use the hardware
// count.  Work items own their stream (replicate i always uses
// root.substream(i)), so results are independent of scheduling.
struct ExecutionConfig {
  int threads = 0;
};

// Runs body(0..n-1) across workers; rethrows the first exception.
void parallel_for(long n, const ExecutionConfig& exec, const std::function<void(long)>& body);

struct HierarchicalSample {
  ParamPoint theta;
  Dataset y;
  long replicate_id = 0;
};

// How a test runner treats per-replicate procedure failures
// (non-convergence and the like): abort, or skip and count.
enum class FailurePolicy { Throw, Skip };

struct CalibrationReport {
  enum class Mode { Strong, StrongRank, Weak, WeakMmd };
  Mode mode = Mode::Strong;
  GofResult gof;

  std::vector<double> pit_values;        // strong / weak
  std::vector<int> ranks;                // strong-rank
  Eigen::MatrixXd pushforward_samples;   // weak-mmd: the sampled outputs

  // Binned view of the values above; counts sum to n_replicates.
  std::vector<long> histogram;
  std::vector<double> bin_edges;  // histogram.size() + 1 entries

  long n_replicates = 0;  // replicates contributing to the test
  long failures = 0;      // replicates skipped under FailurePolicy::Skip
  std::uint64_t seed = 0;
};

const char* to_string(CalibrationReport::Mode mode);

// n independent draws of (theta_i, y_i) from the hierarchical model
// theta ~ belief, y | theta ~ P_theta; replicate i uses root.substream(i).
std::vector<HierarchicalSample> simulate_hierarchical(const Belief& belief,
                                                      const DataGeneratingModel& model,
                                                      long n, const RngStream& root,
                                                      const ExecutionConfig& exec = {});

// Strong-calibration test: PIT_i = F_{f # mu(mu0, y_i)}(f(theta_i)) must
// be iid uniform; Kolmogorov-Smirnov verdict plus a 20-bin histogram.
// Requires analytic output with a closed-form pushforward under f.
CalibrationReport strong_test(const LearningProcedure& proc, const Belief& belief,
                              const DataGeneratingModel& model, const TestFunction& f, long n,
                              const RngStream& root, const ExecutionConfig& exec = {},
                              FailurePolicy policy = FailurePolicy::Throw);

// Strong test for procedures with empirical output of fixed size M:
// ranks of f(theta_i) within {f(theta_i^m)} must be discrete-uniform on
// {0..M}; Pearson chi-squared verdict over `bins` equal bins.
CalibrationReport strong_rank_test(const LearningProcedure& proc, const Belief& belief,
                                   const DataGeneratingModel& model, const TestFunction& f,
                                   long n, int ensemble_size, int bins, const RngStream& root,
                                   const ExecutionConfig& exec = {},
                                   FailurePolicy policy = FailurePolicy::Throw);

// Weak-calibration test: one output draw vartheta_i per replicate;
// F_{f # mu0}(f(vartheta_i)) must be iid uniform.
CalibrationReport weak_test(const LearningProcedure& proc, const Belief& belief,
                            const DataGeneratingModel& model, const TestFunction& f, long n,
                            const RngStream& root, const ExecutionConfig& exec = {},
                            FailurePolicy policy = FailurePolicy::Throw);

// Weak-calibration test for beliefs available only through a sampler:
// kernel two-sample test of {vartheta_i} against n fresh belief draws.
// The belief argument is forwarded to the procedure verbatim.
CalibrationReport weak_mmd_test(const LearningProcedure& proc, const Belief& belief,
                                const std::function<ParamPoint(RngStream&)>& belief_sampler,
                                const DataGeneratingModel& model, long n, int n_perm,
                                const RngStream& root, const ExecutionConfig& exec = {});

// Data-driven test-function selection on a held-out split: for every
// candidate, the two-sided chi-squared PIT p-value over s1 is computed
// and the argmin returned (ties break toward the lowest index).  PITs
// that saturate at 0 or 1 are clamped to [1e-12, 1-1e-12] and counted.
// Validity of a subsequent test rests on evaluating it on a disjoint
// split, which is the caller's responsibility; s2 is never passed in.
struct SelectionResult {
  std::size_t chosen_index = 0;
  TestFunction chosen;
  std::vector<double> p_values;
  long clamped = 0;
};

SelectionResult select_test_function(const std::vector<TestFunction>& candidates,
                                     const std::vector<HierarchicalSample>& s1,
                                     const LearningProcedure& proc, const Belief& belief,
                                     const ExecutionConfig& exec = {});

// Equal-width histogram of values over [lo, hi].
std::vector<long> bin_values(const std::vector<double>& values, double lo, double hi, int bins);

}  // namespace caliblab
