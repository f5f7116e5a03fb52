#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gols/config.hpp"
#include "gols/metrics.hpp"
#include "gols/solvers.hpp"

namespace gols {

std::string_view tool_version() noexcept;

/// Seed of trial `trial` in the (n, m, k) cell. All algorithms in a cell see
/// the same problem instances.
std::uint64_t trial_seed(std::uint64_t master_seed, Index n, Index m, Index k, Index trial);

/// Runs one algorithm on a problem and scores it against the ground truth.
struct TrialRecord {
  TrialOutcome outcome;
  Index n = 0;
  Index m = 0;
  std::uint64_t seed = 0;
  bool capped = false;
};

TrialRecord run_trial(const SparseProblem& p, Algorithm alg, Index L, Index trial);

struct AggregateRecord {
  MetricsReport report;
  Index n = 0;
  Index m = 0;
  bool capped = false;  ///< some trial ran with min(k, floor(n/L)) < k
};

struct SweepResult {
  std::string config_hash;
  std::vector<TrialRecord> trials;  ///< cell-major, then trial index
  std::vector<AggregateRecord> aggregates;
};

/// `jobs` worker threads (0 = hardware concurrency). Output is independent of `jobs`.
SweepResult run_sweep(const ExperimentSpec& spec, unsigned jobs = 1);

/// Writes trials.csv and aggregate.csv under spec.output_dir (created if
/// missing). Throws IoError when the directory is unwritable.
struct SweepFiles {
  std::string trials_csv;
  std::string aggregate_csv;
};
SweepFiles write_sweep(const ExperimentSpec& spec, const SweepResult& result);

std::string trials_csv_text(const SweepResult& result);
std::string aggregate_csv_text(const SweepResult& result);

struct PhasePoint {
  Index n = 0;
  Index trials = 0;
  Index successes = 0;
  std::vector<char> trial_success;  ///< per trial, indexed by trial number
  double rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
  double stderr_rate() const;
};

struct PhaseResult {
  std::string config_hash;
  std::vector<PhasePoint> points;
  /// Smallest n whose success rate is >= 1 - delta_target.
  std::optional<Index> threshold_n;
};

/// Trials are paired across n: trial t uses the same seed at every n.
PhaseResult run_phase_transition(const PhaseTransitionSpec& spec, unsigned jobs = 1);
std::string phase_csv_text(const PhaseTransitionSpec& spec, const PhaseResult& result);
std::string write_phase_transition(const PhaseTransitionSpec& spec, const PhaseResult& result);

struct ComplexityProbeSpec {
  Index n = 64;
  Index k = 8;
  Index L = 2;
  std::vector<Index> m_values = {128, 256, 512, 1024};
  Index repetitions = 31;
  std::uint64_t seed = 1;
};

struct ComplexityPoint {
  Index m = 0;
  double median_s = 0.0;
};

struct ComplexityResult {
  std::vector<ComplexityPoint> points;
  double slope = 0.0;  ///< least-squares slope of log(median time) vs log(m)
};

ComplexityResult run_complexity_probe(const ComplexityProbeSpec& spec);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

struct PlotFiles {
  std::vector<std::string> data_files;  ///< err.dat, exact_rate.dat, mse.dat, time.dat
  std::string script;                   ///< plot.gp
};

/// Reads an aggregate CSV and writes one whitespace-separated table per
/// metric (rows: k, columns: one series per algorithm/L) plus a gnuplot
/// script into `out_dir`. Values are copied verbatim from the CSV.
/// Throws ParseError on a malformed or empty aggregate.
PlotFiles emit_plot_data(const std::string& aggregate_csv, const std::string& out_dir);

}  // namespace gols
