#include "gols/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "gols/rng.hpp"

#ifndef GOLS_VERSION
#define GOLS_VERSION "0.0.0"
#endif

namespace gols {
namespace {

namespace fs = std::filesystem;

/// Calls body(i) for i in [0, count) on `jobs` threads. Each index is
/// handled by exactly one worker; callers write results into slot i.
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::IoError, "cannot create output directory " + dir);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  os << text;
  if (!os) throw Error(ErrorCode::IoError, "write failed for " + path);
}

std::string file_header(const std::string& hash, std::string_view what) {
  std::string h = "# gols-bench ";
  h += tool_version();
  h += " config_hash=";
  h += hash;
  h += ' ';
  h += what;
  h += '\n';
  return h;
}

struct Cell {
  Algorithm alg;
  Index L;
};

std::vector<Cell> cells_for(const ExperimentSpec& spec) {
  std::vector<Cell> cells;
  for (Algorithm a : spec.algorithms) {
    if (a == Algorithm::Gols) {
      for (Index L : spec.L_values) cells.push_back({a, L});
    } else {
      cells.push_back({a, 1});
    }
  }
  return cells;
}

}  // namespace

std::string_view tool_version() noexcept { return GOLS_VERSION; }

std::uint64_t trial_seed(std::uint64_t master_seed, Index n, Index m, Index k, Index trial) {
  return derive_seed(master_seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m),
                                   static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(trial)});
}

TrialRecord run_trial(const SparseProblem& p, Algorithm alg, Index L, Index trial) {
  const Index k = p.k();
  RecoveryResult res;
  switch (alg) {
    case Algorithm::Ols: res = ols_run(p.a, p.y, k); break;
    case Algorithm::Omp: res = omp_run(p.a, p.y, k); break;
    case Algorithm::Gols: {
      SolverConfig cfg;
      cfg.L = L;
      cfg.k = k;
      res = gols_run(p.a, p.y, cfg);
      break;
    }
  }
  TrialRecord rec;
  rec.n = p.n();
  rec.m = p.m();
  rec.seed = p.seed;
  rec.capped = res.capped;
  auto& o = rec.outcome;
  o.algorithm = std::string(to_string(alg));
  o.k = k;
  o.L = alg == Algorithm::Gols ? L : 1;
  o.trial = trial;
  o.component_recovery = err_components(res.support, p.support_true, k);
  o.exact_support = exact_support(res.support, p.support_true, res.x_hat, k);
  o.mse_full = mse(p.x_true, res.x_hat);
  o.mse_topk = mse(p.x_true, truncate_top_k(res.support, res.x_hat, k));
  o.residual_norm = res.residual_norm;
  o.iterations = res.iterations;
  o.elapsed_s = res.elapsed_s;
  return rec;
}

SweepResult run_sweep(const ExperimentSpec& spec, unsigned jobs) {
  validate(spec);
  const auto cells = cells_for(spec);
  const auto trials = static_cast<std::size_t>(spec.trials);
  const auto n_k = spec.k_values.size();

  // slot layout: [k][cell][trial]
  std::vector<TrialRecord> slots(n_k * cells.size() * trials);
  auto slot = [&](std::size_t ki, std::size_t ci, std::size_t t) -> TrialRecord& {
    return slots[(ki * cells.size() + ci) * trials + t];
  };

  const MatrixEnsemble me{spec.matrix_kind, spec.n, spec.m, spec.normalize_columns};
  parallel_for(n_k * trials, jobs, [&](std::size_t work) {
    const std::size_t ki = work / trials;
    const std::size_t t = work % trials;
    const Index k = spec.k_values[ki];
    const SignalEnsemble se{spec.signal_dist, spec.m, k};
    const auto seed = trial_seed(spec.master_seed, spec.n, spec.m, k, static_cast<Index>(t));
    const SparseProblem p = make_problem(me, se, spec.noise_sigma, seed);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      slot(ki, ci, t) = run_trial(p, cells[ci].alg, cells[ci].L, static_cast<Index>(t));
    }
  });

  SweepResult out;
  out.config_hash = config_hash(canonical_text(spec));
  out.trials.reserve(slots.size());
  for (std::size_t ki = 0; ki < n_k; ++ki) {
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      std::vector<TrialOutcome> outcomes;
      outcomes.reserve(trials);
      AggregateRecord agg;
      agg.n = spec.n;
      agg.m = spec.m;
      for (std::size_t t = 0; t < trials; ++t) {
        const auto& rec = slot(ki, ci, t);
        out.trials.push_back(rec);
        outcomes.push_back(rec.outcome);
        agg.capped = agg.capped || rec.capped;
      }
      agg.report = aggregate(std::move(outcomes));
      out.aggregates.push_back(std::move(agg));
    }
  }
  return out;
}

std::string trials_csv_text(const SweepResult& r) {
  std::ostringstream os;
  os << file_header(r.config_hash, "trials mse=|x-x_hat|^2/m");
  os << "algorithm,n,m,k,L,trial,seed,err_components,exact_support,mse_full,mse_topk,residual_norm,"
        "iterations,elapsed_s\n";
  for (const auto& rec : r.trials) {
    const auto& o = rec.outcome;
    os << o.algorithm << ',' << rec.n << ',' << rec.m << ',' << o.k << ',' << o.L << ',' << o.trial << ','
       << rec.seed << ',' << format_real(o.component_recovery) << ',' << (o.exact_support ? 1 : 0) << ','
       << format_real(o.mse_full) << ',' << format_real(o.mse_topk) << ',' << format_real(o.residual_norm)
       << ',' << o.iterations << ',' << format_real(o.elapsed_s) << '\n';
  }
  return os.str();
}

std::string aggregate_csv_text(const SweepResult& r) {
  std::ostringstream os;
  os << file_header(r.config_hash, "aggregate mse=|x-x_hat|^2/m err=component-level");
  os << "algorithm,n,m,k,L,trials,err,err_stddev,exact_rate,mse,mse_topk,time_mean_s,time_stddev_s,capped\n";
  for (const auto& a : r.aggregates) {
    const auto& m = a.report;
    os << m.algorithm << ',' << a.n << ',' << a.m << ',' << m.k << ',' << m.L << ',' << m.trials << ','
       << format_real(m.err) << ',' << format_real(m.err_stddev) << ',' << format_real(m.exact_rate) << ','
       << format_real(m.mse) << ',' << format_real(m.mse_topk) << ',' << format_real(m.time_mean) << ','
       << format_real(m.time_stddev) << ',' << (a.capped ? 1 : 0) << '\n';
  }
  return os.str();
}

SweepFiles write_sweep(const ExperimentSpec& spec, const SweepResult& result) {
  ensure_dir(spec.output_dir);
  SweepFiles files;
  files.trials_csv = (fs::path(spec.output_dir) / "trials.csv").string();
  files.aggregate_csv = (fs::path(spec.output_dir) / "aggregate.csv").string();
  write_text(files.trials_csv, trials_csv_text(result));
  write_text(files.aggregate_csv, aggregate_csv_text(result));
  return files;
}

double PhasePoint::stderr_rate() const {
  if (trials == 0) return 0.0;
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

PhaseResult run_phase_transition(const PhaseTransitionSpec& spec, unsigned jobs) {
  validate(spec);
  const auto trials = static_cast<std::size_t>(spec.trials);
  const auto n_count = spec.n_values.size();
  std::vector<char> success(n_count * trials, 0);

  const SignalEnsemble se{spec.signal_dist, spec.m, spec.k};
  parallel_for(n_count * trials, jobs, [&](std::size_t work) {
    const std::size_t ni = work / trials;
    const std::size_t t = work % trials;
    const MatrixEnsemble me{spec.matrix_kind, spec.n_values[ni], spec.m, spec.normalize_columns};
    // n is left out of the seed so trial t draws the same signal at every n.
    const auto seed = trial_seed(spec.master_seed, 0, spec.m, spec.k, static_cast<Index>(t));
    const SparseProblem p = make_problem(me, se, 0.0, seed);
    const auto res = ols_run(p.a, p.y, spec.k);
    success[work] = exact_support(res.support, p.support_true, res.x_hat, spec.k) ? 1 : 0;
  });

  PhaseResult out;
  out.config_hash = config_hash(canonical_text(spec));
  for (std::size_t ni = 0; ni < n_count; ++ni) {
    PhasePoint pt;
    pt.n = spec.n_values[ni];
    pt.trials = spec.trials;
    pt.trial_success.assign(success.begin() + static_cast<std::ptrdiff_t>(ni * trials),
                            success.begin() + static_cast<std::ptrdiff_t>((ni + 1) * trials));
    for (char s : pt.trial_success) pt.successes += s;
    if (!out.threshold_n && pt.rate() >= 1.0 - spec.delta_target) out.threshold_n = pt.n;
    out.points.push_back(pt);
  }
  return out;
}

std::string phase_csv_text(const PhaseTransitionSpec& spec, const PhaseResult& r) {
  std::ostringstream os;
  os << file_header(r.config_hash, "phase-transition algorithm=ols");
  os << "# m=" << spec.m << " k=" << spec.k << " delta_target=" << format_real(spec.delta_target)
     << " threshold_n=" << (r.threshold_n ? std::to_string(*r.threshold_n) : std::string("none")) << '\n';
  os << "n,trials,successes,success_rate,stderr\n";
  for (const auto& p : r.points) {
    os << p.n << ',' << p.trials << ',' << p.successes << ',' << format_real(p.rate()) << ','
       << format_real(p.stderr_rate()) << '\n';
  }
  return os.str();
}

std::string write_phase_transition(const PhaseTransitionSpec& spec, const PhaseResult& result) {
  ensure_dir(spec.output_dir);
  const auto path = (fs::path(spec.output_dir) / "phase_transition.csv").string();
  write_text(path, phase_csv_text(spec, result));
  return path;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidDimension, "slope needs >= 2 paired points");
  }
  const auto count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorCode::InvalidDimension, "log of non-positive value");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= count;
  my /= count;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ComplexityResult run_complexity_probe(const ComplexityProbeSpec& spec) {
  if (spec.repetitions < 1 || spec.m_values.size() < 2) {
    throw Error(ErrorCode::ConfigError, "complexity probe needs >= 2 m values and >= 1 repetition");
  }
  ComplexityResult out;
  std::vector<double> ms, ts;
  for (Index m : spec.m_values) {
    const MatrixEnsemble me{MatrixKind::Gaussian, spec.n, m, false};
    const SignalEnsemble se{SignalDist::GaussianUnit, m, spec.k};
    const SparseProblem p = make_problem(me, se, 0.0, derive_seed(spec.seed, static_cast<std::uint64_t>(m)));
    SolverConfig cfg;
    cfg.L = spec.L;
    cfg.k = spec.k;
    gols_run(p.a, p.y, cfg);  // warm-up
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(spec.repetitions));
    for (Index r = 0; r < spec.repetitions; ++r) times.push_back(gols_run(p.a, p.y, cfg).elapsed_s);
    const auto mid = times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2);
    std::nth_element(times.begin(), mid, times.end());
    out.points.push_back({m, *mid});
    ms.push_back(static_cast<double>(m));
    ts.push_back(*mid);
  }
  out.slope = log_log_slope(ms, ts);
  return out;
}

}  // namespace gols
