#include "gols/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace gols {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate_problem(const Matrix& a, const Vector& y, Index k) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw Error(ErrorCode::InvalidDimension, "coefficient matrix must be non-empty");
  }
  if (a.rows() != y.size()) {
    throw Error(ErrorCode::InvalidDimension, "rows(A) != len(y)");
  }
  if (k < 1) throw Error(ErrorCode::InvalidSparsity, "k must be >= 1");
  if (k > a.cols()) throw Error(ErrorCode::InvalidSparsity, "k must be <= cols(A)");
  require_finite(a, "A");
  require_finite(y, "y");
}

void finish(RecoveryResult& res, const Matrix& a, const Vector& y) {
  res.x_hat = Vector::Zero(a.cols());
  if (!res.support.empty()) {
    const Vector coef = least_squares(gather_columns(a, res.support), y);
    for (std::size_t i = 0; i < res.support.size(); ++i) {
      res.x_hat(res.support[i]) = coef(static_cast<Index>(i));
    }
  }
  res.residual_norm = (y - a * res.x_hat).norm();
}

}  // namespace

double score_column(const Vector& y, const ProjectionTracker& tracker, const Vector& a) {
  if (y.size() != tracker.dimension()) {
    throw Error(ErrorCode::InvalidDimension, "len(y) != projector dimension");
  }
  const Vector da = tracker.apply(a);
  const double norm = da.norm();
  if (!(norm > tracker.degeneracy_tol())) {
    throw Error(ErrorCode::DegenerateColumn, "candidate column is annihilated by the projector");
  }
  return std::abs(y.dot(da)) / norm;
}

std::vector<Index> select_top_L(std::vector<std::pair<Index, double>> scores, Index L) {
  if (scores.empty()) throw Error(ErrorCode::EmptyCandidates, "no candidates to select from");
  if (L < 1) throw Error(ErrorCode::InvalidConfig, "L must be >= 1");
  const auto take = static_cast<std::size_t>(std::min<Index>(L, static_cast<Index>(scores.size())));
  auto better = [](const auto& lhs, const auto& rhs) {
    if (lhs.second != rhs.second) return lhs.second > rhs.second;
    return lhs.first < rhs.first;
  };
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(take), scores.end(),
                    better);
  std::vector<Index> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(scores[i].first);
  return out;
}

RecoveryResult gols_run(const Matrix& a, const Vector& y, const SolverConfig& cfg) {
  validate_problem(a, y, cfg.k);
  const Index n = a.rows();
  const Index m = a.cols();
  if (cfg.L < 1) throw Error(ErrorCode::InvalidConfig, "L must be >= 1");
  if (cfg.L > n) throw Error(ErrorCode::InvalidConfig, "L must be <= rows(A)");
  if (cfg.residual_tol && !(*cfg.residual_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "residual_tol must be >= 0");
  }

  const auto start = Clock::now();
  const double tol =
      cfg.degeneracy_tol > 0.0 ? cfg.degeneracy_tol : ProjectionTracker::default_degeneracy_tol(n);
  ProjectionTracker tracker(n, tol);

  const Index max_iterations = std::min(cfg.k, n / cfg.L);
  RecoveryResult res;
  res.capped = max_iterations < cfg.k;
  res.support.reserve(static_cast<std::size_t>(max_iterations * cfg.L));

  std::vector<bool> available(static_cast<std::size_t>(m), true);
  const double y_norm = y.norm();
  res.residual_history.push_back(y_norm);

  bool aborted = false;
  for (Index iter = 0; iter < max_iterations && !aborted; ++iter) {
    if (cfg.residual_tol && tracker.apply(y).norm() <= *cfg.residual_tol * y_norm) {
      res.stop_reason = StopReason::ResidualTolerance;
      break;
    }

    // Step 1: score every remaining candidate by |y^T D a_j| / |D a_j|.
    const Matrix da = tracker.matrix() * a;
    const Vector numer = da.transpose() * y;
    std::vector<std::pair<Index, double>> scores;
    scores.reserve(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) {
      if (!available[static_cast<std::size_t>(j)]) continue;
      const double norm = da.col(j).norm();
      if (!(norm > tol)) {
        if (cfg.degeneracy_policy == DegeneracyPolicy::Abort) {
          aborted = true;
          break;
        }
        available[static_cast<std::size_t>(j)] = false;
        continue;
      }
      scores.emplace_back(j, std::abs(numer(j)) / norm);
    }
    if (aborted) {
      res.stop_reason = StopReason::DegenerateAbort;
      break;
    }
    if (scores.empty()) {
      res.stop_reason = StopReason::CandidatesExhausted;
      break;
    }

    // Steps 2-3: take the L best in score order and downdate D once per column.
    const auto ranked = select_top_L(std::move(scores), static_cast<Index>(m));
    Index taken = 0;
    for (Index j : ranked) {
      if (taken == cfg.L) break;
      available[static_cast<std::size_t>(j)] = false;
      try {
        tracker.absorb(a.col(j));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateColumn) throw;
        if (cfg.degeneracy_policy == DegeneracyPolicy::Abort) {
          aborted = true;
          break;
        }
        continue;
      }
      res.support.push_back(j);
      ++taken;
    }
    if (taken > 0) {
      tracker.stabilize();
      ++res.iterations;
      res.residual_history.push_back(tracker.apply(y).norm());
    }
    if (aborted) {
      res.stop_reason = StopReason::DegenerateAbort;
    } else if (taken == 0) {
      res.stop_reason = StopReason::CandidatesExhausted;
      break;
    }
  }

  finish(res, a, y);
  res.elapsed_s = seconds_since(start);
  return res;
}

RecoveryResult ols_run(const Matrix& a, const Vector& y, Index k) {
  SolverConfig cfg;
  cfg.L = 1;
  cfg.k = k;
  return gols_run(a, y, cfg);
}

RecoveryResult omp_run(const Matrix& a, const Vector& y, Index k) {
  validate_problem(a, y, k);
  const Index n = a.rows();
  const Index m = a.cols();
  const auto start = Clock::now();

  const Index max_iterations = std::min(k, n);
  RecoveryResult res;
  res.capped = max_iterations < k;
  std::vector<bool> available(static_cast<std::size_t>(m), true);
  Vector r = y;
  res.residual_history.push_back(r.norm());

  for (Index iter = 0; iter < max_iterations; ++iter) {
    const Vector corr = a.transpose() * r;
    Index best = -1;
    double best_val = -1.0;
    for (Index j = 0; j < m; ++j) {
      if (!available[static_cast<std::size_t>(j)]) continue;
      const double v = std::abs(corr(j));
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    if (best < 0) {
      res.stop_reason = StopReason::CandidatesExhausted;
      break;
    }
    available[static_cast<std::size_t>(best)] = false;
    res.support.push_back(best);
    const Matrix a_s = gather_columns(a, res.support);
    r = y - a_s * least_squares(a_s, y);
    ++res.iterations;
    res.residual_history.push_back(r.norm());
  }

  finish(res, a, y);
  res.elapsed_s = seconds_since(start);
  return res;
}

ExhaustiveResult exhaustive_oracle(const Matrix& a, const Vector& y, Index k) {
  validate_problem(a, y, k);
  const Index m = a.cols();

  double count = 1.0;
  for (Index i = 0; i < k; ++i) {
    count = count * static_cast<double>(m - i) / static_cast<double>(i + 1);
  }
  if (count > kExhaustiveSubsetLimit * (1.0 + 1e-12)) {
    throw Error(ErrorCode::TooLarge, "C(m, k) = " + std::to_string(count) + " subsets exceeds limit");
  }

  const double tie = 1e-12 * std::max(1.0, y.norm());
  std::vector<Index> subset(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;

  ExhaustiveResult best;
  bool found = false;
  for (;;) {
    try {
      const Matrix a_s = gather_columns(a, subset);
      const Vector coef = least_squares(a_s, y);
      const double r = (y - a_s * coef).norm();
      // Lexicographic enumeration: an exact tie keeps the earlier subset.
      if (!found || r < best.residual_norm - tie) {
        found = true;
        best.support = subset;
        best.residual_norm = r;
        best.x_hat = Vector::Zero(m);
        for (Index i = 0; i < k; ++i) best.x_hat(subset[static_cast<std::size_t>(i)]) = coef(i);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RankDeficient && e.code() != ErrorCode::InvalidDimension) throw;
    }

    // Advance to the next k-subset in lexicographic order.
    Index pos = k - 1;
    while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
    if (pos < 0) break;
    ++subset[static_cast<std::size_t>(pos)];
    for (Index i = pos + 1; i < k; ++i) {
      subset[static_cast<std::size_t>(i)] = subset[static_cast<std::size_t>(i - 1)] + 1;
    }
  }

  if (!found) throw Error(ErrorCode::RankDeficient, "every k-subset is rank deficient");
  return best;
}

}  // namespace gols
