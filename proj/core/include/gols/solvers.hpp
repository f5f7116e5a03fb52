#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gols/linalg.hpp"

namespace gols {

enum class DegeneracyPolicy {
  /// Drop a degenerate candidate and take the next-best-scoring one.
  SkipColumn,
  /// End the run (StopReason::DegenerateAbort) at the first degenerate column.
  Abort,
};

struct SolverConfig {
  Index L = 1;  ///< columns selected per iteration
  Index k = 1;  ///< target sparsity (iteration budget)
  /// Stop once |P^perp y| <= residual_tol * |y|. Unset: iteration count only.
  std::optional<double> residual_tol;
  DegeneracyPolicy degeneracy_policy = DegeneracyPolicy::SkipColumn;
  /// Zero means ProjectionTracker::default_degeneracy_tol(n).
  double degeneracy_tol = 0.0;
};

enum class StopReason {
  IterationLimit,
  ResidualTolerance,
  /// Every remaining candidate was degenerate (or none remained).
  CandidatesExhausted,
  DegenerateAbort,
};

struct RecoveryResult {
  /// Selected column indices (0-based) in selection order.
  std::vector<Index> support;
  /// Length m; zero outside `support`.
  Vector x_hat;
  double residual_norm = 0.0;
  Index iterations = 0;
  double elapsed_s = 0.0;
  StopReason stop_reason = StopReason::IterationLimit;
  /// Residual norm before the first iteration and after each iteration.
  std::vector<double> residual_history;
  /// True when the iteration budget was cut by the min(k, floor(n/L)) cap.
  bool capped = false;
};

/// |y^T D a| / |D a| where D is the tracker's current projector.
/// Throws DegenerateColumn when |D a| <= the tracker's tolerance.
double score_column(const Vector& y, const ProjectionTracker& tracker, const Vector& a);

/// Indices of the min(L, size) largest scores: descending score, ties to the
/// smaller index. Throws EmptyCandidates on an empty list.
std::vector<Index> select_top_L(std::vector<std::pair<Index, double>> scores, Index L);

/// Generalized orthogonal least squares: L columns per iteration,
/// min(k, floor(n/L)) iterations, final least-squares fit on the support.
RecoveryResult gols_run(const Matrix& a, const Vector& y, const SolverConfig& cfg);

/// OLS: gols_run with L = 1.
RecoveryResult ols_run(const Matrix& a, const Vector& y, Index k);

/// Orthogonal matching pursuit: pick arg max |a_j^T r|, refit, repeat.
RecoveryResult omp_run(const Matrix& a, const Vector& y, Index k);

struct ExhaustiveResult {
  std::vector<Index> support;  ///< ascending
  Vector x_hat;
  double residual_norm = 0.0;
};

inline constexpr double kExhaustiveSubsetLimit = 1e6;

/// Global minimizer of |y - A x| over all k-subsets (brute force).
/// Throws TooLarge when C(m, k) exceeds kExhaustiveSubsetLimit.
ExhaustiveResult exhaustive_oracle(const Matrix& a, const Vector& y, Index k);

}  // namespace gols
