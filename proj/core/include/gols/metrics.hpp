#pragma once

#include <string>
#include <vector>

#include "gols/linalg.hpp"

namespace gols {

struct TrialOutcome {
  std::string algorithm;
  Index k = 0;
  Index L = 1;
  Index trial = 0;
  double component_recovery = 0.0;  ///< |S_est ∩ S_true| / k over the full support
  bool exact_support = false;       ///< S_true ⊆ top-k of S_est by |x_hat|
  double mse_full = 0.0;
  double mse_topk = 0.0;
  double residual_norm = 0.0;
  Index iterations = 0;
  double elapsed_s = 0.0;
};

struct MetricsReport {
  std::string algorithm;
  Index k = 0;
  Index L = 1;
  Index trials = 0;
  double err = 0.0;         ///< mean component_recovery
  double err_stddev = 0.0;  ///< sample stddev of component_recovery
  double exact_rate = 0.0;
  double mse = 0.0;
  double mse_topk = 0.0;
  double time_mean = 0.0;
  double time_stddev = 0.0;

  /// Standard error of `err`.
  double err_stderr() const;
};

/// |S_est ∩ S_true| / k. Throws InvalidSparsity when k == 0.
double err_components(const std::vector<Index>& s_est, const std::vector<Index>& s_true, Index k);

/// The min(k, |S_est|) entries of S_est with the largest |x_hat|,
/// ties to the smaller index, returned ascending.
std::vector<Index> top_k_support(const std::vector<Index>& s_est, const Vector& x_hat, Index k);

/// x_hat restricted to top_k_support (no refit).
Vector truncate_top_k(const std::vector<Index>& s_est, const Vector& x_hat, Index k);

bool exact_support(const std::vector<Index>& s_est, const std::vector<Index>& s_true,
                   const Vector& x_hat, Index k);

/// |x_true - x_hat|^2 / m.
double mse(const Vector& x_true, const Vector& x_hat);

/// Means and sample standard deviations over one grid cell. Outcomes are
/// summed in trial order, so the result does not depend on arrival order.
/// Throws EmptyAggregate on an empty list and InvalidConfig on mixed cells.
MetricsReport aggregate(std::vector<TrialOutcome> outcomes);

}  // namespace gols
