#include "gols/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gols {

double MetricsReport::err_stderr() const {
  return trials > 0 ? err_stddev / std::sqrt(static_cast<double>(trials)) : 0.0;
}

double err_components(const std::vector<Index>& s_est, const std::vector<Index>& s_true, Index k) {
  if (k < 1) throw Error(ErrorCode::InvalidSparsity, "k must be >= 1");
  const std::set<Index> truth(s_true.begin(), s_true.end());
  const std::set<Index> est(s_est.begin(), s_est.end());
  Index hits = 0;
  for (Index i : est) hits += truth.count(i) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(k);
}

std::vector<Index> top_k_support(const std::vector<Index>& s_est, const Vector& x_hat, Index k) {
  std::vector<Index> order(s_est);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double va = std::abs(x_hat(a));
    const double vb = std::abs(x_hat(b));
    if (va != vb) return va > vb;
    return a < b;
  });
  if (static_cast<Index>(order.size()) > k) order.resize(static_cast<std::size_t>(k));
  std::sort(order.begin(), order.end());
  return order;
}

Vector truncate_top_k(const std::vector<Index>& s_est, const Vector& x_hat, Index k) {
  Vector out = Vector::Zero(x_hat.size());
  for (Index i : top_k_support(s_est, x_hat, k)) out(i) = x_hat(i);
  return out;
}

bool exact_support(const std::vector<Index>& s_est, const std::vector<Index>& s_true,
                   const Vector& x_hat, Index k) {
  const auto top = top_k_support(s_est, x_hat, k);
  return std::all_of(s_true.begin(), s_true.end(), [&](Index i) {
    return std::binary_search(top.begin(), top.end(), i);
  });
}

double mse(const Vector& x_true, const Vector& x_hat) {
  if (x_true.size() != x_hat.size() || x_true.size() == 0) {
    throw Error(ErrorCode::InvalidDimension, "mse needs equal, non-zero lengths");
  }
  return (x_true - x_hat).squaredNorm() / static_cast<double>(x_true.size());
}

namespace {

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

template <typename Get>
MeanStd two_pass(const std::vector<TrialOutcome>& v, Get get) {
  MeanStd out;
  for (const auto& o : v) out.mean += get(o);
  out.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (const auto& o : v) {
      const double d = get(o) - out.mean;
      ss += d * d;
    }
    out.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return out;
}

}  // namespace

MetricsReport aggregate(std::vector<TrialOutcome> outcomes) {
  if (outcomes.empty()) throw Error(ErrorCode::EmptyAggregate, "no outcomes to aggregate");
  const auto& head = outcomes.front();
  for (const auto& o : outcomes) {
    if (o.algorithm != head.algorithm || o.k != head.k || o.L != head.L) {
      throw Error(ErrorCode::InvalidConfig, "outcomes span more than one grid cell");
    }
  }
  std::stable_sort(outcomes.begin(), outcomes.end(),
                   [](const TrialOutcome& a, const TrialOutcome& b) { return a.trial < b.trial; });

  MetricsReport r;
  r.algorithm = head.algorithm;
  r.k = head.k;
  r.L = head.L;
  r.trials = static_cast<Index>(outcomes.size());
  const auto err = two_pass(outcomes, [](const TrialOutcome& o) { return o.component_recovery; });
  r.err = err.mean;
  r.err_stddev = err.stddev;
  r.exact_rate =
      two_pass(outcomes, [](const TrialOutcome& o) { return o.exact_support ? 1.0 : 0.0; }).mean;
  r.mse = two_pass(outcomes, [](const TrialOutcome& o) { return o.mse_full; }).mean;
  r.mse_topk = two_pass(outcomes, [](const TrialOutcome& o) { return o.mse_topk; }).mean;
  const auto t = two_pass(outcomes, [](const TrialOutcome& o) { return o.elapsed_s; });
  r.time_mean = t.mean;
  r.time_stddev = t.stddev;
  return r;
}

}  // namespace gols
