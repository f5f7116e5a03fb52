#include "gols/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gols/rng.hpp"

namespace gols {

std::string_view to_string(MatrixKind kind) noexcept {
  return kind == MatrixKind::Gaussian ? "gaussian" : "bernoulli";
}

std::string_view to_string(SignalDist dist) noexcept {
  return dist == SignalDist::GaussianUnit ? "gaussian-unit" : "rademacher";
}

MatrixKind parse_matrix_kind(std::string_view s) {
  if (s == "gaussian") return MatrixKind::Gaussian;
  if (s == "bernoulli") return MatrixKind::Bernoulli;
  throw Error(ErrorCode::ParseError, "unknown matrix kind '" + std::string(s) + "'");
}

SignalDist parse_signal_dist(std::string_view s) {
  if (s == "gaussian-unit" || s == "gaussian") return SignalDist::GaussianUnit;
  if (s == "rademacher") return SignalDist::Rademacher;
  throw Error(ErrorCode::ParseError, "unknown signal distribution '" + std::string(s) + "'");
}

Matrix gen_matrix(const MatrixEnsemble& e, std::uint64_t seed) {
  if (e.n < 1 || e.m < 1) throw Error(ErrorCode::InvalidDimension, "matrix ensemble needs n, m >= 1");
  CounterRng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(e.n));
  Matrix a(e.n, e.m);
  for (Index i = 0; i < e.n; ++i) {
    for (Index j = 0; j < e.m; ++j) {
      a(i, j) = scale * (e.kind == MatrixKind::Gaussian ? rng.next_normal() : rng.next_sign());
    }
  }
  if (e.normalize_columns) {
    for (Index j = 0; j < e.m; ++j) {
      const double norm = a.col(j).norm();
      if (norm > 0.0) a.col(j) /= norm;
    }
  }
  return a;
}

SparseSignal gen_signal(const SignalEnsemble& e, std::uint64_t seed) {
  if (e.m < 1) throw Error(ErrorCode::InvalidDimension, "signal length must be >= 1");
  if (e.k < 1 || e.k > e.m) throw Error(ErrorCode::InvalidSparsity, "need 1 <= k <= m");

  CounterRng pick(derive_seed(seed, Stream::Support));
  std::vector<Index> pool(static_cast<std::size_t>(e.m));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < e.k; ++i) {
    const auto j = i + static_cast<Index>(pick.next_below(static_cast<std::uint64_t>(e.m - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  SparseSignal s;
  s.support.assign(pool.begin(), pool.begin() + e.k);
  std::sort(s.support.begin(), s.support.end());

  CounterRng values(derive_seed(seed, Stream::Nonzeros));
  s.x = Vector::Zero(e.m);
  for (Index idx : s.support) {
    s.x(idx) = e.dist == SignalDist::GaussianUnit ? values.next_normal() : values.next_sign();
  }
  return s;
}

SparseProblem make_problem(const MatrixEnsemble& me, const SignalEnsemble& se,
                           double noise_sigma, std::uint64_t seed) {
  if (me.m != se.m) throw Error(ErrorCode::InvalidDimension, "matrix and signal disagree on m");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(ErrorCode::InvalidConfig, "noise_sigma must be finite and >= 0");
  }
  SparseProblem p;
  p.seed = seed;
  p.noise_sigma = noise_sigma;
  p.matrix_kind = me.kind;
  p.signal_dist = se.dist;
  p.normalize_columns = me.normalize_columns;
  p.a = gen_matrix(me, derive_seed(seed, Stream::Matrix));
  auto signal = gen_signal(se, seed);
  p.x_true = std::move(signal.x);
  p.support_true = std::move(signal.support);
  p.y = p.a * p.x_true;
  if (noise_sigma > 0.0) {
    CounterRng noise(derive_seed(seed, Stream::Noise));
    for (Index i = 0; i < p.y.size(); ++i) p.y(i) += noise_sigma * noise.next_normal();
  }
  return p;
}

}  // namespace gols
