#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gols/linalg.hpp"

namespace gols {

enum class MatrixKind { Gaussian, Bernoulli };
enum class SignalDist { GaussianUnit, Rademacher };

std::string_view to_string(MatrixKind kind) noexcept;
std::string_view to_string(SignalDist dist) noexcept;
/// Accepts "gaussian" / "bernoulli"; throws ParseError otherwise.
MatrixKind parse_matrix_kind(std::string_view s);
/// Accepts "gaussian-unit" (alias "gaussian") / "rademacher".
SignalDist parse_signal_dist(std::string_view s);

struct MatrixEnsemble {
  MatrixKind kind = MatrixKind::Gaussian;
  Index n = 1;
  Index m = 1;
  /// Rescale every column to exact unit l2 norm after drawing.
  bool normalize_columns = false;
};

struct SignalEnsemble {
  SignalDist dist = SignalDist::GaussianUnit;
  Index m = 1;
  Index k = 1;
};

struct SparseSignal {
  Vector x;
  std::vector<Index> support;  ///< ascending
};

struct SparseProblem {
  Matrix a;
  Vector x_true;
  std::vector<Index> support_true;  ///< ascending, size k
  Vector y;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  MatrixKind matrix_kind = MatrixKind::Gaussian;
  SignalDist signal_dist = SignalDist::GaussianUnit;
  bool normalize_columns = false;

  Index n() const noexcept { return a.rows(); }
  Index m() const noexcept { return a.cols(); }
  Index k() const noexcept { return static_cast<Index>(support_true.size()); }
};

/// Gaussian: i.i.d. N(0, 1/n). Bernoulli: i.i.d. uniform on {+-1/sqrt(n)}.
/// Entries are drawn in row-major order from one CounterRng keyed by `seed`.
Matrix gen_matrix(const MatrixEnsemble& e, std::uint64_t seed);

/// Uniform k-subset support (partial Fisher-Yates on the Support stream of
/// `seed`), non-zeros from the Nonzeros stream.
SparseSignal gen_signal(const SignalEnsemble& e, std::uint64_t seed);

/// y = A x + e with sub-seeds derive_seed(seed, Stream::{Matrix, Support,
/// Nonzeros, Noise}); e is N(0, noise_sigma^2) i.i.d., or zero when sigma = 0.
SparseProblem make_problem(const MatrixEnsemble& me, const SignalEnsemble& se,
                           double noise_sigma, std::uint64_t seed);

// Fixture format (text, all reals printed with %.17g):
//   gols-fixture 1
//   n m k
//   matrix_kind signal_dist normalize_columns seed noise_sigma
//   support_0 ... support_{k-1}
//   n lines of m entries (A row-major)
//   x_true (m entries, one line)
//   y (n entries, one line)
void write_fixture(std::ostream& os, const SparseProblem& p);
SparseProblem read_fixture(std::istream& is);
void save_fixture(const std::string& path, const SparseProblem& p);
SparseProblem load_fixture(const std::string& path);

/// printf("%.17g") of a double.
std::string format_real(double v);

}  // namespace gols
