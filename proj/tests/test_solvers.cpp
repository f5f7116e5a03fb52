#include <doctest.h>

#include <cmath>
#include <set>

#include "gols/ensembles.hpp"
#include "gols/experiment.hpp"
#include "gols/solvers.hpp"
#include "oracles.hpp"

using gols::ErrorCode;
using gols::Index;
using gols::Matrix;
using gols::ProjectionTracker;
using gols::SolverConfig;
using gols::Vector;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const gols::Error& e) {
    return e.code();
  }
  FAIL("expected gols::Error");
  return ErrorCode::IoError;
}

void check_result_invariants(const gols::RecoveryResult& r, const Matrix& a, const Vector& y) {
  std::set<Index> uniq(r.support.begin(), r.support.end());
  CHECK(uniq.size() == r.support.size());
  CHECK(static_cast<Index>(r.support.size()) <= a.rows());
  for (Index j = 0; j < a.cols(); ++j) {
    if (!uniq.count(j)) CHECK(r.x_hat(j) == 0.0);
  }
  CHECK(std::abs(r.residual_norm - (y - a * r.x_hat).norm()) <= 1e-8 * std::max(1.0, y.norm()));
  for (std::size_t i = 1; i < r.residual_history.size(); ++i) {
    CHECK(r.residual_history[i] <= r.residual_history[i - 1] * (1.0 + 1e-12) + 1e-15);
  }
}

}  // namespace

TEST_CASE("score_column") {
  ProjectionTracker fresh(3);
  CHECK(gols::score_column(Vector::Unit(3, 0), fresh, Vector::Unit(3, 0)) == 1.0);
  CHECK(gols::score_column(Vector::Unit(3, 1), fresh, Vector::Unit(3, 0)) == 0.0);

  ProjectionTracker t(3);
  t.absorb(Vector::Unit(3, 0));
  CHECK(code_of([&] { gols::score_column(Vector::Ones(3), t, Vector::Unit(3, 0)); }) ==
        ErrorCode::DegenerateColumn);

  // |y^T D a| / |D a| = |y| |cos(angle between y and D a)|
  oracle::TestRng rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    const Index n = rng.uniform_index(3, 12);
    const Matrix b = rng.gaussian(n, rng.uniform_index(0, n - 2) + 1);
    ProjectionTracker tr(n);
    for (Index j = 0; j < b.cols() - 1; ++j) tr.absorb(b.col(j));
    const Vector y = rng.gaussian_vector(n);
    const Vector a = rng.gaussian_vector(n);
    const Vector da = oracle::complement_projector(b.leftCols(b.cols() - 1)) * a;
    const double cosine = y.dot(da) / (y.norm() * da.norm());
    CHECK(gols::score_column(y, tr, a) == doctest::Approx(y.norm() * std::abs(cosine)).epsilon(1e-10));
  }
}

TEST_CASE("select_top_L") {
  std::vector<std::pair<Index, double>> scores = {{3, 0.9}, {7, 0.9}, {1, 0.2}};
  CHECK(gols::select_top_L(scores, 1) == std::vector<Index>{3});
  CHECK(gols::select_top_L(scores, 2) == std::vector<Index>{3, 7});
  CHECK(gols::select_top_L(scores, 10) == std::vector<Index>{3, 7, 1});
  CHECK(code_of([] { gols::select_top_L({}, 2); }) == ErrorCode::EmptyCandidates);

  oracle::TestRng rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<std::pair<Index, double>> s;
    for (Index i = 0; i < 10; ++i) s.emplace_back(i * 3 + 1, std::round(u(rng.engine()) * 8.0) / 8.0);
    std::shuffle(s.begin(), s.end(), rng.engine());
    CHECK(gols::select_top_L(s, 4) == oracle::top_by_full_sort(s, 4));
  }
}

TEST_CASE("gols recovers a single column exactly") {
  oracle::TestRng rng(23);
  const Matrix a = rng.gaussian(6, 9);
  Vector x = Vector::Zero(9);
  x(2) = 1.7;
  const Vector y = a * x;
  SolverConfig cfg;
  cfg.k = 1;
  cfg.L = 1;
  const auto r = gols::gols_run(a, y, cfg);
  CHECK(r.support == std::vector<Index>{2});
  CHECK(r.residual_norm <= 1e-9 * y.norm());
  CHECK(r.x_hat(2) == doctest::Approx(1.7).epsilon(1e-12));
  check_result_invariants(r, a, y);
}

TEST_CASE("gols iteration count is capped at floor(n/L)") {
  oracle::TestRng rng(24);
  const Matrix a = rng.gaussian(8, 20);
  const Vector y = rng.gaussian_vector(8);
  SolverConfig cfg;
  cfg.L = 3;
  cfg.k = 8 / 3 + 1;
  const auto r = gols::gols_run(a, y, cfg);
  CHECK(r.iterations == 2);
  CHECK(r.capped);
  CHECK(r.support.size() == 6);
  check_result_invariants(r, a, y);

  cfg.k = 2;
  const auto r2 = gols::gols_run(a, y, cfg);
  CHECK_FALSE(r2.capped);
  CHECK(r2.support == r.support);
}

TEST_CASE("gols preconditions") {
  const Matrix a = Matrix::Identity(4, 6);
  const Vector y = Vector::Ones(4);
  SolverConfig cfg;
  cfg.k = 0;
  CHECK(code_of([&] { gols::gols_run(a, y, cfg); }) == ErrorCode::InvalidSparsity);
  cfg.k = 7;
  CHECK(code_of([&] { gols::gols_run(a, y, cfg); }) == ErrorCode::InvalidSparsity);
  cfg.k = 2;
  cfg.L = 5;
  CHECK(code_of([&] { gols::gols_run(a, y, cfg); }) == ErrorCode::InvalidConfig);
  cfg.L = 0;
  CHECK(code_of([&] { gols::gols_run(a, y, cfg); }) == ErrorCode::InvalidConfig);
  cfg.L = 1;
  CHECK(code_of([&] { gols::gols_run(a, Vector::Ones(3), cfg); }) == ErrorCode::InvalidDimension);
  Vector bad = y;
  bad(1) = INFINITY;
  CHECK(code_of([&] { gols::gols_run(a, bad, cfg); }) == ErrorCode::NonFinite);
}

TEST_CASE("gols with L = 1 is ols, step for step") {
  oracle::TestRng rng(25);
  for (int rep = 0; rep < 30; ++rep) {
    const Index n = rng.uniform_index(6, 20);
    const Index m = rng.uniform_index(n, 2 * n);
    const Index k = rng.uniform_index(1, n / 2);
    const auto in = rng.sparse_instance(n, m, k);
    SolverConfig cfg;
    cfg.L = 1;
    cfg.k = k;
    const auto g = gols::gols_run(in.a, in.y, cfg);
    const auto o = gols::ols_run(in.a, in.y, k);
    CHECK(g.support == o.support);
    CHECK(g.x_hat == o.x_hat);
    CHECK(g.residual_norm == o.residual_norm);
  }
}

TEST_CASE("ols picks the arg-min-residual column at every step") {
  oracle::TestRng rng(26);
  for (int rep = 0; rep < 30; ++rep) {
    const auto in = rng.sparse_instance(8, 10, 2);
    const Vector y = in.y + rng.gaussian_vector(8, 0.05);
    const Index k = 4;
    const auto r = gols::ols_run(in.a, y, k);
    REQUIRE(r.support.size() == static_cast<std::size_t>(k));
    std::vector<Index> prefix;
    for (Index step = 0; step < k; ++step) {
      CHECK(r.support[static_cast<std::size_t>(step)] == oracle::ols_next_index(in.a, y, prefix));
      prefix.push_back(r.support[static_cast<std::size_t>(step)]);
    }
    check_result_invariants(r, in.a, y);
  }
}

TEST_CASE("omp picks the most correlated column at every step") {
  oracle::TestRng rng(27);
  for (int rep = 0; rep < 30; ++rep) {
    const Matrix a = rng.gaussian(8, 10);
    const Vector y = rng.gaussian_vector(8);
    const auto r = gols::omp_run(a, y, 2);
    REQUIRE(r.support.size() == 2);
    CHECK(r.support[0] == oracle::omp_next_index(a, y, {}));
    CHECK(r.support[1] == oracle::omp_next_index(a, y, {r.support[0]}));
    check_result_invariants(r, a, y);
  }
}

TEST_CASE("omp recovers a single unit-norm column") {
  oracle::TestRng rng(28);
  Matrix a = rng.gaussian(10, 12);
  a.colwise().normalize();
  const Vector y = a.col(5);
  const auto r = gols::omp_run(a, y, 1);
  CHECK(r.support == std::vector<Index>{5});
  CHECK(r.residual_norm <= 1e-12);
}

TEST_CASE("ols and omp agree on orthonormal columns") {
  oracle::TestRng rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    const Index n = rng.uniform_index(4, 16);
    const Matrix q = Eigen::HouseholderQR<Matrix>(rng.gaussian(n, n)).householderQ();
    const Index k = rng.uniform_index(1, n - 1);
    const Vector y = rng.gaussian_vector(n);
    CHECK(gols::ols_run(q, y, k).support == gols::omp_run(q, y, k).support);
  }
}

TEST_CASE("noiseless certificate and monotone residual") {
  oracle::TestRng rng(30);
  for (int rep = 0; rep < 40; ++rep) {
    const auto in = rng.sparse_instance(24, 40, 4);
    for (Index L : {1, 2, 3}) {
      SolverConfig cfg;
      cfg.L = L;
      cfg.k = 4;
      const auto r = gols::gols_run(in.a, in.y, cfg);
      check_result_invariants(r, in.a, in.y);
      const std::set<Index> got(r.support.begin(), r.support.end());
      const bool contains = std::all_of(in.support.begin(), in.support.end(),
                                        [&](Index i) { return got.count(i) > 0; });
      if (contains) {
        CHECK(r.residual_norm <= 1e-8 * in.y.norm());
        for (Index i : in.support) CHECK(r.x_hat(i) == doctest::Approx(in.x(i)).epsilon(1e-6));
      }
    }
    check_result_invariants(gols::omp_run(in.a, in.y, 4), in.a, in.y);
  }
}

TEST_CASE("solver runs are deterministic") {
  oracle::TestRng rng(31);
  const auto in = rng.sparse_instance(16, 32, 3);
  SolverConfig cfg;
  cfg.L = 2;
  cfg.k = 3;
  const auto a = gols::gols_run(in.a, in.y, cfg);
  const auto b = gols::gols_run(in.a, in.y, cfg);
  CHECK(a.support == b.support);
  CHECK(a.x_hat == b.x_hat);
  CHECK(a.residual_norm == b.residual_norm);
  CHECK(a.iterations == b.iterations);
  CHECK(a.residual_history == b.residual_history);
}

TEST_CASE("residual tolerance stops early") {
  oracle::TestRng rng(32);
  const auto in = rng.sparse_instance(20, 30, 2);
  SolverConfig cfg;
  cfg.L = 1;
  cfg.k = 6;
  cfg.residual_tol = 1e-9;
  const auto r = gols::gols_run(in.a, in.y, cfg);
  CHECK(r.stop_reason == gols::StopReason::ResidualTolerance);
  CHECK(r.iterations == 2);
  CHECK(std::set<Index>(r.support.begin(), r.support.end()) ==
        std::set<Index>(in.support.begin(), in.support.end()));

  cfg.residual_tol.reset();
  const auto full = gols::gols_run(in.a, in.y, cfg);
  CHECK(full.iterations == 6);
  CHECK(full.stop_reason == gols::StopReason::IterationLimit);
}

TEST_CASE("degenerate candidates: skip vs abort") {
  // Columns 0 and 1 are identical; once column 0 is absorbed column 1 is
  // annihilated by the projector.
  Matrix a(3, 4);
  a << 1, 1, 0, 0.3,
       0, 0, 1, 0.2,
       0, 0, 0, 1.0;
  Vector y(3);
  y << 1.0, 0.1, 0.05;

  SolverConfig cfg;
  cfg.L = 2;
  cfg.k = 1;
  cfg.degeneracy_policy = gols::DegeneracyPolicy::SkipColumn;
  const auto skip = gols::gols_run(a, y, cfg);
  REQUIRE(skip.support.size() == 2);
  CHECK(skip.support[0] == 0);
  CHECK(skip.support[1] != 1);
  CHECK(skip.stop_reason == gols::StopReason::IterationLimit);

  cfg.degeneracy_policy = gols::DegeneracyPolicy::Abort;
  const auto abort = gols::gols_run(a, y, cfg);
  CHECK(abort.support == std::vector<Index>{0});
  CHECK(abort.stop_reason == gols::StopReason::DegenerateAbort);
  CHECK(abort.x_hat(0) == doctest::Approx(1.0));

  SUBCASE("all-degenerate candidate pool ends the run") {
    Matrix same(2, 3);
    same << 1, 2, -1,
            1, 2, -1;
    Vector yy(2);
    yy << 1, 1;
    SolverConfig c;
    c.L = 1;
    c.k = 2;
    const auto r = gols::gols_run(same, yy, c);
    CHECK(r.support == std::vector<Index>{0});
    CHECK(r.stop_reason == gols::StopReason::CandidatesExhausted);
    CHECK(r.residual_norm <= 1e-12);
  }
}

TEST_CASE("exhaustive oracle") {
  oracle::TestRng rng(33);
  SUBCASE("noiseless instance returns the true support") {
    for (int rep = 0; rep < 10; ++rep) {
      const auto in = rng.sparse_instance(8, 12, 3);
      const auto r = gols::exhaustive_oracle(in.a, in.y, 3);
      CHECK(r.support == in.support);
      CHECK(r.residual_norm <= 1e-9 * in.y.norm());
    }
  }
  SUBCASE("noisy instance is the global minimizer over all 15 supports") {
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix a = rng.gaussian(5, 6);
      const Vector y = rng.gaussian_vector(5);
      const auto r = gols::exhaustive_oracle(a, y, 2);
      int visited = 0;
      for (Index i = 0; i < 6; ++i) {
        for (Index j = i + 1; j < 6; ++j) {
          ++visited;
          CHECK(r.residual_norm <= static_cast<double>(oracle::residual_norm(a, y, {i, j})) + 1e-12);
        }
      }
      CHECK(visited == 15);
    }
  }
  SUBCASE("k = m is the full least-squares fit") {
    const Matrix a = rng.gaussian(9, 4);
    const Vector y = rng.gaussian_vector(9);
    const auto r = gols::exhaustive_oracle(a, y, 4);
    CHECK(r.support == std::vector<Index>{0, 1, 2, 3});
    CHECK(r.residual_norm == doctest::Approx((y - a * oracle::ls_normal(a, y)).norm()).epsilon(1e-10));
  }
  SUBCASE("size guard") {
    const Matrix a = rng.gaussian(30, 60);
    const Vector y = rng.gaussian_vector(30);
    CHECK(code_of([&] { gols::exhaustive_oracle(a, y, 10); }) == ErrorCode::TooLarge);
  }
}

TEST_CASE("gols monte-carlo regression: n=64, m=128, k=5, L=2") {
  // Calibrated once (seed 2024, 1000 trials): 1000/1000 exact recoveries.
  const gols::MatrixEnsemble me{gols::MatrixKind::Gaussian, 64, 128, false};
  const gols::SignalEnsemble se{gols::SignalDist::GaussianUnit, 128, 5};
  int recovered = 0;
  for (Index t = 0; t < 1000; ++t) {
    const auto p = gols::make_problem(me, se, 0.0, gols::trial_seed(2024, 64, 128, 5, t));
    SolverConfig cfg;
    cfg.L = 2;
    cfg.k = 5;
    const auto r = gols::gols_run(p.a, p.y, cfg);
    const std::set<Index> got(r.support.begin(), r.support.end());
    const bool contains = std::all_of(p.support_true.begin(), p.support_true.end(),
                                      [&](Index i) { return got.count(i) > 0; });
    if (contains && r.residual_norm <= 1e-8 * p.y.norm()) ++recovered;
  }
  MESSAGE("exact recoveries: " << recovered << " / 1000");
  CHECK(recovered >= 990);
}
