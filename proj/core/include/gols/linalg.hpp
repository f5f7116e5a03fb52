#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gols/error.hpp"

namespace gols {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Throws ErrorCode::NonFinite if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

/// Columns of `a` listed in `cols`, in that order.
Matrix gather_columns(const Matrix& a, const std::vector<Index>& cols);

/// Orthogonal-complement projector onto span(absorbed columns)^perp.
///
/// Stores the dense n x n matrix D and downdates it by one rank-one term per
/// absorbed column:  d = D a / |D a|,  D <- D - d d^T.  Starting from the
/// identity, D after j absorbs equals I - B B^+ for B = [a_1 ... a_j].
class ProjectionTracker {
 public:
  /// Identity projector on R^n. Throws InvalidDimension for n == 0.
  explicit ProjectionTracker(Index n);
  ProjectionTracker(Index n, double degeneracy_tol);

  static double default_degeneracy_tol(Index n);

  /// Downdates D by the direction of D a. Throws DegenerateColumn when
  /// |D a| <= degeneracy_tol, in which case the tracker is left unchanged.
  void absorb(const Eigen::Ref<const Vector>& a);

  /// D v.
  Vector apply(const Eigen::Ref<const Vector>& v) const;

  /// Symmetrizes D when |D*D - D|_F exceeds `tol`. Returns true if it did.
  /// An exactly symmetric D is returned untouched without the drift test.
  bool stabilize(double tol = 1e-9);

  const Matrix& matrix() const noexcept { return d_; }
  Index dimension() const noexcept { return d_.rows(); }
  Index absorbed() const noexcept { return absorbed_; }
  double degeneracy_tol() const noexcept { return tol_; }

 private:
  Matrix d_;
  Index absorbed_ = 0;
  double tol_;
};

/// arg min_x |y - A x|_2 through a Householder QR of A.
/// Requires rows >= cols; throws RankDeficient if the smallest |R_ii| is
/// below 1e-10 times the largest.
Vector least_squares(const Matrix& a, const Vector& y);

inline constexpr double kRankTolerance = 1e-10;

}  // namespace gols
