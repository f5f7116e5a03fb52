#include "gols/linalg.hpp"

#include <cmath>
#include <string>

namespace gols {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegenerateColumn: return "DegenerateColumn";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::EmptyCandidates: return "EmptyCandidates";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidSparsity: return "InvalidSparsity";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyAggregate: return "EmptyAggregate";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
  }
}

Matrix gather_columns(const Matrix& a, const std::vector<Index>& cols) {
  Matrix out(a.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= a.cols()) {
      throw Error(ErrorCode::InvalidDimension, "column index out of range");
    }
    out.col(static_cast<Index>(j)) = a.col(cols[j]);
  }
  return out;
}

ProjectionTracker::ProjectionTracker(Index n)
    : ProjectionTracker(n, n > 0 ? default_degeneracy_tol(n) : 1.0) {}

ProjectionTracker::ProjectionTracker(Index n, double degeneracy_tol) : tol_(degeneracy_tol) {
  if (n <= 0) {
    throw Error(ErrorCode::InvalidDimension, "projector dimension must be >= 1");
  }
  if (!(degeneracy_tol > 0.0) || !std::isfinite(degeneracy_tol)) {
    throw Error(ErrorCode::InvalidConfig, "degeneracy tolerance must be positive");
  }
  d_ = Matrix::Identity(n, n);
}

double ProjectionTracker::default_degeneracy_tol(Index n) {
  return 1e-10 * std::sqrt(static_cast<double>(n));
}

void ProjectionTracker::absorb(const Eigen::Ref<const Vector>& a) {
  if (a.size() != d_.rows()) {
    throw Error(ErrorCode::InvalidDimension, "absorbed column length != projector dimension");
  }
  Vector da = d_ * a;
  const double norm = da.norm();
  if (!(norm > tol_)) {
    throw Error(ErrorCode::DegenerateColumn,
                "column lies in the span of previously absorbed columns");
  }
  da /= norm;
  d_.noalias() -= da * da.transpose();
  ++absorbed_;
}

Vector ProjectionTracker::apply(const Eigen::Ref<const Vector>& v) const {
  if (v.size() != d_.rows()) {
    throw Error(ErrorCode::InvalidDimension, "vector length != projector dimension");
  }
  return d_ * v;
}

bool ProjectionTracker::stabilize(double tol) {
  // d_i * d_j == d_j * d_i, so the downdate keeps D bitwise symmetric and
  // symmetrizing would be a no-op; skip the O(n^3) drift test in that case.
  if (d_ == d_.transpose()) return false;
  const Matrix dd = d_ * d_;
  if ((dd - d_).norm() <= tol) return false;
  const Matrix sym = 0.5 * (d_ + d_.transpose());
  d_ = sym;
  return true;
}

Vector least_squares(const Matrix& a, const Vector& y) {
  if (a.rows() != y.size()) {
    throw Error(ErrorCode::InvalidDimension, "rows(A) != len(y)");
  }
  if (a.cols() < 1 || a.rows() < a.cols()) {
    throw Error(ErrorCode::InvalidDimension, "least squares needs rows >= cols >= 1");
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  const auto r_diag = qr.matrixQR().diagonal().cwiseAbs();
  const double largest = r_diag.maxCoeff();
  if (!(largest > 0.0) || r_diag.minCoeff() < kRankTolerance * largest) {
    throw Error(ErrorCode::RankDeficient, "sub-matrix is numerically rank deficient");
  }
  return qr.solve(y);
}

}  // namespace gols
