#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "gols/ensembles.hpp"

namespace gols {
namespace {

constexpr const char* kMagic = "gols-fixture";
constexpr int kFormatVersion = 1;

template <typename T>
T read_value(std::istream& is, const char* what) {
  T v{};
  if (!(is >> v)) throw Error(ErrorCode::ParseError, std::string("fixture: cannot read ") + what);
  return v;
}

double read_real(std::istream& is, const char* what) {
  // operator>> rejects "inf"/"nan", which is what we want for finite data.
  return read_value<double>(is, what);
}

void write_row(std::ostream& os, const auto& values) {
  for (Index i = 0; i < values.size(); ++i) {
    if (i) os << ' ';
    os << format_real(values(i));
  }
  os << '\n';
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_fixture(std::ostream& os, const SparseProblem& p) {
  os << kMagic << ' ' << kFormatVersion << '\n';
  os << p.n() << ' ' << p.m() << ' ' << p.k() << '\n';
  os << to_string(p.matrix_kind) << ' ' << to_string(p.signal_dist) << ' '
     << (p.normalize_columns ? 1 : 0) << ' ' << p.seed << ' ' << format_real(p.noise_sigma) << '\n';
  for (std::size_t i = 0; i < p.support_true.size(); ++i) {
    if (i) os << ' ';
    os << p.support_true[i];
  }
  os << '\n';
  for (Index i = 0; i < p.a.rows(); ++i) write_row(os, p.a.row(i));
  write_row(os, p.x_true);
  write_row(os, p.y);
}

SparseProblem read_fixture(std::istream& is) {
  const auto magic = read_value<std::string>(is, "magic");
  const auto version = read_value<int>(is, "version");
  if (magic != kMagic || version != kFormatVersion) {
    throw Error(ErrorCode::ParseError, "fixture: bad header");
  }
  const auto n = read_value<Index>(is, "n");
  const auto m = read_value<Index>(is, "m");
  const auto k = read_value<Index>(is, "k");
  if (n < 1 || m < 1 || k < 1 || k > m) throw Error(ErrorCode::ParseError, "fixture: bad dimensions");

  SparseProblem p;
  p.matrix_kind = parse_matrix_kind(read_value<std::string>(is, "matrix kind"));
  p.signal_dist = parse_signal_dist(read_value<std::string>(is, "signal dist"));
  p.normalize_columns = read_value<int>(is, "normalize flag") != 0;
  p.seed = read_value<std::uint64_t>(is, "seed");
  p.noise_sigma = read_real(is, "noise sigma");

  p.support_true.resize(static_cast<std::size_t>(k));
  for (auto& s : p.support_true) {
    s = read_value<Index>(is, "support index");
    if (s < 0 || s >= m) throw Error(ErrorCode::ParseError, "fixture: support index out of range");
  }
  p.a.resize(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) p.a(i, j) = read_real(is, "A entry");
  p.x_true.resize(m);
  for (Index j = 0; j < m; ++j) p.x_true(j) = read_real(is, "x entry");
  p.y.resize(n);
  for (Index i = 0; i < n; ++i) p.y(i) = read_real(is, "y entry");
  return p;
}

void save_fixture(const std::string& path, const SparseProblem& p) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_fixture(os, p);
  if (!os) throw Error(ErrorCode::IoError, "write failed for " + path);
}

SparseProblem load_fixture(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_fixture(is);
}

}  // namespace gols
