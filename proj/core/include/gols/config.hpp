#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gols/ensembles.hpp"

namespace gols {

enum class Algorithm { Ols, Gols, Omp };

std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view s);

/// Monte-Carlo sweep over sparsity k (and L for GOLS) at fixed n, m.
struct ExperimentSpec {
  Index n = 64;
  Index m = 128;
  std::vector<Index> k_values = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32};
  std::vector<Index> L_values = {2, 3};
  Index trials = 1000;
  MatrixKind matrix_kind = MatrixKind::Gaussian;
  SignalDist signal_dist = SignalDist::GaussianUnit;
  double noise_sigma = 0.0;
  std::vector<Algorithm> algorithms = {Algorithm::Ols, Algorithm::Gols, Algorithm::Omp};
  std::uint64_t master_seed = 1;
  bool normalize_columns = false;
  std::string output_dir = "results";
};

/// Exact-recovery frequency of OLS as a function of the measurement count n.
struct PhaseTransitionSpec {
  Index m = 128;
  Index k = 5;
  std::vector<Index> n_values = {8, 12, 16, 20, 24, 28, 32, 40, 48, 56, 64};
  Index trials = 500;
  double delta_target = 0.05;
  MatrixKind matrix_kind = MatrixKind::Gaussian;
  SignalDist signal_dist = SignalDist::GaussianUnit;
  bool normalize_columns = false;
  std::uint64_t master_seed = 1;
  std::string output_dir = "results";
};

/// Parsed `key = value` text. Keys before any `[section]` header land in
/// section "". `#` and `;` start comments.
struct ConfigFile {
  std::map<std::string, std::map<std::string, std::string>> sections;
};

ConfigFile parse_config(const std::string& text);
ConfigFile load_config(const std::string& path);

/// Global keys overlaid by the [sweep] section. Throws ConfigError on unknown
/// keys or invalid values.
ExperimentSpec sweep_spec_from_config(const ConfigFile& cfg);
/// Global keys overlaid by the [phase] section.
PhaseTransitionSpec phase_spec_from_config(const ConfigFile& cfg);

void validate(const ExperimentSpec& spec);
void validate(const PhaseTransitionSpec& spec);

/// Canonical `key = value` rendering; two specs are equal iff these match.
std::string canonical_text(const ExperimentSpec& spec);
std::string canonical_text(const PhaseTransitionSpec& spec);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string config_hash(const std::string& canonical);

/// "a, b, c" or "first:last:step" (inclusive), or a mix of both.
std::vector<Index> parse_index_list(const std::string& value);

}  // namespace gols
