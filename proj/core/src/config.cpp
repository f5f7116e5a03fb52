#include "gols/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace gols {
namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) config_error("'" + key + "': cannot parse '" + v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    config_error("'" + key + "': cannot parse '" + v + "' as a real");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  config_error("'" + key + "': expected true/false, got '" + v + "'");
}

using Setter = std::function<void(const std::string& key, const std::string& value)>;

void apply(const ConfigFile& cfg, const std::string& section, const std::map<std::string, Setter>& setters) {
  for (const std::string& name : {std::string(), section}) {
    auto it = cfg.sections.find(name);
    if (it == cfg.sections.end()) continue;
    for (const auto& [key, value] : it->second) {
      auto s = setters.find(key);
      if (s == setters.end()) {
        // Keys meant for the other experiment kind are tolerated in the
        // global section only.
        if (name.empty()) continue;
        config_error("unknown key '" + key + "' in [" + section + "]");
      }
      try {
        s->second(key, value);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        config_error("'" + key + "': " + e.what());
      }
    }
  }
}

std::string join(const std::vector<Index>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "n", "m", "k", "k_values", "L_values", "n_values", "trials", "matrix_kind", "signal_dist",
      "noise_sigma", "algorithms", "master_seed", "normalize_columns", "output_dir", "delta_target"};
  return keys;
}

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Ols: return "ols";
    case Algorithm::Gols: return "gols";
    case Algorithm::Omp: return "omp";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view s) {
  if (s == "ols") return Algorithm::Ols;
  if (s == "gols") return Algorithm::Gols;
  if (s == "omp") return Algorithm::Omp;
  throw Error(ErrorCode::ConfigError, "unknown algorithm '" + std::string(s) + "'");
}

std::vector<Index> parse_index_list(const std::string& value) {
  std::vector<Index> out;
  for (const auto& item : split(value, ',')) {
    if (item.find(':') == std::string::npos) {
      out.push_back(parse_number<Index>("list", item));
      continue;
    }
    const auto parts = split(item, ':');
    if (parts.size() != 3) config_error("range '" + item + "' must be first:last:step");
    const auto first = parse_number<Index>("range", parts[0]);
    const auto last = parse_number<Index>("range", parts[1]);
    const auto step = parse_number<Index>("range", parts[2]);
    if (step < 1 || last < first) config_error("range '" + item + "' is empty or has step < 1");
    for (Index v = first; v <= last; v += step) out.push_back(v);
  }
  if (out.empty()) config_error("empty list '" + value + "'");
  return out;
}

ConfigFile parse_config(const std::string& text) {
  ConfigFile cfg;
  std::string section;
  cfg.sections[section];
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_error("line " + std::to_string(lineno) + ": bad section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "sweep" && section != "phase") {
        config_error("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      }
      cfg.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error("line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(std::string_view(line).substr(0, eq));
    const auto value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty()) config_error("line " + std::to_string(lineno) + ": empty key or value");
    if (!known_keys().count(key)) config_error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    auto& slot = cfg.sections[section];
    if (slot.count(key)) config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    slot[key] = value;
  }
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::IoError, "cannot open config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

ExperimentSpec sweep_spec_from_config(const ConfigFile& cfg) {
  ExperimentSpec s;
  const std::map<std::string, Setter> setters = {
      {"n", [&](auto& k, auto& v) { s.n = parse_number<Index>(k, v); }},
      {"m", [&](auto& k, auto& v) { s.m = parse_number<Index>(k, v); }},
      {"k_values", [&](auto&, auto& v) { s.k_values = parse_index_list(v); }},
      {"L_values", [&](auto&, auto& v) { s.L_values = parse_index_list(v); }},
      {"trials", [&](auto& k, auto& v) { s.trials = parse_number<Index>(k, v); }},
      {"matrix_kind", [&](auto&, auto& v) { s.matrix_kind = parse_matrix_kind(v); }},
      {"signal_dist", [&](auto&, auto& v) { s.signal_dist = parse_signal_dist(v); }},
      {"noise_sigma", [&](auto& k, auto& v) { s.noise_sigma = parse_real(k, v); }},
      {"algorithms",
       [&](auto&, auto& v) {
         s.algorithms.clear();
         for (const auto& a : split(v, ',')) s.algorithms.push_back(parse_algorithm(a));
       }},
      {"master_seed", [&](auto& k, auto& v) { s.master_seed = parse_number<std::uint64_t>(k, v); }},
      {"normalize_columns", [&](auto& k, auto& v) { s.normalize_columns = parse_bool(k, v); }},
      {"output_dir", [&](auto&, auto& v) { s.output_dir = v; }},
  };
  apply(cfg, "sweep", setters);
  validate(s);
  return s;
}

PhaseTransitionSpec phase_spec_from_config(const ConfigFile& cfg) {
  PhaseTransitionSpec s;
  const std::map<std::string, Setter> setters = {
      {"m", [&](auto& k, auto& v) { s.m = parse_number<Index>(k, v); }},
      {"k", [&](auto& k, auto& v) { s.k = parse_number<Index>(k, v); }},
      {"n_values", [&](auto&, auto& v) { s.n_values = parse_index_list(v); }},
      {"trials", [&](auto& k, auto& v) { s.trials = parse_number<Index>(k, v); }},
      {"delta_target", [&](auto& k, auto& v) { s.delta_target = parse_real(k, v); }},
      {"matrix_kind", [&](auto&, auto& v) { s.matrix_kind = parse_matrix_kind(v); }},
      {"signal_dist", [&](auto&, auto& v) { s.signal_dist = parse_signal_dist(v); }},
      {"normalize_columns", [&](auto& k, auto& v) { s.normalize_columns = parse_bool(k, v); }},
      {"master_seed", [&](auto& k, auto& v) { s.master_seed = parse_number<std::uint64_t>(k, v); }},
      {"output_dir", [&](auto&, auto& v) { s.output_dir = v; }},
  };
  apply(cfg, "phase", setters);
  validate(s);
  return s;
}

void validate(const ExperimentSpec& s) {
  if (s.n < 1 || s.m < 1) config_error("n and m must be >= 1");
  if (s.trials < 1) config_error("trials must be >= 1");
  if (s.k_values.empty()) config_error("k_values is empty");
  for (Index k : s.k_values) {
    if (k < 1 || k > s.m) config_error("every k must satisfy 1 <= k <= m");
  }
  if (s.algorithms.empty()) config_error("algorithms is empty");
  const bool has_gols =
      std::find(s.algorithms.begin(), s.algorithms.end(), Algorithm::Gols) != s.algorithms.end();
  if (has_gols && s.L_values.empty()) config_error("L_values is empty");
  for (Index L : s.L_values) {
    if (L < 1 || L > s.n) config_error("every L must satisfy 1 <= L <= n");
  }
  std::set<Algorithm> seen(s.algorithms.begin(), s.algorithms.end());
  if (seen.size() != s.algorithms.size()) config_error("algorithms has duplicates");
  if (!(s.noise_sigma >= 0.0) || !std::isfinite(s.noise_sigma)) config_error("noise_sigma must be >= 0");
  if (s.output_dir.empty()) config_error("output_dir is empty");
}

void validate(const PhaseTransitionSpec& s) {
  if (s.m < 1) config_error("m must be >= 1");
  if (s.k < 1 || s.k > s.m) config_error("k must satisfy 1 <= k <= m");
  if (s.trials < 1) config_error("trials must be >= 1");
  if (s.n_values.empty()) config_error("n_values is empty");
  for (std::size_t i = 0; i < s.n_values.size(); ++i) {
    if (s.n_values[i] < 1 || s.n_values[i] > s.m) config_error("every n must satisfy 1 <= n <= m");
    if (i && s.n_values[i] <= s.n_values[i - 1]) config_error("n_values must be strictly increasing");
  }
  if (!(s.delta_target > 0.0 && s.delta_target < 1.0)) config_error("delta_target must be in (0, 1)");
  if (s.output_dir.empty()) config_error("output_dir is empty");
}

std::string canonical_text(const ExperimentSpec& s) {
  std::ostringstream os;
  os << "kind = sweep\n"
     << "n = " << s.n << "\nm = " << s.m << "\nk_values = " << join(s.k_values)
     << "\nL_values = " << join(s.L_values) << "\ntrials = " << s.trials
     << "\nmatrix_kind = " << to_string(s.matrix_kind) << "\nsignal_dist = " << to_string(s.signal_dist)
     << "\nnoise_sigma = " << format_real(s.noise_sigma) << "\nalgorithms = ";
  for (std::size_t i = 0; i < s.algorithms.size(); ++i) os << (i ? "," : "") << to_string(s.algorithms[i]);
  os << "\nmaster_seed = " << s.master_seed << "\nnormalize_columns = " << (s.normalize_columns ? "true" : "false")
     << '\n';
  return os.str();
}

std::string canonical_text(const PhaseTransitionSpec& s) {
  std::ostringstream os;
  os << "kind = phase\n"
     << "m = " << s.m << "\nk = " << s.k << "\nn_values = " << join(s.n_values) << "\ntrials = " << s.trials
     << "\ndelta_target = " << format_real(s.delta_target) << "\nmatrix_kind = " << to_string(s.matrix_kind)
     << "\nsignal_dist = " << to_string(s.signal_dist) << "\nnormalize_columns = "
     << (s.normalize_columns ? "true" : "false") << "\nmaster_seed = " << s.master_seed << '\n';
  return os.str();
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gols
