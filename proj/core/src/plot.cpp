#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gols/experiment.hpp"

namespace gols {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct Metric {
  const char* column;
  const char* file;
  const char* ylabel;
};

constexpr Metric kMetrics[] = {
    {"err", "err.dat", "exact recovery rate (component)"},
    {"exact_rate", "exact_rate.dat", "exact support rate"},
    {"mse", "mse.dat", "MSE"},
    {"time_mean_s", "time.dat", "running time [s]"},
};

}  // namespace

PlotFiles emit_plot_data(const std::string& aggregate_csv, const std::string& out_dir) {
  std::ifstream is(aggregate_csv);
  if (!is) throw Error(ErrorCode::IoError, "cannot open " + aggregate_csv);

  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_csv_line(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size()) parse_error("aggregate row has " + std::to_string(fields.size()) +
                                                    " fields, header has " + std::to_string(header.size()));
    rows.push_back(std::move(fields));
  }
  if (header.empty() || rows.empty()) parse_error("aggregate CSV " + aggregate_csv + " has no data rows");

  auto column = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) parse_error("aggregate CSV lacks column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto c_alg = column("algorithm");
  const auto c_k = column("k");
  const auto c_L = column("L");

  std::vector<std::string> series;
  std::map<long long, std::string> k_text;
  // (k, series) -> row index
  std::map<std::pair<long long, std::string>, std::size_t> lookup;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::string label = row[c_alg];
    if (label.empty()) parse_error("empty algorithm tag");
    if (label == "gols") label += "-L" + row[c_L];
    long long k = 0;
    try {
      std::size_t pos = 0;
      k = std::stoll(row[c_k], &pos);
      if (pos != row[c_k].size()) throw std::invalid_argument(row[c_k]);
    } catch (const std::exception&) {
      parse_error("bad k value '" + row[c_k] + "'");
    }
    if (std::find(series.begin(), series.end(), label) == series.end()) series.push_back(label);
    k_text[k] = row[c_k];
    if (!lookup.emplace(std::make_pair(k, label), r).second) {
      parse_error("duplicate row for k=" + row[c_k] + " series " + label);
    }
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw Error(ErrorCode::IoError, "cannot create " + out_dir);

  PlotFiles files;
  for (const auto& metric : kMetrics) {
    const auto c = column(metric.column);
    std::ostringstream os;
    os << "# k";
    for (const auto& s : series) os << ' ' << s;
    os << '\n';
    for (const auto& [k, text] : k_text) {
      os << text;
      for (const auto& s : series) {
        auto it = lookup.find({k, s});
        os << ' ' << (it == lookup.end() ? std::string("NaN") : rows[it->second][c]);
      }
      os << '\n';
    }
    const auto path = (fs::path(out_dir) / metric.file).string();
    std::ofstream out(path);
    if (!(out << os.str())) throw Error(ErrorCode::IoError, "cannot write " + path);
    files.data_files.push_back(path);
  }

  std::ostringstream gp;
  gp << "# gnuplot script; run from this directory: gnuplot plot.gp\n"
     << "set terminal pngcairo size 800,600\n"
     << "set key outside\n"
     << "set xlabel 'sparsity k'\n"
     << "set grid\n";
  for (const auto& metric : kMetrics) {
    const std::string stem = fs::path(metric.file).stem().string();
    gp << "\nset output '" << stem << ".png'\n"
       << "set ylabel '" << metric.ylabel << "'\n"
       << (std::string(metric.column) == "mse" ? "set logscale y\n" : "unset logscale y\n")
       << "plot ";
    for (std::size_t i = 0; i < series.size(); ++i) {
      gp << (i ? ", \\\n     " : "") << "'" << metric.file << "' using 1:" << i + 2 << " with linespoints title '"
         << series[i] << "'";
    }
    gp << '\n';
  }
  files.script = (fs::path(out_dir) / "plot.gp").string();
  std::ofstream script(files.script);
  if (!(script << gp.str())) throw Error(ErrorCode::IoError, "cannot write " + files.script);
  return files;
}

}  // namespace gols
