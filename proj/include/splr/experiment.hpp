#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "splr/baselines.hpp"
#include "splr/core.hpp"
#include "splr/data.hpp"
#include "splr/evaluate.hpp"
#include "splr/io.hpp"
#include "splr/solver.hpp"
#include "splr/wilcoxon.hpp"

namespace splr {

enum class Method { splr, variance, laplacian_score };

inline Method method_from_name(const std::string& name) {
  if (name == "splr") return Method::splr;
  if (name == "variance") return Method::variance;
  if (name == "laplacian_score") return Method::laplacian_score;
  throw config_error("unknown method '" + name +
                     "' (expected splr, variance or laplacian_score)");
}

inline const char* to_name(Method method) {
  switch (method) {
    case Method::splr: return "splr";
    case Method::variance: return "variance";
    default: return "laplacian_score";
  }
}

/// Everything one benchmark run needs: data and label locations, the method
/// and clusterer, the feature-count grid, and solver parameters where each
/// of the six tunable knobs may carry a value list to sweep over.
struct ExperimentConfig {
  std::string data_path;
  std::string labels_path;
  std::optional<Format> format;  // unset: decide from the file extension
  bool scale = true;
  Method method = Method::splr;
  Clusterer clusterer = Clusterer::kmeans;
  int restarts = 20;
  std::vector<int> feature_counts = {20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
  std::string out_dir = "splr_out";
  int jobs = 1;
  std::uint64_t seed = 42;

  // Sweepable solver parameters; singleton lists mean a fixed value. An
  // empty eta0 list derives the initial pace from the data.
  std::vector<double> alpha{1.0};
  std::vector<double> lambda1{1.0};
  std::vector<double> lambda2{1.0};
  std::vector<double> lambda3{1.0};
  std::vector<double> gamma{2.0};
  std::vector<double> mu{1.05};
  std::vector<double> eta0;

  int subspace_dim = 0;  // 0 resolves to min(200, d)
  int max_iter = 1500;
  double tol = 1e-6;
  double eps = 1e-8;

  int neighbors = 5;        // laplacian-score graph degree
  double bandwidth = 10.0;  // laplacian-score kernel width

  std::string source_text;  // verbatim config file when one was used

  void validate() const {
    if (data_path.empty()) throw config_error("no data path configured");
    if (restarts < 1) throw config_error("restarts must be >= 1");
    if (jobs < 1) throw config_error("jobs must be >= 1");
    if (feature_counts.empty()) throw config_error("feature count list is empty");
    for (int n : feature_counts)
      if (n < 1) throw config_error("feature counts must be positive");
    for (const auto* list : {&alpha, &lambda1, &lambda2, &lambda3, &gamma, &mu})
      if (list->empty()) throw config_error("sweep lists must be non-empty");
  }
};

// ---------------------------------------------------------------------------
// Flat key-value config files: `key = value` lines, '#' comments, comma
// lists for sweeps, and start:stop:step ranges for integer lists.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string cur;
  for (char c : value) {
    if (c == ',') {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  items.push_back(trim(cur));
  return items;
}

inline double config_double(const std::string& value, const std::string& key) {
  double out;
  if (!parse_double(value, out))
    throw config_error("config key '" + key + "': not a number: '" + value + "'");
  return out;
}

inline long long config_int(const std::string& value, const std::string& key) {
  const double d = config_double(value, key);
  const auto i = static_cast<long long>(d);
  if (static_cast<double>(i) != d)
    throw config_error("config key '" + key + "': not an integer: '" + value + "'");
  return i;
}

inline bool config_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw config_error("config key '" + key + "': not a boolean: '" + value + "'");
}

inline std::vector<double> config_double_list(const std::string& value, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(config_double(item, key));
  return out;
}

/// Integer list, where a lone `start:stop:step` token expands to the
/// inclusive arithmetic range.
inline std::vector<int> config_int_list(const std::string& value, const std::string& key) {
  const auto items = split_list(value);
  if (items.size() == 1 && items[0].find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : items[0]) {
      if (c == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    if (parts.size() != 3)
      throw config_error("config key '" + key + "': range must be start:stop:step");
    const long long start = config_int(trim(parts[0]), key);
    const long long stop = config_int(trim(parts[1]), key);
    const long long step = config_int(trim(parts[2]), key);
    if (step < 1 || stop < start)
      throw config_error("config key '" + key + "': bad range '" + items[0] + "'");
    std::vector<int> out;
    for (long long v = start; v <= stop; v += step) out.push_back(static_cast<int>(v));
    return out;
  }
  std::vector<int> out;
  for (const auto& item : items) out.push_back(static_cast<int>(config_int(item, key)));
  return out;
}

inline Format config_format(const std::string& value) {
  if (value == "csv") return Format::csv;
  if (value == "tsv") return Format::tsv;
  if (value == "dense") return Format::dense_text;
  throw config_error("unknown format '" + value + "' (expected csv, tsv or dense)");
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  cfg.source_text = text;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(line_number) +
                         ": expected 'key = value'");
    std::string key = detail::trim(line.substr(0, eq));
    for (char& c : key)
      if (c == '-') c = '_';
    const std::string value = detail::trim(line.substr(eq + 1));

    if (key == "data") cfg.data_path = value;
    else if (key == "labels") cfg.labels_path = value;
    else if (key == "format") cfg.format = detail::config_format(value);
    else if (key == "scale") cfg.scale = detail::config_bool(value, key);
    else if (key == "method") cfg.method = method_from_name(value);
    else if (key == "clusterer") cfg.clusterer = clusterer_from_name(value);
    else if (key == "restarts") cfg.restarts = static_cast<int>(detail::config_int(value, key));
    else if (key == "features") cfg.feature_counts = detail::config_int_list(value, key);
    else if (key == "out") cfg.out_dir = value;
    else if (key == "jobs") cfg.jobs = static_cast<int>(detail::config_int(value, key));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(detail::config_int(value, key));
    else if (key == "alpha") cfg.alpha = detail::config_double_list(value, key);
    else if (key == "lambda1") cfg.lambda1 = detail::config_double_list(value, key);
    else if (key == "lambda2") cfg.lambda2 = detail::config_double_list(value, key);
    else if (key == "lambda3") cfg.lambda3 = detail::config_double_list(value, key);
    else if (key == "gamma") cfg.gamma = detail::config_double_list(value, key);
    else if (key == "mu") cfg.mu = detail::config_double_list(value, key);
    else if (key == "eta0")
      cfg.eta0 = value == "auto" ? std::vector<double>{}
                                 : detail::config_double_list(value, key);
    else if (key == "subspace_dim")
      cfg.subspace_dim = static_cast<int>(detail::config_int(value, key));
    else if (key == "max_iter") cfg.max_iter = static_cast<int>(detail::config_int(value, key));
    else if (key == "tol") cfg.tol = detail::config_double(value, key);
    else if (key == "eps") cfg.eps = detail::config_double(value, key);
    else if (key == "neighbors") cfg.neighbors = static_cast<int>(detail::config_int(value, key));
    else if (key == "bandwidth") cfg.bandwidth = detail::config_double(value, key);
    else throw config_error("config line " + std::to_string(line_number) +
                            ": unknown key '" + key + "'");
  }
  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("failed to open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

/// Canonical flat rendering of a config; parses back to the same settings.
inline std::string serialize_experiment_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto join_doubles = [](const std::vector<double>& values) {
    std::string s;
    char buffer[64];
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buffer, sizeof buffer, "%.17g", values[i]);
      s += (i ? ", " : "") + std::string(buffer);
    }
    return s;
  };
  out << "data = " << cfg.data_path << "\n";
  if (!cfg.labels_path.empty()) out << "labels = " << cfg.labels_path << "\n";
  if (cfg.format)
    out << "format = "
        << (*cfg.format == Format::csv ? "csv" : *cfg.format == Format::tsv ? "tsv" : "dense")
        << "\n";
  out << "scale = " << (cfg.scale ? "true" : "false") << "\n";
  out << "method = " << to_name(cfg.method) << "\n";
  out << "clusterer = " << to_name(cfg.clusterer) << "\n";
  out << "restarts = " << cfg.restarts << "\n";
  out << "features = ";
  for (std::size_t i = 0; i < cfg.feature_counts.size(); ++i)
    out << (i ? ", " : "") << cfg.feature_counts[i];
  out << "\n";
  out << "out = " << cfg.out_dir << "\n";
  out << "jobs = " << cfg.jobs << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "alpha = " << join_doubles(cfg.alpha) << "\n";
  out << "lambda1 = " << join_doubles(cfg.lambda1) << "\n";
  out << "lambda2 = " << join_doubles(cfg.lambda2) << "\n";
  out << "lambda3 = " << join_doubles(cfg.lambda3) << "\n";
  out << "gamma = " << join_doubles(cfg.gamma) << "\n";
  out << "mu = " << join_doubles(cfg.mu) << "\n";
  out << "eta0 = " << (cfg.eta0.empty() ? "auto" : join_doubles(cfg.eta0)) << "\n";
  out << "subspace_dim = " << cfg.subspace_dim << "\n";
  out << "max_iter = " << cfg.max_iter << "\n";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", cfg.tol);
  out << "tol = " << buffer << "\n";
  std::snprintf(buffer, sizeof buffer, "%.17g", cfg.eps);
  out << "eps = " << buffer << "\n";
  out << "neighbors = " << cfg.neighbors << "\n";
  std::snprintf(buffer, sizeof buffer, "%.17g", cfg.bandwidth);
  out << "bandwidth = " << buffer << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Running experiments
// ---------------------------------------------------------------------------

/// One (parameter combination, feature count) evaluation.
struct RunRecord {
  int combo = 0;                         // index into the sweep grid
  std::map<std::string, double> params;  // resolved solver parameters
  int feature_count = 0;
  std::vector<Index> selected;  // the evaluated top-N features
  MetricSummary metrics;
  double wall_seconds = 0.0;  // this record's work; fit cost lands on the combo's first record
};

/// Per-combination artifacts shared by that combination's records.
struct ComboRun {
  std::map<std::string, double> params;
  FeatureRanking ranking;              // all features, best first
  std::vector<double> objective_curve;  // empty for baseline methods
  std::vector<double> pace_curve;
};

struct ExperimentResult {
  std::vector<ComboRun> combos;
  std::vector<RunRecord> records;  // combo-major, feature counts in config order
};

/// First index maximizing the metric mean; sweep order breaks ties.
inline std::size_t best_record_index(const std::vector<RunRecord>& records,
                                     const std::string& metric) {
  if (records.empty()) throw std::invalid_argument("best_record_index: no records");
  if (metric != "acc" && metric != "nmi")
    throw config_error("unknown metric '" + metric + "' (expected acc or nmi)");
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double value = metric == "acc" ? records[i].metrics.acc_mean : records[i].metrics.nmi_mean;
    const double incumbent =
        metric == "acc" ? records[best].metrics.acc_mean : records[best].metrics.nmi_mean;
    if (value > incumbent) best = i;
  }
  return best;
}

/// Run the full cross-product of sweep values: one fit (or baseline ranking)
/// per parameter combination, then one evaluation per feature count.
/// Combinations execute on a bounded worker pool; results land at fixed
/// positions so the output is identical whatever the thread interleaving.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.labels_path.empty())
    throw config_error("experiment evaluation needs a labels file");

  const Format format = cfg.format ? *cfg.format : format_from_path(cfg.data_path);
  DataMatrix loaded = load_matrix(cfg.data_path, format);
  const DataMatrix data = cfg.scale ? scale_features(loaded) : std::move(loaded);
  const LabelVector labels = load_labels(cfg.labels_path);
  check_pairing(data, labels);
  for (int n : cfg.feature_counts)
    if (n > data.features())
      throw config_error("feature count " + std::to_string(n) + " exceeds the " +
                         std::to_string(data.features()) + " available features");

  struct ComboSpec {
    SolverConfig solver;
    std::map<std::string, double> params;
  };
  std::vector<ComboSpec> grid;
  if (cfg.method == Method::splr) {
    const std::vector<std::optional<double>> eta0s =
        cfg.eta0.empty() ? std::vector<std::optional<double>>{std::nullopt}
                         : [&] {
                             std::vector<std::optional<double>> out;
                             for (double e : cfg.eta0) out.emplace_back(e);
                             return out;
                           }();
    for (double a : cfg.alpha)
      for (double l1 : cfg.lambda1)
        for (double l2 : cfg.lambda2)
          for (double l3 : cfg.lambda3)
            for (double g : cfg.gamma)
              for (double m : cfg.mu)
                for (const auto& e : eta0s) {
                  ComboSpec spec;
                  spec.solver.alpha = a;
                  spec.solver.lambda1 = l1;
                  spec.solver.lambda2 = l2;
                  spec.solver.lambda3 = l3;
                  spec.solver.gamma = g;
                  spec.solver.mu = m;
                  spec.solver.eta0 = e;
                  spec.solver.subspace_dim = cfg.subspace_dim;
                  spec.solver.max_iter = cfg.max_iter;
                  spec.solver.tol = cfg.tol;
                  spec.solver.eps = cfg.eps;
                  spec.solver.seed = cfg.seed;
                  spec.solver.validate(data.features());
                  spec.params = {{"alpha", a},   {"lambda1", l1}, {"lambda2", l2},
                                 {"lambda3", l3}, {"gamma", g},    {"mu", m}};
                  spec.params["subspace_dim"] =
                      spec.solver.resolved_subspace_dim(data.features());
                  grid.push_back(std::move(spec));
                }
  } else {
    grid.push_back({});
  }

  ExperimentResult result;
  result.combos.resize(grid.size());
  result.records.resize(grid.size() * cfg.feature_counts.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_combo = [&](std::size_t index) {
    using clock = std::chrono::steady_clock;
    const auto fit_start = clock::now();
    ComboRun combo;
    combo.params = grid[index].params;
    if (cfg.method == Method::splr) {
      const SolverState state = fit(data, grid[index].solver);
      combo.ranking = rank_features(state);
      combo.objective_curve = state.objective_history;
      combo.pace_curve = state.pace_history;
      combo.params["eta0"] = state.pace_history.front();  // resolved initial pace
    } else if (cfg.method == Method::variance) {
      combo.ranking = baseline_variance_rank(data.values());
    } else {
      combo.ranking =
          baseline_laplacian_score(data.values(), -1, cfg.neighbors, cfg.bandwidth);
    }
    const double fit_seconds = std::chrono::duration<double>(clock::now() - fit_start).count();

    for (std::size_t ni = 0; ni < cfg.feature_counts.size(); ++ni) {
      const int n = cfg.feature_counts[ni];
      const auto eval_start = clock::now();
      RunRecord record;
      record.combo = static_cast<int>(index);
      record.params = combo.params;
      record.feature_count = n;
      record.selected.assign(combo.ranking.order.begin(), combo.ranking.order.begin() + n);
      record.metrics = evaluate_subset(data, record.selected, labels, cfg.clusterer,
                                       cfg.restarts, cfg.seed);
      record.wall_seconds = std::chrono::duration<double>(clock::now() - eval_start).count() +
                            (ni == 0 ? fit_seconds : 0.0);
      result.records[index * cfg.feature_counts.size() + ni] = std::move(record);
    }
    result.combos[index] = std::move(combo);
  };

  auto worker = [&] {
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= grid.size()) return;
      try {
        run_combo(index);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const std::size_t pool =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), grid.size());
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& thread : threads) thread.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

// ---------------------------------------------------------------------------
// Artifact emission and reloading
// ---------------------------------------------------------------------------

namespace detail {

inline std::string artifact_name(const char* stem, std::size_t combo) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%s_%03zu.csv", stem, combo);
  return buffer;
}

inline std::string full_precision(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace detail

/// Write every artifact of a finished experiment into `dir`: the config that
/// produced it, one ranking and convergence CSV per combination, metrics
/// JSON with per-restart values, and a human-readable summary table.
/// Returns the written paths.
inline std::vector<std::string> emit_outputs(const ExperimentResult& result,
                                             const ExperimentConfig& cfg,
                                             const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory " + dir + ": " + ec.message());
  std::vector<std::string> written;
  auto open = [&](const std::string& name) {
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream out(path);
    if (!out) throw io_error("failed to open " + path + " for writing");
    written.push_back(path);
    return out;
  };

  {
    auto out = open("config.txt");
    out << (cfg.source_text.empty() ? serialize_experiment_config(cfg) : cfg.source_text);
  }

  for (std::size_t c = 0; c < result.combos.size(); ++c) {
    const ComboRun& combo = result.combos[c];
    {
      auto out = open(detail::artifact_name("ranking", c));
      out << "feature,score\n";
      for (std::size_t i = 0; i < combo.ranking.order.size(); ++i)
        out << combo.ranking.order[i] << ','
            << detail::full_precision(combo.ranking.scores[i]) << '\n';
    }
    if (!combo.objective_curve.empty()) {
      auto out = open(detail::artifact_name("convergence", c));
      out << "iteration,objective,eta\n";
      for (std::size_t i = 0; i < combo.objective_curve.size(); ++i)
        out << (i + 1) << ',' << detail::full_precision(combo.objective_curve[i]) << ','
            << detail::full_precision(combo.pace_curve[i]) << '\n';
    }
  }

  nlohmann::json root;
  root["method"] = to_name(cfg.method);
  root["clusterer"] = to_name(cfg.clusterer);
  root["restarts"] = cfg.restarts;
  root["seed"] = cfg.seed;
  root["data"] = cfg.data_path;
  root["labels"] = cfg.labels_path;
  root["scale"] = cfg.scale;
  root["feature_counts"] = cfg.feature_counts;
  nlohmann::json records = nlohmann::json::array();
  for (const RunRecord& record : result.records) {
    nlohmann::json r;
    r["combo"] = record.combo;
    r["params"] = record.params;
    r["feature_count"] = record.feature_count;
    r["selected"] = record.selected;
    r["acc"] = {{"mean", record.metrics.acc_mean},
                {"std", record.metrics.acc_std},
                {"per_restart", record.metrics.acc_runs}};
    r["nmi"] = {{"mean", record.metrics.nmi_mean},
                {"std", record.metrics.nmi_std},
                {"per_restart", record.metrics.nmi_runs}};
    r["wall_seconds"] = record.wall_seconds;
    r["ranking_file"] = detail::artifact_name("ranking", static_cast<std::size_t>(record.combo));
    if (!result.combos[static_cast<std::size_t>(record.combo)].objective_curve.empty())
      r["convergence_file"] =
          detail::artifact_name("convergence", static_cast<std::size_t>(record.combo));
    records.push_back(std::move(r));
  }
  root["records"] = std::move(records);

  const bool swept = result.combos.size() > 1;
  const char* mode = swept ? "best over grid" : "fixed parameters";
  const std::size_t best_acc = best_record_index(result.records, "acc");
  const std::size_t best_nmi = best_record_index(result.records, "nmi");
  root["best"] = {{"mode", mode},
                  {"acc", {{"record", best_acc},
                           {"combo", result.records[best_acc].combo},
                           {"feature_count", result.records[best_acc].feature_count}}},
                  {"nmi", {{"record", best_nmi},
                           {"combo", result.records[best_nmi].combo},
                           {"feature_count", result.records[best_nmi].feature_count}}}};

  {
    auto out = open("metrics.json");
    out << root.dump(2) << '\n';
  }

  {
    auto out = open("summary.txt");
    out << "# method=" << to_name(cfg.method) << " clusterer=" << to_name(cfg.clusterer)
        << " restarts=" << cfg.restarts << " seed=" << cfg.seed << "\n";
    out << "# data=" << cfg.data_path << "\n";
    out << "# combo parameters:\n";
    for (std::size_t c = 0; c < result.combos.size(); ++c) {
      out << "#   " << c << ":";
      for (const auto& [key, value] : result.combos[c].params) {
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%g", value);
        out << ' ' << key << '=' << buffer;
      }
      out << "\n";
    }
    out << "combo N ACC NMI\n";
    for (const RunRecord& record : result.records)
      out << record.combo << ' ' << record.feature_count << ' '
          << format_mean_std(record.metrics.acc_mean, record.metrics.acc_std) << ' '
          << format_mean_std(record.metrics.nmi_mean, record.metrics.nmi_std) << "\n";
    const RunRecord& ba = result.records[best_acc];
    const RunRecord& bn = result.records[best_nmi];
    out << "# best ACC: combo " << ba.combo << " N=" << ba.feature_count << " ("
        << format_mean_std(ba.metrics.acc_mean, ba.metrics.acc_std) << ") [" << mode << "]\n";
    out << "# best NMI: combo " << bn.combo << " N=" << bn.feature_count << " ("
        << format_mean_std(bn.metrics.nmi_mean, bn.metrics.nmi_std) << ") [" << mode << "]\n";
  }

  return written;
}

/// Reload the records out of an emitted metrics JSON.
inline std::vector<RunRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("failed to open " + path);
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": invalid metrics json: " + e.what());
  }
  std::vector<RunRecord> records;
  try {
    for (const auto& r : root.at("records")) {
      RunRecord record;
      record.combo = r.at("combo").get<int>();
      for (const auto& [key, value] : r.at("params").items())
        record.params[key] = value.get<double>();
      record.feature_count = r.at("feature_count").get<int>();
      for (const auto& v : r.at("selected")) record.selected.push_back(v.get<Index>());
      record.metrics.acc_mean = r.at("acc").at("mean").get<double>();
      record.metrics.acc_std = r.at("acc").at("std").get<double>();
      record.metrics.acc_runs = r.at("acc").at("per_restart").get<std::vector<double>>();
      record.metrics.nmi_mean = r.at("nmi").at("mean").get<double>();
      record.metrics.nmi_std = r.at("nmi").at("std").get<double>();
      record.metrics.nmi_runs = r.at("nmi").at("per_restart").get<std::vector<double>>();
      record.wall_seconds = r.at("wall_seconds").get<double>();
      records.push_back(std::move(record));
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": unexpected metrics json shape: " + e.what());
  }
  return records;
}

/// One row of an emitted summary table, percentages rescaled back to [0, 1].
struct SummaryRow {
  int combo = 0;
  int feature_count = 0;
  double acc_mean = 0.0, acc_std = 0.0;
  double nmi_mean = 0.0, nmi_std = 0.0;
};

inline std::vector<SummaryRow> load_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("failed to open " + path);
  std::vector<SummaryRow> rows;
  std::string line;
  auto parse_pair = [&](const std::string& cell, double& mean, double& std_dev) {
    const auto sep = cell.find("±");
    if (sep == std::string::npos) throw parse_error(path + ": malformed summary cell " + cell);
    mean = detail::config_double(cell.substr(0, sep), "summary") / 100.0;
    std_dev = detail::config_double(cell.substr(sep + 2), "summary") / 100.0;
  };
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#' || line.rfind("combo", 0) == 0) continue;
    std::istringstream cells(line);
    SummaryRow row;
    std::string acc_cell, nmi_cell;
    if (!(cells >> row.combo >> row.feature_count >> acc_cell >> nmi_cell))
      throw parse_error(path + ": malformed summary row '" + line + "'");
    parse_pair(acc_cell, row.acc_mean, row.acc_std);
    parse_pair(nmi_cell, row.nmi_mean, row.nmi_std);
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Method comparison
// ---------------------------------------------------------------------------

struct CompareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool exact = false;
  bool reject = false;  // true when p_value falls below the significance level
  int pairs = 0;
};

/// Pair two record sets restart-by-restart and run the one-sided signed-rank
/// test. For every feature count present on both sides the record with the
/// best metric mean is chosen (sweep order breaks ties), mirroring
/// best-over-grid reporting; the per-restart values of those records are then
/// paired in restart order across all common feature counts.
inline CompareResult compare_methods(const std::vector<RunRecord>& records_a,
                                     const std::vector<RunRecord>& records_b,
                                     const std::string& metric, Alternative alternative,
                                     double significance = 0.05) {
  if (metric != "acc" && metric != "nmi")
    throw config_error("unknown metric '" + metric + "' (expected acc or nmi)");
  auto runs = [&](const RunRecord& r) -> const std::vector<double>& {
    return metric == "acc" ? r.metrics.acc_runs : r.metrics.nmi_runs;
  };
  auto mean = [&](const RunRecord& r) {
    return metric == "acc" ? r.metrics.acc_mean : r.metrics.nmi_mean;
  };
  auto best_by_count = [&](const std::vector<RunRecord>& records) {
    std::map<int, std::size_t> best;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto [it, inserted] = best.emplace(records[i].feature_count, i);
      if (!inserted && mean(records[i]) > mean(records[it->second])) it->second = i;
    }
    return best;
  };

  const auto best_a = best_by_count(records_a);
  const auto best_b = best_by_count(records_b);
  std::vector<double> a_values, b_values;
  for (const auto& [count, ia] : best_a) {
    const auto ib = best_b.find(count);
    if (ib == best_b.end()) continue;
    const auto& ra = runs(records_a[ia]);
    const auto& rb = runs(records_b[ib->second]);
    if (ra.size() != rb.size())
      throw config_error("restart counts differ at feature count " + std::to_string(count));
    a_values.insert(a_values.end(), ra.begin(), ra.end());
    b_values.insert(b_values.end(), rb.begin(), rb.end());
  }
  if (a_values.empty()) throw config_error("no overlapping feature counts to compare");

  const WilcoxonResult w = wilcoxon_signed_rank(a_values, b_values, alternative);
  CompareResult result;
  result.statistic = w.statistic;
  result.p_value = w.p_value;
  result.exact = w.exact;
  result.reject = w.p_value <= significance;
  result.pairs = static_cast<int>(a_values.size());
  return result;
}

}  // namespace splr
