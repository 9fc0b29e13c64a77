// Command-line front end: fit the feature selector, rank features with it or
// with the baselines, evaluate subsets by clustering agreement, sweep
// parameter grids from config files, and compare emitted metrics.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <splr/splr.hpp>

namespace {

struct DataFlags {
  std::string data_path;
  std::string labels_path;
  std::string format_name = "auto";
  bool scale = true;
};

struct SolverFlags {
  double alpha = 1.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double gamma = 2.0;
  double mu = 1.05;
  std::string eta0 = "auto";
  int subspace_dim = 0;
  int max_iter = 1500;
  double tol = 1e-6;
  double eps = 1e-8;
  std::uint64_t seed = 42;
};

struct MethodFlags {
  std::string method = "splr";
  int neighbors = 5;
  double bandwidth = 10.0;
};

void add_data_flags(CLI::App* cmd, DataFlags& f, bool with_labels) {
  cmd->add_option("--data", f.data_path, "Data file: rows are samples, columns are features")
      ->required();
  if (with_labels)
    cmd->add_option("--labels", f.labels_path, "Ground-truth label file, one label per sample");
  cmd->add_option("--format", f.format_name, "Input format: csv, tsv, dense or auto")
      ->capture_default_str();
  cmd->add_flag("--scale,!--no-scale", f.scale, "Min-max scale each feature to [0,1]")
      ->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--alpha", f.alpha, "Row-sparsity penalty weight")->capture_default_str();
  cmd->add_option("--lambda1", f.lambda1, "Feature-redundancy penalty weight")
      ->capture_default_str();
  cmd->add_option("--lambda2", f.lambda2, "Manifold-preservation penalty weight")
      ->capture_default_str();
  cmd->add_option("--lambda3", f.lambda3, "Orthogonality penalty weight")->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "Self-paced mixture sharpness")->capture_default_str();
  cmd->add_option("--mu", f.mu, "Pace growth factor per iteration (>= 1)")->capture_default_str();
  cmd->add_option("--eta0", f.eta0, "Initial pace, or 'auto' to derive it from the data")
      ->capture_default_str();
  cmd->add_option("--subspace-dim", f.subspace_dim,
                  "Subspace dimension (default 200, capped at the feature count)");
  cmd->add_option("--max-iter", f.max_iter, "Iteration budget")->capture_default_str();
  cmd->add_option("--tol", f.tol, "Relative objective-change convergence tolerance")
      ->capture_default_str();
  cmd->add_option("--eps", f.eps, "Numerical safeguard added to update denominators")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Master random seed")->capture_default_str();
}

void add_method_flags(CLI::App* cmd, MethodFlags& f) {
  cmd->add_option("--method", f.method, "Selector: splr, variance or laplacian_score")
      ->capture_default_str();
  cmd->add_option("--neighbors", f.neighbors, "Neighborhood size for laplacian_score")
      ->capture_default_str();
  cmd->add_option("--bandwidth", f.bandwidth, "Kernel bandwidth for laplacian_score")
      ->capture_default_str();
}

std::optional<splr::Format> resolve_format(const std::string& name) {
  if (name == "auto") return std::nullopt;
  return splr::detail::config_format(name);
}

splr::SolverConfig solver_config_from(const SolverFlags& f) {
  splr::SolverConfig cfg;
  cfg.alpha = f.alpha;
  cfg.lambda1 = f.lambda1;
  cfg.lambda2 = f.lambda2;
  cfg.lambda3 = f.lambda3;
  cfg.gamma = f.gamma;
  cfg.mu = f.mu;
  if (f.eta0 != "auto") {
    double value = 0.0;
    if (!splr::detail::parse_double(f.eta0, value))
      throw splr::config_error("--eta0 must be a number or 'auto', got '" + f.eta0 + "'");
    cfg.eta0 = value;
  }
  cfg.subspace_dim = f.subspace_dim;
  cfg.max_iter = f.max_iter;
  cfg.tol = f.tol;
  cfg.eps = f.eps;
  cfg.seed = f.seed;
  return cfg;
}

splr::DataMatrix load_scaled(const DataFlags& f) {
  const auto format = resolve_format(f.format_name);
  splr::DataMatrix data =
      splr::load_matrix(f.data_path, format ? *format : splr::format_from_path(f.data_path));
  return f.scale ? splr::scale_features(data) : data;
}

std::ofstream open_artifact(const std::filesystem::path& dir, const std::string& name,
                            std::vector<std::string>& written) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw splr::io_error("cannot create output directory " + dir.string() + ": " + ec.message());
  const std::string path = (dir / name).string();
  std::ofstream out(path);
  if (!out) throw splr::io_error("failed to open " + path + " for writing");
  written.push_back(path);
  return out;
}

void write_ranking(std::ostream& out, const splr::FeatureRanking& ranking) {
  out << "feature,score\n";
  for (std::size_t i = 0; i < ranking.order.size(); ++i)
    out << ranking.order[i] << ',' << splr::detail::full_precision(ranking.scores[i]) << '\n';
}

splr::FeatureRanking rank_with_method(const splr::DataMatrix& data, const MethodFlags& method,
                                      const SolverFlags& solver) {
  switch (splr::method_from_name(method.method)) {
    case splr::Method::splr: {
      const splr::SolverState state = splr::fit(data, solver_config_from(solver));
      return splr::rank_features(state);
    }
    case splr::Method::variance:
      return splr::baseline_variance_rank(data.values());
    default:
      return splr::baseline_laplacian_score(data.values(), -1, method.neighbors,
                                            method.bandwidth);
  }
}

splr::ExperimentConfig experiment_config_from(const DataFlags& data, const SolverFlags& solver,
                                              const MethodFlags& method,
                                              const std::string& clusterer, int restarts,
                                              const std::string& features,
                                              const std::string& out_dir, int jobs) {
  splr::ExperimentConfig cfg;
  cfg.data_path = data.data_path;
  cfg.labels_path = data.labels_path;
  cfg.format = resolve_format(data.format_name);
  cfg.scale = data.scale;
  cfg.method = splr::method_from_name(method.method);
  cfg.clusterer = splr::clusterer_from_name(clusterer);
  cfg.restarts = restarts;
  cfg.feature_counts = splr::detail::config_int_list(features, "features");
  cfg.out_dir = out_dir;
  cfg.jobs = jobs;
  cfg.seed = solver.seed;
  cfg.alpha = {solver.alpha};
  cfg.lambda1 = {solver.lambda1};
  cfg.lambda2 = {solver.lambda2};
  cfg.lambda3 = {solver.lambda3};
  cfg.gamma = {solver.gamma};
  cfg.mu = {solver.mu};
  if (solver.eta0 != "auto") {
    double value = 0.0;
    if (!splr::detail::parse_double(solver.eta0, value))
      throw splr::config_error("--eta0 must be a number or 'auto', got '" + solver.eta0 + "'");
    cfg.eta0 = {value};
  }
  cfg.subspace_dim = solver.subspace_dim;
  cfg.max_iter = solver.max_iter;
  cfg.tol = solver.tol;
  cfg.eps = solver.eps;
  cfg.neighbors = method.neighbors;
  cfg.bandwidth = method.bandwidth;
  return cfg;
}

void print_summary_file(const std::vector<std::string>& written) {
  for (const std::string& path : written) {
    if (path.size() < 11 || path.substr(path.size() - 11) != "summary.txt") continue;
    std::ifstream in(path);
    std::cout << in.rdbuf();
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Self-paced low-redundancy unsupervised feature selection"};
  app.require_subcommand(1);

  DataFlags fit_data;
  SolverFlags fit_solver;
  std::string fit_out = "splr_out";
  bool fit_dump_graphs = false;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "Fit the selector once and write ranking + convergence files");
  add_data_flags(fit_cmd, fit_data, false);
  add_solver_flags(fit_cmd, fit_solver);
  fit_cmd->add_option("--out", fit_out, "Output directory")->capture_default_str();
  fit_cmd->add_flag("--dump-graphs", fit_dump_graphs,
                    "Also write the feature/sample similarity graphs and the Laplacian");
  fit_cmd->callback([&] {
    const splr::DataMatrix data = load_scaled(fit_data);
    const splr::SolverConfig cfg = solver_config_from(fit_solver);
    const splr::SolverState state = splr::fit(data, cfg);
    std::vector<std::string> written;
    {
      auto out = open_artifact(fit_out, "ranking.csv", written);
      write_ranking(out, splr::rank_features(state));
    }
    {
      auto out = open_artifact(fit_out, "convergence.csv", written);
      out << "iteration,objective,eta\n";
      for (std::size_t i = 0; i < state.objective_history.size(); ++i)
        out << (i + 1) << ',' << splr::detail::full_precision(state.objective_history[i]) << ','
            << splr::detail::full_precision(state.pace_history[i]) << '\n';
    }
    if (fit_dump_graphs) {
      const splr::FeatureSimilarity feature_sim = splr::build_feature_similarity(data.values());
      const splr::SampleGraph graph = splr::build_sample_graph(data.values());
      std::error_code ec;
      std::filesystem::create_directories(fit_out, ec);
      auto dump = [&](const char* name, const splr::Matrix& m) {
        const std::string path = (std::filesystem::path(fit_out) / name).string();
        splr::write_matrix(path, m, splr::Format::csv);
        written.push_back(path);
      };
      dump("feature_similarity.csv", feature_sim);
      dump("sample_similarity.csv", graph.similarity);
      dump("sample_laplacian.csv", graph.laplacian());
    }
    std::cout << (state.converged ? "converged" : "stopped") << " after " << state.iterations
              << " iterations; final objective "
              << splr::detail::full_precision(state.objective_history.back()) << "\n";
    for (const std::string& path : written) std::cout << path << "\n";
  });

  DataFlags rank_data;
  SolverFlags rank_solver;
  MethodFlags rank_method;
  int rank_top = -1;
  std::string rank_out;
  CLI::App* rank_cmd = app.add_subcommand("rank", "Print features ranked most important first");
  add_data_flags(rank_cmd, rank_data, false);
  add_solver_flags(rank_cmd, rank_solver);
  add_method_flags(rank_cmd, rank_method);
  rank_cmd->add_option("--top", rank_top, "Print only the top N features (-1 for all)")
      ->capture_default_str();
  rank_cmd->add_option("--out", rank_out, "Also write the ranking CSV to this directory");
  rank_cmd->callback([&] {
    const splr::DataMatrix data = load_scaled(rank_data);
    splr::FeatureRanking ranking = rank_with_method(data, rank_method, rank_solver);
    if (rank_top >= 0 && static_cast<std::size_t>(rank_top) < ranking.order.size()) {
      ranking.order.resize(static_cast<std::size_t>(rank_top));
      ranking.scores.resize(static_cast<std::size_t>(rank_top));
    }
    write_ranking(std::cout, ranking);
    if (!rank_out.empty()) {
      std::vector<std::string> written;
      auto out = open_artifact(rank_out, "ranking.csv", written);
      write_ranking(out, ranking);
    }
  });

  DataFlags eval_data;
  SolverFlags eval_solver;
  MethodFlags eval_method;
  std::string eval_clusterer = "kmeans";
  int eval_restarts = 20;
  std::string eval_features = "20:200:20";
  std::string eval_out = "splr_out";
  int eval_jobs = 1;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Cluster on selected features and report agreement metrics");
  add_data_flags(eval_cmd, eval_data, true);
  add_solver_flags(eval_cmd, eval_solver);
  add_method_flags(eval_cmd, eval_method);
  eval_cmd->add_option("--clusterer", eval_clusterer, "Clusterer: kmeans or pam")
      ->capture_default_str();
  eval_cmd->add_option("--restarts", eval_restarts, "Clustering restarts per feature count")
      ->capture_default_str();
  eval_cmd->add_option("--features", eval_features,
                       "Feature counts: comma list or start:stop:step range")
      ->capture_default_str();
  eval_cmd->add_option("--out", eval_out, "Output directory")->capture_default_str();
  eval_cmd->add_option("--jobs", eval_jobs, "Worker pool size")->capture_default_str();
  eval_cmd->callback([&] {
    const splr::ExperimentConfig cfg =
        experiment_config_from(eval_data, eval_solver, eval_method, eval_clusterer, eval_restarts,
                               eval_features, eval_out, eval_jobs);
    const splr::ExperimentResult result = splr::run_experiment(cfg);
    print_summary_file(splr::emit_outputs(result, cfg, cfg.out_dir));
  });

  std::string sweep_config_path;
  std::string sweep_out;
  int sweep_jobs = 0;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
  sweep_cmd->add_option("--config", sweep_config_path, "Flat key-value sweep config file")
      ->required();
  sweep_cmd->add_option("--out", sweep_out, "Override the configured output directory");
  sweep_cmd->add_option("--jobs", sweep_jobs, "Override the configured worker pool size");
  sweep_cmd->callback([&] {
    splr::ExperimentConfig cfg = splr::load_experiment_config(sweep_config_path);
    if (!sweep_out.empty()) cfg.out_dir = sweep_out;
    if (sweep_jobs > 0) cfg.jobs = sweep_jobs;
    const splr::ExperimentResult result = splr::run_experiment(cfg);
    print_summary_file(splr::emit_outputs(result, cfg, cfg.out_dir));
  });

  std::string compare_a;
  std::string compare_b;
  std::string compare_metric = "acc";
  std::string compare_alternative = "greater";
  double compare_significance = 0.05;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Signed-rank test between two emitted metrics files");
  compare_cmd->add_option("--a", compare_a, "metrics.json of the first method")->required();
  compare_cmd->add_option("--b", compare_b, "metrics.json of the second method")->required();
  compare_cmd->add_option("--metric", compare_metric, "Metric to compare: acc or nmi")
      ->capture_default_str();
  compare_cmd
      ->add_option("--alternative", compare_alternative,
                   "greater: first better; less: first worse")
      ->capture_default_str();
  compare_cmd->add_option("--significance", compare_significance, "Rejection threshold for h")
      ->capture_default_str();
  compare_cmd->callback([&] {
    splr::Alternative alternative;
    if (compare_alternative == "greater") alternative = splr::Alternative::greater;
    else if (compare_alternative == "less") alternative = splr::Alternative::less;
    else
      throw splr::config_error("unknown alternative '" + compare_alternative +
                               "' (expected greater or less)");
    const splr::CompareResult result =
        splr::compare_methods(splr::load_records(compare_a), splr::load_records(compare_b),
                              compare_metric, alternative, compare_significance);
    std::cout << "pairs " << result.pairs << "\n"
              << "statistic " << splr::detail::full_precision(result.statistic) << "\n"
              << "p " << splr::detail::full_precision(result.p_value) << "\n"
              << "h " << (result.reject ? 1 : 0) << (result.exact ? " (exact)" : " (normal)")
              << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // command-line mistakes are config errors
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const splr::io_error& e) {  // also covers parse_error
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const splr::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
