// Experiment CLI: single clustering runs, multi-seed comparisons,
// initialization-robustness studies, and descent-trace exports.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "pkm/baselines.hpp"
#include "pkm/metrics.hpp"
#include "pkm/random.hpp"
#include "pkm/report.hpp"
#include "pkm/solver.hpp"

namespace {

using namespace pkm;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIterationCap = 4;

struct CommonOptions {
  std::string data_path;
  int label_column = -1;  // -1: no label column
  bool has_header = false;
  std::string delimiter = ",";
  bool apply_zscore = false;
  Index k = 2;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out_path;
  Index max_iterations = 200000;
  Scalar step = 0.01;
  Scalar fuzzifier = 1.3;
  Index lk_cap = 20000;

  void attach(CLI::App* cmd, bool needs_k = true) {
    cmd->add_option("--data", data_path, "input CSV (.gz accepted)")
        ->required();
    cmd->add_option("--label-col", label_column,
                    "zero-based label column index (-1: none)");
    cmd->add_flag("--header", has_header, "skip a header row");
    cmd->add_option("--delimiter", delimiter, "field delimiter")
        ->default_val(",");
    cmd->add_flag("--zscore", apply_zscore, "z-score features before running");
    if (needs_k) cmd->add_option("--k", k, "number of clusters")->required();
    cmd->add_option("--seed", seed, "master RNG seed");
    cmd->add_option("--jobs", jobs, "worker threads for multi-run commands");
    cmd->add_option("--out", out_path, "output file path");
    cmd->add_option("--max-iters", max_iterations, "solver iteration cap");
    cmd->add_option("--step", step, "AGP fixed step length");
    cmd->add_option("--m", fuzzifier, "FCM fuzzifier (m > 1)");
    cmd->add_option("--lk-cap", lk_cap, "dense projector size cap on L*K");
  }

  Dataset load() const {
    CsvOptions opts;
    opts.has_header = has_header;
    if (label_column >= 0) opts.label_column = label_column;
    if (delimiter.size() != 1)
      throw InvalidArgument("delimiter must be a single character");
    opts.delimiter = delimiter[0];
    Dataset d = load_csv(data_path, opts);
    if (apply_zscore) d = zscore(d);
    return d;
  }

  std::string resolve_out(const std::string& fallback) const {
    if (!out_path.empty()) return out_path;
    const char* dir = std::getenv("PKM_OUTPUT_DIR");
    return (std::filesystem::path(dir ? dir : ".") / fallback).string();
  }
};

// A method token is a name with an optional @parameter, e.g. pkm-agp@0.1
// (step length) or fcm@2.0 (fuzzifier).
struct MethodSpec {
  std::string token;
  std::string name;
  std::optional<Scalar> param;
};

MethodSpec parse_method(const std::string& token) {
  MethodSpec spec;
  spec.token = token;
  const auto at = token.find('@');
  spec.name = token.substr(0, at);
  if (at != std::string::npos) spec.param = std::stod(token.substr(at + 1));
  const bool known = spec.name == "pkm-agp" || spec.name == "pkm-msagp" ||
                     spec.name == "pkm-fmsagp" || spec.name == "kmeanspp" ||
                     spec.name == "fcm";
  if (!known) throw InvalidArgument("unknown method '" + token + "'");
  return spec;
}

ClusterResult run_method(const Dataset& data, const CommonOptions& common,
                         const MethodSpec& spec, std::uint64_t seed) {
  if (spec.name == "kmeanspp")
    return kmeans_pp(data, common.k, seed, common.max_iterations);
  if (spec.name == "fcm") {
    FcmConfig cfg;
    cfg.m = spec.param.value_or(common.fuzzifier);
    cfg.seed = seed;
    return fcm(data, common.k, cfg);
  }
  SolverConfig cfg;
  cfg.method = spec.name == "pkm-agp"     ? Method::kAgp
               : spec.name == "pkm-msagp" ? Method::kMsagp
                                          : Method::kFmsagp;
  cfg.step_length = spec.param.value_or(common.step);
  cfg.max_iterations = common.max_iterations;
  cfg.seed = seed;
  cfg.lk_cap = common.lk_cap;
  return solve(data, common.k, cfg);
}

Json options_json(const CommonOptions& common, const MethodSpec& spec,
                  Index seeds) {
  Json j;
  j["k"] = common.k;
  j["method"] = spec.token;
  j["seed"] = common.seed;
  j["seeds"] = seeds;
  j["max_iterations"] = common.max_iterations;
  if (spec.name == "pkm-agp") j["step"] = spec.param.value_or(common.step);
  if (spec.name == "fcm") j["m"] = spec.param.value_or(common.fuzzifier);
  j["lk_cap"] = common.lk_cap;
  j["preprocessing"] = common.apply_zscore ? "zscore" : "none";
  j["jobs"] = common.jobs;
  return j;
}

// Best-of-seeds by the method's own objective; runs fan out over jobs.
struct MultiRun {
  ClusterResult best;
  std::vector<Scalar> objectives;
  Scalar total_wall = 0;
};

MultiRun run_seeds(const Dataset& data, const CommonOptions& common,
                   const MethodSpec& spec, Index seeds) {
  if (seeds < 1) throw InvalidArgument("--seeds must be at least 1");
  std::vector<std::optional<ClusterResult>> results(seeds);
  std::atomic<Index> next{0};
  auto worker = [&] {
    for (Index i = next.fetch_add(1); i < seeds; i = next.fetch_add(1))
      results[i] = run_method(data, common, spec,
                              derive_seed(common.seed, i));
  };
  if (common.jobs <= 1 || seeds == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<Index>(common.jobs, seeds); ++w)
      pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  MultiRun out{std::move(*results[0]), {}, 0};
  out.objectives.push_back(out.best.objective);
  out.total_wall = out.best.wall_time_seconds;
  for (Index i = 1; i < seeds; ++i) {
    out.objectives.push_back(results[i]->objective);
    out.total_wall += results[i]->wall_time_seconds;
    if (results[i]->objective < out.best.objective)
      out.best = std::move(*results[i]);
  }
  return out;
}

int cmd_cluster(const CommonOptions& common, const std::string& method,
                Index seeds) {
  const auto spec = parse_method(method);
  const Dataset data = common.load();
  const std::string out = common.resolve_out("cluster.json");
  try {
    const MultiRun runs = run_seeds(data, common, spec, seeds);
    const MetricSet metrics = evaluate_metrics(data, runs.best);
    Json j = run_report("cluster", data, spec.token,
                        options_json(common, spec, seeds), runs.best, metrics);
    j["result"]["seed_objectives"] = runs.objectives;
    j["result"]["total_wall_time_seconds"] = runs.total_wall;
    write_json(j, out);
    std::cout << "wrote " << out << " (objective "
              << runs.best.objective << ")\n";
    return runs.best.converged() ? kExitOk : kExitIterationCap;
  } catch (const NumericalError& e) {
    write_json(error_report("cluster", "numerical", e.what()), out);
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int cmd_compare(const CommonOptions& common,
                const std::vector<std::string>& methods, Index seeds) {
  const Dataset data = common.load();
  const std::string out = common.resolve_out("compare.json");
  Json rows = Json::array();
  for (const auto& token : methods) {
    const auto spec = parse_method(token);
    Json row;
    row["method"] = token;
    try {
      const MultiRun runs = run_seeds(data, common, spec, seeds);
      const MetricSet metrics = evaluate_metrics(data, runs.best);
      row["objective"] = runs.best.objective;
      row["metrics"] = Json::object();
      row["metrics"]["sse"] = metrics.sse;
      row["metrics"]["dbi"] = metrics.dbi ? Json(*metrics.dbi) : Json(nullptr);
      row["metrics"]["nmi"] = metrics.nmi ? Json(*metrics.nmi) : Json(nullptr);
      row["metrics"]["ari"] = metrics.ari ? Json(*metrics.ari) : Json(nullptr);
      row["metrics"]["v_measure"] =
          metrics.v_measure ? Json(*metrics.v_measure) : Json(nullptr);
      row["iterations"] = runs.best.iterations;
      row["converged"] = runs.best.converged();
      row["wall_time_seconds"] = runs.best.wall_time_seconds;
      row["total_wall_time_seconds"] = runs.total_wall;
      row["seed_objectives"] = runs.objectives;
    } catch (const Error& e) {
      // Partial failure: record the cell and keep going.
      row["error"] = e.what();
    }
    rows.push_back(row);
  }
  Json j;
  j["schema"] = "pkm-compare/1";
  j["version"] = kVersion;
  j["dataset"] = {{"name", data.name},
                  {"rows", data.rows()},
                  {"dims", data.dims()}};
  j["options"] = {{"k", common.k},
                  {"seed", common.seed},
                  {"seeds", seeds},
                  {"preprocessing", common.apply_zscore ? "zscore" : "none"}};
  j["rows"] = rows;
  write_json(j, out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_robustness(const CommonOptions& common,
                   const std::vector<std::string>& methods, Index runs) {
  const Dataset data = common.load();
  if (!data.labels)
    throw InvalidArgument("robustness requires ground-truth labels");
  const std::string out = common.resolve_out("robustness.json");
  Json rows = Json::array();
  for (const auto& token : methods) {
    const auto spec = parse_method(token);
    Json row;
    row["method"] = token;
    try {
      const Index correct = robustness(
          data, *data.labels,
          [&](const Dataset& d, std::uint64_t s) {
            return run_method(d, common, spec, s).labels;
          },
          runs, common.seed, common.jobs);
      row["runs"] = runs;
      row["correct"] = correct;
      row["percentage"] =
          runs > 0 ? 100.0 * static_cast<Scalar>(correct) / runs : 0.0;
    } catch (const Error& e) {
      row["error"] = e.what();
    }
    rows.push_back(row);
  }
  Json j;
  j["schema"] = "pkm-robustness/1";
  j["version"] = kVersion;
  j["dataset"] = {{"name", data.name}, {"rows", data.rows()}};
  j["options"] = {{"k", common.k}, {"seed", common.seed}, {"runs", runs}};
  j["rows"] = rows;
  write_json(j, out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_trace(const CommonOptions& common,
              const std::vector<std::string>& methods) {
  const Dataset data = common.load();
  const std::string out = common.resolve_out("trace.csv");
  std::vector<std::pair<std::string, std::vector<IterationRecord>>> traces;
  for (const auto& token : methods) {
    const auto spec = parse_method(token);
    traces.emplace_back(token,
                        run_method(data, common, spec, common.seed).trace);
  }
  write_trace_csv(traces, out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_make_data(const std::string& dir, std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto put = [&](const Dataset& d, const std::string& file) {
    save_csv(d, (fs::path(dir) / file).string());
    std::cout << "wrote " << (fs::path(dir) / file).string() << " (" << d.rows()
              << "x" << d.dims() << ")\n";
  };
  put(make_artificial(seed), "artificial.csv");
  // Synthetic stand-ins shaped like the benchmark datasets; class sizes
  // mirror the originals but the coordinates are generated blobs.
  int salt = 1;
  for (const char* name :
       {"seeds-like", "glass-like", "ionosphere-like", "dermatology-like",
        "breast-cancer-like", "yeast-like"}) {
    std::string file = name;
    for (auto& c : file)
      if (c == '-') c = '_';
    put(make_standin(name, derive_seed(seed, salt++)), file + ".csv");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic K-means clustering experiments"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string method = "pkm-fmsagp";
  std::vector<std::string> methods;
  Index seeds = 1;
  Index runs = 100;
  std::string data_dir = "data";
  std::uint64_t gen_seed = 7;

  auto* cluster = app.add_subcommand("cluster", "single clustering run");
  common.attach(cluster);
  cluster->add_option("--method", method, "method token");
  cluster->add_option("--seeds", seeds, "best-of-N derived seeds");

  auto* compare = app.add_subcommand("compare", "method comparison table");
  CommonOptions compare_common;
  compare_common.attach(compare);
  compare->add_option("--methods", methods, "method tokens")->required();
  compare->add_option("--seeds", seeds, "best-of-N derived seeds");

  auto* robust = app.add_subcommand("robustness", "initialization robustness");
  CommonOptions robust_common;
  robust_common.attach(robust);
  robust->add_option("--methods", methods, "method tokens")->required();
  robust->add_option("--runs", runs, "random initializations per method");

  auto* trace = app.add_subcommand("trace", "descent traces as CSV");
  CommonOptions trace_common;
  trace_common.attach(trace);
  trace->add_option("--methods", methods, "method tokens")->required();

  auto* make_data = app.add_subcommand("make-data", "generate bundled datasets");
  make_data->add_option("--dir", data_dir, "output directory");
  make_data->add_option("--gen-seed", gen_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cluster->parsed()) return cmd_cluster(common, method, seeds);
    if (compare->parsed()) return cmd_compare(compare_common, methods, seeds);
    if (robust->parsed()) return cmd_robustness(robust_common, methods, runs);
    if (trace->parsed()) return cmd_trace(trace_common, methods);
    if (make_data->parsed()) return cmd_make_data(data_dir, gen_seed);
  } catch (const InvalidArgument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
