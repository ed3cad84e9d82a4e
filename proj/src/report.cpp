#include "pkm/report.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

#include "pkm/objective.hpp"

namespace pkm {

MetricSet evaluate_metrics(const Dataset& data, const ClusterResult& result) {
  MetricSet m;
  m.sse = sse(data.points, result.labels,
              label_means(data.points, result.labels, result.centers.rows()));
  try {
    m.dbi = dbi(data.points, result.labels, result.centers);
  } catch (const Error&) {
    // fewer than two live clusters, or coinciding centers
  }
  if (data.labels) {
    m.nmi = nmi(*data.labels, result.labels);
    m.ari = ari(*data.labels, result.labels);
    m.v_measure = v_measure(*data.labels, result.labels);
  }
  return m;
}

namespace {

Json metrics_json(const MetricSet& m) {
  Json j;
  j["sse"] = m.sse;
  j["dbi"] = m.dbi ? Json(*m.dbi) : Json(nullptr);
  j["nmi"] = m.nmi ? Json(*m.nmi) : Json(nullptr);
  j["ari"] = m.ari ? Json(*m.ari) : Json(nullptr);
  j["v_measure"] = m.v_measure ? Json(*m.v_measure) : Json(nullptr);
  return j;
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConvergedKkt:
      return "converged-kkt";
    case SolveStatus::kIterationCap:
      return "iteration-cap";
    case SolveStatus::kConverged:
      return "converged";
  }
  return "unknown";
}

}  // namespace

Json run_report(const std::string& command, const Dataset& data,
                const std::string& method, const Json& options,
                const ClusterResult& result, const MetricSet& metrics,
                bool include_trace) {
  Json j;
  j["schema"] = "pkm-run/1";
  j["version"] = kVersion;
  j["command"] = command;
  j["dataset"] = {{"name", data.name},
                  {"rows", data.rows()},
                  {"dims", data.dims()},
                  {"classes", data.num_classes()}};
  j["method"] = method;
  j["options"] = options;
  j["result"]["status"] = status_name(result.status);
  j["result"]["converged"] = result.converged();
  j["result"]["objective"] = result.objective;
  j["result"]["iterations"] = result.iterations;
  j["result"]["seed_used"] = result.seed_used;
  j["result"]["restarted"] = result.restarted;
  j["result"]["metrics"] = metrics_json(metrics);
  j["result"]["labels"] = std::vector<int>(
      result.labels.data(), result.labels.data() + result.labels.size());
  Json centers = Json::array();
  for (Index r = 0; r < result.centers.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < result.centers.cols(); ++c)
      row.push_back(result.centers(r, c));
    centers.push_back(row);
  }
  j["result"]["centers"] = centers;
  j["result"]["wall_time_seconds"] = result.wall_time_seconds;
  if (include_trace) {
    Json trace = Json::array();
    for (const auto& rec : result.trace)
      trace.push_back({{"iteration", rec.iteration},
                       {"objective", rec.objective},
                       {"step", rec.step_length},
                       {"active", rec.active_count},
                       {"wall_time", rec.wall_time}});
    j["trace"] = trace;
  }
  return j;
}

Json error_report(const std::string& command, const std::string& type,
                  const std::string& message) {
  Json j;
  j["schema"] = "pkm-error/1";
  j["version"] = kVersion;
  j["command"] = command;
  j["error"] = {{"type", type}, {"message", message}};
  return j;
}

void write_json(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_trace_csv(
    const std::vector<std::pair<std::string, std::vector<IterationRecord>>>&
        traces,
    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out.precision(17);
  out << "method,iteration,objective,step,active\n";
  for (const auto& [method, trace] : traces)
    for (const auto& rec : trace)
      out << method << "," << rec.iteration << "," << rec.objective << ","
          << rec.step_length << "," << rec.active_count << "\n";
}

}  // namespace pkm
