#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pkm/baselines.hpp"
#include "pkm/dataset.hpp"
#include "pkm/metrics.hpp"
#include "pkm/result.hpp"
#include "pkm/solver.hpp"

namespace pkm {

using Json = nlohmann::ordered_json;

// Internal metrics always; external ones only when truth labels exist.
struct MetricSet {
  Scalar sse = 0;
  std::optional<Scalar> dbi;
  std::optional<Scalar> nmi;
  std::optional<Scalar> ari;
  std::optional<Scalar> v_measure;
};

MetricSet evaluate_metrics(const Dataset& data, const ClusterResult& result);

// Key order is fixed and doubles round-trip, so identical runs serialize to
// identical bytes; wall-time fields are the only nondeterministic content.
Json run_report(const std::string& command, const Dataset& data,
                const std::string& method, const Json& options,
                const ClusterResult& result, const MetricSet& metrics,
                bool include_trace = true);

Json error_report(const std::string& command, const std::string& type,
                  const std::string& message);

void write_json(const Json& j, const std::string& path);

// Long-format descent trace: label column = method, numeric columns
// iteration / objective / step / active; loadable by load_csv.
void write_trace_csv(
    const std::vector<std::pair<std::string, std::vector<IterationRecord>>>&
        traces,
    const std::string& path);

}  // namespace pkm
