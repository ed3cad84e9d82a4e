#pragma once

#include <cstdint>
#include <vector>

#include "pkm/common.hpp"
#include "pkm/probability.hpp"

namespace pkm {

struct IterationRecord {
  Index iteration = 0;
  Scalar objective = 0;
  Scalar step_length = 0;
  Index active_count = 0;
  Scalar wall_time = 0;  // seconds since run start
};

enum class SolveStatus {
  kConvergedKkt,   // multiplier test certified a KKT point
  kIterationCap,   // stopped at max_iterations without certification
  kConverged,      // baseline-specific convergence (assignments/memberships)
};

struct ClusterResult {
  ProbabilityMatrix probabilities;
  Matrix centers;            // K x D
  LabelVector labels;        // argmax per row, ties toward smallest index
  Scalar objective = 0;
  std::vector<IterationRecord> trace;

  SolveStatus status = SolveStatus::kConverged;
  Index iterations = 0;
  Scalar wall_time_seconds = 0;
  std::uint64_t seed_used = 0;
  bool restarted = false;  // a degenerate cluster forced one reseed

  bool converged() const { return status != SolveStatus::kIterationCap; }
};

}  // namespace pkm
