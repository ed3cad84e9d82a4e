#pragma once

#include <functional>

#include "pkm/constraints.hpp"
#include "pkm/dataset.hpp"
#include "pkm/objective.hpp"
#include "pkm/result.hpp"

namespace pkm {

enum class Method { kAgp, kMsagp, kFmsagp };

const char* method_name(Method m);

struct SolverConfig {
  Method method = Method::kFmsagp;
  Scalar step_length = 0.01;  // AGP only; clipped to the feasible maximum
  Index max_iterations = 200000;
  Scalar direction_tolerance = 1e-8;   // on the sup norm of d
  Scalar objective_tolerance = 1e-12;  // relative change, AGP stall detector
  std::uint64_t seed = 0;
  Index lk_cap = 20000;  // reject dense LK x LK projectors beyond this

  Scalar epsilon_active = kActivityTolerance;
  Scalar epsilon_column = kColumnDegeneracyFloor;
  int stall_window = 50;  // consecutive flat iterations before the AGP test
  int max_halvings = 50;
  Scalar armijo_c = 1e-4;

  bool record_trace = true;
  // Invoked after every accepted iterate; used by lockstep comparisons.
  std::function<void(Index, const Vector&)> iterate_callback;
};

// Largest step along d keeping all probabilities nonnegative:
// min { -p_r / d_r : p_r > 0, d_r < 0 } over inactive coordinates.
// `bounded` is false when no coordinate blocks the ray.
struct MaxStep {
  Scalar t = 0;
  bool bounded = false;
};
MaxStep max_step(const Vector& p, const Vector& d, const ActiveSet& active);

// Runs the configured gradient-projection method on the PKM model.
// Terminates via the multiplier test (KKT certificate), or at
// max_iterations with status kIterationCap. A degenerate cluster triggers
// one restart from a derived seed before the error surfaces.
ClusterResult solve(const Dataset& data, Index K, const SolverConfig& config);

}  // namespace pkm
