#include "pkm/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "pkm/random.hpp"

namespace pkm {

const char* method_name(Method m) {
  switch (m) {
    case Method::kAgp:
      return "pkm-agp";
    case Method::kMsagp:
      return "pkm-msagp";
    case Method::kFmsagp:
      return "pkm-fmsagp";
  }
  return "unknown";
}

MaxStep max_step(const Vector& p, const Vector& d, const ActiveSet& active) {
  MaxStep out;
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Index r = 0; r < p.size(); ++r) {
    if (d[r] >= 0 || active.contains(r)) continue;
    // p_r == 0 can occur right after a release; it blocks immediately.
    const Scalar t_r = p[r] > 0 ? p[r] / (-d[r]) : 0.0;
    if (t_r < best) best = t_r;
  }
  // A finite but absurd bound means only rounding noise blocks the ray;
  // route that through the fallback search as well.
  if (best < 1e12) {
    out.t = best;
    out.bounded = true;
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kRestartSalt = 0x7265737461727431ULL;

struct Candidate {
  ProbabilityMatrix P;
  Scalar objective = 0;
  std::vector<Index> newly_active;
};

// P + t d with sub-tolerance coordinates snapped to exact zero and rows
// rescaled to sum 1; the objective is evaluated on the committed iterate so
// acceptance decisions match the recorded trace.
void form_candidate(const Matrix& points, const ProbabilityMatrix& P,
                    const Vector& d, Scalar t, const ActiveSet& active,
                    const SolverConfig& cfg, Candidate& out) {
  out.P = P;
  out.P.vector() += t * d;
  out.newly_active.clear();
  Vector& v = out.P.vector();
  for (Index r = 0; r < v.size(); ++r) {
    if (v[r] <= cfg.epsilon_active) {
      v[r] = 0.0;
      if (!active.contains(r)) out.newly_active.push_back(r);
    }
  }
  out.P.renormalize_rows();
  out.objective = pkm_objective(points, out.P, cfg.epsilon_column);
}

ClusterResult solve_attempt(const Dataset& data, Index K,
                            const SolverConfig& cfg, std::uint64_t seed,
                            bool restarted) {
  const Index L = data.rows();
  const ConstraintSystem sys{L, K};

  ProbabilityMatrix P = init_probabilities(L, K, seed);
  ProjectionState proj = build_projection_direct(
      sys, ActiveSet::classify(P.vector(), L, K, cfg.epsilon_active));
  Scalar J = pkm_objective(data.points, P, cfg.epsilon_column);

  const auto start = Clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<Scalar>(Clock::now() - start).count();
  };

  ClusterResult result{.probabilities = P};
  result.seed_used = seed;
  result.restarted = restarted;
  result.status = SolveStatus::kIterationCap;
  auto record = [&](Index k, Scalar t) {
    if (cfg.record_trace)
      result.trace.push_back(
          {k, J, t, proj.active.count(), elapsed()});
  };
  record(0, 0.0);

  Vector g, d;
  Candidate cand{ProbabilityMatrix(L, K)};
  int stall = 0;
  Index iter = 0;
  while (iter < cfg.max_iterations) {
    ++iter;
    g = pkm_gradient(data.points, P, cfg.epsilon_column);
    d = projected_gradient(proj, g);

    // Release blocked constraints when the projected direction vanishes, or
    // when AGP's fixed step has stalled the objective; q1 >= 0 certifies a
    // KKT point and stops the run.
    bool converged = false;
    bool released = false;
    while (d.lpNorm<Eigen::Infinity>() < cfg.direction_tolerance ||
           (!released && cfg.method == Method::kAgp &&
            stall >= cfg.stall_window)) {
      const EscapeResult esc = escape_test(sys, proj.active, g);
      if (esc.stop) {
        converged = true;
        break;
      }
      ActiveSet reduced = proj.active;
      reduced.remove(esc.drop_coordinate);
      rebuild_projection_direct(proj, reduced);
      d = projected_gradient(proj, g);
      released = true;
      stall = 0;
    }
    if (converged) {
      result.status = SolveStatus::kConvergedKkt;
      break;
    }

    const MaxStep ms = max_step(P.vector(), d, proj.active);
    Scalar t = 0;
    bool accepted = false;
    if (cfg.method == Method::kAgp) {
      t = ms.bounded ? std::min(cfg.step_length, ms.t) : cfg.step_length;
      form_candidate(data.points, P, d, t, proj.active, cfg, cand);
      accepted = true;  // fixed step, no descent safeguard
    } else if (ms.bounded) {
      // Maximum feasible step, halved until the objective is non-increasing.
      t = ms.t;
      for (int h = 0; h <= cfg.max_halvings; ++h) {
        form_candidate(data.points, P, d, t, proj.active, cfg, cand);
        if (cand.objective <= J) {
          accepted = true;
          break;
        }
        t *= 0.5;
        if (t < 1e-15) break;
      }
    } else {
      // No blocking constraint: backtracking Armijo search from t0 = 1.
      const Scalar slope = g.dot(d);  // <= 0
      t = 1.0;
      for (int h = 0; h <= cfg.max_halvings; ++h) {
        form_candidate(data.points, P, d, t, proj.active, cfg, cand);
        if (cand.objective <= J + cfg.armijo_c * t * slope) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
    }

    if (!accepted) {
      // No decreasing step along d: treat as stationary on this face.
      const EscapeResult esc = escape_test(sys, proj.active, g);
      if (esc.stop) {
        result.status = SolveStatus::kConvergedKkt;
        break;
      }
      ActiveSet reduced = proj.active;
      reduced.remove(esc.drop_coordinate);
      rebuild_projection_direct(proj, reduced);
      stall = 0;
      record(iter, 0.0);
      if (cfg.iterate_callback) cfg.iterate_callback(iter, P.vector());
      continue;
    }

    P = cand.P;
    if (!cand.newly_active.empty()) {
      if (cfg.method == Method::kFmsagp) {
        // Rank-one growth, one row at a time in ascending coordinate order.
        for (Index r : cand.newly_active) update_projection_add_row(proj, r);
      } else {
        ActiveSet grown = proj.active;
        for (Index r : cand.newly_active) grown.add(r);
        rebuild_projection_direct(proj, grown);
      }
    }

    const Scalar rel_change =
        std::abs(J - cand.objective) / std::max(Scalar(1), std::abs(J));
    stall = rel_change <= cfg.objective_tolerance ? stall + 1 : 0;
    J = cand.objective;
    record(iter, t);
    if (cfg.iterate_callback) cfg.iterate_callback(iter, P.vector());
  }

  result.probabilities = P;
  result.labels = labels_from(P);
  result.centers = cluster_centers(data.points, P, cfg.epsilon_column);
  result.objective = pkm_objective(data.points, P, cfg.epsilon_column);
  result.iterations = iter;
  result.wall_time_seconds = elapsed();
  return result;
}

}  // namespace

ClusterResult solve(const Dataset& data, Index K, const SolverConfig& cfg) {
  data.validate();
  if (K < 1 || K > data.rows())
    throw InvalidArgument("K must lie in [1, L]");
  if (data.rows() * K > cfg.lk_cap)
    throw DimensionCap(data.rows() * K, cfg.lk_cap);
  if (cfg.step_length <= 0 || cfg.direction_tolerance <= 0 ||
      cfg.objective_tolerance <= 0)
    throw InvalidArgument("step length and tolerances must be positive");

  try {
    return solve_attempt(data, K, cfg, cfg.seed, false);
  } catch (const DegenerateCluster&) {
    // Rare boundary pathology; retry once from a derived seed.
    return solve_attempt(data, K, cfg, derive_seed(cfg.seed, kRestartSalt),
                         true);
  }
}

}  // namespace pkm
