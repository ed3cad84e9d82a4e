#include <doctest.h>

#include <cmath>
#include <map>

#include "pkm/objective.hpp"
#include "pkm/solver.hpp"

using namespace pkm;

namespace {

Dataset toy_dataset() {
  Dataset d;
  d.name = "toy";
  d.points.resize(2, 2);
  d.points << 1, 1, 2, 2;
  return d;
}

bool is_perfect_split(const ProbabilityMatrix& P) {
  const bool a = P(0, 0) == 1.0 && P(0, 1) == 0.0 && P(1, 0) == 0.0 && P(1, 1) == 1.0;
  const bool b = P(0, 0) == 0.0 && P(0, 1) == 1.0 && P(1, 0) == 1.0 && P(1, 1) == 0.0;
  return a || b;
}

}  // namespace

TEST_CASE("max_step picks the nearest blocking coordinate") {
  ActiveSet none(1, 2);
  Vector p(2), d(2);
  p << 0.25, 0.75;
  d << -0.5, 0.5;
  auto ms = max_step(p, d, none);
  CHECK(ms.bounded);
  CHECK(ms.t == doctest::Approx(0.5));

  p << 0.5, 0.5;
  d << -1.0, -1.0;
  ms = max_step(p, d, none);
  CHECK(ms.bounded);
  CHECK(ms.t == doctest::Approx(0.5));

  // No negative component anywhere positive: unbounded ray.
  d << 0.3, 0.7;
  ms = max_step(p, d, none);
  CHECK_FALSE(ms.bounded);

  // A released coordinate sitting at zero blocks immediately.
  p << 0.0, 1.0;
  d << -0.2, 0.2;
  ms = max_step(p, d, none);
  CHECK(ms.bounded);
  CHECK(ms.t == 0.0);

  // Active coordinates are excluded from the blocking set.
  ActiveSet active(1, 2);
  active.add(0);
  ms = max_step(p, d, active);
  CHECK_FALSE(ms.bounded);
}

TEST_CASE("all three methods solve the two-point toy exactly") {
  const Dataset toy = toy_dataset();
  for (Method method : {Method::kAgp, Method::kMsagp, Method::kFmsagp}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      SolverConfig cfg;
      cfg.method = method;
      cfg.seed = seed;
      cfg.max_iterations = 20000;
      const ClusterResult res = solve(toy, 2, cfg);
      CAPTURE(method_name(method));
      CAPTURE(seed);
      CHECK(res.status == SolveStatus::kConvergedKkt);
      CHECK(res.objective <= 1e-9);
      CHECK(is_perfect_split(res.probabilities));
      CHECK(res.labels[0] != res.labels[1]);
    }
  }
}

TEST_CASE("K=1 converges immediately to the mean partition") {
  Dataset d;
  d.points.resize(3, 2);
  d.points << 0, 0, 1, 0, 2, 0;
  SolverConfig cfg;
  cfg.seed = 1;
  const auto res = solve(d, 1, cfg);
  CHECK(res.status == SolveStatus::kConvergedKkt);
  CHECK(res.labels.maxCoeff() == 0);
  CHECK(res.objective == doctest::Approx(2.0));  // variance about the mean
  CHECK(res.centers(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("solver validates its preconditions") {
  const Dataset toy = toy_dataset();
  SolverConfig cfg;
  CHECK_THROWS_AS(solve(toy, 0, cfg), InvalidArgument);
  CHECK_THROWS_AS(solve(toy, 3, cfg), InvalidArgument);
  cfg.lk_cap = 3;
  CHECK_THROWS_AS(solve(toy, 2, cfg), DimensionCap);
}

TEST_CASE("AGP applies the fixed step, clipped at the boundary") {
  const Dataset blobs = make_blobs({12, 12}, 2, 0.6, 8.0, 5, "blobs");
  SolverConfig cfg;
  cfg.method = Method::kAgp;
  cfg.step_length = 0.01;
  cfg.seed = 3;
  const auto res = solve(blobs, 2, cfg);
  REQUIRE(res.trace.size() > 1);
  for (size_t k = 1; k < res.trace.size(); ++k)
    CHECK(res.trace[k].step_length <= 0.01 + 1e-15);
  CHECK(res.status == SolveStatus::kConvergedKkt);
}

TEST_CASE("iterates stay feasible at every recorded step") {
  const Dataset blobs = make_blobs({10, 8, 6}, 3, 0.8, 6.0, 11, "blobs");
  for (Method method : {Method::kAgp, Method::kMsagp, Method::kFmsagp}) {
    SolverConfig cfg;
    cfg.method = method;
    cfg.seed = 2;
    Index checked = 0;
    cfg.iterate_callback = [&](Index, const Vector& p) {
      for (Index r = 0; r < p.size(); ++r) CHECK(p[r] >= 0.0);
      for (Index i = 0; i < 24; ++i)
        CHECK(std::abs(p.segment(i * 3, 3).sum() - 1.0) <= 1e-9);
      ++checked;
    };
    const auto res = solve(blobs, 3, cfg);
    CHECK(checked > 0);
    CHECK(res.probabilities.is_valid(1e-9));
  }
}

TEST_CASE("MSAGP objective is non-increasing and reaches the boundary") {
  const Dataset blobs = make_blobs({15, 15}, 2, 1.0, 6.0, 21, "blobs");
  SolverConfig cfg;
  cfg.method = Method::kMsagp;
  cfg.seed = 4;
  const auto res = solve(blobs, 2, cfg);
  REQUIRE(res.trace.size() > 2);
  bool grew = false;
  for (size_t k = 1; k < res.trace.size(); ++k) {
    CHECK(res.trace[k].objective <= res.trace[k - 1].objective + 1e-12);
    grew |= res.trace[k].active_count > res.trace[k - 1].active_count;
  }
  CHECK(grew);  // a maximum step lands on the boundary
  CHECK(res.status == SolveStatus::kConvergedKkt);
}

TEST_CASE("FMSAGP growth phase only ever adds active constraints") {
  const Dataset blobs = make_blobs({12, 10, 8}, 2, 0.7, 7.0, 33, "blobs");
  SolverConfig cfg;
  cfg.method = Method::kFmsagp;
  cfg.seed = 9;
  const auto res = solve(blobs, 3, cfg);
  const Index bound = (3 - 1) * 30;
  Index previous = 0;
  bool still_growing = true;
  for (const auto& rec : res.trace) {
    CHECK(rec.active_count <= bound);
    if (still_growing && rec.active_count < previous) still_growing = false;
    if (still_growing) previous = rec.active_count;
  }
  CHECK(previous <= bound);
}

TEST_CASE("MSAGP and FMSAGP run in lockstep from the same seed") {
  const Dataset blobs = make_blobs({12, 12, 6}, 2, 0.9, 5.0, 13, "blobs");
  std::map<Index, Vector> msagp_iterates;
  SolverConfig cfg;
  cfg.seed = 17;
  cfg.method = Method::kMsagp;
  cfg.iterate_callback = [&](Index k, const Vector& p) {
    if (k <= 100) msagp_iterates[k] = p;
  };
  const auto res_m = solve(blobs, 3, cfg);

  Scalar max_gap = 0;
  cfg.method = Method::kFmsagp;
  cfg.iterate_callback = [&](Index k, const Vector& p) {
    const auto it = msagp_iterates.find(k);
    if (it != msagp_iterates.end())
      max_gap = std::max(max_gap, (p - it->second).lpNorm<Eigen::Infinity>());
  };
  const auto res_f = solve(blobs, 3, cfg);
  CHECK(max_gap < 1e-8);
  CHECK(res_f.objective == doctest::Approx(res_m.objective).epsilon(1e-8));
  CHECK(res_f.labels == res_m.labels);
}

TEST_CASE("iteration dominance: the maximum step needs no more iterations") {
  const Dataset blobs = make_blobs({20, 20}, 3, 1.0, 5.0, 41, "blobs");
  SolverConfig agp;
  agp.method = Method::kAgp;
  agp.step_length = 0.01;
  agp.seed = 6;
  SolverConfig msagp;
  msagp.method = Method::kMsagp;
  msagp.seed = 6;
  const auto res_agp = solve(blobs, 2, agp);
  const auto res_msagp = solve(blobs, 2, msagp);
  CHECK(res_msagp.iterations < res_agp.iterations);
}

TEST_CASE("result invariants: labels, objective, trace monotone iterations") {
  const Dataset blobs = make_blobs({9, 9}, 2, 0.8, 6.0, 8, "blobs");
  SolverConfig cfg;
  cfg.seed = 12;
  const auto res = solve(blobs, 2, cfg);
  const LabelVector expect = labels_from(res.probabilities);
  CHECK(res.labels == expect);
  const Scalar J = pkm_objective(blobs.points, res.probabilities);
  CHECK(std::abs(res.objective - J) <= 1e-9 * std::max<Scalar>(1, J));
  for (size_t k = 1; k < res.trace.size(); ++k)
    CHECK(res.trace[k].iteration > res.trace[k - 1].iteration);
}
