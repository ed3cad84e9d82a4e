#include "pkm/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "pkm/objective.hpp"
#include "pkm/random.hpp"

namespace pkm {

namespace {

using Clock = std::chrono::steady_clock;

Index nearest_center(const Matrix& points, const Matrix& centers, Index i) {
  Index best = 0;
  Scalar best_d = (points.row(i) - centers.row(0)).squaredNorm();
  for (Index j = 1; j < centers.rows(); ++j) {
    const Scalar dist = (points.row(i) - centers.row(j)).squaredNorm();
    if (dist < best_d) {
      best_d = dist;
      best = j;
    }
  }
  return best;
}

Scalar kmeans_sse(const Matrix& points, const LabelVector& labels,
                  const Matrix& centers) {
  Scalar sse = 0;
  for (Index i = 0; i < points.rows(); ++i)
    sse += (points.row(i) - centers.row(labels[i])).squaredNorm();
  return sse;
}

}  // namespace

ClusterResult kmeans_pp(const Dataset& data, Index K, std::uint64_t seed,
                        Index max_iterations) {
  data.validate();
  const Index L = data.rows();
  if (K < 1 || K > L) throw InvalidArgument("K must lie in [1, L]");
  const Matrix& X = data.points;
  const auto start = Clock::now();

  // D^2 seeding.
  Rng rng(seed);
  Matrix centers(K, X.cols());
  centers.row(0) = X.row(rng.integer(L));
  Vector dist2 = (X.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (Index j = 1; j < K; ++j) {
    const Scalar total = dist2.sum();
    Index pick = 0;
    if (total > 0) {
      Scalar threshold = rng.uniform() * total;
      Scalar acc = 0;
      for (Index i = 0; i < L; ++i) {
        acc += dist2[i];
        if (acc >= threshold) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Index>(rng.integer(L));
    }
    centers.row(j) = X.row(pick);
    dist2 = dist2.cwiseMin(
        (X.rowwise() - centers.row(j)).rowwise().squaredNorm());
  }

  LabelVector labels(L);
  for (Index i = 0; i < L; ++i) labels[i] = static_cast<int>(nearest_center(X, centers, i));

  ClusterResult result{.probabilities = ProbabilityMatrix(L, K)};
  result.seed_used = seed;
  result.status = SolveStatus::kIterationCap;
  Index iter = 0;
  while (iter < max_iterations) {
    ++iter;
    // Center update.
    for (Index j = 0; j < K; ++j) {
      Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(X.cols());
      Index count = 0;
      for (Index i = 0; i < L; ++i)
        if (labels[i] == j) {
          sum += X.row(i);
          ++count;
        }
      if (count > 0) {
        centers.row(j) = sum / static_cast<Scalar>(count);
      } else {
        // Re-seed an emptied cluster at the farthest point.
        Index far = 0;
        Scalar far_d = -1;
        for (Index i = 0; i < L; ++i) {
          const Scalar dcur =
              (X.row(i) - centers.row(labels[i])).squaredNorm();
          if (dcur > far_d) {
            far_d = dcur;
            far = i;
          }
        }
        centers.row(j) = X.row(far);
      }
    }
    // Assignment update.
    LabelVector next(L);
    for (Index i = 0; i < L; ++i)
      next[i] = static_cast<int>(nearest_center(X, centers, i));
    result.trace.push_back({iter, kmeans_sse(X, next, centers), 0, 0,
                            std::chrono::duration<Scalar>(Clock::now() - start)
                                .count()});
    if (next == labels) {
      result.status = SolveStatus::kConverged;
      break;
    }
    labels = next;
  }

  result.probabilities = ProbabilityMatrix::one_hot(labels, K);
  result.labels = labels;
  result.centers = centers;
  result.objective = kmeans_sse(X, labels, centers);
  result.iterations = iter;
  result.wall_time_seconds =
      std::chrono::duration<Scalar>(Clock::now() - start).count();
  return result;
}

ClusterResult fcm(const Dataset& data, Index K, const FcmConfig& cfg) {
  data.validate();
  const Index L = data.rows();
  if (K < 1 || K > L) throw InvalidArgument("K must lie in [1, L]");
  if (!(cfg.m > 1)) throw InvalidArgument("FCM requires fuzzifier m > 1");
  const Matrix& X = data.points;
  const Scalar exponent = 1.0 / (cfg.m - 1.0);
  const auto start = Clock::now();

  ProbabilityMatrix W = init_probabilities(L, K, cfg.seed);
  Matrix Wm(L, K), centers(K, X.cols()), dist2(L, K);

  ClusterResult result{.probabilities = W};
  result.seed_used = cfg.seed;
  result.status = SolveStatus::kIterationCap;
  Index iter = 0;
  while (iter < cfg.max_iterations) {
    ++iter;
    // Center update from degree-m weights.
    for (Index i = 0; i < L; ++i)
      for (Index j = 0; j < K; ++j) Wm(i, j) = std::pow(W(i, j), cfg.m);
    for (Index j = 0; j < K; ++j) {
      const Scalar mass = Wm.col(j).sum();
      if (mass <= 0) throw DegenerateCluster(j);
      centers.row(j) = (Wm.col(j).transpose() * X) / mass;
    }
    for (Index i = 0; i < L; ++i)
      for (Index j = 0; j < K; ++j)
        dist2(i, j) = (X.row(i) - centers.row(j)).squaredNorm();

    // Membership update; ratios against the nearest center keep the
    // negative powers from overflowing.
    Scalar max_change = 0;
    for (Index i = 0; i < L; ++i) {
      Index zero_at = -1;
      Scalar dmin = std::numeric_limits<Scalar>::infinity();
      for (Index j = 0; j < K; ++j) {
        if (dist2(i, j) == 0 && zero_at < 0) zero_at = j;
        dmin = std::min(dmin, dist2(i, j));
      }
      Scalar row_sum = 0;
      Vector row(K);
      if (zero_at >= 0) {
        row.setZero();
        row[zero_at] = 1.0;
        row_sum = 1.0;
      } else {
        for (Index j = 0; j < K; ++j) {
          row[j] = std::pow(dmin / dist2(i, j), exponent);
          row_sum += row[j];
        }
      }
      for (Index j = 0; j < K; ++j) {
        const Scalar w = row[j] / row_sum;
        max_change = std::max(max_change, std::abs(w - W(i, j)));
        W(i, j) = w;
      }
    }

    Scalar objective = 0;
    for (Index j = 0; j < K; ++j)
      for (Index i = 0; i < L; ++i)
        objective += std::pow(W(i, j), cfg.m) * dist2(i, j);
    result.trace.push_back({iter, objective, max_change, 0,
                            std::chrono::duration<Scalar>(Clock::now() - start)
                                .count()});
    if (max_change < cfg.tolerance) {
      result.status = SolveStatus::kConverged;
      break;
    }
  }

  result.probabilities = W;
  result.labels = labels_from(W);
  result.centers = centers;
  result.objective = result.trace.empty() ? 0 : result.trace.back().objective;
  result.iterations = iter;
  result.wall_time_seconds =
      std::chrono::duration<Scalar>(Clock::now() - start).count();
  return result;
}

}  // namespace pkm
