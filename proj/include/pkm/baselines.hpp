#pragma once

#include "pkm/dataset.hpp"
#include "pkm/result.hpp"

namespace pkm {

// K-means++ seeding (D^2 sampling) followed by Lloyd iterations to local
// convergence. Hard labels; objective is the K-means SSE. An emptied
// cluster is re-seeded at the point farthest from its assigned center.
ClusterResult kmeans_pp(const Dataset& data, Index K, std::uint64_t seed,
                        Index max_iterations = 300);

struct FcmConfig {
  Scalar m = 1.3;  // fuzzifier, strictly > 1 (m = 1 is the PKM model)
  Index max_iterations = 300;
  Scalar tolerance = 1e-5;  // on the max membership change
  std::uint64_t seed = 0;
};

// Fuzzy c-means alternating updates for m > 1. Returns the fuzzy
// memberships as the probability matrix and the weighted objective
// sum_j sum_i w_ij^m ||x_i - c_j||^2. A point coinciding with a center
// receives full membership there (first such center on ties).
ClusterResult fcm(const Dataset& data, Index K, const FcmConfig& config);

}  // namespace pkm
