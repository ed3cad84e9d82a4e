#pragma once

#include <cstdint>
#include <functional>

#include "pkm/common.hpp"
#include "pkm/dataset.hpp"

namespace pkm {

// Cross-tabulation of two labelings over the same points.
struct ContingencyTable {
  Eigen::MatrixXd counts;  // C_a x C_b
  Vector row_marginals;
  Vector col_marginals;
  Scalar total = 0;

  static ContingencyTable build(const LabelVector& a, const LabelVector& b);
};

// Sum of squared distances of each point to its cluster's center.
Scalar sse(const Matrix& points, const LabelVector& labels,
           const Matrix& centers);

// Per-cluster means of the labeled points (empty clusters keep zero rows).
Matrix label_means(const Matrix& points, const LabelVector& labels, Index K);

// Davies-Bouldin index over non-empty clusters: mean over j of
// max_{k != j} (s_j + s_k) / ||c_j - c_k||, s_j the mean member distance to
// the center. Throws IdenticalCenters on coinciding centers.
Scalar dbi(const Matrix& points, const LabelVector& labels,
           const Matrix& centers);

// Normalized mutual information I(A;B)/sqrt(H(A) H(B)), natural logs.
// Constant labelings: 0 against a non-constant partner, 1 when both are.
Scalar nmi(const LabelVector& a, const LabelVector& b);

// Hubert-Arabie adjusted Rand index from pair counts.
Scalar ari(const LabelVector& a, const LabelVector& b);

// Harmonic mean of homogeneity and completeness; a zero-entropy side counts
// as perfect (h = 1 when H(C) = 0, c = 1 when H(K) = 0).
Scalar v_measure(const LabelVector& truth, const LabelVector& predicted);

// True when the two labelings are identical up to a relabeling of cluster
// indices (best bipartite matching leaves no off-matching mass).
bool equal_up_to_permutation(const LabelVector& a, const LabelVector& b);

// Initialization-robustness protocol: run `algorithm` with seeds derived
// from `seed` and count the runs whose labeling matches the ground truth
// exactly up to permutation. `jobs` > 1 fans runs out across threads; the
// count is order-independent.
Index robustness(
    const Dataset& data, const LabelVector& truth,
    const std::function<LabelVector(const Dataset&, std::uint64_t)>& algorithm,
    Index runs, std::uint64_t seed, int jobs = 1);

}  // namespace pkm
