#pragma once

#include "pkm/common.hpp"
#include "pkm/probability.hpp"

namespace pkm {

inline constexpr Scalar kColumnDegeneracyFloor = 1e-12;

// Weighted cluster means c_j = sum_i p_ij x_i / sum_i p_ij (K x D). Throws
// DegenerateCluster(j) when a column sum falls below the floor; a silently
// regularized center would corrupt the gradient geometry downstream.
//
// The raw overloads accept any nonnegative weight matrix whose column sums
// clear the floor; rows need not sum to one. They define the unconstrained
// extension of the model that finite-difference probes differentiate.
Matrix cluster_centers_raw(const Matrix& points,
                           const Eigen::Ref<const RowMajorMatrix>& P,
                           Scalar floor = kColumnDegeneracyFloor);
Matrix cluster_centers(const Matrix& points, const ProbabilityMatrix& P,
                       Scalar floor = kColumnDegeneracyFloor);

// J(P) = sum_j sum_i p_ij ||x_i - c_j(P)||^2 with the centers eliminated.
Scalar pkm_objective_raw(const Matrix& points,
                         const Eigen::Ref<const RowMajorMatrix>& P,
                         Scalar floor = kColumnDegeneracyFloor);
Scalar pkm_objective(const Matrix& points, const ProbabilityMatrix& P,
                     Scalar floor = kColumnDegeneracyFloor);

// sum_j sum_i p_ij ||x_i - c_j||^2 at fixed centers; equals pkm_objective
// when the centers are the weighted means of P.
Scalar soft_kmeans_objective(const Matrix& points, const ProbabilityMatrix& P,
                             const Matrix& centers);

// Raw partial derivatives of the unconstrained extension, as a length-LK
// vector in row-major order: entry (i,j) is
//   ||x_i - c_j||^2 - (2 / s_j) * [sum_k p_kj (x_k - c_j)]^T (x_i - c_j),
// the correction sum taken over the same cached residuals as the first
// term. (At the weighted mean the residual sum is analytically zero, so the
// partial reduces to the squared residual norm; both terms are evaluated.)
Vector pkm_gradient_raw(const Matrix& points,
                        const Eigen::Ref<const RowMajorMatrix>& P,
                        Scalar floor = kColumnDegeneracyFloor);
Vector pkm_gradient(const Matrix& points, const ProbabilityMatrix& P,
                    Scalar floor = kColumnDegeneracyFloor);

}  // namespace pkm
