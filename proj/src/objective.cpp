#include "pkm/objective.hpp"

namespace pkm {

namespace {

Vector column_sums_checked(const Eigen::Ref<const RowMajorMatrix>& P,
                           Scalar floor) {
  Vector sums = P.colwise().sum();
  for (Index j = 0; j < sums.size(); ++j)
    if (!(sums[j] >= floor)) throw DegenerateCluster(j);
  return sums;
}

}  // namespace

Matrix cluster_centers_raw(const Matrix& points,
                           const Eigen::Ref<const RowMajorMatrix>& P,
                           Scalar floor) {
  if (P.rows() != points.rows())
    throw InvalidArgument("probability rows do not match dataset rows");
  const Vector sums = column_sums_checked(P, floor);
  Matrix centers = P.transpose() * points;  // K x D
  for (Index j = 0; j < centers.rows(); ++j) centers.row(j) /= sums[j];
  return centers;
}

Matrix cluster_centers(const Matrix& points, const ProbabilityMatrix& P,
                       Scalar floor) {
  return cluster_centers_raw(points, P.matrix(), floor);
}

Scalar pkm_objective_raw(const Matrix& points,
                         const Eigen::Ref<const RowMajorMatrix>& P,
                         Scalar floor) {
  const Matrix centers = cluster_centers_raw(points, P, floor);
  // Plain j-outer/i-inner accumulation; metrics::sse walks the identical
  // term sequence so hard labelings tie out exactly.
  Scalar J = 0;
  for (Index j = 0; j < P.cols(); ++j)
    for (Index i = 0; i < P.rows(); ++i)
      J += P(i, j) * (points.row(i) - centers.row(j)).squaredNorm();
  return J;
}

Scalar pkm_objective(const Matrix& points, const ProbabilityMatrix& P,
                     Scalar floor) {
  return pkm_objective_raw(points, P.matrix(), floor);
}

Scalar soft_kmeans_objective(const Matrix& points, const ProbabilityMatrix& P,
                             const Matrix& centers) {
  if (centers.cols() != points.cols() || centers.rows() != P.cols())
    throw InvalidArgument("center matrix has wrong shape");
  Scalar J = 0;
  for (Index j = 0; j < P.cols(); ++j)
    for (Index i = 0; i < P.rows(); ++i)
      J += P(i, j) * (points.row(i) - centers.row(j)).squaredNorm();
  return J;
}

Vector pkm_gradient_raw(const Matrix& points,
                        const Eigen::Ref<const RowMajorMatrix>& P,
                        Scalar floor) {
  const Index L = P.rows();
  const Index K = P.cols();
  const Index D = points.cols();
  if (L != points.rows())
    throw InvalidArgument("probability rows do not match dataset rows");
  const Vector sums = column_sums_checked(P, floor);

  Vector grad(L * K);
  Matrix residuals(L, D);  // x_i - c_j for the current column j
  Eigen::RowVectorXd center(D), weighted_residual_sum(D);
  for (Index j = 0; j < K; ++j) {
    center = (P.col(j).transpose() * points) / sums[j];
    residuals = points.rowwise() - center;
    weighted_residual_sum = P.col(j).transpose() * residuals;
    const Scalar scale = 2.0 / sums[j];
    for (Index i = 0; i < L; ++i)
      grad[i * K + j] = residuals.row(i).squaredNorm() -
                        scale * weighted_residual_sum.dot(residuals.row(i));
  }
  return grad;
}

Vector pkm_gradient(const Matrix& points, const ProbabilityMatrix& P,
                    Scalar floor) {
  return pkm_gradient_raw(points, P.matrix(), floor);
}

}  // namespace pkm
