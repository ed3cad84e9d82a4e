#include "pkm/probability.hpp"

#include <cmath>

#include "pkm/random.hpp"

namespace pkm {

ProbabilityMatrix ProbabilityMatrix::from_matrix(const Matrix& m) {
  ProbabilityMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  out.validate();
  return out;
}

ProbabilityMatrix ProbabilityMatrix::from_vector(Vector v, Index L, Index K) {
  if (v.size() != L * K)
    throw InvalidArgument("vector length does not equal L*K");
  ProbabilityMatrix out(L, K);
  out.vec_ = std::move(v);
  out.validate();
  return out;
}

ProbabilityMatrix ProbabilityMatrix::one_hot(const LabelVector& labels, Index K) {
  ProbabilityMatrix out(labels.size(), K);
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= K)
      throw InvalidArgument("label out of range for one-hot encoding");
    out(i, labels[i]) = 1.0;
  }
  return out;
}

Vector ProbabilityMatrix::column_sums() const {
  Vector sums = Vector::Zero(cols_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) sums[j] += (*this)(i, j);
  return sums;
}

bool ProbabilityMatrix::is_valid(Scalar tol) const {
  for (Index i = 0; i < rows_; ++i) {
    Scalar sum = 0;
    for (Index j = 0; j < cols_; ++j) {
      const Scalar p = (*this)(i, j);
      if (!std::isfinite(p) || p < -tol || p > 1 + tol) return false;
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

void ProbabilityMatrix::validate(Scalar tol) const {
  if (!is_valid(tol))
    throw InvalidArgument("probability matrix violates simplex constraints");
}

void ProbabilityMatrix::renormalize_rows() {
  for (Index i = 0; i < rows_; ++i) {
    Scalar sum = 0;
    for (Index j = 0; j < cols_; ++j) {
      Scalar& p = vec_[i * cols_ + j];
      if (p < 0) p = 0;
      sum += p;
    }
    if (sum <= 0) throw InvalidArgument("probability row collapsed to zero");
    if (sum != 1.0)
      for (Index j = 0; j < cols_; ++j) vec_[i * cols_ + j] /= sum;
  }
}

ProbabilityMatrix init_probabilities(Index L, Index K, std::uint64_t seed) {
  if (L < 1 || K < 1) throw InvalidArgument("init_probabilities needs L,K >= 1");
  ProbabilityMatrix P(L, K);
  Rng rng(seed);
  for (Index i = 0; i < L; ++i) {
    Scalar sum = 0;
    for (Index j = 0; j < K; ++j) {
      const Scalar e = rng.exponential();
      P(i, j) = e;
      sum += e;
    }
    for (Index j = 0; j < K; ++j) P(i, j) /= sum;
  }
  return P;
}

LabelVector labels_from(const ProbabilityMatrix& P) {
  LabelVector labels(P.rows());
  for (Index i = 0; i < P.rows(); ++i) {
    Index best = 0;
    Scalar best_p = P(i, 0);
    for (Index j = 1; j < P.cols(); ++j)
      if (P(i, j) > best_p) {
        best_p = P(i, j);
        best = j;
      }
    labels[i] = static_cast<int>(best);
  }
  return labels;
}

}  // namespace pkm
