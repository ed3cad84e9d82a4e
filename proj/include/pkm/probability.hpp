#pragma once

#include <cstdint>

#include "pkm/common.hpp"

namespace pkm {

// L x K assignment probabilities, stored as the row-major vector
// [p_11 ... p_1K ... p_ij ... p_LK]; entry (i, j) sits at vector index
// i*K + j. Rows live on the (K-1)-simplex.
class ProbabilityMatrix {
 public:
  ProbabilityMatrix(Index L, Index K)
      : vec_(Vector::Zero(L * K)), rows_(L), cols_(K) {
    if (L < 1 || K < 1) throw InvalidArgument("probability matrix needs L,K >= 1");
  }

  static Index vector_index(Index i, Index j, Index K) { return i * K + j; }

  static ProbabilityMatrix from_matrix(const Matrix& m);
  static ProbabilityMatrix from_vector(Vector v, Index L, Index K);
  static ProbabilityMatrix one_hot(const LabelVector& labels, Index K);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index size() const { return vec_.size(); }

  Scalar operator()(Index i, Index j) const { return vec_[i * cols_ + j]; }
  Scalar& operator()(Index i, Index j) { return vec_[i * cols_ + j]; }

  const Vector& vector() const { return vec_; }
  Vector& vector() { return vec_; }

  // Row-major matrix view over the same storage.
  Eigen::Map<const RowMajorMatrix> matrix() const {
    return {vec_.data(), rows_, cols_};
  }

  Eigen::Map<const Vector> row(Index i) const {
    return {vec_.data() + i * cols_, cols_};
  }

  Vector column_sums() const;

  // Entries within [-tol, 1+tol] and every row sum within tol of 1.
  bool is_valid(Scalar tol = 1e-9) const;
  void validate(Scalar tol = 1e-9) const;

  // Clamp tiny negatives to zero and rescale each row to sum 1.
  void renormalize_rows();

 private:
  Vector vec_;
  Index rows_, cols_;
};

// Each row an independent uniform draw from the simplex interior (flat
// Dirichlet via normalized exponentials); deterministic for a fixed seed,
// all entries strictly positive.
ProbabilityMatrix init_probabilities(Index L, Index K, std::uint64_t seed);

// Row-wise argmax, ties toward the smallest column index.
LabelVector labels_from(const ProbabilityMatrix& P);

}  // namespace pkm
