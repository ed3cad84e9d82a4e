#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace pkm {

using Scalar = double;
using Index = Eigen::Index;

using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using RowMajorMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using LabelVector = Eigen::VectorXi;

inline constexpr const char* kVersion = "0.1.0";

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed files, impossible shapes, out-of-range options.
struct InvalidArgument : Error {
  using Error::Error;
};

struct EmptyDataset : InvalidArgument {
  EmptyDataset() : InvalidArgument("dataset contains no rows") {}
};

struct ParseError : InvalidArgument {
  Index row, column;
  ParseError(Index r, Index c, const std::string& what)
      : InvalidArgument("parse error at row " + std::to_string(r) + ", column " +
                        std::to_string(c) + ": " + what),
        row(r),
        column(c) {}
};

struct NonFiniteValue : InvalidArgument {
  Index row, column;
  NonFiniteValue(Index r, Index c)
      : InvalidArgument("non-finite value at row " + std::to_string(r) +
                        ", column " + std::to_string(c)),
        row(r),
        column(c) {}
};

// The problem size LK exceeds the configured cap for dense projectors.
struct DimensionCap : InvalidArgument {
  DimensionCap(Index lk, Index cap)
      : InvalidArgument("problem size L*K = " + std::to_string(lk) +
                        " exceeds the dense-projection cap " +
                        std::to_string(cap)),
        lk(lk),
        cap(cap) {}
  Index lk, cap;
};

// Numerical failures during a run.
struct NumericalError : Error {
  using Error::Error;
};

// A cluster's probability column sum fell below the degeneracy floor.
struct DegenerateCluster : NumericalError {
  explicit DegenerateCluster(Index j)
      : NumericalError("cluster " + std::to_string(j) +
                       " degenerated (column sum below floor)"),
        cluster(j) {}
  Index cluster;
};

// N N^T factorization failed: the active set is corrupted.
struct RankDeficient : NumericalError {
  RankDeficient() : NumericalError("active constraint matrix is rank deficient") {}
};

// Candidate constraint row already lies in the span of the active rows.
struct DegenerateDirection : NumericalError {
  explicit DegenerateDirection(Index r)
      : NumericalError("constraint row " + std::to_string(r) +
                       " is already spanned by the active set"),
        row(r) {}
  Index row;
};

struct IdenticalCenters : NumericalError {
  IdenticalCenters(Index a, Index b)
      : NumericalError("cluster centers " + std::to_string(a) + " and " +
                       std::to_string(b) + " coincide"),
        first(a),
        second(b) {}
  Index first, second;
};

}  // namespace pkm
