#include <doctest.h>

#include "pkm/probability.hpp"
#include "pkm/random.hpp"

using namespace pkm;

TEST_CASE("simplex with one vertex") {
  const auto P = init_probabilities(1, 1, 123);
  CHECK(P(0, 0) == 1.0);
}

TEST_CASE("rows are interior simplex points, deterministic per seed") {
  const auto P = init_probabilities(2, 2, 42);
  const auto Q = init_probabilities(2, 2, 42);
  for (Index i = 0; i < 2; ++i) {
    Scalar sum = 0;
    for (Index j = 0; j < 2; ++j) {
      CHECK(P(i, j) > 0.0);
      CHECK(P(i, j) < 1.0);
      CHECK(P(i, j) == Q(i, j));
      sum += P(i, j);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("row sums hold to 1e-12 across many seeds") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto P = init_probabilities(310, 4, seed);
    for (Index i = 0; i < P.rows(); ++i) {
      Scalar sum = 0;
      for (Index j = 0; j < P.cols(); ++j) sum += P(i, j);
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("vectorization uses row-major index i*K + j") {
  auto P = init_probabilities(3, 4, 9);
  CHECK(ProbabilityMatrix::vector_index(2, 1, 4) == 9);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 4; ++j)
      CHECK(P(i, j) == P.vector()[i * 4 + j]);
  // Round-trip through the vector form.
  const auto back = ProbabilityMatrix::from_vector(P.vector(), 3, 4);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 4; ++j) CHECK(back(i, j) == P(i, j));
  CHECK(back.matrix()(2, 1) == P.vector()[9]);
}

TEST_CASE("labels_from takes the row argmax, smallest index on ties") {
  Matrix m(2, 2);
  m << 1, 0, 0, 1;
  CHECK(labels_from(ProbabilityMatrix::from_matrix(m))[0] == 0);
  CHECK(labels_from(ProbabilityMatrix::from_matrix(m))[1] == 1);

  Matrix tie(1, 2);
  tie << 0.5, 0.5;
  CHECK(labels_from(ProbabilityMatrix::from_matrix(tie))[0] == 0);

  Matrix strict(1, 3);
  strict << 0.2, 0.3, 0.5;
  CHECK(labels_from(ProbabilityMatrix::from_matrix(strict))[0] == 2);
}

TEST_CASE("validation rejects broken matrices") {
  Matrix bad(1, 2);
  bad << 0.7, 0.7;
  CHECK_THROWS_AS(ProbabilityMatrix::from_matrix(bad), InvalidArgument);
  Matrix negative(1, 2);
  negative << 1.5, -0.5;
  CHECK_THROWS_AS(ProbabilityMatrix::from_matrix(negative), InvalidArgument);
}

TEST_CASE("renormalize_rows restores exact simplex rows") {
  ProbabilityMatrix P(2, 3);
  P(0, 0) = 0.5 + 1e-13;
  P(0, 1) = 0.5;
  P(0, 2) = -1e-17;  // clamped
  P(1, 0) = 0.2;
  P(1, 1) = 0.3;
  P(1, 2) = 0.5;
  P.renormalize_rows();
  CHECK(P(0, 2) == 0.0);
  CHECK(P.is_valid(1e-12));
}

TEST_CASE("one_hot builds valid unit rows") {
  LabelVector labels(3);
  labels << 2, 0, 1;
  const auto P = ProbabilityMatrix::one_hot(labels, 3);
  CHECK(P(0, 2) == 1.0);
  CHECK(P(1, 0) == 1.0);
  CHECK(P(2, 1) == 1.0);
  CHECK(P.is_valid(0.0));
}
