#include "pkm/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include "pkm/random.hpp"

namespace pkm {

ContingencyTable ContingencyTable::build(const LabelVector& a,
                                         const LabelVector& b) {
  if (a.size() != b.size())
    throw InvalidArgument("labelings have different lengths");
  if (a.size() == 0) throw InvalidArgument("empty labelings");
  const Index ca = a.maxCoeff() + 1;
  const Index cb = b.maxCoeff() + 1;
  if (a.minCoeff() < 0 || b.minCoeff() < 0)
    throw InvalidArgument("labels must be nonnegative");
  ContingencyTable t;
  t.counts = Eigen::MatrixXd::Zero(ca, cb);
  for (Index i = 0; i < a.size(); ++i) t.counts(a[i], b[i]) += 1.0;
  t.row_marginals = t.counts.rowwise().sum();
  t.col_marginals = t.counts.colwise().sum();
  t.total = static_cast<Scalar>(a.size());
  return t;
}

Scalar sse(const Matrix& points, const LabelVector& labels,
           const Matrix& centers) {
  if (labels.size() != points.rows())
    throw InvalidArgument("label length does not match points");
  // j-outer / i-inner, the exact term sequence of the PKM objective, so a
  // one-hot probability matrix reproduces this value bit for bit.
  Scalar total = 0;
  for (Index j = 0; j < centers.rows(); ++j)
    for (Index i = 0; i < points.rows(); ++i)
      if (labels[i] == j)
        total += (points.row(i) - centers.row(j)).squaredNorm();
  return total;
}

Matrix label_means(const Matrix& points, const LabelVector& labels, Index K) {
  Matrix centers = Matrix::Zero(K, points.cols());
  std::vector<Index> counts(K, 0);
  for (Index i = 0; i < points.rows(); ++i) {
    if (labels[i] < 0 || labels[i] >= K)
      throw InvalidArgument("label out of range");
    centers.row(labels[i]) += points.row(i);
    ++counts[labels[i]];
  }
  for (Index j = 0; j < K; ++j)
    if (counts[j] > 0) centers.row(j) /= static_cast<Scalar>(counts[j]);
  return centers;
}

Scalar dbi(const Matrix& points, const LabelVector& labels,
           const Matrix& centers) {
  const Index K = centers.rows();
  std::vector<Index> counts(K, 0);
  Vector scatter = Vector::Zero(K);
  for (Index i = 0; i < points.rows(); ++i) {
    const Index j = labels[i];
    scatter[j] += (points.row(i) - centers.row(j)).norm();
    ++counts[j];
  }
  std::vector<Index> live;
  for (Index j = 0; j < K; ++j)
    if (counts[j] > 0) {
      scatter[j] /= static_cast<Scalar>(counts[j]);
      live.push_back(j);
    }
  if (live.size() < 2)
    throw InvalidArgument("DBI needs at least two non-empty clusters");

  Scalar total = 0;
  for (const Index j : live) {
    Scalar worst = 0;
    for (const Index k : live) {
      if (k == j) continue;
      const Scalar gap = (centers.row(j) - centers.row(k)).norm();
      if (gap == 0) throw IdenticalCenters(j, k);
      worst = std::max(worst, (scatter[j] + scatter[k]) / gap);
    }
    total += worst;
  }
  return total / static_cast<Scalar>(live.size());
}

namespace {

Scalar entropy(const Vector& marginals, Scalar n) {
  Scalar h = 0;
  for (Index i = 0; i < marginals.size(); ++i)
    if (marginals[i] > 0) {
      const Scalar p = marginals[i] / n;
      h -= p * std::log(p);
    }
  return h;
}

Scalar pairs(Scalar n) { return n * (n - 1) / 2; }

}  // namespace

Scalar nmi(const LabelVector& a, const LabelVector& b) {
  const auto t = ContingencyTable::build(a, b);
  const Scalar ha = entropy(t.row_marginals, t.total);
  const Scalar hb = entropy(t.col_marginals, t.total);
  if (ha == 0 || hb == 0) return (ha == 0 && hb == 0) ? 1.0 : 0.0;
  Scalar mi = 0;
  for (Index i = 0; i < t.counts.rows(); ++i)
    for (Index j = 0; j < t.counts.cols(); ++j)
      if (t.counts(i, j) > 0) {
        const Scalar pij = t.counts(i, j) / t.total;
        mi += pij * std::log(pij * t.total * t.total /
                             (t.row_marginals[i] * t.col_marginals[j]));
      }
  return mi / std::sqrt(ha * hb);
}

Scalar ari(const LabelVector& a, const LabelVector& b) {
  if (a.size() < 2) throw InvalidArgument("ARI needs at least two points");
  const auto t = ContingencyTable::build(a, b);
  Scalar index = 0;
  for (Index i = 0; i < t.counts.rows(); ++i)
    for (Index j = 0; j < t.counts.cols(); ++j) index += pairs(t.counts(i, j));
  Scalar sum_a = 0, sum_b = 0;
  for (Index i = 0; i < t.row_marginals.size(); ++i)
    sum_a += pairs(t.row_marginals[i]);
  for (Index j = 0; j < t.col_marginals.size(); ++j)
    sum_b += pairs(t.col_marginals[j]);
  const Scalar expected = sum_a * sum_b / pairs(t.total);
  const Scalar maximum = 0.5 * (sum_a + sum_b);
  if (maximum == expected)
    // Degenerate marginals (all-singletons or one block on both sides).
    return index == expected ? 1.0 : 0.0;
  return (index - expected) / (maximum - expected);
}

Scalar v_measure(const LabelVector& truth, const LabelVector& predicted) {
  const auto t = ContingencyTable::build(truth, predicted);
  const Scalar hc = entropy(t.row_marginals, t.total);
  const Scalar hk = entropy(t.col_marginals, t.total);
  Scalar hck = 0, hkc = 0;  // H(C|K), H(K|C)
  for (Index i = 0; i < t.counts.rows(); ++i)
    for (Index j = 0; j < t.counts.cols(); ++j)
      if (t.counts(i, j) > 0) {
        const Scalar pij = t.counts(i, j) / t.total;
        hck -= pij * std::log(t.counts(i, j) / t.col_marginals[j]);
        hkc -= pij * std::log(t.counts(i, j) / t.row_marginals[i]);
      }
  const Scalar h = hc == 0 ? 1.0 : 1.0 - hck / hc;
  const Scalar c = hk == 0 ? 1.0 : 1.0 - hkc / hk;
  if (h + c == 0) return 0.0;
  return 2.0 * h * c / (h + c);
}

bool equal_up_to_permutation(const LabelVector& a, const LabelVector& b) {
  const auto t = ContingencyTable::build(a, b);
  // Best bipartite matching on the contingency table must absorb every
  // point. Each cluster can match at most one partner, so a perfect
  // matching exists exactly when no row or column splits its mass.
  for (Index i = 0; i < t.counts.rows(); ++i)
    if ((t.counts.row(i).array() > 0).count() > 1) return false;
  for (Index j = 0; j < t.counts.cols(); ++j)
    if ((t.counts.col(j).array() > 0).count() > 1) return false;
  return true;
}

Index robustness(
    const Dataset& data, const LabelVector& truth,
    const std::function<LabelVector(const Dataset&, std::uint64_t)>& algorithm,
    Index runs, std::uint64_t seed, int jobs) {
  if (truth.size() != data.rows())
    throw InvalidArgument("truth labels do not match dataset rows");
  if (runs <= 0) return 0;

  std::atomic<Index> correct{0};
  std::atomic<Index> next{0};
  auto worker = [&] {
    for (Index run = next.fetch_add(1); run < runs; run = next.fetch_add(1)) {
      const LabelVector labels = algorithm(data, derive_seed(seed, run));
      if (equal_up_to_permutation(truth, labels)) correct.fetch_add(1);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return correct.load();
}

}  // namespace pkm
