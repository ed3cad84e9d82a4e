// Independent reference implementations used as test oracles. Everything
// here is deliberately naive and kept apart from the library code paths it
// checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "pkm/common.hpp"
#include "pkm/constraints.hpp"
#include "pkm/objective.hpp"

namespace oracle {

using pkm::Index;
using pkm::Matrix;
using pkm::RowMajorMatrix;
using pkm::Scalar;
using pkm::Vector;

// Central finite differences of the raw objective extension, entry by entry.
inline Vector finite_difference_gradient(const Matrix& points,
                                         const RowMajorMatrix& P,
                                         Scalar h = 1e-6) {
  const Index L = P.rows(), K = P.cols();
  Vector grad(L * K);
  for (Index i = 0; i < L; ++i)
    for (Index j = 0; j < K; ++j) {
      RowMajorMatrix up = P, down = P;
      up(i, j) += h;
      down(i, j) -= h;
      grad[i * K + j] = (pkm::pkm_objective_raw(points, up) -
                         pkm::pkm_objective_raw(points, down)) /
                        (2 * h);
    }
  return grad;
}

// Literal Eq.-28 build: materialize N = [A_1; E] densely and evaluate
// N^T (N N^T)^{-1} N with a generic solve.
inline Matrix naive_projection(Index L, Index K,
                               const std::vector<Index>& active) {
  const Index lk = L * K;
  const Index a = static_cast<Index>(active.size());
  Matrix N = Matrix::Zero(a + L, lk);
  for (Index s = 0; s < a; ++s) N(s, active[s]) = 1.0;
  for (Index i = 0; i < L; ++i)
    for (Index j = 0; j < K; ++j) N(a + i, i * K + j) = 1.0;
  const Matrix M = N * N.transpose();
  return N.transpose() * M.ldlt().solve(N);
}

// Contingency counts from two labelings.
inline std::vector<std::vector<Index>> contingency(const pkm::LabelVector& a,
                                                   const pkm::LabelVector& b) {
  const Index ca = a.maxCoeff() + 1, cb = b.maxCoeff() + 1;
  std::vector<std::vector<Index>> t(ca, std::vector<Index>(cb, 0));
  for (Index i = 0; i < a.size(); ++i) ++t[a[i]][b[i]];
  return t;
}

inline Scalar entropy_of(const std::vector<Scalar>& probs) {
  Scalar h = 0;
  for (Scalar p : probs)
    if (p > 0) h -= p * std::log(p);
  return h;
}

// NMI from the contingency table, geometric-mean normalization. Marginals
// are tallied as integers first so zero entropies are detected exactly.
inline Scalar nmi(const pkm::LabelVector& a, const pkm::LabelVector& b) {
  const auto t = contingency(a, b);
  const Scalar n = static_cast<Scalar>(a.size());
  std::vector<Index> ca(t.size(), 0), cb(t[0].size(), 0);
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < t[0].size(); ++j) {
      ca[i] += t[i][j];
      cb[j] += t[i][j];
    }
  std::vector<Scalar> pa, pb;
  for (Index x : ca) pa.push_back(x / n);
  for (Index x : cb) pb.push_back(x / n);
  const Scalar ha = entropy_of(pa), hb = entropy_of(pb);
  if (ha == 0 || hb == 0) return (ha == 0 && hb == 0) ? 1.0 : 0.0;
  Scalar mi = 0;
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < t[0].size(); ++j)
      if (t[i][j] > 0) {
        const Scalar pij = t[i][j] / n;
        mi += pij * std::log(pij / (pa[i] * pb[j]));
      }
  return mi / std::sqrt(ha * hb);
}

// ARI by explicit enumeration of all point pairs.
inline Scalar ari_pairs(const pkm::LabelVector& a, const pkm::LabelVector& b) {
  const Index n = a.size();
  Scalar n11 = 0, n00 = 0, n10 = 0, n01 = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const bool same_a = a[i] == a[j], same_b = b[i] == b[j];
      if (same_a && same_b)
        ++n11;
      else if (!same_a && !same_b)
        ++n00;
      else if (same_a)
        ++n10;
      else
        ++n01;
    }
  const Scalar total = n11 + n00 + n10 + n01;
  const Scalar expected = (n11 + n10) * (n11 + n01) / total;
  const Scalar maximum = 0.5 * ((n11 + n10) + (n11 + n01));
  if (maximum == expected) return n11 == expected ? 1.0 : 0.0;
  return (n11 - expected) / (maximum - expected);
}

// V-measure from conditional entropy tables (integer marginals as above).
inline Scalar v_measure(const pkm::LabelVector& truth,
                        const pkm::LabelVector& pred) {
  const auto t = contingency(truth, pred);
  const Scalar n = static_cast<Scalar>(truth.size());
  std::vector<Index> cc(t.size(), 0), ck(t[0].size(), 0);
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < t[0].size(); ++j) {
      cc[i] += t[i][j];
      ck[j] += t[i][j];
    }
  std::vector<Scalar> pc, pk;
  for (Index x : cc) pc.push_back(x / n);
  for (Index x : ck) pk.push_back(x / n);
  const Scalar hc = entropy_of(pc), hk = entropy_of(pk);
  Scalar hck = 0, hkc = 0;
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < t[0].size(); ++j)
      if (t[i][j] > 0) {
        const Scalar pij = t[i][j] / n;
        hck -= pij * std::log((t[i][j] / n) / pk[j]);
        hkc -= pij * std::log((t[i][j] / n) / pc[i]);
      }
  const Scalar h = hc == 0 ? 1.0 : 1.0 - hck / hc;
  const Scalar c = hk == 0 ? 1.0 : 1.0 - hkc / hk;
  return (h + c) == 0 ? 0.0 : 2 * h * c / (h + c);
}

// Exact-match-up-to-relabeling by trying every injective cluster map.
inline bool permutation_match(const pkm::LabelVector& a,
                              const pkm::LabelVector& b) {
  const Index ca = a.maxCoeff() + 1, cb = b.maxCoeff() + 1;
  const Index side = std::max(ca, cb);
  std::vector<Index> perm(side);
  std::iota(perm.begin(), perm.end(), Index{0});
  do {
    bool ok = true;
    for (Index i = 0; i < a.size() && ok; ++i) ok = perm[b[i]] == a[i];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// All labelings of n points into at most c clusters.
inline void enumerate_labelings(
    Index n, Index c, const std::function<void(const pkm::LabelVector&)>& fn) {
  pkm::LabelVector labels(n);
  const Index total = static_cast<Index>(std::pow(c, n));
  for (Index code = 0; code < total; ++code) {
    Index x = code;
    for (Index i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(x % c);
      x /= c;
    }
    fn(labels);
  }
}

}  // namespace oracle
