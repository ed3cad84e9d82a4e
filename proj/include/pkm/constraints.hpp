#pragma once

#include <vector>

#include "pkm/common.hpp"
#include "pkm/probability.hpp"

namespace pkm {

inline constexpr Scalar kActivityTolerance = 1e-10;
inline constexpr Scalar kRankTolerance = 1e-12;

// The linear constraint system A P >= 0, E P = 1 over the vectorized
// probability matrix. Neither matrix is materialized: A is the LK identity
// (inequality row r is the r-th standard basis vector) and equality row i
// carries ones on columns iK..iK+K-1, so E E^T = K I.
struct ConstraintSystem {
  Index L = 0, K = 0;
  Index lk() const { return L * K; }
};

// Vector indices r with p_r = 0, i.e. the rows of the active inequality
// block A_1. The L equality rows are implicitly always active.
class ActiveSet {
 public:
  ActiveSet(Index L, Index K)
      : L_(L), K_(K), mask_(L * K, 0), row_count_(L, 0) {}

  // Coordinates with p_r <= tol are active (callers snap them to exact 0).
  static ActiveSet classify(const Vector& p, Index L, Index K,
                            Scalar tol = kActivityTolerance);

  void add(Index r);
  void remove(Index r);
  bool contains(Index r) const { return mask_[r] != 0; }

  Index count() const { return static_cast<Index>(coords_.size()); }
  const std::vector<Index>& coords() const { return coords_; }
  Index row_active(Index i) const { return row_count_[i]; }

  // True when the stacked matrix N = [A_1; E] is square: every point keeps
  // exactly one positive coordinate.
  bool complete() const { return count() == (K_ - 1) * L_; }

  Index rows() const { return L_; }
  Index cols() const { return K_; }

 private:
  Index L_, K_;
  std::vector<Index> coords_;  // ascending
  std::vector<char> mask_;
  std::vector<Index> row_count_;
};

// Dense projectors over the active constraint rows N = [A_1; E]:
// G = N^T (N N^T)^{-1} N projects onto the row space, Q = I - G onto the
// null space. Both are held explicitly at LK x LK.
struct ProjectionState {
  ConstraintSystem sys;
  ActiveSet active;
  Matrix G;
  Matrix Q;
};

// Builds G by factorizing N N^T (Cholesky; never an explicit inverse) and
// scattering the solved equality-row images into place. Throws
// RankDeficient when the factorization fails, which signals a corrupted
// active set (e.g. a fully active point row).
ProjectionState build_projection_direct(const ConstraintSystem& sys,
                                        const ActiveSet& active);

// Same construction, reusing the state's G/Q storage. The solvers rebuild
// once per active-set change, so avoiding the two LK x LK reallocations
// matters on larger problems.
void rebuild_projection_direct(ProjectionState& state,
                               const ActiveSet& active);

// Rank-one growth update: with n the standard basis row for `new_row`,
//   G' = G + Q n^T <Q n^T, Q n^T>^{-1} n Q,   Q' = I - G'.
// Agrees with the direct build on the augmented set. Throws
// DegenerateDirection when n already lies in the active span.
void update_projection_add_row(ProjectionState& state, Index new_row);

// d = -Q grad, the steepest feasible descent direction; N d = 0.
Vector projected_gradient(const ProjectionState& state, const Vector& grad);

struct EscapeResult {
  bool stop = false;        // all inequality multipliers nonnegative: KKT
  Index drop_coordinate = -1;  // most negative multiplier, ties to smallest
  Vector q1;                // inequality multipliers (one per active coord)
  Vector q2;                // equality multipliers (length L)
};

// Lagrange multiplier test q = (N N^T)^{-1} N grad, which reduces to
// (N^T)^{-1} grad when N is square. Decides between stopping at a KKT
// point and releasing one active inequality.
EscapeResult escape_test(const ConstraintSystem& sys, const ActiveSet& active,
                         const Vector& grad);

}  // namespace pkm
