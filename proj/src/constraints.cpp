#include "pkm/constraints.hpp"

#include <Eigen/Cholesky>

#include <algorithm>

namespace pkm {

ActiveSet ActiveSet::classify(const Vector& p, Index L, Index K, Scalar tol) {
  ActiveSet out(L, K);
  for (Index r = 0; r < p.size(); ++r)
    if (p[r] <= tol) out.add(r);
  return out;
}

void ActiveSet::add(Index r) {
  if (r < 0 || r >= static_cast<Index>(mask_.size()))
    throw InvalidArgument("active coordinate out of range");
  if (mask_[r]) throw InvalidArgument("coordinate already active");
  const Index row = r / K_;
  if (row_count_[row] == K_ - 1)
    throw InvalidArgument("activating coordinate " + std::to_string(r) +
                          " would zero an entire point row");
  mask_[r] = 1;
  ++row_count_[row];
  coords_.insert(std::upper_bound(coords_.begin(), coords_.end(), r), r);
}

void ActiveSet::remove(Index r) {
  if (r < 0 || r >= static_cast<Index>(mask_.size()) || !mask_[r])
    throw InvalidArgument("coordinate is not active");
  mask_[r] = 0;
  --row_count_[r / K_];
  coords_.erase(std::lower_bound(coords_.begin(), coords_.end(), r));
}

namespace {

// N N^T for N = [A_1; E]. Since the inequality rows are distinct basis
// vectors this is the identity bordered by row-membership entries, with
// E E^T = K I in the trailing block; assembly exploits that, the
// factorization below stays generic.
void assemble_normal_matrix(const ConstraintSystem& sys,
                            const ActiveSet& active, Matrix& M) {
  const Index a = active.count();
  const Index m = a + sys.L;
  M.resize(m, m);
  M.setZero();
  M.topLeftCorner(a, a).setIdentity();
  for (Index s = 0; s < a; ++s) {
    const Index point = active.coords()[s] / sys.K;
    M(s, a + point) = 1.0;
    M(a + point, s) = 1.0;
  }
  M.bottomRightCorner(sys.L, sys.L) =
      static_cast<Scalar>(sys.K) * Matrix::Identity(sys.L, sys.L);
}

// Factorization scratch, reused across the very frequent rebuilds.
struct NormalSolveScratch {
  Matrix M;
  Eigen::LLT<Matrix> llt;

  void factorize(const ConstraintSystem& sys, const ActiveSet& active) {
    assemble_normal_matrix(sys, active, M);
    llt.compute(M);
    if (llt.info() != Eigen::Success) throw RankDeficient();
  }
};

thread_local NormalSolveScratch scratch;

}  // namespace

void rebuild_projection_direct(ProjectionState& state,
                               const ActiveSet& active) {
  const ConstraintSystem sys = state.sys;
  const Index a = active.count();
  const Index L = sys.L;
  const Index K = sys.K;
  const Index lk = sys.lk();
  const Index m = a + L;

  scratch.factorize(sys, active);

  // Columns of N are basis-vector sums: column (i,j) is e_{a+i}, plus e_s
  // when coordinate (i,j) is active as row s. The projector fixes active
  // coordinates exactly (M maps e_s to that same column), so only the L
  // equality images M^{-1} e_{a+i} need solving.
  Matrix rhs = Matrix::Zero(m, L);
  rhs.bottomRows(L).setIdentity();
  const Matrix X = scratch.llt.solve(rhs);  // m x L

  state.active = active;
  state.G.resize(lk, lk);
  state.Q.resize(lk, lk);
  Vector column(lk);
  std::vector<Index> active_row_of(lk, -1);
  for (Index s = 0; s < a; ++s) active_row_of[active.coords()[s]] = s;
  for (Index i = 0; i < L; ++i) {
    // G(p, (i,j)) = X(a + point(p), i) + X(row(p), i) for active p; the
    // column is shared by every free coordinate j of point i.
    for (Index p = 0; p < lk; ++p) {
      column[p] = X(a + p / K, i);
      if (active_row_of[p] >= 0) column[p] += X(active_row_of[p], i);
    }
    for (Index j = 0; j < K; ++j) {
      const Index c = i * K + j;
      if (!active.contains(c)) state.G.col(c) = column;
    }
  }
  for (Index r : active.coords()) {
    state.G.col(r).setZero();
    state.G(r, r) = 1.0;
  }
  state.Q = -state.G;
  state.Q.diagonal().array() += 1.0;
}

ProjectionState build_projection_direct(const ConstraintSystem& sys,
                                        const ActiveSet& active) {
  ProjectionState state{sys, active, Matrix(), Matrix()};
  rebuild_projection_direct(state, active);
  return state;
}

void update_projection_add_row(ProjectionState& state, Index new_row) {
  if (state.active.contains(new_row))
    throw InvalidArgument("row is already active");
  const Vector u = state.Q.col(new_row);  // Q n^T
  const Scalar gamma = u.dot(u);          // <Q n^T, Q n^T>
  if (gamma < kRankTolerance) throw DegenerateDirection(new_row);
  const Vector w = u / gamma;
  state.G.noalias() += u * w.transpose();
  state.Q.noalias() -= u * w.transpose();
  state.active.add(new_row);
}

Vector projected_gradient(const ProjectionState& state, const Vector& grad) {
  Vector d(grad.size());
  d.noalias() = state.Q.selfadjointView<Eigen::Lower>() * grad;
  return -d;
}

EscapeResult escape_test(const ConstraintSystem& sys, const ActiveSet& active,
                         const Vector& grad) {
  const Index a = active.count();
  const Index L = sys.L;
  const Index K = sys.K;

  scratch.factorize(sys, active);
  Vector rhs(a + L);
  for (Index s = 0; s < a; ++s) rhs[s] = grad[active.coords()[s]];
  for (Index i = 0; i < L; ++i) rhs[a + i] = grad.segment(i * K, K).sum();
  const Vector q = scratch.llt.solve(rhs);

  EscapeResult result;
  result.q1 = q.head(a);
  result.q2 = q.tail(L);
  result.stop = true;
  Scalar most_negative = 0;
  for (Index s = 0; s < a; ++s) {
    if (result.q1[s] < most_negative) {
      most_negative = result.q1[s];
      result.drop_coordinate = active.coords()[s];
      result.stop = false;
    }
  }
  return result;
}

}  // namespace pkm
