// Eigenvalue machinery for the real-symmetric Floquet blocks.
//
// Two independent engines: cyclic Jacobi rotations on the dense matrix
// (default up to moderate sizes), and bisection driven by the batched
// eigenvalue-below-shift counts (default above, and the fast path for long
// Thouless sweeps).  They share no arithmetic, which makes them useful as
// oracles for each other.
#pragma once

#include <span>
#include <vector>

#include "amo/floquet.hpp"

namespace amo {

// Eigenvalues in decreasing order; a multiple eigenvalue appears once per
// multiplicity (bisection emits exact duplicates for unresolvable clusters).
struct EigenList {
  std::vector<double> values;

  int size() const { return (int)values.size(); }
};

enum class EigenMethod { automatic, rotation, bisection };

// Requires m.real_symmetric().  automatic picks rotation for blocks up to
// 400 sites and bisection beyond.
EigenList symmetric_eigs(const PeriodicJacobi& m, EigenMethod method = EigenMethod::automatic);

// Cyclic Jacobi rotations on a dense row-major symmetric matrix (destroyed in
// the process).  Returned decreasing.
std::vector<double> dense_jacobi_eigs(std::vector<double> a, int n);

// Eigenvalues located by counting (inertia bisection to unit brackets), then
// polished by sign-change bisection of det(M - E).  Arithmetic route is
// disjoint from the rotation engine; used as its oracle.
EigenList eigs_by_determinant(const PeriodicJacobi& m);

// Eigenvalues of after - before, where the two blocks differ only in the
// sign of a real corner phase: a rank <= 2 corner perturbation with spectrum
// { +|d|, 0, ..., 0, -|d| }, d twice the corner coupling.  Closed form.
EigenList corner_perturbation_eigs(const PeriodicJacobi& before,
                                   const PeriodicJacobi& after);

// Margins of the two extremal eigenvalue-sum inequalities for A+B against A
// plus the largest / smallest eigenvalues of B.  indices are 1-based,
// strictly increasing positions into the decreasing eigenvalue lists.  Both
// margins are >= 0 (up to roundoff) for any self-adjoint A, B:
//   upper = sum_m E_top(B)    - sum_{i in I} [E_i(A+B) - E_i(A)]
//   lower = sum_{i in I} [E_i(A+B) - E_i(A)] - sum_m E_bottom(B)
struct ShiftMargins {
  double upper = 0.0;
  double lower = 0.0;
};
ShiftMargins eigenvalue_shift_margins(const EigenList& sum_ab, const EigenList& a,
                                      const EigenList& b, std::span<const int> indices);

}  // namespace amo
