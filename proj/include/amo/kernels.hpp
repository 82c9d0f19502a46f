// Batched inner loops behind the determinant and eigenvalue-counting code.
// Two implementations share one contract: a scalar reference, and an AVX2
// variant selected at runtime after a cpuid check.  The AVX2 kernels are
// written operation-for-operation identical to the scalar ones (no FMA, no
// reassociation), so their outputs must match the reference bit for bit; the
// test suite enforces that.
#pragma once

#include <cstdint>

#include "amo/scaled.hpp"

namespace amo::kernels {

// det(T - E*I) for the n x n symmetric tridiagonal T with diagonal diag[0..n)
// and *squared* off-diagonal couplings offsq[0..n-1), evaluated at count
// energies.  Result i is mant_out[i] * 2^exp_out[i] with mantissa in +-[1,2)
// or exactly 0; the recurrence rescales by 2^+-512 whenever the running pair
// of minors leaves [2^-500, 2^500].  n == 0 yields the empty determinant 1.
using DetMinorsFn = void (*)(const double* diag, const double* offsq, int n,
                             const double* energies, int count,
                             double* mant_out, std::int64_t* exp_out);

// Number of eigenvalues below each shift, for the real symmetric matrix
// tridiag(off, diag, off) plus a corner coupling:
//   n >= 3: entries (0,n-1) and (n-1,0) equal to corner,
//   n == 2: corner adds onto the single off-diagonal entry, off[0] + corner,
//   n == 1: the matrix is the scalar diag[0] + 2*corner.
// Counted as the sign changes down the sequence of leading principal minors
// (a Sturm sequence: the first n-1 minors ignore the corner and come from the
// same rescaled recurrence as DetMinorsFn, the last one is the bordered
// determinant).  There are no divisions and no pivot floors, so the count is
// reliable even at shifts that make a leading block exactly singular; a shift
// sitting on an eigenvalue may or may not include it, which keeps the counts
// monotone and is all the bisection callers need.
using InertiaCountsFn = void (*)(const double* diag, const double* off, int n,
                                 double corner, const double* shifts, int count,
                                 int* counts_out);

struct Backend {
  const char* name;
  DetMinorsFn det_minors;
  InertiaCountsFn inertia_counts;
};

const Backend& scalar_backend();
const Backend& avx2_backend();  // function pointers are null if not compiled in

bool avx2_available();          // runtime cpu check
const Backend& active_backend();
// "scalar", "avx2" or "auto"; throws std::invalid_argument / runtime_error if
// the request cannot be honored.
void select_backend(const char* which);

namespace detail {

// Scalar loops on a fixed index range; the AVX2 backend reuses them for
// ragged tails so lane handling never changes the results.
void det_minors_range(const double* diag, const double* offsq, int n,
                      const double* energies, int begin, int end,
                      double* mant_out, std::int64_t* exp_out);
void inertia_counts_range(const double* diag, const double* off, int n,
                          double corner, const double* shifts, int begin,
                          int end, int* counts_out);

// Pieces of inertia_counts_range the AVX2 kernel mirrors lane by lane.
//
// Leading-minor chain: the det_minors_range recurrence plus Sturm
// bookkeeping.  Per shift it reports the final minor (scaled), the sign
// changes over minors 1..n-1 with an exactly zero minor keeping the previous
// sign, and the last sign seen (+-1.0).  When a minor is exactly zero and the
// next coupling is too, the matrix splits with a singular leading factor and
// every later minor is truly zero; the chain then restarts from the carried
// sign so the remaining blocks still contribute their sign changes, and the
// reported final minor is an exact zero.
void sturm_chain_range(const double* diag, const double* offsq, int n,
                       const double* shifts, int begin, int end,
                       double* mant_out, std::int64_t* exp_out,
                       int* changes_out, double* slast_out);

// Product of the couplings off[0..count), kept in scaled form.
ScaledValue coupling_product(const double* off, int count);

// Appends the bordered determinant full - border_sq*interior + cross to the
// minor sequence and returns the final sign-change count.
int finish_count(const ScaledValue& full, const ScaledValue& interior,
                 const ScaledValue& border_sq, const ScaledValue& cross,
                 int changes, double slast);

}  // namespace detail

}  // namespace amo::kernels
