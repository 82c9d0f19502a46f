// Floquet (periodic boundary) Jacobi matrices for the critical Harper
// operator at rational frequency, in its two unitarily related forms:
//
//   standard: diagonal a_n(theta) = 2 cos(2 pi (p0 n / q0 + theta)),
//             unit off-diagonal hopping, q0 x q0 blocks;
//   chiral:   zero diagonal, off-diagonal couplings
//             b_n(theta) = 2 sin(2 pi (p n / q + theta)), q x q blocks.
//
// A block at Floquet momentum k (in turns) is the tridiagonal of the window
// starting at site ell, plus a corner hopping carrying the phase e^{-2 pi i
// k*size}.  For the phases 0 and 1/2 used throughout the spectral code the
// corner is real and the matrix is real symmetric.
#pragma once

#include <complex>
#include <vector>

#include "amo/rational.hpp"

namespace amo {

struct PeriodicJacobi {
  std::vector<double> diag;     // size n
  std::vector<double> offdiag;  // size n-1
  double corner = 0.0;          // coupling magnitude times window sign
  Turns corner_phase;           // entry (0,n-1) = corner * e^{-2 pi i phase}

  int size() const { return (int)diag.size(); }

  // True when the corner phase is 0 or 1/2 turn (or the corner vanishes).
  bool real_symmetric() const;
  // +1 or -1 for phase 0 / 1/2; throws std::domain_error otherwise.
  double corner_sign() const;

  // Dense row-major copies.  For n <= 2 the wrap-around coupling folds into
  // the off-diagonal (n == 2) or the single diagonal entry (n == 1), matching
  // how a periodic chain of that length actually couples.
  std::vector<double> dense_symmetric() const;                 // requires real_symmetric()
  std::vector<std::complex<double>> dense_hermitian() const;  // any phase
};

// Sampled potentials: a = 2 cos(2 pi x), b = 2 sin(2 pi x).
double potential_a(const Turns& x);
double potential_b(const Turns& x);

// Chiral-representation block: couplings b_{ell}..b_{ell+q-1}(theta) with the
// last one on the corner.  k is the Floquet momentum in turns; the stored
// corner phase is k*q mod 1.
PeriodicJacobi build_chiral(const Frequency& f, const Turns& theta,
                            const Turns& k, std::int64_t ell = 0);

// Standard-representation block: diagonal a_{ell}..a_{ell+q0-1}(theta), unit
// hopping, corner phase k*q0 mod 1.
PeriodicJacobi build_standard(const Frequency& f, const Turns& theta,
                              const Turns& k, std::int64_t ell = 0);

}  // namespace amo
