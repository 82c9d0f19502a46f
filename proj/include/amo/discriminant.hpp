// Determinants and discriminants of the Floquet blocks.
//
// det(B - E) for a periodic Jacobi block B splits into tridiagonal minors
// plus a rank-one corner correction:
//   det = T_n(E) - c^2 * T_{n-2}^{interior}(E) + (-1)^{n+1} * 2 c cos(2 pi
//   phase) * prod(offdiag),
// which is real for every corner phase.  The two tridiagonal minors run
// through the batched kernels, so everything here is overflow-safe up to very
// large periods.
//
// The discriminants are determinants at angles chosen so the boundary terms
// vanish identically:
//   standard:  theta = 1/(4 q0), corner phase 1/4  ->  Delta(E)
//   chiral:    theta = 0,        corner phase 1/4  ->  Delta~(E)
// Both choices are exact by integer angle reduction, not just small.
#pragma once

#include <span>
#include <vector>

#include "amo/floquet.hpp"
#include "amo/rational.hpp"
#include "amo/scaled.hpp"

namespace amo {

// Dense polynomial in the energy, coeff[i] * E^i.
struct Poly {
  std::vector<double> coeff;

  int degree() const { return (int)coeff.size() - 1; }
  double eval(double x) const;
  Poly times(const Poly& o) const;
  Poly reflected() const;  // P(-E)
  double max_abs_coeff() const;
};

// det(M - E*I), exact-phase real result as a scaled double.
ScaledValue det_eval(const PeriodicJacobi& m, double energy);
void det_eval_batch(const PeriodicJacobi& m, std::span<const double> energies,
                    std::span<ScaledValue> out);

// det(M - E*I) together with its energy derivative, from the differentiated
// minor recurrences.  The derivative keeps a transversal, well-conditioned
// zero crossing at a double eigenvalue, where the determinant itself is
// quadratically flat and its sign falls below the rounding noise.
struct DetSlope {
  ScaledValue value;
  ScaledValue slope;
};
DetSlope det_eval_with_slope(const PeriodicJacobi& m, double energy);

// Discriminant values through the boundary-free determinant routes above.
ScaledValue discriminant_standard_value(const Frequency& f, double energy);
ScaledValue discriminant_chiral_value(const Frequency& f, double energy);
void discriminant_standard_values(const Frequency& f, std::span<const double> energies,
                                  std::span<ScaledValue> out);
void discriminant_chiral_values(const Frequency& f, std::span<const double> energies,
                                std::span<ScaledValue> out);

// Monomial coefficients recovered by Newton interpolation on Chebyshev nodes
// of [-4.5, 4.5] (Leja-ordered).  Coefficients of high-degree characteristic
// polynomials are badly conditioned; keep these for small periods and use the
// *_value routes for pointwise work.
Poly discriminant_standard(const Frequency& f);
Poly discriminant_chiral(const Frequency& f);

// Closed form of the full coupling product prod_{j=0}^{q-1} b_j(theta):
// 4 sin(pi q theta) sin(pi q (theta + 1/2)), evaluated with exact reduction
// for exact theta.  The product is independent of p; tests check that.
double coupling_product_closed_form(const Frequency& f, const Turns& theta);
// The same product taken literally, factor by factor.
ScaledValue coupling_product_direct(const Frequency& f, const Turns& theta);

// One probe of the chiral boundary formula
//   det(B_{theta,k} - E) = Delta~(E) + boundary(theta, k),
//   q odd:  boundary = sign * 4 * (-1)^((q-1)/2) sin(2 pi q theta) cos(2 pi q k)
//   q even: boundary = -4 (1 - cos(2 pi q theta)) (1 + (-1)^(q/2) cos(2 pi q k))
// gap = |lhs - rhs|, magnitude = max(|lhs|, |Delta~(E)|) for normalizing.
struct ChambersSample {
  double gap;
  double magnitude;
};
ChambersSample chambers_probe(const Frequency& f, const Turns& theta,
                              const Turns& k, double energy, int sign);
double chambers_residual(const Frequency& f, const Turns& theta, const Turns& k,
                         double energy, int sign);
// Empirically pick sign in {+1,-1} for the odd-q boundary formula; returns 0
// for even q where no sign is free.
int detect_chambers_sign(const Frequency& f);

// Recover Delta(E) from the standard block at an arbitrary (theta, k) by
// adding back the classical boundary term 2 (-1)^q0 (cos(2 pi q0 theta) +
// cos(2 pi q0 k)); the result must not depend on (theta, k).
ScaledValue standard_chambers_recover(const Frequency& f, const Turns& theta,
                                      const Turns& k, double energy);

// For even q the chiral discriminant factorizes: Delta~(E) =
// (-1)^(q/2) P(-E) P(E) with P the characteristic polynomial of the half
// block whose couplings are b_1(0)..b_{q/2-1}(0).  Returns P.
Poly factor_even(const Frequency& f);

// Pointwise check of the discriminant relation between representations:
// Delta~ = Delta for odd q, Delta~ = Delta^2 for even q, probed at 2q+1
// Chebyshev energies; deviations are relative to the largest sampled value.
struct DeviationReport {
  double max_deviation = 0.0;
  long samples = 0;
};
DeviationReport discriminant_relation_check(const Frequency& f);

std::vector<double> chebyshev_nodes(int count, double lo, double hi);
Poly interpolate_poly(std::span<const double> xs, std::span<const double> ys);

}  // namespace amo
