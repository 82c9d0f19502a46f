#include "amo/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "amo/kernels.hpp"

namespace amo {

namespace {

using i128 = __int128;

// sin(pi * num/den) with 128-bit folding so num may be a q-fold multiple.
double sinpi_frac_wide(i128 num, std::int64_t den) {
  i128 two_den = (i128)2 * den;
  i128 m = num % two_den;
  if (m < 0) m += two_den;
  return sinpi_frac((std::int64_t)m, den);
}

}  // namespace

// ---- polynomials ------------------------------------------------------------

double Poly::eval(double x) const {
  double acc = 0.0;
  for (size_t i = coeff.size(); i-- > 0;) acc = acc * x + coeff[i];
  return acc;
}

Poly Poly::times(const Poly& o) const {
  if (coeff.empty() || o.coeff.empty()) return {};
  Poly r;
  r.coeff.assign(coeff.size() + o.coeff.size() - 1, 0.0);
  for (size_t i = 0; i < coeff.size(); ++i) {
    for (size_t j = 0; j < o.coeff.size(); ++j) {
      r.coeff[i + j] += coeff[i] * o.coeff[j];
    }
  }
  return r;
}

Poly Poly::reflected() const {
  Poly r = *this;
  for (size_t i = 1; i < r.coeff.size(); i += 2) r.coeff[i] = -r.coeff[i];
  return r;
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeff) m = std::max(m, std::fabs(c));
  return m;
}

std::vector<double> chebyshev_nodes(int count, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double rad = 0.5 * (hi - lo);
  std::vector<double> xs((size_t)count);
  for (int i = 0; i < count; ++i) {
    xs[(size_t)i] = mid + rad * cospi_frac(2 * i + 1, 2 * count);
  }
  return xs;
}

Poly interpolate_poly(std::span<const double> xs, std::span<const double> ys) {
  const size_t m = xs.size();
  if (m == 0 || ys.size() != m) {
    throw std::invalid_argument("interpolate_poly: need equally many nodes and values");
  }
  // Leja ordering keeps the Newton divided differences well scaled.
  std::vector<size_t> order;
  order.reserve(m);
  std::vector<double> weight(m, 0.0);  // sum of log|x - picked|
  std::vector<char> used(m, 0);
  size_t first = 0;
  for (size_t i = 1; i < m; ++i) {
    if (std::fabs(xs[i]) > std::fabs(xs[first])) first = i;
  }
  order.push_back(first);
  used[first] = 1;
  for (size_t step = 1; step < m; ++step) {
    const double xp = xs[order.back()];
    size_t best = m;
    for (size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      const double d = std::fabs(xs[i] - xp);
      weight[i] += std::log(d > 0.0 ? d : 1e-300);
      if (best == m || weight[i] > weight[best]) best = i;
    }
    order.push_back(best);
    used[best] = 1;
  }
  // Divided differences in Leja order.
  std::vector<double> cx(m), cy(m);
  for (size_t i = 0; i < m; ++i) {
    cx[i] = xs[order[i]];
    cy[i] = ys[order[i]];
  }
  for (size_t level = 1; level < m; ++level) {
    for (size_t i = m - 1; i >= level; --i) {
      cy[i] = (cy[i] - cy[i - 1]) / (cx[i] - cx[i - level]);
      if (i == level) break;
    }
  }
  // Expand the Newton form to monomial coefficients.
  Poly result;
  result.coeff.assign(m, 0.0);
  std::vector<double> basis(m, 0.0);
  basis[0] = 1.0;
  size_t basis_len = 1;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < basis_len; ++j) result.coeff[j] += cy[i] * basis[j];
    if (i + 1 < m) {  // basis *= (x - cx[i])
      for (size_t j = basis_len; j-- > 0;) {
        const double b = basis[j];
        basis[j + 1] += b;
        basis[j] = -cx[i] * b;
      }
      ++basis_len;
    }
  }
  return result;
}

// ---- determinants -----------------------------------------------------------

void det_eval_batch(const PeriodicJacobi& m, std::span<const double> energies,
                    std::span<ScaledValue> out) {
  const int n = m.size();
  const size_t cnt = energies.size();
  if (out.size() != cnt) throw std::invalid_argument("det_eval_batch: output size mismatch");
  if (n == 0) throw std::invalid_argument("det_eval_batch: empty matrix");
  const double cosph = cos_turns(m.corner_phase);
  if (n == 1) {
    const double d = m.diag[0] + 2.0 * m.corner * cosph;
    for (size_t i = 0; i < cnt; ++i) out[i] = ScaledValue::from_double(d - energies[i]);
    return;
  }
  std::vector<double> offsq((size_t)n - 1);
  for (int j = 0; j + 1 < n; ++j) offsq[(size_t)j] = m.offdiag[(size_t)j] * m.offdiag[(size_t)j];

  const auto& kern = kernels::active_backend();
  std::vector<double> mant(cnt), mant_in(cnt);
  std::vector<std::int64_t> expo(cnt), expo_in(cnt);
  kern.det_minors(m.diag.data(), offsq.data(), n, energies.data(), (int)cnt,
                  mant.data(), expo.data());
  kern.det_minors(m.diag.data() + 1, offsq.data() + 1, n - 2, energies.data(),
                  (int)cnt, mant_in.data(), expo_in.data());

  ScaledValue cross;  // (-1)^(n+1) * 2c * cos(2 pi phase) * prod(offdiag)
  {
    ScaledValue prod = ScaledValue::from_double(1.0);
    for (int j = 0; j + 1 < n; ++j) prod = prod.times(m.offdiag[(size_t)j]);
    const double sgn = (n % 2 == 0) ? -1.0 : 1.0;
    cross = prod.times(sgn * 2.0 * m.corner * cosph);
  }
  const double c2 = m.corner * m.corner;
  for (size_t i = 0; i < cnt; ++i) {
    const ScaledValue full{mant[i], expo[i]};
    const ScaledValue interior{mant_in[i], expo_in[i]};
    out[i] = full.minus(interior.times(c2)).plus(cross);
  }
}

ScaledValue det_eval(const PeriodicJacobi& m, double energy) {
  ScaledValue out;
  det_eval_batch(m, std::span<const double>(&energy, 1), std::span<ScaledValue>(&out, 1));
  return out;
}

namespace {

// Last minor of a tridiagonal chain and its energy derivative, differentiating
// T_j = (diag_j - E) T_{j-1} - offsq_{j-1} T_{j-2} term by term.  All four
// states rescale jointly, so the returned mantissas share one exponent.
void minor_and_slope(const double* diag, const double* offsq, int n, double x,
                     double* val, double* slope, std::int64_t* expo) {
  double v1 = 1.0, v2 = 0.0;
  double s1 = 0.0, s2 = 0.0;
  std::int64_t e = 0;
  for (int j = 0; j < n; ++j) {
    const double a = diag[j] - x;
    const double b = (j >= 1) ? offsq[j - 1] : 0.0;
    const double v0 = a * v1 - b * v2;
    const double s0 = a * s1 - b * s2 - v1;
    v2 = v1;
    v1 = v0;
    s2 = s1;
    s1 = s0;
    const double f = std::max(std::max(std::fabs(v1), std::fabs(v2)),
                              std::max(std::fabs(s1), std::fabs(s2)));
    if (f > 0x1p500) {
      v1 *= 0x1p-512;
      v2 *= 0x1p-512;
      s1 *= 0x1p-512;
      s2 *= 0x1p-512;
      e += 512;
    } else if (f > 0.0 && f < 0x1p-500) {
      v1 *= 0x1p512;
      v2 *= 0x1p512;
      s1 *= 0x1p512;
      s2 *= 0x1p512;
      e -= 512;
    }
  }
  *val = v1;
  *slope = s1;
  *expo = e;
}

}  // namespace

DetSlope det_eval_with_slope(const PeriodicJacobi& m, double energy) {
  const int n = m.size();
  if (n == 0) throw std::invalid_argument("det_eval_with_slope: empty matrix");
  const double cosph = cos_turns(m.corner_phase);
  if (n == 1) {
    const double d = m.diag[0] + 2.0 * m.corner * cosph;
    return {ScaledValue::from_double(d - energy), ScaledValue::from_double(-1.0)};
  }
  std::vector<double> offsq((size_t)n - 1);
  for (int j = 0; j + 1 < n; ++j) offsq[(size_t)j] = m.offdiag[(size_t)j] * m.offdiag[(size_t)j];

  double tv, ts, iv, is;
  std::int64_t te, ie;
  minor_and_slope(m.diag.data(), offsq.data(), n, energy, &tv, &ts, &te);
  minor_and_slope(m.diag.data() + 1, offsq.data() + 1, n - 2, energy, &iv, &is, &ie);

  ScaledValue cross;  // (-1)^(n+1) * 2c * cos(2 pi phase) * prod(offdiag)
  {
    ScaledValue prod = ScaledValue::from_double(1.0);
    for (int j = 0; j + 1 < n; ++j) prod = prod.times(m.offdiag[(size_t)j]);
    const double sgn = (n % 2 == 0) ? -1.0 : 1.0;
    cross = prod.times(sgn * 2.0 * m.corner * cosph);
  }
  const double c2 = m.corner * m.corner;
  DetSlope out;
  out.value = ScaledValue::from_parts(tv, te)
                  .minus(ScaledValue::from_parts(iv, ie).times(c2))
                  .plus(cross);
  out.slope = ScaledValue::from_parts(ts, te)
                  .minus(ScaledValue::from_parts(is, ie).times(c2));
  return out;
}

// ---- discriminants ----------------------------------------------------------

void discriminant_standard_values(const Frequency& f, std::span<const double> energies,
                                  std::span<ScaledValue> out) {
  // cos(2 pi q0 theta) and the corner phase both sit at a quarter turn, where
  // the boundary terms of the determinant vanish exactly.
  const Turns theta = Turns::of_fraction(1, 4 * f.q0);
  const Turns k = Turns::of_fraction(1, 4 * f.q0);
  det_eval_batch(build_standard(f, theta, k), energies, out);
}

void discriminant_chiral_values(const Frequency& f, std::span<const double> energies,
                                std::span<ScaledValue> out) {
  const Turns theta;  // zero: the theta-dependent boundary term is 0 for both parities
  const Turns k = Turns::of_fraction(1, 4 * f.q);
  det_eval_batch(build_chiral(f, theta, k), energies, out);
}

ScaledValue discriminant_standard_value(const Frequency& f, double energy) {
  ScaledValue out;
  discriminant_standard_values(f, std::span<const double>(&energy, 1),
                               std::span<ScaledValue>(&out, 1));
  return out;
}

ScaledValue discriminant_chiral_value(const Frequency& f, double energy) {
  ScaledValue out;
  discriminant_chiral_values(f, std::span<const double>(&energy, 1),
                             std::span<ScaledValue>(&out, 1));
  return out;
}

namespace {

constexpr double kHullLo = -4.5;
constexpr double kHullHi = 4.5;

Poly interpolate_discriminant(const Frequency& f, int degree, bool chiral) {
  const std::vector<double> xs = chebyshev_nodes(degree + 1, kHullLo, kHullHi);
  std::vector<ScaledValue> vals(xs.size());
  if (chiral) {
    discriminant_chiral_values(f, xs, vals);
  } else {
    discriminant_standard_values(f, xs, vals);
  }
  std::vector<double> ys(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) ys[i] = vals[i].to_double();
  return interpolate_poly(xs, ys);
}

}  // namespace

Poly discriminant_standard(const Frequency& f) {
  return interpolate_discriminant(f, (int)f.q0, false);
}

Poly discriminant_chiral(const Frequency& f) {
  return interpolate_discriminant(f, (int)f.q, true);
}

// ---- coupling product ---------------------------------------------------------

double coupling_product_closed_form(const Frequency& f, const Turns& theta) {
  if (theta.exact()) {
    const std::int64_t a = theta.num(), b = theta.den();
    const double s1 = sinpi_frac_wide((i128)f.q * a, b);
    const double s2 = sinpi_frac_wide((i128)f.q * (2 * a + b), 2 * b);
    return 4.0 * s1 * s2;
  }
  const double qt = (double)f.q * theta.value();
  return 4.0 * sinpi(qt) * sinpi(qt + 0.5 * (double)f.q);
}

ScaledValue coupling_product_direct(const Frequency& f, const Turns& theta) {
  ScaledValue prod = ScaledValue::from_double(1.0);
  for (std::int64_t j = 0; j < f.q; ++j) {
    prod = prod.times(potential_b(angle_mod1(j, f.p, f.q, theta)));
  }
  return prod;
}

// ---- boundary formulas --------------------------------------------------------

namespace {

double chiral_boundary(const Frequency& f, const Turns& theta, const Turns& k,
                       int sign) {
  const std::int64_t q = f.q;
  if (q % 2 != 0) {
    const double par = (((q - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    return (double)sign * 4.0 * par * sin_turns(theta.times(q)) * cos_turns(k.times(q));
  }
  const double half = ((q / 2) % 2 == 0) ? 1.0 : -1.0;
  return -4.0 * (1.0 - cos_turns(theta.times(q))) *
         (1.0 + half * cos_turns(k.times(q)));
}

}  // namespace

ChambersSample chambers_probe(const Frequency& f, const Turns& theta,
                              const Turns& k, double energy, int sign) {
  const ScaledValue lhs = det_eval(build_chiral(f, theta, k), energy);
  const ScaledValue delta = discriminant_chiral_value(f, energy);
  const ScaledValue rhs =
      delta.plus(ScaledValue::from_double(chiral_boundary(f, theta, k, sign)));
  ChambersSample s;
  s.gap = std::fabs(lhs.minus(rhs).to_double());
  s.magnitude = std::max(std::fabs(lhs.to_double()), std::fabs(delta.to_double()));
  return s;
}

double chambers_residual(const Frequency& f, const Turns& theta, const Turns& k,
                         double energy, int sign) {
  const ChambersSample s = chambers_probe(f, theta, k, energy, sign);
  return s.gap / std::max(1.0, s.magnitude);
}

int detect_chambers_sign(const Frequency& f) {
  if (f.q % 2 == 0) return 0;
  const Turns theta = Turns::of_fraction(1, 8 * f.q);  // sin(2 pi q theta) = sqrt(2)/2
  const Turns k;                                       // cos(2 pi q k) = 1
  double gap_pos = 0.0, gap_neg = 0.0;
  for (double e : chebyshev_nodes(3, -4.2, 4.2)) {
    gap_pos += chambers_probe(f, theta, k, e, +1).gap;
    gap_neg += chambers_probe(f, theta, k, e, -1).gap;
  }
  return gap_pos <= gap_neg ? +1 : -1;
}

ScaledValue standard_chambers_recover(const Frequency& f, const Turns& theta,
                                      const Turns& k, double energy) {
  const ScaledValue det = det_eval(build_standard(f, theta, k), energy);
  const double par = (f.q0 % 2 == 0) ? 1.0 : -1.0;
  const double corr =
      2.0 * par * (cos_turns(theta.times(f.q0)) + cos_turns(k.times(f.q0)));
  return det.plus(ScaledValue::from_double(corr));
}

// ---- even-q factorization ------------------------------------------------------

Poly factor_even(const Frequency& f) {
  if (f.q % 2 != 0) {
    throw std::invalid_argument("factor_even: chiral period must be even");
  }
  // At theta = 0 the couplings b_0 and b_{q/2} vanish, so the chiral block
  // with window starting at site 1 splits into two half blocks that are sign
  // gauges of each other; P is the characteristic polynomial of the first.
  const std::int64_t h = f.q / 2;
  const Turns zero;
  Poly t_prev;  // T_0 = 1
  t_prev.coeff = {1.0};
  Poly t_cur;  // T_1 = -E
  t_cur.coeff = {0.0, -1.0};
  for (std::int64_t j = 2; j <= h; ++j) {
    const double b = potential_b(angle_mod1(j - 1, f.p, f.q, zero));
    Poly t_next;
    t_next.coeff.assign((size_t)j + 1, 0.0);
    for (size_t i = 0; i < t_cur.coeff.size(); ++i) {
      t_next.coeff[i + 1] -= t_cur.coeff[i];  // -E * T_{j-1}
    }
    for (size_t i = 0; i < t_prev.coeff.size(); ++i) {
      t_next.coeff[i] -= b * b * t_prev.coeff[i];
    }
    t_prev = t_cur;
    t_cur = t_next;
  }
  return h >= 1 ? t_cur : t_prev;
}

// ---- representation relation ----------------------------------------------------

DeviationReport discriminant_relation_check(const Frequency& f) {
  const int m = (int)(2 * f.q + 1);
  const std::vector<double> xs = chebyshev_nodes(m, kHullLo, kHullHi);
  std::vector<ScaledValue> chi(xs.size()), std_v(xs.size());
  discriminant_chiral_values(f, xs, chi);
  discriminant_standard_values(f, xs, std_v);
  ScaledValue scale;
  for (const ScaledValue& v : chi) {
    if (v.log2_abs() > scale.log2_abs()) scale = v;
  }
  DeviationReport rep;
  rep.samples = (long)xs.size();
  const bool square = (f.q % 2 == 0);
  for (size_t i = 0; i < xs.size(); ++i) {
    const ScaledValue want = square ? std_v[i].times(std_v[i]) : std_v[i];
    const double dev = ScaledValue::abs_ratio(chi[i].minus(want), scale);
    rep.max_deviation = std::max(rep.max_deviation, dev);
  }
  return rep;
}

}  // namespace amo
