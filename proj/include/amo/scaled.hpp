// A double with a separated power-of-two exponent, for determinant-style
// products that overflow or underflow long before they lose accuracy.  A
// degree-600 characteristic polynomial evaluated at |E| ~ 4 is around 8^600;
// carrying the exponent in an int64 keeps the mantissa in [1,2) where every
// operation is exact-rounded.
#pragma once

#include <cmath>
#include <cstdint>

namespace amo {

struct ScaledValue {
  double mant = 0.0;        // 0, or +-[1,2)
  std::int64_t exp2 = 0;    // value = mant * 2^exp2

  static ScaledValue from_double(double v) { return from_parts(v, 0); }

  // Normalize an arbitrary finite (mantissa, exponent) pair.
  static ScaledValue from_parts(double v, std::int64_t e) {
    ScaledValue s;
    if (v == 0.0) return s;
    int sh = 0;
    s.mant = std::frexp(v, &sh);  // |mant| in [0.5, 1)
    s.mant *= 2.0;
    s.exp2 = e + sh - 1;
    return s;
  }

  bool zero() const { return mant == 0.0; }
  int sign() const { return mant > 0.0 ? 1 : (mant < 0.0 ? -1 : 0); }

  // Collapses to a plain double, saturating to +-inf / 0 out of range.
  double to_double() const {
    if (zero()) return 0.0;
    if (exp2 > 1100) return mant > 0 ? HUGE_VAL : -HUGE_VAL;
    if (exp2 < -1100) return 0.0;
    return std::ldexp(mant, (int)exp2);
  }

  // log2 of |value|; -inf for zero.
  double log2_abs() const {
    if (zero()) return -HUGE_VAL;
    return (double)exp2 + std::log2(std::fabs(mant));
  }

  ScaledValue neg() const { return {-mant, exp2}; }

  ScaledValue times(const ScaledValue& o) const {
    if (zero() || o.zero()) return {};
    return from_parts(mant * o.mant, exp2 + o.exp2);
  }

  ScaledValue times(double v) const {
    if (zero() || v == 0.0) return {};
    return from_parts(mant * v, exp2);
  }

  ScaledValue plus(const ScaledValue& o) const {
    if (zero()) return o;
    if (o.zero()) return *this;
    const ScaledValue *hi = this, *lo = &o;
    if (o.exp2 > exp2) {
      hi = &o;
      lo = this;
    }
    std::int64_t shift = lo->exp2 - hi->exp2;  // <= 0
    if (shift < -80) return *hi;               // below half an ulp of hi
    return from_parts(hi->mant + std::ldexp(lo->mant, (int)shift), hi->exp2);
  }

  ScaledValue minus(const ScaledValue& o) const { return plus(o.neg()); }

  // |a| / |b| as a double, saturating; 0/0 yields 0.
  static double abs_ratio(const ScaledValue& a, const ScaledValue& b) {
    if (a.zero()) return 0.0;
    if (b.zero()) return HUGE_VAL;
    double l = a.log2_abs() - b.log2_abs();
    if (l > 1020.0) return HUGE_VAL;
    if (l < -1020.0) return 0.0;
    return std::exp2(l);
  }
};

}  // namespace amo
