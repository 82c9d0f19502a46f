#include "amo/rational.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace amo {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

// Reduce num/den (den > 0) into [0,1) with gcd divided out.  Works in 128-bit
// so callers may pass unreduced products.
void fold_fraction(i128 num, i128 den, i64* num_out, i64* den_out) {
  if (den <= 0) throw std::invalid_argument("Turns: denominator must be positive");
  if (den > (i128)INT64_MAX) throw std::overflow_error("Turns: denominator overflow");
  i128 m = num % den;
  if (m < 0) m += den;
  i64 g = std::gcd((i64)m, (i64)den);
  *num_out = (i64)m / g;
  *den_out = (i64)den / g;
}

}  // namespace

i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }

Turns Turns::of_fraction(i64 num, i64 den) {
  Turns t;
  fold_fraction(num, den, &t.num_, &t.den_);
  return t;
}

Turns Turns::of_real(double turns) {
  if (!std::isfinite(turns)) throw std::invalid_argument("Turns: non-finite angle");
  double f = turns - std::floor(turns);
  if (f >= 1.0) f = 0.0;  // floor rounding right at the seam
  Turns t;
  t.den_ = 0;
  t.real_ = f;
  return t;
}

double Turns::value() const {
  return exact() ? (double)num_ / (double)den_ : real_;
}

Turns Turns::plus(const Turns& other) const {
  if (exact() && other.exact()) {
    Turns t;
    fold_fraction((i128)num_ * other.den_ + (i128)other.num_ * den_,
                  (i128)den_ * other.den_, &t.num_, &t.den_);
    return t;
  }
  return of_real(value() + other.value());
}

Turns Turns::times(i64 m) const {
  if (exact()) {
    Turns t;
    fold_fraction((i128)num_ * m, den_, &t.num_, &t.den_);
    return t;
  }
  return of_real(real_ * (double)m);
}

bool Turns::is_zero() const { return exact() ? num_ == 0 : real_ == 0.0; }

bool Turns::is_half() const {
  return exact() ? (num_ * 2 == den_) : real_ == 0.5;
}

std::string Turns::str() const {
  char buf[48];
  if (exact()) {
    std::snprintf(buf, sizeof buf, "%lld/%lld", (long long)num_, (long long)den_);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", real_);
  }
  return buf;
}

bool operator==(const Turns& a, const Turns& b) {
  if (a.exact() && b.exact()) return a.num() == b.num() && a.den() == b.den();
  return a.value() == b.value();
}

// ---- trig with exact reduction ---------------------------------------------

double sinpi_frac(std::int64_t a, std::int64_t b) {
  if (b <= 0) throw std::invalid_argument("sinpi_frac: denominator must be positive");
  if (b > (INT64_MAX >> 2)) throw std::overflow_error("sinpi_frac: denominator too large");
  std::int64_t m = a % (2 * b);  // sin(pi x) has period 2
  if (m < 0) m += 2 * b;
  double sign = 1.0;
  if (m >= b) {  // sin(pi(1+x)) = -sin(pi x)
    m -= b;
    sign = -1.0;
  }
  if (2 * m > b) m = b - m;  // sin(pi(1-x)) = sin(pi x); now m/b <= 1/2
  if (4 * m <= b) return sign * std::sin(std::numbers::pi * ((double)m / (double)b));
  // m/b in (1/4, 1/2]: go through cos so the libm argument stays below pi/4
  return sign * std::cos(std::numbers::pi * ((double)(b - 2 * m) / (double)(2 * b)));
}

double cospi_frac(std::int64_t a, std::int64_t b) {
  if (b <= 0) throw std::invalid_argument("cospi_frac: denominator must be positive");
  std::int64_t m = a % (2 * b);  // fold first so 2*m + b below cannot overflow
  return sinpi_frac(2 * m + b, 2 * b);
}

double sinpi(double x) {
  double y = std::fmod(x, 2.0);
  if (y < 0.0) y += 2.0;
  double sign = 1.0;
  if (y >= 1.0) {
    y -= 1.0;
    sign = -1.0;
  }
  if (y > 0.5) y = 1.0 - y;
  if (y <= 0.25) return sign * std::sin(std::numbers::pi * y);
  return sign * std::cos(std::numbers::pi * (0.5 - y));
}

double cospi(double x) { return sinpi(0.5 + std::fabs(x)); }

double sin_turns(const Turns& t) {
  if (t.exact()) return sinpi_frac(2 * t.num(), t.den());
  return sinpi(2.0 * t.value());
}

double cos_turns(const Turns& t) {
  if (t.exact()) return cospi_frac(2 * t.num(), t.den());
  return cospi(2.0 * t.value());
}

// ---- frequencies ------------------------------------------------------------

Frequency Frequency::reduce(std::int64_t p_raw, std::int64_t q_raw) {
  if (p_raw < 1 || q_raw < 1) {
    throw std::invalid_argument("Frequency: numerator and denominator must be >= 1");
  }
  std::int64_t m = p_raw % q_raw;
  Frequency f;
  if (m == 0) {  // integer flux: alpha folds to 1/1
    f.p0 = 1;
    f.q0 = 1;
  } else {
    std::int64_t g = std::gcd(m, q_raw);
    f.p0 = m / g;
    f.q0 = q_raw / g;
  }
  if (f.p0 % 2 == 0) {
    f.parity = ParityCase::even_numerator;
    f.p = f.p0 / 2;
    f.q = f.q0;
  } else {
    f.parity = ParityCase::odd_numerator;
    f.p = f.p0;
    f.q = 2 * f.q0;
  }
  return f;
}

Turns angle_mod1(std::int64_t n, std::int64_t slope_num, std::int64_t slope_den,
                 const Turns& theta) {
  if (slope_den <= 0) throw std::invalid_argument("angle_mod1: slope denominator must be positive");
  i128 r = (i128)slope_num * n % slope_den;
  if (r < 0) r += slope_den;
  Turns base = Turns::of_fraction((i64)r, slope_den);
  return base.plus(theta);
}

}  // namespace amo
