// Exact rational angle arithmetic for the Harper / almost Mathieu operator at
// rational frequency.  Angles live on the unit circle and are measured in
// turns (1 turn = 2*pi radians).  Keeping angles as reduced fractions lets the
// trig evaluations reduce their arguments with integer arithmetic, so values
// that should vanish (or hit +-1, +-1/2) come out exact instead of O(q*eps).
#pragma once

#include <cstdint>
#include <string>

namespace amo {

// An angle in [0,1) turns.  Either an exact fraction num/den (den > 0,
// 0 <= num < den, gcd = 1) or, for sampled angles, a plain double.
class Turns {
 public:
  Turns() = default;

  // num/den turns, reduced into [0,1).  den must be positive.
  static Turns of_fraction(std::int64_t num, std::int64_t den);
  // Arbitrary real angle, folded into [0,1).  Loses exactness.
  static Turns of_real(double turns);

  bool exact() const { return den_ > 0; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const;  // angle in [0,1) turns

  Turns plus(const Turns& other) const;
  Turns times(std::int64_t m) const;

  bool is_zero() const;
  bool is_half() const;  // exactly 1/2 turn

  std::string str() const;  // "3/7" or "0.2913..."

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;   // den_ == 0 marks the inexact (double) case
  double real_ = 0.0;
};

bool operator==(const Turns& a, const Turns& b);

// sin(pi * a/b) and cos(pi * a/b) with exact integer argument reduction into
// [0, pi/4).  b must be positive.  Exact zeros at integer multiples of pi and
// exact +-1 at odd multiples of pi/2.
double sinpi_frac(std::int64_t a, std::int64_t b);
double cospi_frac(std::int64_t a, std::int64_t b);

// Same reduction applied to a double argument (sin(pi*x), cos(pi*x)).
double sinpi(double x);
double cospi(double x);

// sin / cos of a full-circle angle: sin(2*pi*t), cos(2*pi*t).
double sin_turns(const Turns& t);
double cos_turns(const Turns& t);

// Which chiral parity transformation applied to alpha = p0/q0.
//   even p0:  p = p0/2, q = q0     (q0 is odd here since gcd(p0,q0)=1)
//   odd  p0:  p = p0,   q = 2*q0
enum class ParityCase { even_numerator, odd_numerator };

// A reduced rational frequency alpha = p0/q0 in (0,1] together with the
// derived pair (p, q) used by the chiral (off-diagonal) representation, in
// which the couplings 2*sin(2*pi*(p*n/q + theta)) have period q and the flux
// alpha reappears as 2*p/q.
struct Frequency {
  std::int64_t p0 = 1, q0 = 1;  // reduced, 1 <= p0 <= q0
  std::int64_t p = 1, q = 2;    // chiral pair
  ParityCase parity = ParityCase::odd_numerator;

  // Reduce p_raw/q_raw: fold mod 1 into (0,1] (multiples of 1 map to 1/1),
  // divide out the gcd, then split by the parity of the reduced numerator.
  // Throws std::invalid_argument unless p_raw >= 1 and q_raw >= 1.
  static Frequency reduce(std::int64_t p_raw, std::int64_t q_raw);

  bool reduced_from(std::int64_t p_raw, std::int64_t q_raw) const {
    return p_raw != p0 || q_raw != q0;
  }
};

// The sampling angle slope_num/slope_den * n + theta reduced mod 1, kept
// exact when theta is exact.  slope_den must be positive.
Turns angle_mod1(std::int64_t n, std::int64_t slope_num, std::int64_t slope_den,
                 const Turns& theta);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace amo
