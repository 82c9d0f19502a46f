// Exact angle arithmetic: fraction folding, trig with integer argument
// reduction, frequency parity splitting, and the sampling-angle helper.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amo/rational.hpp"
#include "doctest.h"

using namespace amo;

// ---- Turns -----------------------------------------------------------------

TEST_CASE("fraction_angles_fold_and_reduce") {
  const Turns a = Turns::of_fraction(3, 6);
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);
  CHECK(a.is_half());

  const Turns b = Turns::of_fraction(-1, 4);
  CHECK(b.num() == 3);
  CHECK(b.den() == 4);

  const Turns c = Turns::of_fraction(7, 7);
  CHECK(c.is_zero());
  CHECK(c.den() == 1);

  const Turns d = Turns::of_fraction(9, 4);
  CHECK(d.num() == 1);
  CHECK(d.den() == 4);

  CHECK_THROWS_AS(Turns::of_fraction(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Turns::of_fraction(1, -3), std::invalid_argument);
}

TEST_CASE("real_angles_fold_into_unit_interval") {
  CHECK(Turns::of_real(1.25).value() == 0.25);
  CHECK(Turns::of_real(-0.25).value() == 0.75);
  CHECK(Turns::of_real(3.0).value() == 0.0);
  CHECK(!Turns::of_real(0.3).exact());
  CHECK_THROWS_AS(Turns::of_real(std::nan("")), std::invalid_argument);
}

TEST_CASE("angle_sum_and_scaling_stay_exact") {
  const Turns s = Turns::of_fraction(1, 3).plus(Turns::of_fraction(1, 6));
  CHECK(s.exact());
  CHECK(s == Turns::of_fraction(1, 2));

  const Turns t = Turns::of_fraction(1, 3).times(3);
  CHECK(t.is_zero());
  CHECK(Turns::of_fraction(1, 4).times(6) == Turns::of_fraction(1, 2));

  // Mixing in an inexact angle demotes the result to a plain double.
  const Turns m = Turns::of_fraction(1, 4).plus(Turns::of_real(0.1));
  CHECK(!m.exact());
  CHECK(m.value() == doctest::Approx(0.35).epsilon(1e-15));
}

TEST_CASE("angle_sum_overflow_is_detected") {
  const Turns a = Turns::of_fraction(1, 4000000007);
  const Turns b = Turns::of_fraction(1, 4000000009);
  CHECK_THROWS_AS((void)a.plus(b), std::overflow_error);
}

// ---- exact trig ------------------------------------------------------------

TEST_CASE("reduced_trig_hits_special_values_exactly") {
  CHECK(sinpi_frac(0, 5) == 0.0);
  CHECK(sinpi_frac(5, 5) == 0.0);
  CHECK(sinpi_frac(-3, 3) == 0.0);
  CHECK(sinpi_frac(1, 2) == 1.0);
  CHECK(sinpi_frac(3, 2) == -1.0);
  CHECK(cospi_frac(1, 2) == 0.0);
  CHECK(cospi_frac(0, 7) == 1.0);
  CHECK(cospi_frac(7, 7) == -1.0);

  CHECK(sin_turns(Turns::of_fraction(1, 4)) == 1.0);
  CHECK(sin_turns(Turns::of_fraction(1, 2)) == 0.0);
  CHECK(cos_turns(Turns::of_fraction(1, 2)) == -1.0);
  CHECK(cos_turns(Turns::of_fraction(1, 4)) == 0.0);
}

TEST_CASE("reduced_trig_matches_libm_on_small_fractions") {
  for (std::int64_t b = 1; b <= 12; ++b) {
    for (std::int64_t a = -50; a <= 50; ++a) {
      const double x = std::numbers::pi * (double)a / (double)b;
      CHECK(sinpi_frac(a, b) == doctest::Approx(std::sin(x)).epsilon(5e-14).scale(1.0));
      CHECK(cospi_frac(a, b) == doctest::Approx(std::cos(x)).epsilon(5e-14).scale(1.0));
    }
  }
}

TEST_CASE("reduced_trig_is_periodic_bit_for_bit") {
  const std::int64_t k = 1000000000000;
  CHECK(sinpi_frac(3 + 2 * k * 7, 7) == sinpi_frac(3, 7));
  CHECK(cospi_frac(5 - 2 * k * 9, 9) == cospi_frac(5, 9));
}

TEST_CASE("double_argument_trig_agrees_with_libm") {
  for (int i = -40; i <= 40; ++i) {
    const double x = 0.13 * (double)i;
    CHECK(sinpi(x) == doctest::Approx(std::sin(std::numbers::pi * x)).epsilon(1e-13).scale(1.0));
    CHECK(cospi(x) == doctest::Approx(std::cos(std::numbers::pi * x)).epsilon(1e-13).scale(1.0));
  }
  CHECK(sinpi(1.0) == 0.0);
  CHECK(cospi(0.5) == 0.0);
}

TEST_CASE("turn_trig_satisfies_pythagoras") {
  for (int i = 0; i < 29; ++i) {
    const Turns t = Turns::of_fraction(i, 29);
    const double s = sin_turns(t), c = cos_turns(t);
    CHECK(s * s + c * c == doctest::Approx(1.0).epsilon(1e-15));
  }
}

// ---- frequencies -----------------------------------------------------------

TEST_CASE("frequency_reduction_splits_by_numerator_parity") {
  const Frequency even = Frequency::reduce(2, 5);
  CHECK(even.p0 == 2);
  CHECK(even.q0 == 5);
  CHECK(even.parity == ParityCase::even_numerator);
  CHECK(even.p == 1);
  CHECK(even.q == 5);

  const Frequency odd = Frequency::reduce(3, 5);
  CHECK(odd.p0 == 3);
  CHECK(odd.q0 == 5);
  CHECK(odd.parity == ParityCase::odd_numerator);
  CHECK(odd.p == 3);
  CHECK(odd.q == 10);

  const Frequency red = Frequency::reduce(4, 6);
  CHECK(red.p0 == 2);
  CHECK(red.q0 == 3);
  CHECK(red.p == 1);
  CHECK(red.q == 3);
  CHECK(red.reduced_from(4, 6));
  CHECK(!red.reduced_from(2, 3));

  const Frequency wrapped = Frequency::reduce(7, 3);
  CHECK(wrapped.p0 == 1);
  CHECK(wrapped.q0 == 3);

  const Frequency integer_flux = Frequency::reduce(6, 3);
  CHECK(integer_flux.p0 == 1);
  CHECK(integer_flux.q0 == 1);
  CHECK(integer_flux.q == 2);

  CHECK_THROWS_AS(Frequency::reduce(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(Frequency::reduce(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(Frequency::reduce(-1, 3), std::invalid_argument);
}

TEST_CASE("sampling_angle_reduces_slope_before_adding_offset") {
  const Turns t = angle_mod1(3, 2, 5, Turns::of_fraction(1, 10));
  CHECK(t == Turns::of_fraction(3, 10));

  const Turns neg = angle_mod1(-1, 1, 3, Turns::of_fraction(0, 1));
  CHECK(neg == Turns::of_fraction(2, 3));

  // Huge site indices stay exact through the 128-bit slope product.
  const Turns far = angle_mod1(4000000000000005, 1, 7, Turns::of_fraction(0, 1));
  const Turns near = angle_mod1(4000000000000005 % 7, 1, 7, Turns::of_fraction(0, 1));
  CHECK(far == near);

  // Inexact offsets survive but drop exactness.
  const Turns mixed = angle_mod1(2, 1, 4, Turns::of_real(0.1));
  CHECK(!mixed.exact());
  CHECK(mixed.value() == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("gcd_helper_matches_stdlib") {
  CHECK(gcd64(12, 18) == 6);
  CHECK(gcd64(7, 0) == 7);
  CHECK(gcd64(1, 1) == 1);
}
