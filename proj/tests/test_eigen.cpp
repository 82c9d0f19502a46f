// Eigenvalue engines: Jacobi rotations, inertia bisection, the determinant
// oracle, the closed-form corner perturbation spectrum, and the extremal
// eigenvalue-sum margins.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "amo/eigen.hpp"
#include "doctest.h"

using namespace amo;

namespace {

std::vector<double> random_symmetric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> du(-2.0, 2.0);
  std::vector<double> a((size_t)n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = du(rng);
      a[(size_t)i * n + j] = v;
      a[(size_t)j * n + i] = v;
    }
  }
  return a;
}

void check_lists_close(const std::vector<double>& a, const std::vector<double>& b,
                       double tol) {
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(tol).scale(1.0));
  }
}

}  // namespace

// ---- rotation engine ----------------------------------------------------------

TEST_CASE("jacobi_rotations_solve_small_matrices_exactly") {
  check_lists_close(dense_jacobi_eigs({2.0, 1.0, 1.0, 2.0}, 2), {3.0, 1.0}, 1e-14);
  check_lists_close(dense_jacobi_eigs({0.0, 2.0, 2.0, 0.0}, 2), {2.0, -2.0}, 1e-14);
  check_lists_close(dense_jacobi_eigs({1.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 2.0}, 3),
                    {3.0, 2.0, 1.0}, 1e-14);
  check_lists_close(dense_jacobi_eigs({5.0}, 1), {5.0}, 1e-15);
  CHECK_THROWS_AS((void)dense_jacobi_eigs({1.0, 2.0}, 2), std::invalid_argument);
}

TEST_CASE("jacobi_rotations_preserve_trace_and_frobenius_norm") {
  std::mt19937_64 rng(314159);
  for (int n : {3, 6, 11, 20}) {
    const std::vector<double> a = random_symmetric(n, rng);
    double trace = 0.0, frob = 0.0;
    for (int i = 0; i < n; ++i) trace += a[(size_t)i * n + i];
    for (double v : a) frob += v * v;
    const std::vector<double> eigs = dense_jacobi_eigs(a, n);
    double sum = 0.0, sumsq = 0.0;
    for (double v : eigs) {
      sum += v;
      sumsq += v * v;
    }
    CHECK(sum == doctest::Approx(trace).epsilon(1e-11).scale(1.0));
    CHECK(sumsq == doctest::Approx(frob).epsilon(1e-11).scale(1.0));
    CHECK(std::is_sorted(eigs.begin(), eigs.end(), std::greater<double>()));
  }
}

// ---- engines against each other ---------------------------------------------------

TEST_CASE("rotation_and_bisection_agree_on_floquet_blocks") {
  // Even-period sine blocks at the edges of the folded momentum zone carry
  // exactly double eigenvalues; the bisection engine recovers those from the
  // root of the determinant's energy derivative, so one tight tolerance holds
  // across simple and double eigenvalues alike.
  for (auto [p0, q0] : {std::pair<int, int>{1, 7}, {2, 9}, {5, 12}}) {
    const Frequency f = Frequency::reduce(p0, q0);
    for (const Turns& k : {Turns::of_fraction(0, 1), Turns::of_fraction(1, 2 * f.q)}) {
      const PeriodicJacobi m = build_chiral(f, Turns::of_fraction(1, 4 * f.q), k);
      const EigenList rot = symmetric_eigs(m, EigenMethod::rotation);
      const EigenList bis = symmetric_eigs(m, EigenMethod::bisection);
      check_lists_close(rot.values, bis.values, 1e-11);
    }
    const PeriodicJacobi s =
        build_standard(f, Turns::of_fraction(0, 1), Turns::of_fraction(0, 1));
    check_lists_close(symmetric_eigs(s, EigenMethod::rotation).values,
                      symmetric_eigs(s, EigenMethod::bisection).values, 1e-11);
  }
}

TEST_CASE("determinant_oracle_agrees_with_the_rotation_engine") {
  for (auto [p0, q0] : {std::pair<int, int>{1, 6}, {3, 8}, {2, 11}}) {
    const Frequency f = Frequency::reduce(p0, q0);
    const PeriodicJacobi m =
        build_standard(f, Turns::of_fraction(1, 2 * f.q0), Turns::of_fraction(1, 2 * f.q0));
    const EigenList rot = symmetric_eigs(m, EigenMethod::rotation);
    const EigenList det = eigs_by_determinant(m);
    check_lists_close(rot.values, det.values, 1e-11);
  }
}

TEST_CASE("bisection_emits_degenerate_eigenvalues_with_multiplicity") {
  // Chiral block of period 4 at theta = 0 splits into two 2 x 2 pieces with
  // coupling +-2: the spectrum is {2, 2, -2, -2}.
  const Frequency f = Frequency::reduce(1, 2);
  const PeriodicJacobi m =
      build_chiral(f, Turns::of_fraction(0, 1), Turns::of_fraction(0, 1));
  const EigenList bis = symmetric_eigs(m, EigenMethod::bisection);
  check_lists_close(bis.values, {2.0, 2.0, -2.0, -2.0}, 1e-11);
  const EigenList rot = symmetric_eigs(m, EigenMethod::rotation);
  check_lists_close(rot.values, {2.0, 2.0, -2.0, -2.0}, 1e-11);
}

TEST_CASE("non_symmetric_blocks_are_rejected") {
  const Frequency f = Frequency::reduce(1, 5);
  const PeriodicJacobi skew =
      build_standard(f, Turns::of_fraction(0, 1), Turns::of_fraction(1, 7));
  CHECK_THROWS_AS((void)symmetric_eigs(skew), std::domain_error);
  CHECK_THROWS_AS((void)eigs_by_determinant(skew), std::domain_error);
}

// ---- corner perturbation -------------------------------------------------------------

TEST_CASE("corner_flip_spectrum_matches_dense_difference") {
  const Frequency f = Frequency::reduce(1, 5);
  const Turns theta = Turns::of_fraction(1, 20);
  const PeriodicJacobi before = build_chiral(f, theta, Turns::of_fraction(0, 1));
  const PeriodicJacobi after = build_chiral(f, theta, Turns::of_fraction(1, 2 * f.q));
  const EigenList closed = corner_perturbation_eigs(before, after);

  std::vector<double> diff = after.dense_symmetric();
  const std::vector<double> base = before.dense_symmetric();
  for (size_t i = 0; i < diff.size(); ++i) diff[i] -= base[i];
  const std::vector<double> dense = dense_jacobi_eigs(diff, before.size());
  check_lists_close(closed.values, dense, 1e-12);
  CHECK(closed.values.front() >= 0.0);
  CHECK(closed.values.back() == -closed.values.front());
}

TEST_CASE("corner_flip_requires_matching_blocks") {
  const Frequency f = Frequency::reduce(1, 5);
  const PeriodicJacobi a =
      build_chiral(f, Turns::of_fraction(1, 20), Turns::of_fraction(0, 1));
  const PeriodicJacobi b =
      build_chiral(f, Turns::of_fraction(3, 20), Turns::of_fraction(1, 2 * f.q));
  CHECK_THROWS_AS((void)corner_perturbation_eigs(a, b), std::invalid_argument);
}

// ---- eigenvalue sum margins ------------------------------------------------------------

TEST_CASE("shift_margins_are_nonnegative_for_random_perturbations") {
  std::mt19937_64 rng(271828);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6;
    const std::vector<double> a = random_symmetric(n, rng);
    const std::vector<double> b = random_symmetric(n, rng);
    std::vector<double> ab(a);
    for (size_t i = 0; i < ab.size(); ++i) ab[i] += b[i];

    EigenList ea{dense_jacobi_eigs(a, n)};
    EigenList eb{dense_jacobi_eigs(b, n)};
    EigenList eab{dense_jacobi_eigs(ab, n)};

    const std::vector<std::vector<int>> index_sets = {
        {1}, {1, 3, 5}, {2, 4}, {1, 2, 3, 4, 5, 6}, {6}};
    for (const auto& idx : index_sets) {
      const ShiftMargins mg = eigenvalue_shift_margins(eab, ea, eb, idx);
      CHECK(mg.upper >= -1e-10);
      CHECK(mg.lower >= -1e-10);
      if (idx.size() == (size_t)n) {
        // Full index set: both sides telescope to the trace of B.
        CHECK(mg.upper == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
        CHECK(mg.lower == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("shift_margins_validate_their_index_sets") {
  EigenList a{{3.0, 1.0}};
  EigenList b{{1.0, -1.0}};
  EigenList ab{{4.0, 0.0}};
  const std::vector<int> decreasing = {2, 1};
  CHECK_THROWS_AS((void)eigenvalue_shift_margins(ab, a, b, decreasing),
                  std::invalid_argument);
  const std::vector<int> out_of_range = {1, 3};
  CHECK_THROWS_AS((void)eigenvalue_shift_margins(ab, a, b, out_of_range),
                  std::invalid_argument);
  EigenList short_b{{1.0}};
  const std::vector<int> ok = {1};
  CHECK_THROWS_AS((void)eigenvalue_shift_margins(ab, a, short_b, ok),
                  std::invalid_argument);
}
