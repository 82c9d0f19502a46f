#include "amo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "amo/discriminant.hpp"
#include "amo/eigen.hpp"
#include "amo/spectrum.hpp"

namespace amo {

namespace {

// One representative frequency for each chiral period: odd periods come from
// even numerators (2/q), even periods from odd ones (1/(q/2)).
Frequency frequency_with_period(std::int64_t q) {
  if (q < 2) throw std::invalid_argument("no frequency has chiral period below 2");
  return (q % 2 != 0) ? Frequency::reduce(2, q) : Frequency::reduce(1, q / 2);
}

std::vector<Frequency> coprime_pairs_upto(std::int64_t q0max) {
  std::vector<Frequency> fs;
  for (std::int64_t q0 = 1; q0 <= q0max; ++q0) {
    for (std::int64_t p0 = 1; p0 <= q0; ++p0) {
      if (gcd64(p0, q0) == 1) fs.push_back(Frequency::reduce(p0, q0));
    }
  }
  return fs;
}

void track(VerifyOutcome* out, double residual, double tol) {
  ++out->cases_run;
  out->worst_residual = std::max(out->worst_residual, residual);
  if (!(residual <= tol)) ++out->failures;
}

}  // namespace

// ---- boundary formulas ----------------------------------------------------------

VerifyOutcome verify_chambers(const VerifyOptions& opt) {
  VerifyOutcome out;
  out.suite = "chambers";
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> ue(-4.5, 4.5);

  int convention = 0;  // detected on the first odd period, then enforced
  for (std::int64_t q = 2; q <= opt.qmax; ++q) {
    const Frequency f = frequency_with_period(q);
    int sign = 0;
    if (q % 2 != 0) {
      const int detected = detect_chambers_sign(f);
      if (convention == 0) {
        convention = detected;
        out.detected_sign_convention = detected > 0 ? "+" : "-";
      }
      sign = convention;
    }
    std::vector<ChambersSample> samples;
    samples.reserve(100);
    for (int i = 0; i < 100; ++i) {
      const Turns theta = Turns::of_real(u01(rng));
      const Turns k = Turns::of_real(u01(rng));
      samples.push_back(chambers_probe(f, theta, k, ue(rng), sign));
    }
    double scale = 1.0;
    for (const ChambersSample& s : samples) scale = std::max(scale, s.magnitude);
    for (const ChambersSample& s : samples) track(&out, s.gap / scale, opt.tol);
  }

  // Classical invariance: the recovered discriminant must not depend on the
  // boundary angles.
  for (std::int64_t q0 = 1; q0 <= opt.qmax; ++q0) {
    std::vector<std::int64_t> nums = {1};
    if (q0 > 2) nums.push_back(q0 - 1);
    for (std::int64_t p0 : nums) {
      const Frequency f = Frequency::reduce(p0, q0);
      for (double energy : chebyshev_nodes(3, -4.2, 4.2)) {
        double vmin = HUGE_VAL, vmax = -HUGE_VAL;
        for (int i = 0; i < 50; ++i) {
          const Turns theta = Turns::of_real(u01(rng));
          const Turns k = Turns::of_real(u01(rng));
          const double v = standard_chambers_recover(f, theta, k, energy).to_double();
          vmin = std::min(vmin, v);
          vmax = std::max(vmax, v);
        }
        const double scale = std::max(1.0, std::max(std::fabs(vmin), std::fabs(vmax)));
        track(&out, (vmax - vmin) / scale, opt.tol);
      }
    }
  }
  return out;
}

// ---- coupling product ------------------------------------------------------------

VerifyOutcome verify_product(const VerifyOptions& opt) {
  VerifyOutcome out;
  out.suite = "product";
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (std::int64_t q = 2; q <= opt.qmax; ++q) {
    const Frequency f = frequency_with_period(q);
    for (int i = 0; i < 50; ++i) {
      // Sample between the vanishing nodes m/(2q): at the nodes themselves
      // both sides are 0 and the relative error is undefined.
      const std::int64_t cell = (std::int64_t)(rng() % (std::uint64_t)(2 * q));
      const Turns theta = Turns::of_real(((double)cell + u(rng)) / (double)(2 * q));
      const double direct = coupling_product_direct(f, theta).to_double();
      const double closed = coupling_product_closed_form(f, theta);
      track(&out, std::fabs(direct - closed) / std::fabs(closed), 1e-9);
    }
    // On the nodes theta = m/q one coupling vanishes exactly and so does the
    // closed form; exact zeros, not small numbers.
    for (int i = 0; i < 3; ++i) {
      const Turns theta = Turns::of_fraction((std::int64_t)(rng() % (std::uint64_t)q), q);
      const double direct = coupling_product_direct(f, theta).to_double();
      const double closed = coupling_product_closed_form(f, theta);
      track(&out, (direct == 0.0 && closed == 0.0) ? 0.0 : 1.0, 1e-9);
    }
  }
  return out;
}

// ---- discriminant relation ---------------------------------------------------------

VerifyOutcome verify_relation(const VerifyOptions& opt) {
  VerifyOutcome out;
  out.suite = "relation";
  for (const Frequency& f : coprime_pairs_upto(opt.qmax)) {
    const DeviationReport rep = discriminant_relation_check(f);
    track(&out, rep.max_deviation, 1e-7);
  }
  return out;
}

// ---- nesting and per-theta bound ----------------------------------------------------

VerifyOutcome verify_nesting(const VerifyOptions& opt) {
  VerifyOutcome out;
  out.suite = "nesting";
  for (const Frequency& f : coprime_pairs_upto(opt.qmax)) {
    const NestingCheck c = nesting_check(f, 11);
    track(&out, c.worst, 0.0);
  }
  return out;
}

// ---- global measure bounds -----------------------------------------------------------

VerifyOutcome verify_bounds(const VerifyOptions& opt) {
  VerifyOutcome out;
  out.suite = "bounds";
  {
    const double m1 = band_edges_standard(Frequency::reduce(1, 1)).measure();
    track(&out, std::fabs(m1 - 8.0), 1e-10);
    const double m2 = band_edges_standard(Frequency::reduce(1, 2)).measure();
    track(&out, std::fabs(m2 - 4.0 * std::sqrt(2.0)), 1e-10);
  }
  for (const Frequency& f : coprime_pairs_upto(opt.qmax)) {
    const double m = band_edges_standard(f).measure();
    const double lo = measure_lower_bound(f.q0) + 1e-9;
    const double hi = measure_upper_bound(f.q0) - 1e-9;
    track(&out, std::max(0.0, std::max(lo - m, m - hi)), 0.0);
  }
  return out;
}

// ---- eigenvalue shift machinery --------------------------------------------------------

VerifyOutcome verify_lidskii(const VerifyOptions& opt) {
  VerifyOutcome out;
  out.suite = "lidskii";
  for (std::int64_t q = 3; q <= opt.qmax; q += 2) {
    for (std::int64_t p0 = 2; p0 < q; p0 += 2) {
      if (gcd64(p0, q) != 1) continue;
      const Frequency f = Frequency::reduce(p0, q);
      for (int step = 1; step <= 5; ++step) {
        const Turns theta = Turns::of_fraction(step, 20 * q);  // (0, 1/(4q)]
        const ShiftPattern pat = shift_pattern_check(f, theta);
        track(&out, pat.alternates ? pat.deviation : 1.0, 1e-8);

        const Turns zero;
        const PeriodicJacobi m0 = build_chiral(f, theta, zero);
        const PeriodicJacobi m1 = build_chiral(f, theta, Turns::of_fraction(1, 2 * q));
        const EigenList lam = symmetric_eigs(m0);
        const EigenList hat = symmetric_eigs(m1);
        const EigenList pert = corner_perturbation_eigs(m0, m1);
        std::vector<int> odd, even;
        for (int j = 1; j <= (int)q; j += 2) odd.push_back(j);
        for (int j = 2; j <= (int)q; j += 2) even.push_back(j);
        for (const std::vector<int>& idx : {odd, even}) {
          const ShiftMargins mg = eigenvalue_shift_margins(hat, lam, pert, idx);
          track(&out, std::max(0.0, -std::min(mg.upper, mg.lower)), 1e-10);
        }
      }
    }
  }
  return out;
}

// ---- representation equivalence ----------------------------------------------------------

VerifyOutcome verify_representations(const VerifyOptions& opt) {
  VerifyOutcome out;
  out.suite = "representations";
  for (const Frequency& f : coprime_pairs_upto(opt.qmax)) {
    const BandSet std_b = band_edges_standard(f).merged();
    const BandSet chi_b = band_edges_chiral(f).merged();
    double worst;
    if (std_b.bands.size() != chi_b.bands.size()) {
      worst = HUGE_VAL;
    } else {
      worst = 0.0;
      const std::vector<double> a = std_b.edges();
      const std::vector<double> b = chi_b.edges();
      for (size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::fabs(a[i] - b[i]));
      }
    }
    track(&out, worst, opt.tol);
  }
  return out;
}

VerifyOutcome verify_solver_oracle(const VerifyOptions& opt) {
  VerifyOutcome out;
  out.suite = "solvers";
  const Turns zero;
  for (const Frequency& f : coprime_pairs_upto(opt.qmax)) {
    const Turns half_node = Turns::of_fraction(1, 2 * f.q0);
    for (const PeriodicJacobi& m : {build_standard(f, zero, zero),
                                    build_standard(f, half_node, half_node)}) {
      const EigenList rot = symmetric_eigs(m, EigenMethod::rotation);
      const EigenList det = eigs_by_determinant(m);
      double worst = 0.0;
      for (int i = 0; i < rot.size(); ++i) {
        worst = std::max(worst, std::fabs(rot.values[(size_t)i] - det.values[(size_t)i]));
      }
      track(&out, worst, opt.tol);
    }
  }
  return out;
}

// ---- driver ---------------------------------------------------------------------------------

std::vector<VerifyOutcome> run_verify_suites(const std::string& name,
                                             const VerifyOptions& opt) {
  std::vector<VerifyOutcome> outs;
  if (name == "all" || name == "chambers") outs.push_back(verify_chambers(opt));
  if (name == "all" || name == "product") outs.push_back(verify_product(opt));
  if (name == "all" || name == "relation") outs.push_back(verify_relation(opt));
  if (name == "all" || name == "nesting") outs.push_back(verify_nesting(opt));
  if (name == "all" || name == "bounds") outs.push_back(verify_bounds(opt));
  if (name == "all" || name == "lidskii") outs.push_back(verify_lidskii(opt));
  if (name == "all" || name == "equivalence") {
    outs.push_back(verify_representations(opt));
    outs.push_back(verify_solver_oracle(opt));
  }
  if (outs.empty()) throw std::invalid_argument("unknown verify suite: " + name);
  return outs;
}

}  // namespace amo
