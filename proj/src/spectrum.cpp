#include "amo/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amo {

// ---- band sets ---------------------------------------------------------------

double BandSet::measure() const {
  double s = 0.0;
  for (const Band& b : bands) s += b.length();
  return s;
}

BandSet BandSet::merged(double tol) const {
  BandSet out;
  for (const Band& b : bands) {
    if (!out.bands.empty() && b.lo - out.bands.back().hi <= tol) {
      out.bands.back().hi = std::max(out.bands.back().hi, b.hi);
    } else {
      out.bands.push_back(b);
    }
  }
  return out;
}

std::vector<double> BandSet::edges() const {
  std::vector<double> e;
  e.reserve(bands.size() * 2);
  for (const Band& b : bands) {
    e.push_back(b.lo);
    e.push_back(b.hi);
  }
  return e;
}

BandSet bands_from_edges(std::vector<double> edges) {
  if (edges.size() % 2 != 0) {
    throw std::invalid_argument("bands_from_edges: need an even number of edges");
  }
  std::sort(edges.begin(), edges.end());
  BandSet out;
  out.bands.reserve(edges.size() / 2);
  for (size_t i = 0; i + 1 < edges.size(); i += 2) {
    out.bands.push_back({edges[i], edges[i + 1]});
  }
  return out;
}

// ---- band edges --------------------------------------------------------------

namespace {

std::vector<double> union_of_eigs(const PeriodicJacobi& m0, const PeriodicJacobi& m1,
                                  EigenMethod method) {
  const EigenList a = symmetric_eigs(m0, method);
  const EigenList b = symmetric_eigs(m1, method);
  std::vector<double> edges;
  edges.reserve(a.values.size() + b.values.size());
  edges.insert(edges.end(), a.values.begin(), a.values.end());
  edges.insert(edges.end(), b.values.begin(), b.values.end());
  return edges;
}

}  // namespace

BandSet band_edges_standard(const Frequency& f, EigenMethod method) {
  // The boundary term 2(-1)^q0 (cos(2 pi q0 theta) + cos(2 pi q0 k)) of the
  // Floquet determinant is extremal at these two (theta, k) pairs, so their
  // eigenvalues are the band edges.
  const Turns zero;
  const Turns half_node = Turns::of_fraction(1, 2 * f.q0);
  const PeriodicJacobi m0 = build_standard(f, zero, zero);
  const PeriodicJacobi m1 = build_standard(f, half_node, half_node);
  return bands_from_edges(union_of_eigs(m0, m1, method));
}

BandSet theta_spectrum(const Frequency& f, const Turns& theta, EigenMethod method) {
  const Turns zero;
  const Turns k_half = Turns::of_fraction(1, 2 * f.q);  // corner phase 1/2
  const PeriodicJacobi m0 = build_chiral(f, theta, zero);
  const PeriodicJacobi m1 = build_chiral(f, theta, k_half);
  return bands_from_edges(union_of_eigs(m0, m1, method));
}

Turns chiral_max_theta(const Frequency& f) {
  // sin(2 pi q theta) peaks at 1/(4q); 1 - cos(2 pi q theta) peaks at 1/(2q).
  return (f.q % 2 != 0) ? Turns::of_fraction(1, 4 * f.q)
                        : Turns::of_fraction(1, 2 * f.q);
}

BandSet band_edges_chiral(const Frequency& f, EigenMethod method) {
  return theta_spectrum(f, chiral_max_theta(f), method);
}

double per_theta_upper_bound(const Frequency& f, const Turns& theta) {
  double m = HUGE_VAL;
  for (std::int64_t n = 0; n < f.q; ++n) {
    m = std::min(m, std::fabs(potential_b(angle_mod1(n, f.p, f.q, theta))));
  }
  return 4.0 * m;
}

// ---- constants ---------------------------------------------------------------

double measure_lower_bound(std::int64_t q0) {
  return 2.0 * (std::sqrt(5.0) + 1.0) / (double)q0;
}

double measure_upper_bound(std::int64_t q0) {
  return 4.0 * std::numbers::pi / (double)q0;
}

double thouless_constant() {
  static const double catalan = [] {
    // Catalan constant as sum of positive pair terms 1/(4k+1)^2 - 1/(4k+3)^2,
    // accumulated smallest-first; the tail beyond K pairs is under 1/(32 K^2).
    constexpr long kPairs = 5'000'000;  // tail < 1.3e-15
    double acc = 0.0;
    for (long k = kPairs - 1; k >= 0; --k) {
      const double a = 4.0 * (double)k + 1.0;
      const double b = 4.0 * (double)k + 3.0;
      acc += 1.0 / (a * a) - 1.0 / (b * b);
    }
    return acc;
  }();
  return 32.0 * catalan / std::numbers::pi;
}

// ---- checks shared by reports and verify suites --------------------------------

NestingCheck nesting_check(const Frequency& f, int grid_points, EigenMethod method) {
  NestingCheck out;
  out.grid = grid_points;
  const Turns theta_max = chiral_max_theta(f);
  const std::int64_t den = theta_max.den();
  BandSet prev;
  for (int j = 0; j < grid_points; ++j) {
    const Turns theta = Turns::of_fraction(j, (std::int64_t)(grid_points - 1) * den);
    const BandSet s = theta_spectrum(f, theta, method);
    const double bound = per_theta_upper_bound(f, theta);
    const double meas = s.measure();
    if (meas > bound + 1e-9) {
      out.bounded = false;
      out.worst = std::max(out.worst, meas - bound);
    }
    if (j > 0) {
      for (size_t i = 0; i < s.bands.size(); ++i) {
        const double lo_excess = s.bands[i].lo - prev.bands[i].lo;
        const double hi_excess = prev.bands[i].hi - s.bands[i].hi;
        if (lo_excess > 1e-9 || hi_excess > 1e-9) {
          out.nested = false;
          out.worst = std::max(out.worst, std::max(lo_excess, hi_excess));
        }
      }
    }
    prev = s;
  }
  return out;
}

ShiftPattern shift_pattern_check(const Frequency& f, const Turns& theta,
                                 EigenMethod method) {
  ShiftPattern out;
  const Turns zero;
  const Turns k_half = Turns::of_fraction(1, 2 * f.q);
  const EigenList lam = symmetric_eigs(build_chiral(f, theta, zero), method);
  const EigenList hat = symmetric_eigs(build_chiral(f, theta, k_half), method);
  const std::int64_t q = f.q;

  double alt = 0.0;  // sum of (-1)^(q-j) (hat_j - lam_j), j = 1..q
  for (std::int64_t j = 1; j <= q; ++j) {
    const double d = hat.values[(size_t)j - 1] - lam.values[(size_t)j - 1];
    alt += (((q - j) % 2 == 0) ? 1.0 : -1.0) * d;
  }
  std::vector<double> edges = lam.values;
  edges.insert(edges.end(), hat.values.begin(), hat.values.end());
  const double meas = bands_from_edges(std::move(edges)).measure();
  out.deviation = std::fabs(std::fabs(alt) - meas);
  out.matches_measure = out.deviation <= 1e-8 * std::max(1.0, meas);

  if (q % 2 != 0) {
    // Strict alternation of hat_j - lam_j in j; which sign starts depends on
    // which boundary block carries the band maxima for this q.
    int want = 0;
    for (std::int64_t j = 1; j <= q; ++j) {
      const double d = hat.values[(size_t)j - 1] - lam.values[(size_t)j - 1];
      const int s = (d > 0.0) ? 1 : (d < 0.0 ? -1 : 0);
      if (s == 0) {
        out.alternates = false;
        break;
      }
      if (j == 1) {
        want = s;
        out.orientation = s;
      } else if (s != want) {
        out.alternates = false;
        break;
      }
      want = -want;
    }
  }
  return out;
}

// ---- reports -------------------------------------------------------------------

bool SpectrumReport::all_flags_hold() const {
  for (const auto& [name, ok] : flags) {
    if (!ok) return false;
  }
  return true;
}

SpectrumReport bounds_report(const Frequency& f) {
  SpectrumReport r;
  r.freq = f;
  const BandSet std_bands = band_edges_standard(f);
  r.measure = std_bands.measure();
  r.lower_bound = measure_lower_bound(f.q0);
  r.upper_bound = measure_upper_bound(f.q0);
  r.thouless_ratio = (double)f.q0 * r.measure;
  r.bands = std_bands.merged();

  const BandSet chi_merged = band_edges_chiral(f).merged();
  bool agree = chi_merged.bands.size() == r.bands.bands.size();
  if (agree) {
    const std::vector<double> a = r.bands.edges();
    const std::vector<double> b = chi_merged.edges();
    for (size_t i = 0; i < a.size(); ++i) {
      if (std::fabs(a[i] - b[i]) > 1e-8) {
        agree = false;
        break;
      }
    }
  }
  const NestingCheck nest = nesting_check(f, 11, EigenMethod::automatic);
  const ShiftPattern pat =
      shift_pattern_check(f, chiral_max_theta(f), EigenMethod::automatic);

  r.flags.emplace_back("bounds_hold",
                       r.lower_bound < r.measure && r.measure < r.upper_bound);
  r.flags.emplace_back("representations_agree", agree);
  r.flags.emplace_back("nesting_holds", nest.nested);
  r.flags.emplace_back("per_theta_bound_holds", nest.bounded);
  r.flags.emplace_back("shift_pattern_holds",
                       pat.alternates && pat.matches_measure);
  return r;
}

std::vector<ThoulessRow> thouless_sweep(std::int64_t p0, std::span<const std::int64_t> q0_list,
                                        std::vector<std::string>* warnings) {
  std::vector<ThoulessRow> rows;
  for (std::int64_t q0 : q0_list) {
    if (q0 < 1 || p0 < 1 || gcd64(p0 % q0 == 0 ? q0 : p0 % q0, q0) != 1) {
      if (warnings) {
        warnings->push_back("q0=" + std::to_string(q0) + ": not coprime with p0=" +
                            std::to_string(p0) + "; skipped");
      }
      continue;
    }
    const Frequency f = Frequency::reduce(p0, q0);
    ThoulessRow row;
    row.q0 = f.q0;
    row.measure = band_edges_standard(f).measure();
    row.ratio = (double)f.q0 * row.measure;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace amo
