// Spectra of the Harper operator at rational frequency: band edges, Lebesgue
// measure, the per-theta and global measure bounds, and the q0 * measure
// ratio whose limit is 32*Catalan/pi.
//
// Band edges come from two real-symmetric Floquet blocks per representation:
// the extreme boundary phases (0 and 1/2 turn).  The sorted union of their
// eigenvalues, paired consecutively, gives the band intervals.  Measures are
// always taken over the unmerged pairing, where the alternating eigenvalue
// sum is exact; merging only cleans up the reported intervals.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amo/eigen.hpp"
#include "amo/rational.hpp"

namespace amo {

struct Band {
  double lo = 0.0, hi = 0.0;

  double length() const { return hi - lo; }
};

struct BandSet {
  std::vector<Band> bands;  // ascending, non-overlapping (touching allowed)

  double measure() const;
  // Joins bands whose gap is at most tol (reporting view; absorbs the
  // touching points of even denominators).
  BandSet merged(double tol = 1e-9) const;
  std::vector<double> edges() const;  // lo0, hi0, lo1, hi1, ...
};

// Pair a sorted even-length edge list into bands.
BandSet bands_from_edges(std::vector<double> edges);

// Band edges in the standard representation: eigenvalues of the blocks at
// (theta, k) = (0, 0) and (1/(2 q0), 1/(2 q0)), where the boundary term of
// the determinant reaches its two extremes.  q0 bands.
BandSet band_edges_standard(const Frequency& f, EigenMethod method = EigenMethod::automatic);

// Spectrum of the chiral operator at fixed theta: union of the eigenvalues
// of the blocks at boundary phases 0 and 1/2.  q bands (possibly degenerate
// or touching).
BandSet theta_spectrum(const Frequency& f, const Turns& theta,
                       EigenMethod method = EigenMethod::automatic);

// Chiral band edges: theta_spectrum at the maximizing theta, 1/(4q) for odd
// q and 1/(2q) for even q.
BandSet band_edges_chiral(const Frequency& f, EigenMethod method = EigenMethod::automatic);
Turns chiral_max_theta(const Frequency& f);

// 4 * min_n |b_n(theta)|: upper bound for the measure of the chiral spectrum
// at this theta, from the corner perturbation with the best window.
double per_theta_upper_bound(const Frequency& f, const Turns& theta);

double measure_lower_bound(std::int64_t q0);  // 2 (sqrt(5) + 1) / q0
double measure_upper_bound(std::int64_t q0);  // 4 pi / q0
// 32 * Catalan / pi, the limit of q0 * measure; Catalan summed by pairs to
// below 1e-14.
double thouless_constant();

// Grid check of two facts that hold on theta in [0, theta_max]: bands at
// smaller theta nest inside those at larger theta (band by band), and the
// measure never exceeds the per-theta bound.  worst is the largest violation
// in energy units (0 when clean).
struct NestingCheck {
  bool nested = true;
  bool bounded = true;
  double worst = 0.0;
  long grid = 0;
};
NestingCheck nesting_check(const Frequency& f, int grid_points = 11,
                           EigenMethod method = EigenMethod::automatic);

// Structure of the eigenvalue shifts between the two boundary blocks at fixed
// theta: strictly alternating sign in the index (odd chiral period), and the
// alternating sum reproducing the measure of the theta-spectrum.
struct ShiftPattern {
  bool alternates = true;
  bool matches_measure = true;
  int orientation = 0;  // sign of the first shift (odd period only)
  double deviation = 0.0;
};
ShiftPattern shift_pattern_check(const Frequency& f, const Turns& theta,
                                 EigenMethod method = EigenMethod::automatic);

struct SpectrumReport {
  Frequency freq;
  BandSet bands;         // merged view of the requested representation
  double measure = 0.0;  // unmerged standard-representation measure
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double thouless_ratio = 0.0;  // q0 * measure
  std::vector<std::pair<std::string, bool>> flags;

  bool all_flags_hold() const;
};

// Full single-frequency report with self-check flags:
//   bounds_hold           strict lower < measure < upper
//   representations_agree merged standard vs chiral edges within 1e-8
//   nesting_holds         11-point theta grid gives nested bands
//   per_theta_bound_holds grid measures stay within the per-theta bound
//   shift_pattern_holds   alternating eigenvalue shift structure at max theta
SpectrumReport bounds_report(const Frequency& f);

struct ThoulessRow {
  std::int64_t q0 = 0;
  double measure = 0.0;
  double ratio = 0.0;
};

// q0 * measure along a list of denominators for fixed numerator, using the
// bisection eigensolver (the fast path for long sweeps).  Non-coprime
// denominators are skipped; a note per skip is appended to *warnings when
// given.
std::vector<ThoulessRow> thouless_sweep(std::int64_t p0, std::span<const std::int64_t> q0_list,
                                        std::vector<std::string>* warnings = nullptr);

}  // namespace amo
