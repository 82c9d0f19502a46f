#include "amo/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "amo/discriminant.hpp"
#include "amo/kernels.hpp"

namespace amo {

namespace {

// Blocks up to this size use the dense rotation solver, which stays accurate
// to a few ulp even at exactly degenerate pairs.  Beyond it the O(n^3) dense
// cost outweighs the determinant bisection's ~1e-9 splitting of double roots.
constexpr int kRotationSizeLimit = 768;

// ---- cyclic Jacobi ----------------------------------------------------------

void rotate_pair(std::vector<double>& a, int n, int p, int q) {
  const double apq = a[(size_t)p * n + q];
  if (apq == 0.0) return;
  const double app = a[(size_t)p * n + p];
  const double aqq = a[(size_t)q * n + q];
  const double theta = (aqq - app) / (2.0 * apq);
  double t;
  if (std::fabs(theta) > 1e150) {
    t = 1.0 / (2.0 * theta);  // tan would underflow through theta^2
  } else {
    t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  a[(size_t)p * n + p] = app - t * apq;
  a[(size_t)q * n + q] = aqq + t * apq;
  a[(size_t)p * n + q] = 0.0;
  a[(size_t)q * n + p] = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a[(size_t)k * n + p];
    const double akq = a[(size_t)k * n + q];
    a[(size_t)k * n + p] = c * akp - s * akq;
    a[(size_t)p * n + k] = a[(size_t)k * n + p];
    a[(size_t)k * n + q] = s * akp + c * akq;
    a[(size_t)q * n + k] = a[(size_t)k * n + q];
  }
}

double offdiag_norm_sq(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = a[(size_t)i * n + j];
      s += v * v;
    }
  }
  return s;
}

}  // namespace

std::vector<double> dense_jacobi_eigs(std::vector<double> a, int n) {
  if (n <= 0 || (int)a.size() != n * n) {
    throw std::invalid_argument("dense_jacobi_eigs: bad dimensions");
  }
  double norm_sq = 0.0;
  for (double v : a) norm_sq += v * v;
  if (norm_sq > 0.0) {
    for (int sweep = 0; sweep < 60; ++sweep) {
      if (offdiag_norm_sq(a, n) <= 1e-28 * norm_sq) break;
      for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) rotate_pair(a, n, p, q);
      }
    }
  }
  std::vector<double> eigs((size_t)n);
  for (int i = 0; i < n; ++i) eigs[(size_t)i] = a[(size_t)i * n + i];
  std::sort(eigs.begin(), eigs.end(), std::greater<double>());
  return eigs;
}

// ---- bisection on inertia counts ----------------------------------------------

namespace {

struct BisectInput {
  const double* diag;
  const double* off;
  int n;
  double corner;  // signed real corner in the kernel convention
};

void count_batch(const BisectInput& in, const double* shifts, int count, int* out) {
  kernels::active_backend().inertia_counts(in.diag, in.off, in.n, in.corner,
                                           shifts, count, out);
}

// Gershgorin-style enclosure of the whole spectrum, slightly widened.
void spectrum_enclosure(const PeriodicJacobi& m, double corner, double* lo, double* hi) {
  const int n = m.size();
  double l = HUGE_VAL, h = -HUGE_VAL;
  for (int i = 0; i < n; ++i) {
    double r = std::fabs(corner) * ((n <= 2) ? 2.0 : ((i == 0 || i == n - 1) ? 1.0 : 0.0));
    if (i > 0 && n >= 2) r += std::fabs(m.offdiag[(size_t)i - 1]);
    if (i + 1 < n) r += std::fabs(m.offdiag[(size_t)i]);
    l = std::min(l, m.diag[(size_t)i] - r);
    h = std::max(h, m.diag[(size_t)i] + r);
  }
  const double pad = 1e-8 * std::max(1.0, std::max(std::fabs(l), std::fabs(h)));
  *lo = l - pad;
  *hi = h + pad;
}

struct Segment {
  double lo, hi;
  int cnt_lo, cnt_hi;  // eigenvalues below lo / below hi
};

std::vector<double> bisect_eigs(const PeriodicJacobi& m) {
  const int n = m.size();
  const double corner = m.corner * m.corner_sign();
  BisectInput in{m.diag.data(), m.offdiag.data(), n, corner};
  double lo, hi;
  spectrum_enclosure(m, corner, &lo, &hi);
  const double tol = 1e-13 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));

  std::vector<double> values((size_t)n, 0.0);
  std::deque<Segment> queue;
  queue.push_back({lo, hi, 0, n});
  double mids[4];
  int counts[4];
  Segment batch[4];
  while (!queue.empty()) {
    int b = 0;
    while (b < 4 && !queue.empty()) {
      batch[b] = queue.front();
      queue.pop_front();
      mids[b] = 0.5 * (batch[b].lo + batch[b].hi);
      ++b;
    }
    count_batch(in, mids, b, counts);
    for (int i = 0; i < b; ++i) {
      // Counting slop near-degenerate shifts can push a count outside the
      // bracket; clip so splits stay consistent.
      const int c = std::clamp(counts[i], batch[i].cnt_lo, batch[i].cnt_hi);
      const Segment lower{batch[i].lo, mids[i], batch[i].cnt_lo, c};
      const Segment upper{mids[i], batch[i].hi, c, batch[i].cnt_hi};
      for (const Segment& s : {lower, upper}) {
        if (s.cnt_hi == s.cnt_lo) continue;
        if (s.hi - s.lo <= tol) {
          const double v = 0.5 * (s.lo + s.hi);
          for (int j = s.cnt_lo; j < s.cnt_hi; ++j) values[(size_t)j] = v;
        } else {
          queue.push_back(s);
        }
      }
    }
  }
  std::reverse(values.begin(), values.end());  // decreasing
  return values;
}

// Shared repair pass for both determinant-sign engines.  Near a numerically
// double eigenvalue the determinant is quadratically flat, so its sign (and
// with it every inertia count) is rounding noise inside a window of width
// about sqrt(eps) * scale, and the two computed copies can land anywhere in
// that window.  The energy derivative of the determinant still crosses zero
// transversally at the pair's center; its simple root places both copies to
// full precision.  The eligibility width has to sit above the widest noise
// scatter seen around a true double (1.3e-8, from a two-site block whose
// determinant terms cancel to a perfect square) yet below the narrowest
// splitting worth preserving; genuine pairs closer than this are reported as
// their midpoint, which is all the determinant sign can support anyway.
void collapse_unresolved_pairs(const PeriodicJacobi& m, std::vector<double>& v) {
  const int n = (int)v.size();
  if (n < 2) return;
  const double scale = std::max(1.0, std::max(std::fabs(v.front()), std::fabs(v.back())));
  const double width = 1.5e-8;      // spectra stay within [-4.2, 4.2], so absolute
  const double cap = 2.5e-8;        // sanity bound on how far the root may sit
  const double ext = 4e-8 * scale;  // bracket margin beyond the pair
  const double dtol = 1e-15 * scale;
  for (int i = 0; i + 1 < n; ++i) {
    const double hi = v[(size_t)i], lo = v[(size_t)i + 1];  // decreasing order
    if (hi - lo > width) continue;
    // Neighbouring eigenvalues drag derivative roots of their own toward the
    // bracket; keeping them several margins away leaves exactly one inside.
    const double room_up = (i > 0) ? v[(size_t)i - 1] - hi : HUGE_VAL;
    const double room_dn = (i + 2 < n) ? lo - v[(size_t)i + 2] : HUGE_VAL;
    if (room_up <= 3.0 * ext || room_dn <= 3.0 * ext) continue;
    const double b = hi + ext;
    const double a = lo - ext;
    const int ga = det_eval_with_slope(m, a).slope.sign();
    const int gb = det_eval_with_slope(m, b).slope.sign();
    if (ga == 0 || gb == 0 || ga == gb) continue;  // no lone extremum bracketed
    double ra = a, rb = b;
    while (rb - ra > dtol) {
      const double mid = 0.5 * (ra + rb);
      const int gm = det_eval_with_slope(m, mid).slope.sign();
      if (gm == 0) {
        ra = rb = mid;
        break;
      }
      if (gm == ga) {
        ra = mid;
      } else {
        rb = mid;
      }
    }
    const double r = 0.5 * (ra + rb);
    // A root further from the pair than any noise scatter marks a genuinely
    // separate extremum; keep the plain bisection values in that case.
    if (std::max(std::fabs(r - hi), std::fabs(r - lo)) > cap + (hi - lo)) continue;
    v[(size_t)i] = r;
    v[(size_t)i + 1] = r;
    ++i;  // the pair is settled; do not re-pair its lower half
  }
}

}  // namespace

EigenList symmetric_eigs(const PeriodicJacobi& m, EigenMethod method) {
  if (!m.real_symmetric()) {
    throw std::domain_error("symmetric_eigs: block with corner phase " +
                            m.corner_phase.str() + " is not real symmetric");
  }
  if (method == EigenMethod::automatic) {
    method = m.size() <= kRotationSizeLimit ? EigenMethod::rotation
                                            : EigenMethod::bisection;
  }
  EigenList out;
  if (method == EigenMethod::rotation) {
    out.values = dense_jacobi_eigs(m.dense_symmetric(), m.size());
  } else {
    out.values = bisect_eigs(m);
    collapse_unresolved_pairs(m, out.values);
  }
  return out;
}

// ---- determinant-root oracle ----------------------------------------------------

EigenList eigs_by_determinant(const PeriodicJacobi& m) {
  if (!m.real_symmetric()) {
    throw std::domain_error("eigs_by_determinant: block is not real symmetric");
  }
  const int n = m.size();
  const double corner = m.corner * m.corner_sign();
  BisectInput in{m.diag.data(), m.offdiag.data(), n, corner};
  double lo, hi;
  spectrum_enclosure(m, corner, &lo, &hi);
  const double unit_tol = 1e-9 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));

  // Stage 1: isolate eigenvalues into unit brackets (or tiny clusters).
  std::vector<double> values((size_t)n, 0.0);
  std::vector<Segment> units;
  std::deque<Segment> queue;
  queue.push_back({lo, hi, 0, n});
  double mids[4];
  int counts[4];
  Segment batch[4];
  while (!queue.empty()) {
    int b = 0;
    while (b < 4 && !queue.empty()) {
      batch[b] = queue.front();
      queue.pop_front();
      mids[b] = 0.5 * (batch[b].lo + batch[b].hi);
      ++b;
    }
    count_batch(in, mids, b, counts);
    for (int i = 0; i < b; ++i) {
      const int c = std::clamp(counts[i], batch[i].cnt_lo, batch[i].cnt_hi);
      const Segment lower{batch[i].lo, mids[i], batch[i].cnt_lo, c};
      const Segment upper{mids[i], batch[i].hi, c, batch[i].cnt_hi};
      for (const Segment& s : {lower, upper}) {
        if (s.cnt_hi == s.cnt_lo) continue;
        if (s.cnt_hi - s.cnt_lo == 1 || s.hi - s.lo <= unit_tol) {
          units.push_back(s);
        } else {
          queue.push_back(s);
        }
      }
    }
  }

  // Stage 2: polish each unit bracket by bisecting on the determinant sign.
  for (const Segment& s : units) {
    if (s.cnt_hi - s.cnt_lo != 1) {  // unresolved cluster: emit midpoint copies
      const double v = 0.5 * (s.lo + s.hi);
      for (int j = s.cnt_lo; j < s.cnt_hi; ++j) values[(size_t)j] = v;
      continue;
    }
    double a = s.lo, b2 = s.hi;
    const double dtol = 1e-14 * std::max(1.0, std::max(std::fabs(a), std::fabs(b2)));
    // det(M - E) changes sign across a simple eigenvalue.
    const int sign_a = det_eval(m, a).sign();
    const int sign_b = det_eval(m, b2).sign();
    if (sign_a == 0 || sign_b == 0 || sign_a == sign_b) {
      // A zero endpoint determinant can belong to a neighbouring eigenvalue
      // (the counts, not the determinant root, identify this slot), and equal
      // signs mean counting slop at the ends; refine by counts in both cases.
      while (b2 - a > dtol) {
        const double mid = 0.5 * (a + b2);
        int cnt;
        count_batch(in, &mid, 1, &cnt);
        if (cnt > s.cnt_lo) {
          b2 = mid;
        } else {
          a = mid;
        }
      }
      values[(size_t)s.cnt_lo] = 0.5 * (a + b2);
      continue;
    }
    for (int it = 0; it < 200 && b2 - a > dtol; ++it) {
      const double mid = 0.5 * (a + b2);
      const int sm = det_eval(m, mid).sign();
      if (sm == 0) {
        a = b2 = mid;
        break;
      }
      if (sm == sign_a) {
        a = mid;
      } else {
        b2 = mid;
      }
    }
    values[(size_t)s.cnt_lo] = 0.5 * (a + b2);
  }
  std::reverse(values.begin(), values.end());
  collapse_unresolved_pairs(m, values);
  EigenList out;
  out.values = std::move(values);
  return out;
}

// ---- corner perturbation ---------------------------------------------------------

EigenList corner_perturbation_eigs(const PeriodicJacobi& before,
                                   const PeriodicJacobi& after) {
  if (before.size() != after.size()) {
    throw std::invalid_argument("corner_perturbation_eigs: size mismatch");
  }
  const int n = before.size();
  if (before.diag != after.diag || before.offdiag != after.offdiag ||
      before.corner != after.corner) {
    throw std::invalid_argument(
        "corner_perturbation_eigs: blocks must differ only in corner phase");
  }
  const double d = after.corner * after.corner_sign() -
                   before.corner * before.corner_sign();
  EigenList out;
  out.values.assign((size_t)n, 0.0);
  if (n == 1) {
    out.values[0] = 2.0 * d;
    return out;
  }
  out.values.front() = std::fabs(d);
  out.values.back() = -std::fabs(d);
  return out;
}

// ---- eigenvalue sum inequalities ---------------------------------------------------

ShiftMargins eigenvalue_shift_margins(const EigenList& sum_ab, const EigenList& a,
                                      const EigenList& b, std::span<const int> indices) {
  const int n = a.size();
  if (sum_ab.size() != n || b.size() != n) {
    throw std::invalid_argument("eigenvalue_shift_margins: list size mismatch");
  }
  int prev = 0;
  double shift_sum = 0.0;
  for (int idx : indices) {
    if (idx <= prev || idx > n) {
      throw std::invalid_argument("eigenvalue_shift_margins: indices must be strictly increasing in [1, n]");
    }
    prev = idx;
    shift_sum += sum_ab.values[(size_t)idx - 1] - a.values[(size_t)idx - 1];
  }
  const int m = (int)indices.size();
  double top = 0.0, bottom = 0.0;
  for (int j = 0; j < m; ++j) {
    top += b.values[(size_t)j];
    bottom += b.values[(size_t)(n - m + j)];
  }
  ShiftMargins mg;
  mg.upper = top - shift_sum;
  mg.lower = shift_sum - bottom;
  return mg;
}

}  // namespace amo
