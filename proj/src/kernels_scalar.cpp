// Scalar reference kernels.  Every arithmetic step here defines the exact
// sequence of IEEE operations the SIMD variants must reproduce.
#include "amo/kernels.hpp"

#include <cmath>
#include <vector>

#include "amo/scaled.hpp"

namespace amo::kernels {

namespace detail {

void det_minors_range(const double* diag, const double* offsq, int n,
                      const double* energies, int begin, int end,
                      double* mant_out, std::int64_t* exp_out) {
  constexpr double kBig = 0x1p500;
  constexpr double kSmall = 0x1p-500;
  for (int i = begin; i < end; ++i) {
    const double E = energies[i];
    double v2 = 0.0;        // minor two steps back
    double v1 = 1.0;        // previous minor
    double osq_prev = 0.0;  // squared coupling entering the current step
    std::int64_t e = 0;
    for (int j = 0; j < n; ++j) {
      const double t1 = (diag[j] - E) * v1;
      const double t2 = osq_prev * v2;
      const double v0 = t1 - t2;
      v2 = v1;
      v1 = v0;
      osq_prev = (j + 1 < n) ? offsq[j] : 0.0;
      double f = std::fabs(v1);
      const double f2 = std::fabs(v2);
      if (f2 > f) f = f2;
      if (f > kBig) {
        v1 *= 0x1p-512;
        v2 *= 0x1p-512;
        e += 512;
      } else if (f < kSmall && f > 0.0) {
        v1 *= 0x1p512;
        v2 *= 0x1p512;
        e -= 512;
      }
    }
    const ScaledValue s = ScaledValue::from_parts(v1, e);
    mant_out[i] = s.mant;
    exp_out[i] = s.exp2;
  }
}

void sturm_chain_range(const double* diag, const double* offsq, int n,
                       const double* shifts, int begin, int end,
                       double* mant_out, std::int64_t* exp_out,
                       int* changes_out, double* slast_out) {
  constexpr double kBig = 0x1p500;
  constexpr double kSmall = 0x1p-500;
  for (int i = begin; i < end; ++i) {
    const double x = shifts[i];
    double v2 = 0.0;
    double v1 = 1.0;
    double osq_prev = 0.0;
    double sprev = 1.0;
    std::int64_t e = 0;
    int changes = 0;
    bool dead = false;
    for (int j = 0; j < n; ++j) {
      if (osq_prev == 0.0 && v1 == 0.0) {
        v1 = sprev;  // split with a singular leading factor; restart the chain
        dead = true;
      }
      const double t1 = (diag[j] - x) * v1;
      const double t2 = osq_prev * v2;
      const double v0 = t1 - t2;
      v2 = v1;
      v1 = v0;
      osq_prev = (j + 1 < n) ? offsq[j] : 0.0;
      double f = std::fabs(v1);
      const double f2 = std::fabs(v2);
      if (f2 > f) f = f2;
      if (f > kBig) {
        v1 *= 0x1p-512;
        v2 *= 0x1p-512;
        e += 512;
      } else if (f < kSmall && f > 0.0) {
        v1 *= 0x1p512;
        v2 *= 0x1p512;
        e -= 512;
      }
      if (j + 2 <= n) {  // Sturm signs cover minors 1..n-1
        const double s = (v1 == 0.0) ? sprev : ((v1 < 0.0) ? -1.0 : 1.0);
        if (s != sprev) {
          ++changes;
          sprev = s;
        }
      }
    }
    const ScaledValue s = dead ? ScaledValue{} : ScaledValue::from_parts(v1, e);
    mant_out[i] = s.mant;
    exp_out[i] = s.exp2;
    changes_out[i] = changes;
    slast_out[i] = sprev;
  }
}

ScaledValue coupling_product(const double* off, int count) {
  ScaledValue p = ScaledValue::from_double(1.0);
  for (int j = 0; j < count; ++j) p = p.times(ScaledValue::from_double(off[j]));
  return p;
}

int finish_count(const ScaledValue& full, const ScaledValue& interior,
                 const ScaledValue& border_sq, const ScaledValue& cross,
                 int changes, double slast) {
  const ScaledValue det = full.minus(interior.times(border_sq)).plus(cross);
  const double s = det.zero() ? slast : ((det.mant < 0.0) ? -1.0 : 1.0);
  return changes + ((s != slast) ? 1 : 0);
}

void inertia_counts_range(const double* diag, const double* off, int n,
                          double corner, const double* shifts, int begin,
                          int end, int* counts_out) {
  if (begin >= end) return;
  if (n == 1) {
    for (int i = begin; i < end; ++i) {
      const double p = (diag[0] + 2.0 * corner) - shifts[i];
      counts_out[i] = (p < 0.0) ? 1 : 0;
    }
    return;
  }
  const int m = end - begin;
  std::vector<double> offsq((std::size_t)n - 1);
  for (int j = 0; j + 1 < n; ++j) offsq[j] = off[j] * off[j];
  std::vector<double> im((std::size_t)m), fm((std::size_t)m);
  std::vector<std::int64_t> ie((std::size_t)m), fe((std::size_t)m);
  std::vector<int> ch((std::size_t)m);
  std::vector<double> sl((std::size_t)m);
  det_minors_range(diag + 1, offsq.data() + 1, n - 2, shifts + begin, 0, m,
                   im.data(), ie.data());
  sturm_chain_range(diag, offsq.data(), n, shifts + begin, 0, m, fm.data(),
                    fe.data(), ch.data(), sl.data());
  const ScaledValue c = ScaledValue::from_double(corner);
  const ScaledValue border_sq = c.times(c);
  const double sgn = (n % 2 == 0) ? -1.0 : 1.0;
  const ScaledValue cross =
      coupling_product(off, n - 1).times(c).times(ScaledValue::from_double(2.0 * sgn));
  for (int i = 0; i < m; ++i) {
    counts_out[begin + i] = finish_count({fm[i], fe[i]}, {im[i], ie[i]},
                                         border_sq, cross, ch[i], sl[i]);
  }
}

}  // namespace detail

namespace {

void det_minors_scalar(const double* diag, const double* offsq, int n,
                       const double* energies, int count, double* mant_out,
                       std::int64_t* exp_out) {
  detail::det_minors_range(diag, offsq, n, energies, 0, count, mant_out, exp_out);
}

void inertia_counts_scalar(const double* diag, const double* off, int n,
                           double corner, const double* shifts, int count,
                           int* counts_out) {
  detail::inertia_counts_range(diag, off, n, corner, shifts, 0, count,
                               counts_out);
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar", det_minors_scalar, inertia_counts_scalar};
  return b;
}

}  // namespace amo::kernels
