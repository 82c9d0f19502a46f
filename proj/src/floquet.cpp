#include "amo/floquet.hpp"

#include <stdexcept>

namespace amo {

bool PeriodicJacobi::real_symmetric() const {
  return corner == 0.0 || corner_phase.is_zero() || corner_phase.is_half();
}

double PeriodicJacobi::corner_sign() const {
  if (corner_phase.is_zero()) return 1.0;
  if (corner_phase.is_half()) return -1.0;
  if (corner == 0.0) return 1.0;
  throw std::domain_error("corner phase " + corner_phase.str() + " is not real");
}

std::vector<double> PeriodicJacobi::dense_symmetric() const {
  const int n = size();
  const double c = corner * corner_sign();
  std::vector<double> a((size_t)n * n, 0.0);
  if (n == 1) {
    a[0] = diag[0] + 2.0 * c;
    return a;
  }
  for (int i = 0; i < n; ++i) a[(size_t)i * n + i] = diag[i];
  for (int i = 0; i + 1 < n; ++i) {
    double e = offdiag[i];
    if (n == 2) e += c;  // the wrap coupling lands on the same pair of sites
    a[(size_t)i * n + i + 1] = e;
    a[(size_t)(i + 1) * n + i] = e;
  }
  if (n >= 3) {
    a[(size_t)0 * n + (n - 1)] = c;
    a[(size_t)(n - 1) * n + 0] = c;
  }
  return a;
}

std::vector<std::complex<double>> PeriodicJacobi::dense_hermitian() const {
  const int n = size();
  const std::complex<double> c =
      corner * std::complex<double>(cos_turns(corner_phase), -sin_turns(corner_phase));
  std::vector<std::complex<double>> a((size_t)n * n, 0.0);
  if (n == 1) {
    a[0] = diag[0] + c + std::conj(c);
    return a;
  }
  for (int i = 0; i < n; ++i) a[(size_t)i * n + i] = diag[i];
  for (int i = 0; i + 1 < n; ++i) {
    std::complex<double> e = offdiag[i];
    if (n == 2) e += c;
    a[(size_t)i * n + i + 1] = e;
    a[(size_t)(i + 1) * n + i] = std::conj(e);
  }
  if (n >= 3) {
    a[(size_t)0 * n + (n - 1)] = c;
    a[(size_t)(n - 1) * n + 0] = std::conj(c);
  }
  return a;
}

double potential_a(const Turns& x) { return 2.0 * cos_turns(x); }
double potential_b(const Turns& x) { return 2.0 * sin_turns(x); }

PeriodicJacobi build_chiral(const Frequency& f, const Turns& theta,
                            const Turns& k, std::int64_t ell) {
  PeriodicJacobi m;
  const std::int64_t q = f.q;
  m.diag.assign((size_t)q, 0.0);
  m.offdiag.resize((size_t)q - 1);
  for (std::int64_t j = 0; j + 1 < q; ++j) {
    m.offdiag[(size_t)j] = potential_b(angle_mod1(ell + j, f.p, f.q, theta));
  }
  m.corner = potential_b(angle_mod1(ell + q - 1, f.p, f.q, theta));
  m.corner_phase = k.times(q);
  return m;
}

PeriodicJacobi build_standard(const Frequency& f, const Turns& theta,
                              const Turns& k, std::int64_t ell) {
  PeriodicJacobi m;
  const std::int64_t q0 = f.q0;
  m.diag.resize((size_t)q0);
  for (std::int64_t j = 0; j < q0; ++j) {
    m.diag[(size_t)j] = potential_a(angle_mod1(ell + j, f.p0, f.q0, theta));
  }
  m.offdiag.assign(q0 >= 1 ? (size_t)q0 - 1 : 0, 1.0);
  m.corner = 1.0;
  m.corner_phase = k.times(q0);
  return m;
}

}  // namespace amo
