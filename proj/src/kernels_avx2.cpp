// AVX2 variants of the batched kernels, four energies or shifts per lane
// group.  Each vector instruction mirrors one scalar statement of the
// reference kernels in the same order; lane masks replace branches (rescale
// multiplies untouched lanes by 1.0, sign updates blend per lane), so results
// are bit-identical to the scalar backend.  Ragged tails fall through to the
// shared scalar range loops.
#include "amo/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

#include <vector>

#include "amo/scaled.hpp"

namespace amo::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void det_minors_avx2(const double* diag, const double* offsq, int n,
                     const double* energies, int count, double* mant_out,
                     std::int64_t* exp_out) {
  const __m256d kBig = _mm256_set1_pd(0x1p500);
  const __m256d kSmall = _mm256_set1_pd(0x1p-500);
  const __m256d kDown = _mm256_set1_pd(0x1p-512);
  const __m256d kUp = _mm256_set1_pd(0x1p512);
  const __m256d kOne = _mm256_set1_pd(1.0);
  const __m256d kZero = _mm256_setzero_pd();
  const __m256i k512 = _mm256_set1_epi64x(512);

  int i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d E = _mm256_loadu_pd(energies + i);
    __m256d v2 = kZero;
    __m256d v1 = kOne;
    __m256d osq_prev = kZero;
    __m256i e = _mm256_setzero_si256();
    for (int j = 0; j < n; ++j) {
      const __m256d t1 = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(diag[j]), E), v1);
      const __m256d t2 = _mm256_mul_pd(osq_prev, v2);
      const __m256d v0 = _mm256_sub_pd(t1, t2);
      v2 = v1;
      v1 = v0;
      osq_prev = (j + 1 < n) ? _mm256_set1_pd(offsq[j]) : kZero;
      const __m256d f = _mm256_max_pd(abs_pd(v2), abs_pd(v1));
      const __m256d up = _mm256_cmp_pd(f, kBig, _CMP_GT_OQ);
      const __m256d dn = _mm256_and_pd(_mm256_cmp_pd(f, kSmall, _CMP_LT_OQ),
                                       _mm256_cmp_pd(f, kZero, _CMP_GT_OQ));
      const __m256d mult =
          _mm256_blendv_pd(_mm256_blendv_pd(kOne, kDown, up), kUp, dn);
      v1 = _mm256_mul_pd(v1, mult);
      v2 = _mm256_mul_pd(v2, mult);
      e = _mm256_add_epi64(e, _mm256_and_si256(_mm256_castpd_si256(up), k512));
      e = _mm256_sub_epi64(e, _mm256_and_si256(_mm256_castpd_si256(dn), k512));
    }
    alignas(32) double v[4];
    alignas(32) std::int64_t ev[4];
    _mm256_store_pd(v, v1);
    _mm256_store_si256((__m256i*)ev, e);
    for (int l = 0; l < 4; ++l) {
      const ScaledValue s = ScaledValue::from_parts(v[l], ev[l]);
      mant_out[i + l] = s.mant;
      exp_out[i + l] = s.exp2;
    }
  }
  detail::det_minors_range(diag, offsq, n, energies, i, count, mant_out, exp_out);
}

void inertia_counts_avx2(const double* diag, const double* off, int n,
                         double corner, const double* shifts, int count,
                         int* counts_out) {
  if (n == 1 || count < 4) {  // nothing to vectorize; scalar path is identical
    detail::inertia_counts_range(diag, off, n, corner, shifts, 0, count,
                                 counts_out);
    return;
  }
  std::vector<double> offsq((std::size_t)n - 1);
  for (int j = 0; j + 1 < n; ++j) offsq[j] = off[j] * off[j];
  std::vector<double> im((std::size_t)count);
  std::vector<std::int64_t> ie((std::size_t)count);
  det_minors_avx2(diag + 1, offsq.data() + 1, n - 2, shifts, count, im.data(),
                  ie.data());
  const ScaledValue c = ScaledValue::from_double(corner);
  const ScaledValue border_sq = c.times(c);
  const double sgn = (n % 2 == 0) ? -1.0 : 1.0;
  const ScaledValue cross = detail::coupling_product(off, n - 1)
                                .times(c)
                                .times(ScaledValue::from_double(2.0 * sgn));

  const __m256d kBig = _mm256_set1_pd(0x1p500);
  const __m256d kSmall = _mm256_set1_pd(0x1p-500);
  const __m256d kDown = _mm256_set1_pd(0x1p-512);
  const __m256d kUp = _mm256_set1_pd(0x1p512);
  const __m256d kOne = _mm256_set1_pd(1.0);
  const __m256d kMinusOne = _mm256_set1_pd(-1.0);
  const __m256d kZero = _mm256_setzero_pd();
  const __m256i k512 = _mm256_set1_epi64x(512);

  int i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d x = _mm256_loadu_pd(shifts + i);
    __m256d v2 = kZero;
    __m256d v1 = kOne;
    __m256d osq_prev_v = kZero;
    __m256d sprev = kOne;
    __m256d dead = kZero;
    __m256i e = _mm256_setzero_si256();
    __m256i changes = _mm256_setzero_si256();
    double osq_prev = 0.0;
    for (int j = 0; j < n; ++j) {
      if (osq_prev == 0.0) {  // possible split; restart exactly-zero lanes
        const __m256d zmask = _mm256_cmp_pd(v1, kZero, _CMP_EQ_OQ);
        v1 = _mm256_blendv_pd(v1, sprev, zmask);
        dead = _mm256_or_pd(dead, zmask);
      }
      const __m256d t1 = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(diag[j]), x), v1);
      const __m256d t2 = _mm256_mul_pd(osq_prev_v, v2);
      const __m256d v0 = _mm256_sub_pd(t1, t2);
      v2 = v1;
      v1 = v0;
      osq_prev = (j + 1 < n) ? offsq[j] : 0.0;
      osq_prev_v = _mm256_set1_pd(osq_prev);
      const __m256d f = _mm256_max_pd(abs_pd(v2), abs_pd(v1));
      const __m256d up = _mm256_cmp_pd(f, kBig, _CMP_GT_OQ);
      const __m256d dn = _mm256_and_pd(_mm256_cmp_pd(f, kSmall, _CMP_LT_OQ),
                                       _mm256_cmp_pd(f, kZero, _CMP_GT_OQ));
      const __m256d mult =
          _mm256_blendv_pd(_mm256_blendv_pd(kOne, kDown, up), kUp, dn);
      v1 = _mm256_mul_pd(v1, mult);
      v2 = _mm256_mul_pd(v2, mult);
      e = _mm256_add_epi64(e, _mm256_and_si256(_mm256_castpd_si256(up), k512));
      e = _mm256_sub_epi64(e, _mm256_and_si256(_mm256_castpd_si256(dn), k512));
      if (j + 2 <= n) {  // Sturm signs cover minors 1..n-1
        const __m256d zmask = _mm256_cmp_pd(v1, kZero, _CMP_EQ_OQ);
        const __m256d neg = _mm256_cmp_pd(v1, kZero, _CMP_LT_OQ);
        const __m256d snew = _mm256_blendv_pd(
            _mm256_blendv_pd(kOne, kMinusOne, neg), sprev, zmask);
        const __m256d diff = _mm256_cmp_pd(snew, sprev, _CMP_NEQ_OQ);
        changes = _mm256_sub_epi64(changes, _mm256_castpd_si256(diff));
        sprev = snew;
      }
    }
    alignas(32) double v[4];
    alignas(32) double sp[4];
    alignas(32) std::int64_t ev[4];
    alignas(32) std::int64_t cg[4];
    _mm256_store_pd(v, v1);
    _mm256_store_pd(sp, sprev);
    _mm256_store_si256((__m256i*)ev, e);
    _mm256_store_si256((__m256i*)cg, changes);
    const int dm = _mm256_movemask_pd(dead);
    for (int l = 0; l < 4; ++l) {
      const ScaledValue full = ((dm >> l) & 1)
                                   ? ScaledValue{}
                                   : ScaledValue::from_parts(v[l], ev[l]);
      counts_out[i + l] = detail::finish_count(
          full, {im[i + l], ie[i + l]}, border_sq, cross, (int)cg[l], sp[l]);
    }
  }
  detail::inertia_counts_range(diag, off, n, corner, shifts, i, count,
                               counts_out);
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend b{"avx2", det_minors_avx2, inertia_counts_avx2};
  return b;
}

}  // namespace amo::kernels

#else  // !__AVX2__

namespace amo::kernels {

const Backend& avx2_backend() {
  static const Backend b{"avx2", nullptr, nullptr};
  return b;
}

}  // namespace amo::kernels

#endif
