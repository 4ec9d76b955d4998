#include "axistat/simd/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define AXISTAT_X86 1
#else
#define AXISTAT_X86 0
#endif

// Functions carry target("avx2") instead of compiling the file with -mavx2, so no
// AVX encoding leaks into inline code shared with other translation units. FMA
// is deliberately not enabled: each lane must round exactly like the scalar path.

namespace axistat::simd::avx2 {

#if AXISTAT_X86

bool available() { return __builtin_cpu_supports("avx2"); }

__attribute__((target("avx2"))) void picard_integrand(const double* r, const double* u,
                                                      const double* du, double alpha,
                                                      double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vr = _mm256_loadu_pd(r + i);
    const __m256d vu = _mm256_loadu_pd(u + i);
    const __m256d vd = _mm256_loadu_pd(du + i);
    const __m256d slope = _mm256_mul_pd(vr, vd);
    const __m256d num = _mm256_mul_pd(_mm256_mul_pd(va, vr), _mm256_sub_pd(vu, slope));
    const __m256d rad = _mm256_add_pd(_mm256_mul_pd(vr, vr), _mm256_mul_pd(vu, vu));
    const __m256d root = _mm256_sqrt_pd(_mm256_add_pd(one, _mm256_mul_pd(vd, vd)));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, _mm256_mul_pd(rad, root)));
  }
  scalar::picard_integrand(r + i, u + i, du + i, alpha, out + i, n - i);
}

__attribute__((target("avx2"))) double inverse_slope(const double* in, double* out,
                                                     std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d worst = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(in + i);
    worst = _mm256_max_pd(worst, _mm256_andnot_pd(sign, v));
    const __m256d root = _mm256_sqrt_pd(_mm256_sub_pd(one, _mm256_mul_pd(v, v)));
    _mm256_storeu_pd(out + i, _mm256_div_pd(v, root));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, worst);
  double m = scalar::inverse_slope(in + i, out + i, n - i);
  for (double l : lanes) m = l > m ? l : m;
  return m;
}

__attribute__((target("avx2"))) void rotational_residual(const double* x, const double* z,
                                                         const double* sp, const double* cp,
                                                         const double* dpsi, double alpha,
                                                         double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vz = _mm256_loadu_pd(z + i);
    const __m256d vs = _mm256_loadu_pd(sp + i);
    const __m256d vc = _mm256_loadu_pd(cp + i);
    const __m256d h = _mm256_add_pd(_mm256_loadu_pd(dpsi + i), _mm256_div_pd(vs, vx));
    const __m256d support = _mm256_sub_pd(_mm256_mul_pd(vz, vc), _mm256_mul_pd(vx, vs));
    const __m256d p2 = _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vz, vz));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(h, _mm256_div_pd(_mm256_mul_pd(va, support), p2)));
  }
  scalar::rotational_residual(x + i, z + i, sp + i, cp + i, dpsi + i, alpha, out + i, n - i);
}

__attribute__((target("avx2"))) void phase_field(const double* sp, const double* cp,
                                                 const double* st, const double* ct,
                                                 double alpha, double* h1, double* h2,
                                                 std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vsp = _mm256_loadu_pd(sp + i);
    const __m256d vcp = _mm256_loadu_pd(cp + i);
    const __m256d vst = _mm256_loadu_pd(st + i);
    const __m256d vct = _mm256_loadu_pd(ct + i);
    const __m256d sd = _mm256_sub_pd(_mm256_mul_pd(vsp, vct), _mm256_mul_pd(vcp, vst));
    const __m256d neg = _mm256_xor_pd(vsp, sign);
    _mm256_storeu_pd(h1 + i, _mm256_sub_pd(neg, _mm256_mul_pd(_mm256_mul_pd(va, vct), sd)));
    _mm256_storeu_pd(h2 + i, _mm256_mul_pd(vct, sd));
  }
  scalar::phase_field(sp + i, cp + i, st + i, ct + i, alpha, h1 + i, h2 + i, n - i);
}

#else

bool available() { return false; }

void picard_integrand(const double* r, const double* u, const double* du, double alpha,
                      double* out, std::size_t n) {
  scalar::picard_integrand(r, u, du, alpha, out, n);
}
double inverse_slope(const double* in, double* out, std::size_t n) {
  return scalar::inverse_slope(in, out, n);
}
void rotational_residual(const double* x, const double* z, const double* sp, const double* cp,
                         const double* dpsi, double alpha, double* out, std::size_t n) {
  scalar::rotational_residual(x, z, sp, cp, dpsi, alpha, out, n);
}
void phase_field(const double* sp, const double* cp, const double* st, const double* ct,
                 double alpha, double* h1, double* h2, std::size_t n) {
  scalar::phase_field(sp, cp, st, ct, alpha, h1, h2, n);
}

#endif

}  // namespace axistat::simd::avx2
