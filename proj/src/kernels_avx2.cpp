// AVX2 variants of the complex-vector kernels. Compiled with -mavx2 -mfma;
// only reachable after a runtime cpuid check, so the rest of the library
// stays runnable on any x86-64.

#include "mquant/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace mq::kernels {
namespace {

// A __m256d holds two interleaved complex doubles [re0 im0 re1 im1].

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

void axpy_avx2(std::size_t n, cxd alpha, const cxd* x, cxd* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  const std::size_t n2 = n & ~std::size_t(1);
  for (; i < n2; i += 2) {
    __m256d vx = _mm256_loadu_pd(xp + 2 * i);
    __m256d vy = _mm256_loadu_pd(yp + 2 * i);
    __m256d xs = _mm256_permute_pd(vx, 0x5);  // [im0 re0 im1 re1]
    __m256d t = _mm256_mul_pd(ai, xs);
    __m256d prod = _mm256_fmaddsub_pd(ar, vx, t);  // (ar*re - ai*im, ar*im + ai*re)
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(vy, prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

cxd dot_conj_avx2(std::size_t n, const cxd* x, const cxd* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d re_acc = _mm256_setzero_pd();
  __m256d im_acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n2 = n & ~std::size_t(1);
  for (; i < n2; i += 2) {
    __m256d vx = _mm256_loadu_pd(xp + 2 * i);
    __m256d vy = _mm256_loadu_pd(yp + 2 * i);
    re_acc = _mm256_fmadd_pd(vx, vy, re_acc);                       // xr*yr | xi*yi
    im_acc = _mm256_fmadd_pd(_mm256_permute_pd(vx, 0x5), vy, im_acc);  // xi*yr | xr*yi
  }
  double re = hsum(re_acc);
  double im = hsum(_mm256_mul_pd(im_acc, _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0)));
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void scale_avx2(std::size_t n, cxd alpha, cxd* x) {
  double* xp = reinterpret_cast<double*>(x);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  const std::size_t n2 = n & ~std::size_t(1);
  for (; i < n2; i += 2) {
    __m256d vx = _mm256_loadu_pd(xp + 2 * i);
    __m256d xs = _mm256_permute_pd(vx, 0x5);
    __m256d t = _mm256_mul_pd(ai, xs);
    _mm256_storeu_pd(xp + 2 * i, _mm256_fmaddsub_pd(ar, vx, t));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

double norm_sq_avx2(std::size_t n, const cxd* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n2 = n & ~std::size_t(1);
  for (; i < n2; i += 2) {
    __m256d vx = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_fmadd_pd(vx, vx, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += std::norm(x[i]);
  return r;
}

const Kernels kAvx2{"avx2", axpy_avx2, dot_conj_avx2, scale_avx2, norm_sq_avx2};

}  // namespace

const Kernels* avx2_kernels_if_supported() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
  return nullptr;
}

}  // namespace mq::kernels

#endif  // x86-64
