#include "mquant/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace mq::kernels {

namespace {

void axpy_scalar(std::size_t n, cxd alpha, const cxd* x, cxd* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cxd dot_conj_scalar(std::size_t n, const cxd* x, const cxd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void scale_scalar(std::size_t n, cxd alpha, cxd* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double norm_sq_scalar(std::size_t n, const cxd* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

const Kernels kScalar{"scalar", axpy_scalar, dot_conj_scalar, scale_scalar, norm_sq_scalar};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

#if defined(MQUANT_HAVE_AVX2)
const Kernels* avx2_kernels_if_supported();  // kernels_avx2.cpp
#endif

const Kernels* simd_kernels() {
#if defined(MQUANT_HAVE_AVX2)
  return avx2_kernels_if_supported();
#else
  return nullptr;
#endif
}

const Kernels& active() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("MQ_KERNELS");
    const Kernels* simd = simd_kernels();
    if (env) {
      if (std::strcmp(env, "scalar") == 0) return &kScalar;
      if (simd && std::strcmp(env, simd->name) == 0) return simd;
      return &kScalar;  // unknown or unsupported request
    }
    return simd ? simd : &kScalar;
  }();
  return *chosen;
}

std::string runtime_description() {
  std::string s = "kernels: active=";
  s += active().name;
  const Kernels* simd = simd_kernels();
  s += ", available=scalar";
  if (simd) {
    s += ",";
    s += simd->name;
  }
  return s;
}

}  // namespace mq::kernels
