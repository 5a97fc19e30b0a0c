#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace mq::kernels {

using cxd = std::complex<double>;

// Dense complex-vector primitives behind the numeric backend's inner loops.
// Each entry point has a scalar reference implementation and, on x86-64
// with AVX2, a SIMD variant; the active table is picked once at startup.
// Variants agree with the reference to rounding (accumulation order
// differs), which the kernel tests check explicitly.
struct Kernels {
  const char* name;
  void (*axpy)(std::size_t n, cxd alpha, const cxd* x, cxd* y);  // y += alpha*x
  cxd (*dot_conj)(std::size_t n, const cxd* x, const cxd* y);    // sum conj(x)*y
  void (*scale)(std::size_t n, cxd alpha, cxd* x);               // x *= alpha
  double (*norm_sq)(std::size_t n, const cxd* x);                // sum |x|^2
};

// Portable reference table.
const Kernels& scalar_kernels();

// Best SIMD table supported by this build and CPU, or nullptr.
const Kernels* simd_kernels();

// Runtime-selected table. Set MQ_KERNELS=scalar (or a variant name) to
// override; unknown or unsupported names fall back to scalar.
const Kernels& active();

std::string runtime_description();

}  // namespace mq::kernels
