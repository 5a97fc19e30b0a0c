#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace mq {

// Deterministic random source. The uniform draw is built directly from the
// engine's 64-bit output so streams are identical across standard libraries;
// that keeps seeded reports byte-stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix(seed)) {}

  std::uint64_t next_u64() {
    // xorshift* on a splitmix-initialized state
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // uniform in [0, 1)
  double uniform() { return std::ldexp(static_cast<double>(next_u64() >> 11), -53); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double gaussian() {
    // Box-Muller; crude but deterministic everywhere.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  std::complex<double> complex_gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(6.283185307179586 * u2), r * std::sin(6.283185307179586 * u2)};
  }

  // Independent child stream, e.g. one per parallel draw.
  Rng fork(std::uint64_t stream) const { return Rng(splitmix(state_ ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))); }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return (x ^ (x >> 31)) | 1ULL;
  }

  std::uint64_t state_;
};

// Normalized complex vector with Gaussian-distributed entries.
inline std::vector<std::complex<double>> random_unit_vector(Rng& rng, std::size_t n) {
  std::vector<std::complex<double>> v(n);
  double nrm2 = 0.0;
  for (auto& z : v) {
    z = rng.complex_gaussian();
    nrm2 += std::norm(z);
  }
  double inv = 1.0 / std::sqrt(nrm2);
  for (auto& z : v) z *= inv;
  return v;
}

}  // namespace mq
