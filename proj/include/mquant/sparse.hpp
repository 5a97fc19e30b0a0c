#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mq {

using cxd = std::complex<double>;

// Square sparse complex matrix in CSR form with deterministic entry order
// (rows ascending, columns ascending within a row). All combining
// operations preserve that order, so text exports and golden tests are
// byte-stable.
class SparseMatrix {
 public:
  struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    cxd value;
  };

  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t dim);

  static SparseMatrix identity(std::size_t dim);
  static SparseMatrix diagonal(std::vector<cxd> entries);
  static SparseMatrix from_triplets(std::size_t dim, std::vector<Triplet> entries);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return val_.size(); }
  bool empty() const { return val_.empty(); }

  SparseMatrix& operator+=(const SparseMatrix& o);
  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
  SparseMatrix& operator-=(const SparseMatrix& o);
  friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix scaled(cxd alpha) const;
  SparseMatrix adjoint() const;

  // y = A x; x and y must have length dim() and may not alias.
  void apply(const cxd* x, cxd* y) const;
  std::vector<cxd> apply(const std::vector<cxd>& x) const;

  cxd entry(std::size_t row, std::size_t col) const;

  double frobenius_norm() const;
  double max_abs() const;

  // Rayleigh-quotient power iteration on A^H A from a fixed pseudo-random
  // start; the result is a certified lower bound on the spectral norm and
  // converges to it for generic matrices.
  double spectral_norm_lb(int iterations = 60) const;

  // Copy with entries kept only where both masks are true. Masks have
  // length dim(), nonzero bytes mean "keep". Used to state truncation-safe
  // blocks in commutation checks.
  SparseMatrix masked(const std::vector<char>& keep_row, const std::vector<char>& keep_col) const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::int64_t k = rp_[r]; k < rp_[r + 1]; ++k)
        f(r, static_cast<std::size_t>(ci_[k]), val_[k]);
  }

  // One entry per line: "row col re im".
  void write_text(std::ostream& os) const;

 private:
  SparseMatrix merged(const SparseMatrix& o, bool subtract) const;

  std::size_t dim_ = 0;
  std::vector<std::int64_t> rp_ = {0};
  std::vector<std::uint32_t> ci_;
  std::vector<cxd> val_;
};

}  // namespace mq
