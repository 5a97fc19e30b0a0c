#include "mquant/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "mquant/kernels.hpp"

namespace mq {

SparseMatrix::SparseMatrix(std::size_t dim) : dim_(dim), rp_(dim + 1, 0) {}

SparseMatrix SparseMatrix::identity(std::size_t dim) {
  SparseMatrix m(dim);
  m.ci_.resize(dim);
  m.val_.assign(dim, cxd(1.0, 0.0));
  for (std::size_t i = 0; i < dim; ++i) {
    m.ci_[i] = static_cast<std::uint32_t>(i);
    m.rp_[i + 1] = static_cast<std::int64_t>(i + 1);
  }
  return m;
}

SparseMatrix SparseMatrix::diagonal(std::vector<cxd> entries) {
  SparseMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] != cxd(0.0, 0.0)) {
      m.ci_.push_back(static_cast<std::uint32_t>(i));
      m.val_.push_back(entries[i]);
    }
    m.rp_[i + 1] = static_cast<std::int64_t>(m.val_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::from_triplets(std::size_t dim, std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(dim);
  std::size_t i = 0;
  for (std::size_t r = 0; r < dim; ++r) {
    while (i < entries.size() && entries[i].row == r) {
      cxd acc = entries[i].value;
      std::uint32_t c = entries[i].col;
      ++i;
      while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
        acc += entries[i].value;
        ++i;
      }
      if (acc != cxd(0.0, 0.0)) {
        m.ci_.push_back(c);
        m.val_.push_back(acc);
      }
    }
    m.rp_[r + 1] = static_cast<std::int64_t>(m.val_.size());
  }
  if (i != entries.size()) throw std::out_of_range("sparse: triplet row exceeds dimension");
  return m;
}

SparseMatrix SparseMatrix::merged(const SparseMatrix& o, bool subtract) const {
  if (dim_ != o.dim_) throw std::invalid_argument("sparse: dimension mismatch");
  SparseMatrix m(dim_);
  m.ci_.reserve(nnz() + o.nnz());
  m.val_.reserve(nnz() + o.nnz());
  for (std::size_t r = 0; r < dim_; ++r) {
    std::int64_t ka = rp_[r], kb = o.rp_[r];
    const std::int64_t ea = rp_[r + 1], eb = o.rp_[r + 1];
    while (ka < ea || kb < eb) {
      std::uint32_t ca = ka < ea ? ci_[ka] : UINT32_MAX;
      std::uint32_t cb = kb < eb ? o.ci_[kb] : UINT32_MAX;
      std::uint32_t c;
      cxd v;
      if (ca < cb) {
        c = ca;
        v = val_[ka++];
      } else if (cb < ca) {
        c = cb;
        v = subtract ? -o.val_[kb++] : o.val_[kb++];
      } else {
        c = ca;
        v = subtract ? val_[ka] - o.val_[kb] : val_[ka] + o.val_[kb];
        ++ka;
        ++kb;
      }
      if (v != cxd(0.0, 0.0)) {
        m.ci_.push_back(c);
        m.val_.push_back(v);
      }
    }
    m.rp_[r + 1] = static_cast<std::int64_t>(m.val_.size());
  }
  return m;
}

SparseMatrix& SparseMatrix::operator+=(const SparseMatrix& o) { return *this = merged(o, false); }
SparseMatrix& SparseMatrix::operator-=(const SparseMatrix& o) { return *this = merged(o, true); }

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("sparse: dimension mismatch");
  SparseMatrix m(dim_);
  std::vector<cxd> acc(dim_, cxd(0.0, 0.0));
  std::vector<std::uint32_t> touched;
  touched.reserve(64);
  for (std::size_t r = 0; r < dim_; ++r) {
    touched.clear();
    for (std::int64_t ka = rp_[r]; ka < rp_[r + 1]; ++ka) {
      const cxd va = val_[ka];
      const std::uint32_t mid = ci_[ka];
      for (std::int64_t kb = o.rp_[mid]; kb < o.rp_[mid + 1]; ++kb) {
        const std::uint32_t c = o.ci_[kb];
        if (acc[c] == cxd(0.0, 0.0)) touched.push_back(c);
        acc[c] += va * o.val_[kb];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t c : touched) {
      if (acc[c] != cxd(0.0, 0.0)) {
        m.ci_.push_back(c);
        m.val_.push_back(acc[c]);
      }
      acc[c] = cxd(0.0, 0.0);
    }
    m.rp_[r + 1] = static_cast<std::int64_t>(m.val_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::scaled(cxd alpha) const {
  SparseMatrix m = *this;
  kernels::active().scale(m.val_.size(), alpha, m.val_.data());
  return m;
}

SparseMatrix SparseMatrix::adjoint() const {
  SparseMatrix m(dim_);
  std::vector<std::int64_t> count(dim_ + 1, 0);
  for (std::uint32_t c : ci_) ++count[c + 1];
  for (std::size_t i = 0; i < dim_; ++i) count[i + 1] += count[i];
  m.ci_.resize(nnz());
  m.val_.resize(nnz());
  std::vector<std::int64_t> cursor(count.begin(), count.end() - 1);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::int64_t k = rp_[r]; k < rp_[r + 1]; ++k) {
      std::int64_t pos = cursor[ci_[k]]++;
      m.ci_[pos] = static_cast<std::uint32_t>(r);
      m.val_[pos] = std::conj(val_[k]);
    }
  }
  for (std::size_t i = 0; i <= dim_; ++i) m.rp_[i] = count[i];
  return m;
}

void SparseMatrix::apply(const cxd* x, cxd* y) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    cxd acc(0.0, 0.0);
    for (std::int64_t k = rp_[r]; k < rp_[r + 1]; ++k) acc += val_[k] * x[ci_[k]];
    y[r] = acc;
  }
}

std::vector<cxd> SparseMatrix::apply(const std::vector<cxd>& x) const {
  if (x.size() != dim_) throw std::invalid_argument("sparse: vector length mismatch");
  std::vector<cxd> y(dim_);
  apply(x.data(), y.data());
  return y;
}

cxd SparseMatrix::entry(std::size_t row, std::size_t col) const {
  if (row >= dim_ || col >= dim_) throw std::out_of_range("sparse: entry out of range");
  const auto* begin = ci_.data() + rp_[row];
  const auto* end = ci_.data() + rp_[row + 1];
  const auto* it = std::lower_bound(begin, end, static_cast<std::uint32_t>(col));
  if (it != end && *it == col) return val_[rp_[row] + (it - begin)];
  return {0.0, 0.0};
}

double SparseMatrix::frobenius_norm() const {
  return std::sqrt(kernels::active().norm_sq(val_.size(), val_.data()));
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (const cxd& v : val_) m = std::max(m, std::abs(v));
  return m;
}

double SparseMatrix::spectral_norm_lb(int iterations) const {
  if (dim_ == 0 || val_.empty()) return 0.0;
  const auto& k = kernels::active();
  // fixed xorshift start vector, so results are reproducible
  std::uint64_t s = 0x9E3779B97F4A7C15ULL ^ (dim_ * 1000003ULL + nnz());
  auto next = [&s]() {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return static_cast<double>((s * 0x2545F4914F6CDD1DULL) >> 11) * 0x1.0p-53;
  };
  std::vector<cxd> v(dim_), av(dim_), aav(dim_);
  for (auto& z : v) z = cxd(next() - 0.5, next() - 0.5);
  k.scale(dim_, cxd(1.0 / std::sqrt(k.norm_sq(dim_, v.data())), 0.0), v.data());
  SparseMatrix adj = adjoint();
  double sigma = 0.0;
  for (int it = 0; it < iterations; ++it) {
    apply(v.data(), av.data());
    double nr = std::sqrt(k.norm_sq(dim_, av.data()));
    sigma = nr;
    if (nr == 0.0) return 0.0;
    adj.apply(av.data(), aav.data());
    double nn = std::sqrt(k.norm_sq(dim_, aav.data()));
    if (nn == 0.0) return sigma;
    k.scale(dim_, cxd(1.0 / nn, 0.0), aav.data());
    v.swap(aav);
  }
  apply(v.data(), av.data());
  sigma = std::max(sigma, std::sqrt(k.norm_sq(dim_, av.data())));
  return sigma;
}

SparseMatrix SparseMatrix::masked(const std::vector<char>& keep_row,
                                  const std::vector<char>& keep_col) const {
  if (keep_row.size() != dim_ || keep_col.size() != dim_)
    throw std::invalid_argument("sparse: mask length mismatch");
  SparseMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    if (keep_row[r]) {
      for (std::int64_t k = rp_[r]; k < rp_[r + 1]; ++k) {
        if (keep_col[ci_[k]]) {
          m.ci_.push_back(ci_[k]);
          m.val_.push_back(val_[k]);
        }
      }
    }
    m.rp_[r + 1] = static_cast<std::int64_t>(m.val_.size());
  }
  return m;
}

void SparseMatrix::write_text(std::ostream& os) const {
  for_each([&os](std::size_t r, std::size_t c, const cxd& v) {
    os << r << ' ' << c << ' ' << v.real() << ' ' << v.imag() << '\n';
  });
}

}  // namespace mq
