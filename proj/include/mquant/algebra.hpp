#pragma once

#include <algorithm>
#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mquant/rational.hpp"

namespace mq {

// The four operator species of the engine. Enum order fixes the canonical
// species ordering used when sorting terms.
enum class Species : std::uint8_t {
  Electron = 0,  // b
  Positron = 1,  // d
  Photon = 2,    // a
  Ur = 3,        // u
};

inline char species_letter(Species s) {
  switch (s) {
    case Species::Electron: return 'b';
    case Species::Positron: return 'd';
    case Species::Photon: return 'a';
    case Species::Ur: return 'u';
  }
  return '?';
}

inline bool species_from_letter(char c, Species& out) {
  switch (c) {
    case 'b': out = Species::Electron; return true;
    case 'd': out = Species::Positron; return true;
    case 'a': out = Species::Photon; return true;
    case 'u': out = Species::Ur; return true;
    default: return false;
  }
}

enum class LadderKind : std::uint8_t { Create = 0, Annihilate = 1 };

// One slot of a mode label: either a small integer or a symbolic name.
// Integers order before symbols; the defaulted comparison relies on the
// member order below.
struct ModeIndex {
  bool symbolic = false;
  std::int64_t num = 0;
  std::string sym;

  static ModeIndex integer(std::int64_t v) {
    ModeIndex m;
    m.num = v;
    return m;
  }
  static ModeIndex symbol(std::string s) {
    ModeIndex m;
    m.symbolic = true;
    m.sym = std::move(s);
    return m;
  }

  auto operator<=>(const ModeIndex&) const = default;

  std::string str() const { return symbolic ? sym : std::to_string(num); }
};

// A mode is identified by a nonempty tuple of index atoms, e.g. (p1,1) or
// (k) or (2,1). Two labels are equal iff all atoms are equal.
struct ModeLabel {
  std::vector<ModeIndex> atoms;

  auto operator<=>(const ModeLabel&) const = default;

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i) s += ',';
      s += atoms[i].str();
    }
    return s;
  }
};

inline ModeLabel mode(std::int64_t a) { return ModeLabel{{ModeIndex::integer(a)}}; }
inline ModeLabel mode(std::int64_t a, std::int64_t b) {
  return ModeLabel{{ModeIndex::integer(a), ModeIndex::integer(b)}};
}
inline ModeLabel mode(std::int64_t a, std::int64_t b, std::int64_t c) {
  return ModeLabel{{ModeIndex::integer(a), ModeIndex::integer(b), ModeIndex::integer(c)}};
}
inline ModeLabel mode(const std::string& s) { return ModeLabel{{ModeIndex::symbol(s)}}; }
inline ModeLabel mode(const std::string& s, std::int64_t b) {
  return ModeLabel{{ModeIndex::symbol(s), ModeIndex::integer(b)}};
}

// Single ladder operator. Member order (kind, species, mode) defines the
// canonical factor ordering: creators sort before annihilators.
struct LadderOp {
  LadderKind kind = LadderKind::Create;
  Species species = Species::Photon;
  ModeLabel mode;

  LadderOp adjoint() const {
    LadderOp o = *this;
    o.kind = (kind == LadderKind::Create) ? LadderKind::Annihilate : LadderKind::Create;
    return o;
  }

  auto operator<=>(const LadderOp&) const = default;

  std::string str() const {
    std::string s(1, species_letter(species));
    if (kind == LadderKind::Create) s += '+';
    s += '(';
    s += mode.str();
    s += ')';
    return s;
  }
};

inline LadderOp create(Species sp, ModeLabel m) {
  return LadderOp{LadderKind::Create, sp, std::move(m)};
}
inline LadderOp annihilate(Species sp, ModeLabel m) {
  return LadderOp{LadderKind::Annihilate, sp, std::move(m)};
}

// Kronecker delta between two mode labels, stored with the smaller label
// first. A delta between syntactically equal labels is the scalar 1 and
// never survives canonicalization.
struct Delta {
  ModeLabel lo;
  ModeLabel hi;

  Delta(ModeLabel a, ModeLabel b) {
    if (b < a) std::swap(a, b);
    lo = std::move(a);
    hi = std::move(b);
  }

  bool trivial() const { return lo == hi; }

  auto operator<=>(const Delta&) const = default;

  std::string str() const { return "delta(" + lo.str() + ";" + hi.str() + ")"; }
};

// Coefficient operations, specialized for the exact symbolic field and for
// the floating field used by the discretized field operators.
template <class C>
struct CoeffOps;

template <>
struct CoeffOps<RationalComplex> {
  static bool is_zero(const RationalComplex& c) { return c.is_zero(); }
  static RationalComplex conj(const RationalComplex& c) { return c.conj(); }
  static RationalComplex one() { return RationalComplex::one(); }
  static std::complex<double> to_complex(const RationalComplex& c) { return c.to_complex(); }
};

template <>
struct CoeffOps<std::complex<double>> {
  static bool is_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0, 0.0); }
  static std::complex<double> conj(const std::complex<double>& c) { return std::conj(c); }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> to_complex(const std::complex<double>& c) { return c; }
};

// One product term: coefficient * (product of deltas) * (ordered operator
// product). The empty operator sequence is the identity.
template <class C>
struct Term {
  C coeff{};
  std::vector<Delta> deltas;
  std::vector<LadderOp> ops;
};

template <class C>
std::strong_ordering term_key_cmp(const Term<C>& a, const Term<C>& b) {
  if (auto c = a.ops <=> b.ops; c != 0) return c;
  return a.deltas <=> b.deltas;
}

// Sum of terms in canonical container form: deltas sorted and nontrivial,
// terms sorted by (ops, deltas) with duplicates merged and zeros dropped.
// Canonicalization never reorders operator factors inside a term; that is
// normal ordering's job.
template <class C>
class Expr {
 public:
  Expr() = default;

  static Expr zero() { return Expr(); }

  static Expr constant(C c) {
    Term<C> t;
    t.coeff = std::move(c);
    return from_terms({std::move(t)});
  }

  static Expr identity() { return constant(CoeffOps<C>::one()); }

  static Expr single(C coeff, std::vector<LadderOp> ops, std::vector<Delta> deltas = {}) {
    Term<C> t;
    t.coeff = std::move(coeff);
    t.ops = std::move(ops);
    t.deltas = std::move(deltas);
    return from_terms({std::move(t)});
  }

  static Expr from_terms(std::vector<Term<C>> terms) {
    Expr e;
    e.terms_ = std::move(terms);
    e.canonicalize();
    return e;
  }

  const std::vector<Term<C>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool operator==(const Expr& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].coeff == o.terms_[i].coeff)) return false;
      if (terms_[i].deltas != o.terms_[i].deltas) return false;
      if (terms_[i].ops != o.terms_[i].ops) return false;
    }
    return true;
  }

  Expr& operator+=(const Expr& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    canonicalize();
    return *this;
  }

  friend Expr operator+(Expr a, const Expr& b) {
    a += b;
    return a;
  }

  Expr operator-() const {
    Expr e = *this;
    for (auto& t : e.terms_) t.coeff = C{} - t.coeff;
    return e;
  }

  Expr& operator-=(const Expr& o) { return *this += -o; }

  friend Expr operator-(Expr a, const Expr& b) {
    a -= b;
    return a;
  }

  friend Expr operator*(const Expr& a, const Expr& b) {
    std::vector<Term<C>> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        Term<C> t;
        t.coeff = ta.coeff * tb.coeff;
        t.deltas = ta.deltas;
        t.deltas.insert(t.deltas.end(), tb.deltas.begin(), tb.deltas.end());
        t.ops = ta.ops;
        t.ops.insert(t.ops.end(), tb.ops.begin(), tb.ops.end());
        out.push_back(std::move(t));
      }
    }
    return from_terms(std::move(out));
  }

  Expr scaled(const C& c) const {
    std::vector<Term<C>> out = terms_;
    for (auto& t : out) t.coeff = t.coeff * c;
    return from_terms(std::move(out));
  }

  // Reverses every product, swaps create/annihilate, conjugates coefficients.
  Expr adjoint() const {
    std::vector<Term<C>> out = terms_;
    for (auto& t : out) {
      t.coeff = CoeffOps<C>::conj(t.coeff);
      std::reverse(t.ops.begin(), t.ops.end());
      for (auto& f : t.ops) f = f.adjoint();
    }
    return from_terms(std::move(out));
  }

  std::size_t max_factors() const {
    std::size_t m = 0;
    for (const auto& t : terms_) m = std::max(m, t.ops.size());
    return m;
  }

  // Distinct (species, label) pairs appearing in operator factors.
  std::vector<std::pair<Species, ModeLabel>> mode_set() const {
    std::vector<std::pair<Species, ModeLabel>> v;
    for (const auto& t : terms_)
      for (const auto& f : t.ops) v.emplace_back(f.species, f.mode);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

 private:
  void canonicalize() {
    for (auto& t : terms_) {
      std::erase_if(t.deltas, [](const Delta& d) { return d.trivial(); });
      std::sort(t.deltas.begin(), t.deltas.end());
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term<C>& a, const Term<C>& b) {
      return term_key_cmp(a, b) < 0;
    });
    std::vector<Term<C>> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && term_key_cmp(merged.back(), t) == 0) {
        merged.back().coeff = merged.back().coeff + t.coeff;
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [](const Term<C>& t) { return CoeffOps<C>::is_zero(t.coeff); });
    terms_ = std::move(merged);
  }

  std::vector<Term<C>> terms_;
};

using RExpr = Expr<RationalComplex>;
using CExpr = Expr<std::complex<double>>;

// Largest |coefficient| over all terms; 0 for the empty expression.
inline double max_coeff_abs(const CExpr& e) {
  double m = 0.0;
  for (const auto& t : e.terms()) m = std::max(m, std::abs(t.coeff));
  return m;
}

}  // namespace mq
