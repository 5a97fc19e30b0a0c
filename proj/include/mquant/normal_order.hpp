#pragma once

#include <array>
#include <deque>
#include <string>

#include "mquant/algebra.hpp"
#include "mquant/errors.hpp"

namespace mq {

enum class StatKind : std::uint8_t { Fermi = 0, Bose = 1, Parabose = 2 };

struct SpeciesStatistics {
  StatKind kind = StatKind::Bose;
  int order = 1;  // parabose order p; 1 for Fermi/Bose

  static SpeciesStatistics fermi() { return {StatKind::Fermi, 1}; }
  static SpeciesStatistics bose() { return {StatKind::Bose, 1}; }
  static SpeciesStatistics parabose(int p) { return {StatKind::Parabose, p}; }

  bool operator==(const SpeciesStatistics&) const = default;
};

// Statistics per species. Electron/positron are pinned fermionic and the
// photon bosonic; only the ur species is adjustable (Fermi, Bose, or
// parabose of a given order).
class StatisticsConfig {
 public:
  StatisticsConfig() {
    per_[idx(Species::Electron)] = SpeciesStatistics::fermi();
    per_[idx(Species::Positron)] = SpeciesStatistics::fermi();
    per_[idx(Species::Photon)] = SpeciesStatistics::bose();
    per_[idx(Species::Ur)] = SpeciesStatistics::bose();
  }

  static StatisticsConfig standard() { return StatisticsConfig(); }

  StatisticsConfig& set(Species s, SpeciesStatistics st) {
    if (s == Species::Electron || s == Species::Positron) {
      if (st.kind != StatKind::Fermi)
        throw Error("statistics: electron/positron species are fermionic");
    }
    if (s == Species::Photon && st.kind != StatKind::Bose)
      throw Error("statistics: photon species is bosonic");
    if (st.kind == StatKind::Parabose && st.order < 1)
      throw Error("statistics: parabose order must be >= 1");
    per_[idx(s)] = st;
    return *this;
  }

  StatisticsConfig& set_ur(SpeciesStatistics st) { return set(Species::Ur, st); }

  const SpeciesStatistics& of(Species s) const { return per_[idx(s)]; }

  bool fermionic(Species s) const { return of(s).kind == StatKind::Fermi; }

 private:
  static std::size_t idx(Species s) { return static_cast<std::size_t>(s); }
  std::array<SpeciesStatistics, 4> per_;
};

// Green component of a parabose mode: the leading label atom, which must be
// an integer in [1, order].
inline int parabose_component(const LadderOp& f, int order) {
  const auto& atoms = f.mode.atoms;
  if (atoms.empty() || atoms[0].symbolic || atoms[0].num < 1 || atoms[0].num > order)
    throw UnsupportedParabosePattern(
        "parabose operator " + f.str() +
        " is not expanded into Green components (expected leading integer index in 1.." +
        std::to_string(order) + ")");
  return static_cast<int>(atoms[0].num);
}

namespace detail {

// Sign picked up when two ladder factors are transposed without contraction.
inline int swap_sign(const LadderOp& f, const LadderOp& g, const StatisticsConfig& cfg) {
  if (f.species == g.species) {
    const auto st = cfg.of(f.species);
    switch (st.kind) {
      case StatKind::Fermi: return -1;
      case StatKind::Bose: return 1;
      case StatKind::Parabose:
        return parabose_component(f, st.order) == parabose_component(g, st.order) ? 1 : -1;
    }
  }
  // Distinct species: fermionic pairs anticommute, every other mix commutes.
  return (cfg.fermionic(f.species) && cfg.fermionic(g.species)) ? -1 : 1;
}

struct Relation {
  int sign;
  bool contracts;
};

// Relation applied to an (annihilate, create) adjacent pair.
inline Relation pair_relation(const LadderOp& f, const LadderOp& g, const StatisticsConfig& cfg) {
  if (f.species == g.species) {
    const auto st = cfg.of(f.species);
    switch (st.kind) {
      case StatKind::Fermi: return {-1, true};
      case StatKind::Bose: return {1, true};
      case StatKind::Parabose: {
        bool same = parabose_component(f, st.order) == parabose_component(g, st.order);
        return same ? Relation{1, true} : Relation{-1, false};
      }
    }
  }
  return {swap_sign(f, g, cfg), false};
}

}  // namespace detail

// Rewrites every term so that all creators stand left of all annihilators,
// with factors sorted inside each block, and returns the canonical form.
// Deltas between syntactically distinct labels are kept symbolic; equal
// labels contract to 1 on the spot.
template <class C>
Expr<C> normal_order(const Expr<C>& e, const StatisticsConfig& cfg = StatisticsConfig()) {
  // validate parabose patterns up front so bad components are reported even
  // when no rewrite ever touches them
  for (const auto& t : e.terms())
    for (const auto& f : t.ops) {
      const auto st = cfg.of(f.species);
      if (st.kind == StatKind::Parabose) parabose_component(f, st.order);
    }

  std::vector<Term<C>> done;
  std::deque<Term<C>> work(e.terms().begin(), e.terms().end());

  while (!work.empty()) {
    Term<C> t = std::move(work.front());
    work.pop_front();

    bool rewritten = false;
    for (std::size_t i = 0; i + 1 < t.ops.size(); ++i) {
      const LadderOp& f = t.ops[i];
      const LadderOp& g = t.ops[i + 1];

      if (f == g) {
        if (cfg.fermionic(f.species)) {
          rewritten = true;  // nilpotent square: the whole term vanishes
          break;
        }
        continue;
      }

      if (f.kind == LadderKind::Annihilate && g.kind == LadderKind::Create) {
        auto rel = detail::pair_relation(f, g, cfg);
        if (rel.contracts) {
          Term<C> contracted;
          contracted.coeff = t.coeff;
          contracted.deltas = t.deltas;
          if (!(f.mode == g.mode)) contracted.deltas.emplace_back(f.mode, g.mode);
          contracted.ops.reserve(t.ops.size() - 2);
          contracted.ops.insert(contracted.ops.end(), t.ops.begin(), t.ops.begin() + i);
          contracted.ops.insert(contracted.ops.end(), t.ops.begin() + i + 2, t.ops.end());
          work.push_back(std::move(contracted));
        }
        if (rel.sign < 0) t.coeff = C{} - t.coeff;
        std::swap(t.ops[i], t.ops[i + 1]);
        work.push_back(std::move(t));
        rewritten = true;
        break;
      }

      if (f.kind == g.kind && g < f) {
        int s = detail::swap_sign(f, g, cfg);
        if (s < 0) t.coeff = C{} - t.coeff;
        std::swap(t.ops[i], t.ops[i + 1]);
        work.push_back(std::move(t));
        rewritten = true;
        break;
      }
    }

    if (!rewritten) done.push_back(std::move(t));
  }

  return Expr<C>::from_terms(std::move(done));
}

// Coefficient of the identity after normal ordering, with every surviving
// delta between distinct free labels resolved to zero.
template <class C>
C vacuum_expectation(const Expr<C>& e, const StatisticsConfig& cfg = StatisticsConfig()) {
  Expr<C> nf = normal_order(e, cfg);
  C acc{};
  for (const auto& t : nf.terms())
    if (t.ops.empty() && t.deltas.empty()) acc = acc + t.coeff;
  return acc;
}

// Composite parabose ladder operator as a sum over Green components:
// A_r = sum_alpha u(alpha, r...), with the component as leading label atom.
inline RExpr parabose_ladder_expr(const ModeLabel& logical, LadderKind kind, int order) {
  RExpr sum;
  for (int alpha = 1; alpha <= order; ++alpha) {
    ModeLabel full;
    full.atoms.reserve(logical.atoms.size() + 1);
    full.atoms.push_back(ModeIndex::integer(alpha));
    full.atoms.insert(full.atoms.end(), logical.atoms.begin(), logical.atoms.end());
    sum += RExpr::single(RationalComplex::one(), {LadderOp{kind, Species::Ur, full}});
  }
  return sum;
}

}  // namespace mq
