#pragma once

#include <vector>

#include "mquant/fock.hpp"
#include "mquant/normal_order.hpp"
#include "mquant/random.hpp"

namespace mqtest {

using namespace mq;

enum class ExprFamily { Fermi, Bose, Para };

// Random expression within one statistics family, so it can be materialized
// on a single Fock space for the symbolic/numeric cross-checks.
inline RExpr random_expr(Rng& rng, ExprFamily fam, int max_factors, int nlabels, int max_terms,
                         int parabose_order = 2) {
  const int nterms = static_cast<int>(rng.uniform_int(1, max_terms));
  std::vector<Term<RationalComplex>> terms;
  for (int t = 0; t < nterms; ++t) {
    Term<RationalComplex> term;
    Rational re(rng.uniform_int(-3, 3), rng.uniform_int(1, 2));
    Rational im = rng.uniform() < 0.3 ? Rational(rng.uniform_int(-2, 2)) : Rational(0);
    term.coeff = RationalComplex(re, im);
    if (term.coeff.is_zero()) term.coeff = RationalComplex::one();
    const int nfac = static_cast<int>(rng.uniform_int(0, max_factors));
    for (int f = 0; f < nfac; ++f) {
      LadderKind kind = rng.uniform() < 0.5 ? LadderKind::Create : LadderKind::Annihilate;
      std::int64_t j = rng.uniform_int(1, nlabels);
      switch (fam) {
        case ExprFamily::Fermi: {
          Species sp = rng.uniform() < 0.5 ? Species::Electron : Species::Positron;
          term.ops.push_back(LadderOp{kind, sp, mode(j)});
          break;
        }
        case ExprFamily::Bose:
          term.ops.push_back(LadderOp{kind, Species::Photon, mode(j)});
          break;
        case ExprFamily::Para: {
          std::int64_t alpha = rng.uniform_int(1, parabose_order);
          term.ops.push_back(LadderOp{kind, Species::Ur, mode(alpha, j)});
          break;
        }
      }
    }
    terms.push_back(std::move(term));
  }
  return RExpr::from_terms(std::move(terms));
}

inline StatisticsConfig config_for(ExprFamily fam, int parabose_order = 2) {
  StatisticsConfig cfg;
  if (fam == ExprFamily::Para) cfg.set_ur(SpeciesStatistics::parabose(parabose_order));
  return cfg;
}

inline SpacePtr space_for(ExprFamily fam, int nlabels, int cutoff, int parabose_order = 2) {
  std::vector<SpaceMode> modes;
  switch (fam) {
    case ExprFamily::Fermi:
      for (std::int64_t j = 1; j <= nlabels; ++j) modes.push_back({Species::Electron, mode(j)});
      for (std::int64_t j = 1; j <= nlabels; ++j) modes.push_back({Species::Positron, mode(j)});
      return FockSpace::build(std::move(modes), FockStatistics::fermi());
    case ExprFamily::Bose:
      for (std::int64_t j = 1; j <= nlabels; ++j) modes.push_back({Species::Photon, mode(j)});
      return FockSpace::build(std::move(modes), FockStatistics::bose(cutoff));
    case ExprFamily::Para:
      for (int alpha = 1; alpha <= parabose_order; ++alpha)
        for (std::int64_t j = 1; j <= nlabels; ++j)
          modes.push_back({Species::Ur, mode(alpha, j)});
      return FockSpace::build(std::move(modes),
                              FockStatistics::parabose(parabose_order, cutoff));
  }
  return nullptr;
}

// True when every term has creators left of annihilators and both blocks
// sorted by the canonical factor order.
inline bool is_normal_ordered(const RExpr& e) {
  for (const auto& t : e.terms()) {
    for (std::size_t i = 0; i + 1 < t.ops.size(); ++i) {
      const auto& f = t.ops[i];
      const auto& g = t.ops[i + 1];
      if (f.kind == LadderKind::Annihilate && g.kind == LadderKind::Create) return false;
      if (f.kind == g.kind && g < f) return false;
    }
  }
  return true;
}

}  // namespace mqtest
