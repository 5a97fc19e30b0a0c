#include "mquant/multiquant.hpp"

#include <algorithm>
#include <cmath>

#include "mquant/kernels.hpp"

namespace mq {

Alternative Alternative::make(int n) {
  if (n < 2) throw Error("alternative needs at least two outcomes");
  Alternative a;
  a.n = n;
  a.labels.reserve(n);
  for (int k = 1; k <= n; ++k) a.labels.push_back("a" + std::to_string(k));
  return a;
}

Alternative Alternative::make(std::vector<std::string> labels) {
  if (labels.size() < 2) throw Error("alternative needs at least two outcomes");
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("alternative outcomes must be distinct");
  Alternative a;
  a.n = static_cast<int>(labels.size());
  a.labels = std::move(labels);
  return a;
}

TruthVector::TruthVector(Alternative alt, std::vector<cxd> psi)
    : alt_(std::move(alt)), psi_(std::move(psi)) {
  if (psi_.size() != static_cast<std::size_t>(alt_.n))
    throw Error("truth vector length must equal the alternative size");
  double n2 = kernels::active().norm_sq(psi_.size(), psi_.data());
  if (std::abs(n2 - 1.0) > 1e-12)
    throw Error("truth vector must be normalized (got |psi|^2 = " + std::to_string(n2) + ")");
}

double probability(const TruthVector& state, int k) {
  if (k < 1 || k > state.n()) throw Error("outcome index out of range");
  return std::norm(state.amplitudes()[k - 1]);
}

namespace {

std::vector<SpaceMode> modes_for_count(std::size_t count, const FockStatistics& stats) {
  std::vector<SpaceMode> modes;
  if (stats.kind == StatKind::Parabose) {
    for (int alpha = 1; alpha <= stats.order; ++alpha)
      for (std::size_t k = 1; k <= count; ++k)
        modes.push_back({Species::Ur, mode(alpha, static_cast<std::int64_t>(k))});
  } else {
    for (std::size_t k = 1; k <= count; ++k)
      modes.push_back({Species::Ur, mode(static_cast<std::int64_t>(k))});
  }
  return modes;
}

}  // namespace

SpacePtr lift(const Alternative& alt, FockStatistics stats, std::size_t max_dim) {
  return FockSpace::build(modes_for_count(alt.n, stats), stats, max_dim);
}

SpacePtr lift(const FockSpace& below, FockStatistics stats, std::size_t max_dim) {
  return FockSpace::build(modes_for_count(below.dim(), stats), stats, max_dim);
}

StateVector symmetric_product_state(const SpacePtr& space, const std::vector<cxd>& psi, int n) {
  if (space->statistics().kind != StatKind::Bose)
    throw StatisticsMismatch("symmetric product states require a Bose space");
  if (psi.size() != space->mode_count())
    throw Error("truth vector length must equal the mode count");
  if (n < 0 || n > space->statistics().cutoff)
    throw DimensionOverflow("sector " + std::to_string(n) + " exceeds cutoff " +
                            std::to_string(space->statistics().cutoff));
  double n2 = kernels::active().norm_sq(psi.size(), psi.data());
  if (std::abs(n2 - 1.0) > 1e-12) throw Error("truth vector must be normalized");

  // amplitude over |n_1..n_M> with total n: sqrt(n!/prod n_k!) prod psi_k^{n_k}
  std::vector<cxd> amp(space->dim(), cxd(0.0, 0.0));
  const auto& basis = space->basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (space->total_occupation(i) != n) continue;
    double logmult = std::lgamma(n + 1.0);
    cxd value(1.0, 0.0);
    for (std::size_t k = 0; k < basis[i].size(); ++k) {
      int nk = basis[i][k];
      logmult -= std::lgamma(nk + 1.0);
      for (int j = 0; j < nk; ++j) value *= psi[k];
    }
    amp[i] = value * std::sqrt(std::exp(logmult));
  }
  return StateVector(space, std::move(amp)).normalized();
}

StateVector one_quantum_state(const SpacePtr& space, const std::vector<cxd>& psi) {
  const auto& logical = space->logical_modes();
  if (psi.size() != logical.size())
    throw Error("truth vector length must equal the logical mode count");
  std::vector<cxd> amp(space->dim(), cxd(0.0, 0.0));
  std::vector<std::uint8_t> occ(space->mode_count(), 0);
  for (std::size_t k = 0; k < logical.size(); ++k) {
    for (std::size_t m : logical[k].members) {
      occ.assign(space->mode_count(), 0);
      occ[m] = 1;
      auto idx = space->index_of(occ);
      if (idx) amp[*idx] += psi[k];
    }
  }
  return StateVector(space, std::move(amp)).normalized();
}

FrequencySpectrum frequency_spectrum(const StateVector& state, int k, int sector,
                                     double leak_tol) {
  const auto& space = *state.space();
  const auto& logical = space.logical_modes();
  if (k < 1 || k > static_cast<int>(logical.size()))
    throw Error("logical mode index out of range");
  if (sector < 0) throw Error("sector must be nonnegative");

  const auto& amp = state.amplitudes();
  double inside = 0.0, outside = 0.0;
  FrequencySpectrum spec;
  spec.k = k;
  spec.sector = sector;
  spec.support.resize(sector + 1);
  for (int m = 0; m <= sector; ++m) spec.support[m] = {m, 0.0};

  const auto& members = logical[k - 1].members;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    double w = std::norm(amp[i]);
    if (w == 0.0) continue;
    if (space.total_occupation(i) != sector) {
      outside += w;
      continue;
    }
    inside += w;
    int nk = 0;
    for (std::size_t m : members) nk += space.basis()[i][m];
    spec.support[nk].prob += w;
  }
  if (outside > leak_tol * std::max(1.0, inside + outside))
    throw Error("state leaks outside the requested sector (weight " + std::to_string(outside) +
                ")");
  if (inside > 0.0)
    for (auto& p : spec.support) p.prob /= inside;
  else if (sector == 0)
    spec.support[0].prob = 1.0;
  return spec;
}

QuantizationTower build_tower(const Alternative& base, const std::vector<FockStatistics>& lifts,
                              std::size_t max_dim) {
  QuantizationTower tower;
  tower.base = base;
  tower.lifts = lifts;

  tower.levels.push_back(
      TowerLevel{"alternative", static_cast<std::size_t>(base.n), "alternative", -1, nullptr});
  tower.levels.push_back(
      TowerLevel{"amplitudes", static_cast<std::size_t>(base.n), "amplitudes", -1, nullptr});

  SpacePtr below;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    SpacePtr space = below ? lift(*below, lifts[i], max_dim) : lift(base, lifts[i], max_dim);
    int cutoff = lifts[i].kind == StatKind::Fermi ? -1 : lifts[i].cutoff;
    tower.levels.push_back(TowerLevel{"level-" + std::to_string(i + 2), space->dim(),
                                      lifts[i].str(), cutoff, space});
    below = space;
  }
  return tower;
}

double frequency_identity_deviation(const SpacePtr& space, int draws, std::uint64_t seed,
                                    int max_sector) {
  Rng rng(seed);
  const auto kind = space->statistics().kind;
  const std::size_t nlogical = space->logical_modes().size();

  std::vector<int> sectors;
  if (kind == StatKind::Bose) {
    for (int n = 1; n <= std::min(space->statistics().cutoff, max_sector); ++n)
      sectors.push_back(n);
  } else {
    sectors.push_back(1);  // exclusion / composite-mode collectives: one quantum
  }

  double worst = 0.0;
  for (int d = 0; d < draws; ++d) {
    auto psi = random_unit_vector(rng, nlogical);
    for (int n : sectors) {
      StateVector state = (kind == StatKind::Bose)
                              ? symmetric_product_state(space, psi, n)
                              : one_quantum_state(space, psi);
      for (int k = 1; k <= static_cast<int>(nlogical); ++k) {
        auto spec = frequency_spectrum(state, k, n);
        worst = std::max(worst, std::abs(spec.expectation() - std::norm(psi[k - 1])));
      }
    }
  }
  return worst;
}

nlohmann::json tower_report(const QuantizationTower& tower, int draws, std::uint64_t seed,
                            int max_sector) {
  nlohmann::json levels = nlohmann::json::array();
  // the classical alternative (level 0) is context, not a reported level
  for (std::size_t i = 1; i < tower.levels.size(); ++i) {
    const auto& lv = tower.levels[i];
    nlohmann::json j;
    j["name"] = lv.name;
    j["dim"] = lv.dim;
    j["statistics"] = lv.statistics;
    if (lv.cutoff >= 0)
      j["cutoff"] = lv.cutoff;
    else
      j["cutoff"] = nullptr;
    if (lv.space) {
      j["eq11_max_deviation"] = frequency_identity_deviation(lv.space, draws, seed + i, max_sector);
      j["interpretation"] = "objects of level " + std::to_string(i) +
                            " are collectives of level " + std::to_string(i - 1) + " quanta";
    } else {
      j["eq11_max_deviation"] = nullptr;
      j["interpretation"] = i == 0 ? "classical n-fold alternative"
                                   : "complex truth values over the alternative";
    }
    levels.push_back(std::move(j));
  }
  nlohmann::json report;
  report["levels"] = std::move(levels);
  report["draws"] = draws;
  report["seed"] = seed;
  report["note"] =
      "p(f) is reported as a scalar at every level; treating it as an operator "
      "of the next level again is outside this model";
  return report;
}

}  // namespace mq
