#include "mquant/urtheory.hpp"

#include <cmath>

#include "mquant/kernels.hpp"

namespace mq {

namespace {

void check_normalized(const cxd* data, std::size_t n, const char* what) {
  double n2 = kernels::active().norm_sq(n, data);
  if (std::abs(n2 - 1.0) > 1e-12)
    throw Error(std::string(what) + " must be normalized (got |psi|^2 = " + std::to_string(n2) +
                ")");
}

void check_su2(const SU2& g) {
  // unitarity: g^+ g = 1
  double defect = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cxd acc(0.0, 0.0);
      for (int k = 0; k < 2; ++k) acc += std::conj(g[k][i]) * g[k][j];
      defect = std::max(defect, std::abs(acc - (i == j ? cxd(1.0) : cxd(0.0))));
    }
  if (defect > 1e-12) throw Error("su2_act: matrix is not unitary");
  cxd det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  if (std::abs(det - cxd(1.0)) > 1e-12) throw Error("su2_act: determinant is not 1");
}

}  // namespace

UrState UrState::make(cxd a, cxd b) {
  UrState s{{a, b}};
  check_normalized(s.spinor.data(), 2, "ur state");
  return s;
}

UrTensorState UrTensorState::make(int m, std::vector<cxd> amplitudes) {
  if (m < 1) throw Error("ur tensor state needs m >= 1");
  if (amplitudes.size() != (std::size_t{1} << m))
    throw Error("ur tensor state needs 2^m amplitudes");
  check_normalized(amplitudes.data(), amplitudes.size(), "ur tensor state");
  return UrTensorState{m, std::move(amplitudes)};
}

UrState su2_act(const SU2& g, const UrState& state) {
  check_su2(g);
  return UrState{{g[0][0] * state.spinor[0] + g[0][1] * state.spinor[1],
                  g[1][0] * state.spinor[0] + g[1][1] * state.spinor[1]}};
}

UrTensorState su2_act(const SU2& g, const UrTensorState& state) {
  check_su2(g);
  UrTensorState out = state;
  const std::size_t dim = out.amplitudes.size();
  for (int q = 0; q < out.m; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & stride) continue;
      cxd a0 = out.amplitudes[base];
      cxd a1 = out.amplitudes[base | stride];
      out.amplitudes[base] = g[0][0] * a0 + g[0][1] * a1;
      out.amplitudes[base | stride] = g[1][0] * a0 + g[1][1] * a1;
    }
  }
  return out;
}

UrTensorState embed(const std::vector<cxd>& state) {
  if (state.size() < 2) throw Error("embed needs a state of dimension >= 2");
  check_normalized(state.data(), state.size(), "embedded state");
  int m = 1;
  while ((std::size_t{1} << m) < state.size()) ++m;
  std::vector<cxd> amp(std::size_t{1} << m, cxd(0.0, 0.0));
  std::copy(state.begin(), state.end(), amp.begin());
  return UrTensorState{m, std::move(amp)};
}

GreenParaboseSet::GreenParaboseSet(int order, int d, int cutoff, std::size_t max_dim)
    : order_(order), d_(d), cutoff_(cutoff) {
  if (order < 1 || d < 1) throw Error("parabose set needs order >= 1 and modes >= 1");
  std::vector<SpaceMode> modes;
  for (int alpha = 1; alpha <= order; ++alpha)
    for (int r = 1; r <= d; ++r) modes.push_back({Species::Ur, mode(alpha, r)});
  space_ = FockSpace::build(std::move(modes), FockStatistics::parabose(order, cutoff), max_dim);
}

SparseOperator GreenParaboseSet::component(int alpha, int r, LadderKind kind) const {
  return ladder(space_, Species::Ur, mode(alpha, r), kind);
}

SparseOperator GreenParaboseSet::composite(int r, LadderKind kind) const {
  SparseOperator acc = component(1, r, kind);
  for (int alpha = 2; alpha <= order_; ++alpha) acc += component(alpha, r, kind);
  return acc;
}

double GreenParaboseSet::vacuum_pairing(int r) const {
  SparseOperator aa = composite(r, LadderKind::Annihilate) * composite(r, LadderKind::Create);
  return aa.vacuum_element().real();
}

double GreenParaboseSet::trilinear_residual() const {
  // intermediate states reach total+1, so the statement block is total <= cutoff-1
  auto keep = space_->total_at_most(cutoff_ - 1);
  double worst = 0.0;
  for (int k = 1; k <= d_; ++k) {
    SparseOperator ak = composite(k, LadderKind::Annihilate);
    for (int l = 1; l <= d_; ++l) {
      SparseOperator alp = composite(l, LadderKind::Create);
      for (int m = 1; m <= d_; ++m) {
        SparseOperator am = composite(m, LadderKind::Annihilate);
        SparseOperator lhs = commutator(ak, anticommutator(alp, am));
        if (k == l) lhs -= am.scaled(cxd(2.0, 0.0));
        worst = std::max(worst, lhs.matrix().masked(keep, keep).max_abs());
      }
    }
  }
  return worst;
}

GreenParaboseSet green_parabose(int order, int d, int cutoff, std::size_t max_dim) {
  return GreenParaboseSet(order, d, cutoff, max_dim);
}

nlohmann::json parabose_report(int order, int d, int cutoff, double tolerance) {
  GreenParaboseSet set(order, d, cutoff);
  double pairing_dev = 0.0;
  for (int r = 1; r <= d; ++r)
    pairing_dev = std::max(pairing_dev,
                           std::abs(set.vacuum_pairing(r) - static_cast<double>(order)));
  const double trilinear = set.trilinear_residual();

  nlohmann::json j;
  j["p"] = order;
  j["modes"] = d;
  j["cutoff"] = cutoff;
  j["vacuum_pairing"] = static_cast<double>(order);
  j["vacuum_pairing_max_deviation"] = pairing_dev;
  j["trilinear_residual"] = trilinear;
  j["tolerance"] = tolerance;
  j["pass"] = pairing_dev <= tolerance && trilinear <= tolerance;
  return j;
}

nlohmann::json ur_tower_demo(const std::vector<FockStatistics>& lifts, int draws,
                             std::uint64_t seed, int parabose_order, int parabose_modes,
                             int parabose_cutoff, std::size_t max_dim) {
  auto base = Alternative::make({"yes", "no"});
  QuantizationTower tower = build_tower(base, lifts, max_dim);

  static const char* kNames[] = {"alternative", "ur", "particle", "quantized field"};
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t i = 1; i < tower.levels.size(); ++i) {  // level 0 is the classical alternative
    const auto& lv = tower.levels[i];
    nlohmann::json j;
    j["name"] = i < 4 ? kNames[i] : "level-" + std::to_string(i);
    j["dim"] = lv.dim;
    j["statistics"] = lv.statistics;
    if (lv.space)
      j["eq11_max_deviation"] = frequency_identity_deviation(lv.space, draws, seed + i);
    else
      j["eq11_max_deviation"] = nullptr;
    levels.push_back(std::move(j));
  }

  nlohmann::json report;
  report["levels"] = std::move(levels);
  report["parabose"] = parabose_report(parabose_order, parabose_modes, parabose_cutoff, 1e-10);
  report["draws"] = draws;
  report["seed"] = seed;
  return report;
}

}  // namespace mq
