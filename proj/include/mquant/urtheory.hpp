#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mquant/fock.hpp"
#include "mquant/multiquant.hpp"

#include "json.hpp"

namespace mq {

// The quantized binary alternative: a normalized 2-spinor.
struct UrState {
  std::array<cxd, 2> spinor;

  static UrState make(cxd a, cxd b);
};

// m-fold tensor product of urs; amplitudes over the 2^m computational basis.
struct UrTensorState {
  int m = 1;
  std::vector<cxd> amplitudes;

  static UrTensorState make(int m, std::vector<cxd> amplitudes);
};

using SU2 = std::array<std::array<cxd, 2>, 2>;

// Applies a special-unitary 2x2 matrix (validated to 1e-12) to an ur, or as
// g tensor ... tensor g to an ur tensor state.
UrState su2_act(const SU2& g, const UrState& state);
UrTensorState su2_act(const SU2& g, const UrTensorState& state);

// Embeds a normalized n-vector isometrically into ceil(log2 n) urs by
// computational-basis padding.
UrTensorState embed(const std::vector<cxd>& state);

// Parabose operators of order p over d logical modes, realized as p Bose
// Green components with Klein sign structure on their product Fock space.
class GreenParaboseSet {
 public:
  GreenParaboseSet(int order, int d, int cutoff,
                   std::size_t max_dim = FockSpace::kDefaultMaxDim);

  int order() const { return order_; }
  int modes() const { return d_; }
  int cutoff() const { return cutoff_; }
  const SpacePtr& space() const { return space_; }

  // Green component operators (alpha = 1..p, r = 1..d).
  SparseOperator component(int alpha, int r, LadderKind kind) const;
  // Composite operators A_r = sum_alpha component(alpha, r).
  SparseOperator composite(int r, LadderKind kind) const;

  RExpr composite_expr(int r, LadderKind kind) const {
    return parabose_ladder_expr(mode(static_cast<std::int64_t>(r)), kind, order_);
  }

  // <0| A_r A_r^+ |0>, equal to the order for every r.
  double vacuum_pairing(int r) const;

  // max over k,l,m of || [A_k, {A_l^+, A_m}] - 2 delta_kl A_m || on the
  // block of states whose total occupation stays below the cutoff
  // throughout the triple product.
  double trilinear_residual() const;

 private:
  int order_;
  int d_;
  int cutoff_;
  SpacePtr space_;
};

GreenParaboseSet green_parabose(int order, int d, int cutoff,
                                std::size_t max_dim = FockSpace::kDefaultMaxDim);

nlohmann::json parabose_report(int order, int d, int cutoff, double tolerance);

// The tower rooted at the binary alternative with the standard level
// names: alternative -> ur -> particle -> quantized field. `lifts` holds
// one statistics entry per quantization step past the first.
nlohmann::json ur_tower_demo(const std::vector<FockStatistics>& lifts, int draws,
                             std::uint64_t seed, int parabose_order = 2, int parabose_modes = 2,
                             int parabose_cutoff = 3,
                             std::size_t max_dim = FockSpace::kDefaultMaxDim);

}  // namespace mq
