#pragma once

#include <cstdint>
#include <memory>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mquant/algebra.hpp"
#include "mquant/errors.hpp"
#include "mquant/normal_order.hpp"
#include "mquant/sparse.hpp"

namespace mq {

// A mode of a Fock space, qualified by species so that e.g. electron and
// positron ladders over the same momentum label stay distinct.
struct SpaceMode {
  Species species = Species::Photon;
  ModeLabel label;

  auto operator<=>(const SpaceMode&) const = default;

  std::string str() const {
    return std::string(1, species_letter(species)) + "(" + label.str() + ")";
  }
};

// Statistics of a whole space. Bose and parabose spaces are truncated by
// total occupation; parabose spaces are the Bose product space over Green
// components with Klein sign structure applied by the ladder builders.
struct FockStatistics {
  StatKind kind = StatKind::Fermi;
  int order = 1;   // parabose order p
  int cutoff = 0;  // total-occupation bound for Bose/Parabose

  static FockStatistics fermi() { return {StatKind::Fermi, 1, 0}; }
  static FockStatistics bose(int cutoff) { return {StatKind::Bose, 1, cutoff}; }
  static FockStatistics parabose(int order, int cutoff) { return {StatKind::Parabose, order, cutoff}; }

  std::string str() const;

  bool operator==(const FockStatistics&) const = default;
};

// Truncated occupation-number space over an ordered, finite mode set.
// Basis enumeration is graded by total occupation; inside a grade the
// first mode carries the largest occupation first. The vacuum is index 0.
class FockSpace {
 public:
  static constexpr std::size_t kDefaultMaxDim = 4096;

  static std::shared_ptr<const FockSpace> build(std::vector<SpaceMode> modes,
                                                FockStatistics stats,
                                                std::size_t max_dim = kDefaultMaxDim);

  std::size_t dim() const { return basis_.size(); }
  std::size_t mode_count() const { return modes_.size(); }
  const std::vector<SpaceMode>& modes() const { return modes_; }
  const FockStatistics& statistics() const { return stats_; }

  const std::vector<std::vector<std::uint8_t>>& basis() const { return basis_; }
  int total_occupation(std::size_t basis_index) const { return totals_[basis_index]; }

  std::optional<std::size_t> index_of(const std::vector<std::uint8_t>& occ) const;
  std::optional<std::size_t> find_mode(Species s, const ModeLabel& label) const;

  // Green component of a mode (1 for Fermi/Bose spaces).
  int component_of(std::size_t mode_index) const;

  // Physical modes grouped by logical mode. For parabose spaces a logical
  // mode is the label with the component atom stripped, and the group holds
  // its p Green components; otherwise every mode is its own group.
  struct LogicalMode {
    ModeLabel label;
    std::vector<std::size_t> members;
  };
  const std::vector<LogicalMode>& logical_modes() const { return logical_; }

  // keep-mask for basis states with total occupation <= bound
  std::vector<char> total_at_most(int bound) const;

  std::string describe() const;

 private:
  FockSpace() = default;

  std::vector<SpaceMode> modes_;
  FockStatistics stats_;
  std::vector<std::vector<std::uint8_t>> basis_;
  std::vector<int> totals_;
  std::map<std::vector<std::uint8_t>, std::size_t> index_;
  std::vector<int> components_;
  std::vector<LogicalMode> logical_;
};

using SpacePtr = std::shared_ptr<const FockSpace>;

// Sparse complex operator bound to the space it acts on. Combining two
// operators requires the identical space object.
class SparseOperator {
 public:
  SparseOperator() = default;  // empty placeholder; not usable until assigned
  SparseOperator(SpacePtr space, SparseMatrix mat);

  const SpacePtr& space() const { return space_; }
  const SparseMatrix& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

  SparseOperator& operator+=(const SparseOperator& o);
  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  SparseOperator& operator-=(const SparseOperator& o);
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  SparseOperator operator*(const SparseOperator& o) const;
  SparseOperator scaled(cxd alpha) const;
  SparseOperator adjoint() const;

  cxd vacuum_element() const { return mat_.entry(0, 0); }

  double frobenius_norm() const { return mat_.frobenius_norm(); }
  double max_abs() const { return mat_.max_abs(); }
  double spectral_norm_lb(int iterations = 60) const { return mat_.spectral_norm_lb(iterations); }

  SparseOperator masked_total_at_most(int bound) const;

 private:
  void check_same_space(const SparseOperator& o) const;

  SpacePtr space_;
  SparseMatrix mat_;
};

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b);

// Complex amplitude vector over a space's basis.
class StateVector {
 public:
  StateVector(SpacePtr space, std::vector<cxd> amplitudes, bool normalized = false);

  const SpacePtr& space() const { return space_; }
  const std::vector<cxd>& amplitudes() const { return amp_; }

  double norm() const;
  StateVector normalized() const;

  cxd expectation(const SparseOperator& op) const;

  static cxd inner(const StateVector& a, const StateVector& b);  // <a|b>

 private:
  SpacePtr space_;
  std::vector<cxd> amp_;
};

StateVector vacuum_state(SpacePtr space);
StateVector apply(const SparseOperator& op, const StateVector& v);

// Single ladder operator as a matrix. Fermi spaces use the Jordan-Wigner
// sign string over the space's mode order; Bose spaces use sqrt(n) weights
// with transitions beyond the cutoff mapped to zero; parabose spaces add
// the Klein sign of the mode's Green component.
SparseOperator ladder(const SpacePtr& space, Species species, const ModeLabel& label, LadderKind kind);

SparseOperator number_op(const SpacePtr& space, Species species, const ModeLabel& label);
SparseOperator total_number(const SpacePtr& space);

// Coherent state on one Bose mode, truncated at the space cutoff and
// renormalized. Requires |alpha|^2 <= cutoff/4.
StateVector coherent_state(const SpacePtr& space, Species species, const ModeLabel& label, cxd alpha);

namespace detail {
SparseMatrix ladder_matrix(const FockSpace& space, std::size_t mode_index, LadderKind kind);
}

// Numeric image of a symbolic expression: sums map to sums, products to
// matrix products, the adjoint to the matrix adjoint. Deltas between
// distinct labels resolve to zero, between equal labels to one.
template <class C>
SparseOperator materialize(const Expr<C>& e, const SpacePtr& space) {
  const auto& sp = *space;
  SparseMatrix acc(sp.dim());
  std::map<LadderOp, SparseMatrix> cache;
  for (const auto& t : e.terms()) {
    bool vanished = false;
    for (const auto& d : t.deltas)
      if (!(d.lo == d.hi)) {
        vanished = true;
        break;
      }
    if (vanished) continue;

    SparseMatrix m = SparseMatrix::identity(sp.dim());
    for (const auto& f : t.ops) {
      auto it = cache.find(f);
      if (it == cache.end()) {
        if ((f.species == Species::Electron || f.species == Species::Positron) &&
            sp.statistics().kind != StatKind::Fermi)
          throw StatisticsMismatch("fermionic species on a non-Fermi space");
        if (f.species == Species::Photon && sp.statistics().kind != StatKind::Bose)
          throw StatisticsMismatch("photon species on a non-Bose space");
        auto idx = sp.find_mode(f.species, f.mode);
        if (!idx)
          throw UnknownMode("mode " + f.str() + " not present in space " + sp.describe());
        it = cache.emplace(f, detail::ladder_matrix(sp, *idx, f.kind)).first;
      }
      m = m * it->second;
    }
    acc += m.scaled(CoeffOps<C>::to_complex(t.coeff));
  }
  return SparseOperator(space, std::move(acc));
}

}  // namespace mq
