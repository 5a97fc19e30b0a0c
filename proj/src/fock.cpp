#include "mquant/fock.hpp"

#include <algorithm>
#include <cmath>

#include "mquant/kernels.hpp"

namespace mq {

std::string FockStatistics::str() const {
  switch (kind) {
    case StatKind::Fermi: return "fermi";
    case StatKind::Bose: return "bose:" + std::to_string(cutoff);
    case StatKind::Parabose:
      return "parabose:" + std::to_string(order) + ":" + std::to_string(cutoff);
  }
  return "?";
}

namespace {

// Number of occupation vectors over m modes with total <= cutoff and
// per-mode cap, stopping early once the count exceeds the bound.
std::size_t count_states(std::size_t m, int cutoff, int per_mode_cap, std::size_t bound) {
  // states[t] = number of vectors with total exactly t
  std::vector<std::size_t> states(cutoff + 1, 0);
  states[0] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> next(cutoff + 1, 0);
    for (int t = 0; t <= cutoff; ++t) {
      if (states[t] == 0) continue;
      for (int n = 0; n <= per_mode_cap && t + n <= cutoff; ++n) {
        next[t + n] += states[t];
        if (next[t + n] > 4 * bound + 4) return 4 * bound + 4;  // early out
      }
    }
    states.swap(next);
  }
  std::size_t total = 0;
  for (std::size_t c : states) total += c;
  return total;
}

void enumerate(std::size_t m, int budget, int per_mode_cap, std::vector<std::uint8_t>& cur,
               std::size_t pos, int want_total, std::vector<std::vector<std::uint8_t>>& out) {
  if (pos == m) {
    if (budget == 0) out.push_back(cur);
    return;
  }
  int hi = std::min(per_mode_cap, budget);
  for (int n = hi; n >= 0; --n) {
    cur[pos] = static_cast<std::uint8_t>(n);
    enumerate(m, budget - n, per_mode_cap, cur, pos + 1, want_total, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::shared_ptr<const FockSpace> FockSpace::build(std::vector<SpaceMode> modes,
                                                  FockStatistics stats, std::size_t max_dim) {
  if (modes.empty()) throw Error("fock: empty mode list");
  {
    auto sorted = modes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("fock: duplicate mode");
  }

  int per_mode_cap;
  int cutoff;
  switch (stats.kind) {
    case StatKind::Fermi:
      per_mode_cap = 1;
      cutoff = static_cast<int>(modes.size());
      break;
    case StatKind::Bose:
    case StatKind::Parabose:
      if (stats.cutoff < 1) throw Error("fock: cutoff must be >= 1");
      per_mode_cap = stats.cutoff;
      cutoff = stats.cutoff;
      break;
    default:
      throw Error("fock: bad statistics");
  }

  std::size_t predicted = count_states(modes.size(), cutoff, per_mode_cap, max_dim);
  if (predicted > max_dim)
    throw DimensionOverflow("fock: dimension " + std::to_string(predicted) + " exceeds bound " +
                            std::to_string(max_dim));

  auto space = std::shared_ptr<FockSpace>(new FockSpace());
  space->modes_ = std::move(modes);
  space->stats_ = stats;

  std::vector<std::uint8_t> cur(space->modes_.size(), 0);
  for (int t = 0; t <= cutoff; ++t)
    enumerate(space->modes_.size(), t, per_mode_cap, cur, 0, t, space->basis_);

  space->totals_.reserve(space->basis_.size());
  for (std::size_t i = 0; i < space->basis_.size(); ++i) {
    int tot = 0;
    for (auto n : space->basis_[i]) tot += n;
    space->totals_.push_back(tot);
    space->index_.emplace(space->basis_[i], i);
  }

  // Green components and logical-mode grouping.
  space->components_.assign(space->modes_.size(), 1);
  if (stats.kind == StatKind::Parabose) {
    std::map<ModeLabel, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < space->modes_.size(); ++i) {
      const auto& atoms = space->modes_[i].label.atoms;
      if (atoms.empty() || atoms[0].symbolic || atoms[0].num < 1 || atoms[0].num > stats.order)
        throw Error("fock: parabose mode " + space->modes_[i].str() +
                    " lacks a Green component index in 1.." + std::to_string(stats.order));
      space->components_[i] = static_cast<int>(atoms[0].num);
      ModeLabel logical;
      logical.atoms.assign(atoms.begin() + 1, atoms.end());
      groups[logical].push_back(i);
    }
    for (auto& [label, members] : groups)
      space->logical_.push_back(LogicalMode{label, std::move(members)});
  } else {
    for (std::size_t i = 0; i < space->modes_.size(); ++i)
      space->logical_.push_back(LogicalMode{space->modes_[i].label, {i}});
  }

  return space;
}

std::optional<std::size_t> FockSpace::index_of(const std::vector<std::uint8_t>& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FockSpace::find_mode(Species s, const ModeLabel& label) const {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].species == s && modes_[i].label == label) return i;
  return std::nullopt;
}

int FockSpace::component_of(std::size_t mode_index) const { return components_[mode_index]; }

std::vector<char> FockSpace::total_at_most(int bound) const {
  std::vector<char> keep(dim());
  for (std::size_t i = 0; i < dim(); ++i) keep[i] = totals_[i] <= bound;
  return keep;
}

std::string FockSpace::describe() const {
  std::string s = stats_.str() + "[";
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (i) s += ' ';
    s += modes_[i].str();
  }
  s += "]";
  return s;
}

namespace detail {

SparseMatrix ladder_matrix(const FockSpace& space, std::size_t mode_index, LadderKind kind) {
  const auto& basis = space.basis();
  const auto stats = space.statistics();
  std::vector<SparseMatrix::Triplet> trip;
  trip.reserve(basis.size());
  std::vector<std::uint8_t> target;

  for (std::size_t src = 0; src < basis.size(); ++src) {
    const auto& occ = basis[src];
    const int n = occ[mode_index];
    double value;

    if (kind == LadderKind::Annihilate) {
      if (n == 0) continue;
      value = (stats.kind == StatKind::Fermi) ? 1.0 : std::sqrt(static_cast<double>(n));
    } else {
      if (stats.kind == StatKind::Fermi) {
        if (n == 1) continue;
        value = 1.0;
      } else {
        if (space.total_occupation(src) + 1 > stats.cutoff) continue;  // truncation
        value = std::sqrt(static_cast<double>(n + 1));
      }
    }

    if (stats.kind == StatKind::Fermi) {
      int before = 0;
      for (std::size_t j = 0; j < mode_index; ++j) before += occ[j];
      if (before & 1) value = -value;
    } else if (stats.kind == StatKind::Parabose) {
      // Klein sign: parity of the occupation of all earlier Green components.
      const int comp = space.component_of(mode_index);
      int earlier = 0;
      for (std::size_t j = 0; j < occ.size(); ++j)
        if (space.component_of(j) < comp) earlier += occ[j];
      if (earlier & 1) value = -value;
    }

    target = occ;
    target[mode_index] = static_cast<std::uint8_t>(kind == LadderKind::Create ? n + 1 : n - 1);
    auto dst = space.index_of(target);
    if (!dst) continue;
    trip.push_back({static_cast<std::uint32_t>(*dst), static_cast<std::uint32_t>(src),
                    cxd(value, 0.0)});
  }
  return SparseMatrix::from_triplets(space.dim(), std::move(trip));
}

}  // namespace detail

SparseOperator::SparseOperator(SpacePtr space, SparseMatrix mat)
    : space_(std::move(space)), mat_(std::move(mat)) {
  if (!space_ || mat_.dim() != space_->dim())
    throw SpaceMismatch("operator dimension does not match its space");
}

void SparseOperator::check_same_space(const SparseOperator& o) const {
  if (space_.get() != o.space_.get())
    throw SpaceMismatch("operators live on different spaces");
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& o) {
  check_same_space(o);
  mat_ += o.mat_;
  return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& o) {
  check_same_space(o);
  mat_ -= o.mat_;
  return *this;
}

SparseOperator SparseOperator::operator*(const SparseOperator& o) const {
  check_same_space(o);
  return SparseOperator(space_, mat_ * o.mat_);
}

SparseOperator SparseOperator::scaled(cxd alpha) const {
  return SparseOperator(space_, mat_.scaled(alpha));
}

SparseOperator SparseOperator::adjoint() const { return SparseOperator(space_, mat_.adjoint()); }

SparseOperator SparseOperator::masked_total_at_most(int bound) const {
  auto keep = space_->total_at_most(bound);
  return SparseOperator(space_, mat_.masked(keep, keep));
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b + b * a;
}

StateVector::StateVector(SpacePtr space, std::vector<cxd> amplitudes, bool normalized)
    : space_(std::move(space)), amp_(std::move(amplitudes)) {
  if (!space_ || amp_.size() != space_->dim())
    throw SpaceMismatch("state dimension does not match its space");
  if (normalized && std::abs(norm() - 1.0) > 1e-12)
    throw Error("state flagged normalized has norm " + std::to_string(norm()));
}

double StateVector::norm() const {
  return std::sqrt(kernels::active().norm_sq(amp_.size(), amp_.data()));
}

StateVector StateVector::normalized() const {
  double n = norm();
  if (n == 0.0) throw Error("cannot normalize the zero state");
  std::vector<cxd> a = amp_;
  kernels::active().scale(a.size(), cxd(1.0 / n, 0.0), a.data());
  return StateVector(space_, std::move(a), true);
}

cxd StateVector::expectation(const SparseOperator& op) const {
  if (op.space().get() != space_.get()) throw SpaceMismatch("expectation: space mismatch");
  std::vector<cxd> y = op.matrix().apply(amp_);
  return kernels::active().dot_conj(amp_.size(), amp_.data(), y.data());
}

cxd StateVector::inner(const StateVector& a, const StateVector& b) {
  if (a.space().get() != b.space().get()) throw SpaceMismatch("inner: space mismatch");
  return kernels::active().dot_conj(a.amp_.size(), a.amp_.data(), b.amp_.data());
}

StateVector vacuum_state(SpacePtr space) {
  std::vector<cxd> amp(space->dim(), cxd(0.0, 0.0));
  amp[0] = cxd(1.0, 0.0);
  return StateVector(std::move(space), std::move(amp), true);
}

StateVector apply(const SparseOperator& op, const StateVector& v) {
  if (op.space().get() != v.space().get()) throw SpaceMismatch("apply: space mismatch");
  return StateVector(v.space(), op.matrix().apply(v.amplitudes()));
}

SparseOperator ladder(const SpacePtr& space, Species species, const ModeLabel& label,
                      LadderKind kind) {
  auto idx = space->find_mode(species, label);
  if (!idx)
    throw UnknownMode("mode " + SpaceMode{species, label}.str() + " not present in space " +
                      space->describe());
  return SparseOperator(space, detail::ladder_matrix(*space, *idx, kind));
}

SparseOperator number_op(const SpacePtr& space, Species species, const ModeLabel& label) {
  auto idx = space->find_mode(species, label);
  if (!idx)
    throw UnknownMode("mode " + SpaceMode{species, label}.str() + " not present in space " +
                      space->describe());
  std::vector<cxd> diag(space->dim());
  for (std::size_t i = 0; i < space->dim(); ++i)
    diag[i] = cxd(static_cast<double>(space->basis()[i][*idx]), 0.0);
  return SparseOperator(space, SparseMatrix::diagonal(std::move(diag)));
}

SparseOperator total_number(const SpacePtr& space) {
  std::vector<cxd> diag(space->dim());
  for (std::size_t i = 0; i < space->dim(); ++i)
    diag[i] = cxd(static_cast<double>(space->total_occupation(i)), 0.0);
  return SparseOperator(space, SparseMatrix::diagonal(std::move(diag)));
}

StateVector coherent_state(const SpacePtr& space, Species species, const ModeLabel& label,
                           cxd alpha) {
  if (space->statistics().kind != StatKind::Bose)
    throw StatisticsMismatch("coherent states require a Bose space");
  auto idx = space->find_mode(species, label);
  if (!idx)
    throw UnknownMode("mode " + SpaceMode{species, label}.str() + " not present in space " +
                      space->describe());
  const int cutoff = space->statistics().cutoff;
  if (std::norm(alpha) > cutoff / 4.0)
    throw Error("coherent amplitude too large for cutoff: need |alpha|^2 <= cutoff/4");

  std::vector<cxd> amp(space->dim(), cxd(0.0, 0.0));
  std::vector<std::uint8_t> occ(space->mode_count(), 0);
  cxd term(1.0, 0.0);
  for (int n = 0; n <= cutoff; ++n) {
    occ[*idx] = static_cast<std::uint8_t>(n);
    auto i = space->index_of(occ);
    if (i) amp[*i] = term;
    term *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return StateVector(space, std::move(amp)).normalized();
}

}  // namespace mq
