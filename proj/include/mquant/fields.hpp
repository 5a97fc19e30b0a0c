#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mquant/fock.hpp"

#include "json.hpp"

namespace mq {

// Spacetime point (t, x, y, z) and 4-momenta use the metric (+,-,-,-).
using FourVector = std::array<double, 4>;

inline double minkowski(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

// Finite set of discrete 3-momenta with a common mass. Lattice scale and
// quantization volume are 1; integrals over d^3p become sums over modes.
struct MomentumLattice {
  std::vector<std::array<double, 3>> momenta;
  double mass = 0.0;

  static MomentumLattice create(std::vector<std::array<double, 3>> momenta, double mass);

  std::size_t size() const { return momenta.size(); }
  double energy(std::size_t i) const;
  FourVector four_momentum(std::size_t i) const;  // (E, p)
};

using Mat4 = std::array<std::array<cxd, 4>, 4>;

// Gamma matrices in the Dirac representation, metric (+,-,-,-).
const std::array<Mat4, 4>& gamma_matrices();

// Momentum-spin mode basis of the discretized Dirac field: positive and
// negative energy spinors u(p,s), v(p,s) normalized to ubar u = 1,
// vbar v = -1 (the measure weight of the mode expansion is sqrt(m/E)).
class DiracModeBasis {
 public:
  static DiracModeBasis build(const MomentumLattice& lattice);

  const MomentumLattice& lattice() const { return lattice_; }
  // spinor components, s in {1,2}
  const std::array<cxd, 4>& u(std::size_t ip, int s) const { return u_[2 * ip + (s - 1)]; }
  const std::array<cxd, 4>& v(std::size_t ip, int s) const { return v_[2 * ip + (s - 1)]; }

  ModeLabel mode_label(std::size_t ip, int s) const {
    return mode(static_cast<std::int64_t>(ip + 1), s);
  }

  // Fermi space over electron and positron modes, electrons first.
  SpacePtr make_space(std::size_t max_dim = FockSpace::kDefaultMaxDim) const;

 private:
  MomentumLattice lattice_;
  std::vector<std::array<cxd, 4>> u_;
  std::vector<std::array<cxd, 4>> v_;
};

// Transverse photon modes (radiation gauge): two real orthonormal
// polarization vectors per momentum, both orthogonal to k.
class PhotonModeBasis {
 public:
  static PhotonModeBasis build(const MomentumLattice& lattice);

  const MomentumLattice& lattice() const { return lattice_; }
  const std::array<double, 3>& polarization(std::size_t ik, int lambda) const {
    return pol_[2 * ik + (lambda - 1)];
  }

  ModeLabel mode_label(std::size_t ik, int lambda) const {
    return mode(static_cast<std::int64_t>(ik + 1), lambda);
  }

  SpacePtr make_space(int cutoff, std::size_t max_dim = FockSpace::kDefaultMaxDim) const;

 private:
  MomentumLattice lattice_;
  std::vector<std::array<double, 3>> pol_;
};

// A field operator at a point: the coefficient-level expression and its
// matrix image on the given space.
struct FieldComponent {
  CExpr symbolic;
  SparseOperator numeric;
};

FieldComponent make_component(CExpr symbolic, const SpacePtr& space);

// max |coeff| of (e - adjoint(e)); exactly 0 for a Hermitian construction
double hermiticity_defect_symbolic(const CExpr& e);
double hermiticity_defect_numeric(const SparseOperator& op);

// psi_a(x) = sum_{p,s} sqrt(m/E) (b(p,s) u_a e^{-ipx} + d+(p,s) v_a e^{+ipx})
std::array<FieldComponent, 4> dirac_field(const DiracModeBasis& basis, const SpacePtr& space,
                                          const FourVector& x);
// psibar = psi^+ gamma^0
std::array<FieldComponent, 4> dirac_field_bar(const DiracModeBasis& basis, const SpacePtr& space,
                                              const FourVector& x);

// Normal-ordered current components psibar gamma^mu psi (vacuum constant
// subtracted).
std::array<FieldComponent, 4> probability_current(const DiracModeBasis& basis,
                                                  const SpacePtr& space, const FourVector& x);

// Conserved global charge sum_{p,s} (b+b - d+d) and free Hamiltonian
// sum_{p,s} E (b+b + d+d).
RExpr global_charge_expr(const DiracModeBasis& basis);
SparseOperator global_charge(const DiracModeBasis& basis, const SpacePtr& space);
CExpr free_hamiltonian_expr(const DiracModeBasis& basis);
SparseOperator free_hamiltonian(const DiracModeBasis& basis, const SpacePtr& space);

// A_j(x) = sum_{k,lambda} (1/sqrt(2 k0)) eps_j (a e^{-ikx} + a+ e^{+ikx}),
// spatial components, Hermitian by construction.
std::array<FieldComponent, 3> photon_field(const PhotonModeBasis& basis, const SpacePtr& space,
                                           const FourVector& x);

// Antisymmetric tensor F^{mu nu} = d^mu A^nu - d^nu A^mu per plane-wave
// mode (d^mu -> -i k^mu on the annihilation part, +i k^mu on the creation
// part). electric(i) = F^{i0}; magnetic components satisfy F^{ij} =
// -eps^{ijk} B_k.
struct FieldTensor {
  std::array<std::array<FieldComponent, 4>, 4> f;

  const FieldComponent& electric(int i) const { return f[i][0]; }  // i = 1..3
  FieldComponent magnetic(int k, const SpacePtr& space) const;
};

FieldTensor field_tensor(const PhotonModeBasis& basis, const SpacePtr& space, const FourVector& x);

// Per-mode free current coefficient -k^2 eps^nu + k^nu (k.eps). Vanishes
// exactly for on-shell transverse input; off-shell input is reported with
// the nonzero coefficient rather than rejected.
struct ModeCurrent {
  std::array<cxd, 4> current;
  double k_squared;
  cxd k_dot_eps;
  bool on_shell;
};

ModeCurrent photon_mode_current(const FourVector& k, const std::array<cxd, 4>& eps);

struct PhotonNumberStats {
  double mean;
  double variance;
};

PhotonNumberStats photon_number_statistics(const StateVector& state);

// max_j || [N, A_j(x)] ||_F : the photon number non-conservation witness
double number_field_commutator_norm(const std::array<FieldComponent, 3>& field,
                                    const SpacePtr& space);

// The structural contrast between the two quantized fields, as one JSON
// report (defects, commutator norms, per-mode currents).
nlohmann::json contrast_report(const MomentumLattice& dirac_lattice, int photon_cutoff,
                               const FourVector& x, bool off_shell_probe,
                               std::size_t max_dim = FockSpace::kDefaultMaxDim);

}  // namespace mq
