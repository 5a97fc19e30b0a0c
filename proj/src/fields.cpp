#include "mquant/fields.hpp"

#include <cmath>

namespace mq {

MomentumLattice MomentumLattice::create(std::vector<std::array<double, 3>> momenta, double mass) {
  if (momenta.empty()) throw Error("momentum lattice needs at least one momentum");
  if (mass < 0.0) throw Error("mass must be nonnegative");
  MomentumLattice l;
  l.momenta = std::move(momenta);
  l.mass = mass;
  return l;
}

double MomentumLattice::energy(std::size_t i) const {
  const auto& p = momenta[i];
  return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + mass * mass);
}

FourVector MomentumLattice::four_momentum(std::size_t i) const {
  return {energy(i), momenta[i][0], momenta[i][1], momenta[i][2]};
}

namespace {

constexpr cxd I{0.0, 1.0};

std::array<Mat4, 4> build_gammas() {
  std::array<Mat4, 4> g{};
  // Dirac representation
  g[0][0][0] = 1;
  g[0][1][1] = 1;
  g[0][2][2] = -1;
  g[0][3][3] = -1;

  g[1][0][3] = 1;
  g[1][1][2] = 1;
  g[1][2][1] = -1;
  g[1][3][0] = -1;

  g[2][0][3] = -I;
  g[2][1][2] = I;
  g[2][2][1] = I;
  g[2][3][0] = -I;

  g[3][0][2] = 1;
  g[3][1][3] = -1;
  g[3][2][0] = -1;
  g[3][3][1] = 1;
  return g;
}

}  // namespace

const std::array<Mat4, 4>& gamma_matrices() {
  static const std::array<Mat4, 4> g = build_gammas();
  return g;
}

DiracModeBasis DiracModeBasis::build(const MomentumLattice& lattice) {
  if (lattice.mass <= 0.0)
    throw Error("massless Dirac lattice rejected: the sqrt(m/E) measure is undefined at m = 0");
  DiracModeBasis b;
  b.lattice_ = lattice;
  const double m = lattice.mass;
  for (std::size_t ip = 0; ip < lattice.size(); ++ip) {
    const auto& p = lattice.momenta[ip];
    const double E = lattice.energy(ip);
    const double N = std::sqrt((E + m) / (2.0 * m));
    const double denom = E + m;
    const cxd pz(p[2] / denom, 0.0);
    const cxd pp(p[0] / denom, p[1] / denom);   // (p1 + i p2)/(E+m)
    const cxd pm(p[0] / denom, -p[1] / denom);  // (p1 - i p2)/(E+m)

    b.u_.push_back({N * cxd(1.0), cxd(0.0), N * pz, N * pp});
    b.u_.push_back({cxd(0.0), N * cxd(1.0), N * pm, -N * pz});
    b.v_.push_back({N * pz, N * pp, N * cxd(1.0), cxd(0.0)});
    b.v_.push_back({N * pm, -N * pz, cxd(0.0), N * cxd(1.0)});
  }
  return b;
}

SpacePtr DiracModeBasis::make_space(std::size_t max_dim) const {
  std::vector<SpaceMode> modes;
  for (std::size_t ip = 0; ip < lattice_.size(); ++ip)
    for (int s = 1; s <= 2; ++s) modes.push_back({Species::Electron, mode_label(ip, s)});
  for (std::size_t ip = 0; ip < lattice_.size(); ++ip)
    for (int s = 1; s <= 2; ++s) modes.push_back({Species::Positron, mode_label(ip, s)});
  return FockSpace::build(std::move(modes), FockStatistics::fermi(), max_dim);
}

PhotonModeBasis PhotonModeBasis::build(const MomentumLattice& lattice) {
  if (lattice.mass != 0.0) throw Error("photon lattice must be massless");
  PhotonModeBasis b;
  b.lattice_ = lattice;
  for (std::size_t ik = 0; ik < lattice.size(); ++ik) {
    const auto& k = lattice.momenta[ik];
    const double norm = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if (norm == 0.0) throw Error("photon momentum must be nonzero");
    std::array<double, 3> khat{k[0] / norm, k[1] / norm, k[2] / norm};
    std::array<double, 3> aux =
        std::abs(khat[2]) < 0.9 ? std::array<double, 3>{0, 0, 1} : std::array<double, 3>{1, 0, 0};
    auto cross = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
      return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                   a[0] * b[1] - a[1] * b[0]};
    };
    auto e1 = cross(aux, khat);
    double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (auto& c : e1) c /= n1;
    auto e2 = cross(khat, e1);
    b.pol_.push_back(e1);
    b.pol_.push_back(e2);
  }
  return b;
}

SpacePtr PhotonModeBasis::make_space(int cutoff, std::size_t max_dim) const {
  std::vector<SpaceMode> modes;
  for (std::size_t ik = 0; ik < lattice_.size(); ++ik)
    for (int lambda = 1; lambda <= 2; ++lambda)
      modes.push_back({Species::Photon, mode_label(ik, lambda)});
  return FockSpace::build(std::move(modes), FockStatistics::bose(cutoff), max_dim);
}

FieldComponent make_component(CExpr symbolic, const SpacePtr& space) {
  SparseOperator num = materialize(symbolic, space);
  return {std::move(symbolic), std::move(num)};
}

double hermiticity_defect_symbolic(const CExpr& e) { return max_coeff_abs(e - e.adjoint()); }

double hermiticity_defect_numeric(const SparseOperator& op) {
  return (op - op.adjoint()).frobenius_norm();
}

std::array<FieldComponent, 4> dirac_field(const DiracModeBasis& basis, const SpacePtr& space,
                                          const FourVector& x) {
  const auto& lattice = basis.lattice();
  std::array<FieldComponent, 4> out;
  for (int a = 0; a < 4; ++a) {
    std::vector<Term<cxd>> terms;
    for (std::size_t ip = 0; ip < lattice.size(); ++ip) {
      const double E = lattice.energy(ip);
      const double w = std::sqrt(lattice.mass / E);
      const FourVector p = lattice.four_momentum(ip);
      const cxd phase = std::polar(1.0, -minkowski(p, x));  // e^{-ipx}
      for (int s = 1; s <= 2; ++s) {
        ModeLabel label = basis.mode_label(ip, s);
        Term<cxd> tb;
        tb.coeff = w * basis.u(ip, s)[a] * phase;
        tb.ops = {annihilate(Species::Electron, label)};
        terms.push_back(std::move(tb));
        Term<cxd> td;
        td.coeff = w * basis.v(ip, s)[a] * std::conj(phase);
        td.ops = {create(Species::Positron, label)};
        terms.push_back(std::move(td));
      }
    }
    out[a] = make_component(CExpr::from_terms(std::move(terms)), space);
  }
  return out;
}

std::array<FieldComponent, 4> dirac_field_bar(const DiracModeBasis& basis, const SpacePtr& space,
                                              const FourVector& x) {
  auto psi = dirac_field(basis, space, x);
  const auto& g0 = gamma_matrices()[0];
  std::array<FieldComponent, 4> out;
  for (int a = 0; a < 4; ++a) {
    CExpr e;
    for (int b = 0; b < 4; ++b) {
      if (g0[b][a] == cxd(0.0, 0.0)) continue;
      e += psi[b].symbolic.adjoint().scaled(g0[b][a]);
    }
    out[a] = make_component(std::move(e), space);
  }
  return out;
}

std::array<FieldComponent, 4> probability_current(const DiracModeBasis& basis,
                                                  const SpacePtr& space, const FourVector& x) {
  auto psi = dirac_field(basis, space, x);
  auto psibar = dirac_field_bar(basis, space, x);
  const auto& gamma = gamma_matrices();
  std::array<FieldComponent, 4> out;
  for (int mu = 0; mu < 4; ++mu) {
    CExpr j;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (gamma[mu][a][b] == cxd(0.0, 0.0)) continue;
        j += (psibar[a].symbolic * psi[b].symbolic).scaled(gamma[mu][a][b]);
      }
    CExpr nf = normal_order(j);
    cxd c0 = vacuum_expectation(j);
    nf -= CExpr::constant(c0);  // subtract the vacuum constant
    out[mu] = make_component(std::move(nf), space);
  }
  return out;
}

RExpr global_charge_expr(const DiracModeBasis& basis) {
  RExpr q;
  const auto one = RationalComplex::one();
  for (std::size_t ip = 0; ip < basis.lattice().size(); ++ip)
    for (int s = 1; s <= 2; ++s) {
      ModeLabel label = basis.mode_label(ip, s);
      q += RExpr::single(one, {create(Species::Electron, label),
                               annihilate(Species::Electron, label)});
      q -= RExpr::single(one, {create(Species::Positron, label),
                               annihilate(Species::Positron, label)});
    }
  return q;
}

SparseOperator global_charge(const DiracModeBasis& basis, const SpacePtr& space) {
  return materialize(global_charge_expr(basis), space);
}

CExpr free_hamiltonian_expr(const DiracModeBasis& basis) {
  CExpr h;
  for (std::size_t ip = 0; ip < basis.lattice().size(); ++ip) {
    const cxd E(basis.lattice().energy(ip), 0.0);
    for (int s = 1; s <= 2; ++s) {
      ModeLabel label = basis.mode_label(ip, s);
      h += CExpr::single(E, {create(Species::Electron, label),
                             annihilate(Species::Electron, label)});
      h += CExpr::single(E, {create(Species::Positron, label),
                             annihilate(Species::Positron, label)});
    }
  }
  return h;
}

SparseOperator free_hamiltonian(const DiracModeBasis& basis, const SpacePtr& space) {
  return materialize(free_hamiltonian_expr(basis), space);
}

std::array<FieldComponent, 3> photon_field(const PhotonModeBasis& basis, const SpacePtr& space,
                                           const FourVector& x) {
  const auto& lattice = basis.lattice();
  std::array<FieldComponent, 3> out;
  for (int j = 0; j < 3; ++j) {
    std::vector<Term<cxd>> terms;
    for (std::size_t ik = 0; ik < lattice.size(); ++ik) {
      const double k0 = lattice.energy(ik);
      const double w = 1.0 / std::sqrt(2.0 * k0);
      const FourVector k = lattice.four_momentum(ik);
      const cxd phase = std::polar(1.0, -minkowski(k, x));
      for (int lambda = 1; lambda <= 2; ++lambda) {
        const double eps = basis.polarization(ik, lambda)[j];
        if (eps == 0.0) continue;
        ModeLabel label = basis.mode_label(ik, lambda);
        const cxd c = w * eps * phase;
        Term<cxd> ta;
        ta.coeff = c;
        ta.ops = {annihilate(Species::Photon, label)};
        terms.push_back(std::move(ta));
        Term<cxd> tc;
        tc.coeff = std::conj(c);  // bitwise adjoint pair: Hermitian exactly
        tc.ops = {create(Species::Photon, label)};
        terms.push_back(std::move(tc));
      }
    }
    out[j] = make_component(CExpr::from_terms(std::move(terms)), space);
  }
  return out;
}

FieldTensor field_tensor(const PhotonModeBasis& basis, const SpacePtr& space,
                         const FourVector& x) {
  const auto& lattice = basis.lattice();
  FieldTensor t;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      std::vector<Term<cxd>> terms;
      for (std::size_t ik = 0; ik < lattice.size(); ++ik) {
        const double k0 = lattice.energy(ik);
        const double w = 1.0 / std::sqrt(2.0 * k0);
        const FourVector k = lattice.four_momentum(ik);
        const cxd phase = std::polar(1.0, -minkowski(k, x));
        for (int lambda = 1; lambda <= 2; ++lambda) {
          const auto& pol = basis.polarization(ik, lambda);
          // contravariant eps^nu = (0, pol)
          auto eps = [&pol](int idx) { return idx == 0 ? 0.0 : pol[idx - 1]; };
          const double antis = k[mu] * eps(nu) - k[nu] * eps(mu);
          if (antis == 0.0) continue;
          ModeLabel label = basis.mode_label(ik, lambda);
          const cxd c = -I * w * antis * phase;  // d^mu -> -i k^mu on e^{-ikx}
          Term<cxd> ta;
          ta.coeff = c;
          ta.ops = {annihilate(Species::Photon, label)};
          terms.push_back(std::move(ta));
          Term<cxd> tc;
          tc.coeff = std::conj(c);
          tc.ops = {create(Species::Photon, label)};
          terms.push_back(std::move(tc));
        }
      }
      t.f[mu][nu] = make_component(CExpr::from_terms(std::move(terms)), space);
    }
  return t;
}

FieldComponent FieldTensor::magnetic(int k, const SpacePtr& space) const {
  // B_k = -F^{ij} for (i,j,k) cyclic
  static constexpr int ij[4][2] = {{0, 0}, {2, 3}, {3, 1}, {1, 2}};
  CExpr e = -f[ij[k][0]][ij[k][1]].symbolic;
  return make_component(std::move(e), space);
}

ModeCurrent photon_mode_current(const FourVector& k, const std::array<cxd, 4>& eps) {
  ModeCurrent mc;
  mc.k_squared = minkowski(k, k);
  mc.k_dot_eps = k[0] * eps[0] - k[1] * eps[1] - k[2] * eps[2] - k[3] * eps[3];
  mc.on_shell = std::abs(mc.k_squared) <= 1e-12 && std::abs(mc.k_dot_eps) <= 1e-12;
  for (int nu = 0; nu < 4; ++nu) mc.current[nu] = -mc.k_squared * eps[nu] + k[nu] * mc.k_dot_eps;
  return mc;
}

PhotonNumberStats photon_number_statistics(const StateVector& state) {
  SparseOperator n = total_number(state.space());
  const double mean = state.expectation(n).real();
  const double second = state.expectation(n * n).real();
  return {mean, second - mean * mean};
}

double number_field_commutator_norm(const std::array<FieldComponent, 3>& field,
                                    const SpacePtr& space) {
  SparseOperator n = total_number(space);
  double worst = 0.0;
  for (const auto& comp : field)
    worst = std::max(worst, commutator(n, comp.numeric).frobenius_norm());
  return worst;
}

nlohmann::json contrast_report(const MomentumLattice& dirac_lattice, int photon_cutoff,
                               const FourVector& x, bool off_shell_probe, std::size_t max_dim) {
  auto dbasis = DiracModeBasis::build(dirac_lattice);
  auto dspace = dbasis.make_space(max_dim);
  auto photon_lattice = MomentumLattice::create(dirac_lattice.momenta, 0.0);
  auto pbasis = PhotonModeBasis::build(photon_lattice);
  auto pspace = pbasis.make_space(photon_cutoff, max_dim);

  auto psi = dirac_field(dbasis, dspace, x);
  double dirac_defect = 0.0;
  for (const auto& comp : psi)
    dirac_defect = std::max(dirac_defect,
                            (comp.numeric - comp.numeric.adjoint()).spectral_norm_lb());

  auto a_field = photon_field(pbasis, pspace, x);
  double photon_defect_sym = 0.0;
  double photon_defect_num = 0.0;
  for (const auto& comp : a_field) {
    photon_defect_sym = std::max(photon_defect_sym, hermiticity_defect_symbolic(comp.symbolic));
    photon_defect_num = std::max(photon_defect_num, hermiticity_defect_numeric(comp.numeric));
  }

  SparseOperator q = global_charge(dbasis, dspace);
  SparseOperator h = free_hamiltonian(dbasis, dspace);
  const double charge_comm = commutator(q, h).frobenius_norm();

  const double number_comm = number_field_commutator_norm(a_field, pspace);

  double on_shell_max = 0.0;
  for (std::size_t ik = 0; ik < pbasis.lattice().size(); ++ik) {
    FourVector k = pbasis.lattice().four_momentum(ik);
    for (int lambda = 1; lambda <= 2; ++lambda) {
      const auto& pol = pbasis.polarization(ik, lambda);
      std::array<cxd, 4> eps{cxd(0.0), cxd(pol[0]), cxd(pol[1]), cxd(pol[2])};
      auto mc = photon_mode_current(k, eps);
      for (const auto& c : mc.current) on_shell_max = std::max(on_shell_max, std::abs(c));
    }
  }

  nlohmann::json report;
  report["hermiticity_defect_dirac"] = dirac_defect;
  report["hermiticity_defect_photon"] = photon_defect_num;
  report["hermiticity_defect_photon_symbolic"] = photon_defect_sym;
  report["charge_commutator_norm"] = charge_comm;
  report["photon_number_field_commutator_norm"] = number_comm;
  report["on_shell_current_max_abs"] = on_shell_max;
  report["dirac_dim"] = dspace->dim();
  report["photon_dim"] = pspace->dim();
  report["x"] = x;
  report["pass"] = dirac_defect > 0.1 && photon_defect_sym == 0.0 && photon_defect_num <= 1e-12 &&
                   charge_comm == 0.0 && number_comm > 0.0 && on_shell_max == 0.0;

  if (off_shell_probe) {
    FourVector k{2.0, 0.0, 0.0, 1.0};
    std::array<cxd, 4> eps{cxd(0.0), cxd(1.0), cxd(0.0), cxd(0.0)};
    auto mc = photon_mode_current(k, eps);
    nlohmann::json probe;
    probe["k"] = k;
    probe["k_squared"] = mc.k_squared;
    std::vector<std::array<double, 2>> cur;
    for (const auto& c : mc.current) cur.push_back({c.real(), c.imag()});
    probe["current"] = cur;
    probe["nonzero"] = [&mc] {
      for (const auto& c : mc.current)
        if (std::abs(c) > 0.0) return true;
      return false;
    }();
    report["off_shell_probe"] = std::move(probe);
  }
  return report;
}

}  // namespace mq
