#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mquant/fock.hpp"
#include "mquant/parser.hpp"

using namespace mq;
using mqtest::ExprFamily;

TEST_CASE("basis enumeration dimensions and order") {
  auto fermi = FockSpace::build({{Species::Electron, mode(1)}, {Species::Electron, mode(2)}},
                                FockStatistics::fermi());
  CHECK(fermi->dim() == 4);
  CHECK(fermi->total_occupation(0) == 0);

  auto bose2 = FockSpace::build({{Species::Photon, mode(1)}, {Species::Photon, mode(2)}},
                                FockStatistics::bose(2));
  REQUIRE(bose2->dim() == 6);
  using occ = std::vector<std::uint8_t>;
  CHECK(bose2->basis()[0] == occ{0, 0});
  CHECK(bose2->basis()[1] == occ{1, 0});
  CHECK(bose2->basis()[2] == occ{0, 1});
  CHECK(bose2->basis()[3] == occ{2, 0});
  CHECK(bose2->basis()[4] == occ{1, 1});
  CHECK(bose2->basis()[5] == occ{0, 2});

  auto bose1 = FockSpace::build({{Species::Photon, mode(1)}}, FockStatistics::bose(5));
  CHECK(bose1->dim() == 6);

  CHECK_THROWS_AS(FockSpace::build({}, FockStatistics::fermi()), Error);
  CHECK_THROWS_AS(FockSpace::build({{Species::Photon, mode(1)}}, FockStatistics::bose(0)), Error);
  CHECK_THROWS_AS(FockSpace::build({{Species::Electron, mode(1)},
                                    {Species::Electron, mode(1)}},
                                   FockStatistics::fermi()),
                  Error);
  // dimension guard
  std::vector<SpaceMode> many;
  for (int j = 1; j <= 13; ++j) many.push_back({Species::Electron, mode(j)});
  CHECK_THROWS_AS(FockSpace::build(std::move(many), FockStatistics::fermi()), DimensionOverflow);
}

TEST_CASE("fermionic ladder operators satisfy exact anticommutation") {
  mqtest::ExprFamily fam = ExprFamily::Fermi;
  auto space = mqtest::space_for(fam, 2, 0);  // b(1),b(2),d(1),d(2)
  std::vector<SparseOperator> ann, cre;
  for (auto sp : {Species::Electron, Species::Positron})
    for (std::int64_t j = 1; j <= 2; ++j) {
      ann.push_back(ladder(space, sp, mode(j), LadderKind::Annihilate));
      cre.push_back(ladder(space, sp, mode(j), LadderKind::Create));
    }
  auto ident = SparseOperator(space, SparseMatrix::identity(space->dim()));
  for (std::size_t i = 0; i < ann.size(); ++i)
    for (std::size_t j = 0; j < ann.size(); ++j) {
      auto pair = anticommutator(ann[i], cre[j]);
      if (i == j)
        CHECK((pair - ident).frobenius_norm() == 0.0);
      else
        CHECK(pair.frobenius_norm() == 0.0);
      CHECK(anticommutator(ann[i], ann[j]).frobenius_norm() == 0.0);
      CHECK(anticommutator(cre[i], cre[j]).frobenius_norm() == 0.0);
    }
  // adjoint pairs are exact matrix adjoints
  for (std::size_t i = 0; i < ann.size(); ++i)
    CHECK((cre[i] - ann[i].adjoint()).frobenius_norm() == 0.0);
}

TEST_CASE("bosonic commutator is the identity below the cutoff") {
  auto space = mqtest::space_for(ExprFamily::Bose, 2, 3);
  auto ident = SparseOperator(space, SparseMatrix::identity(space->dim()));
  auto keep = space->total_at_most(2);  // cutoff 3: the statement block is total <= 2
  for (std::int64_t j = 1; j <= 2; ++j)
    for (std::int64_t k = 1; k <= 2; ++k) {
      auto a = ladder(space, Species::Photon, mode(j), LadderKind::Annihilate);
      auto adag = ladder(space, Species::Photon, mode(k), LadderKind::Create);
      auto comm = commutator(a, adag);
      auto expect = (j == k) ? ident.matrix() : SparseMatrix(space->dim());
      CHECK((comm.matrix() - expect).masked(keep, keep).max_abs() < 1e-12);
    }
  // the top level deviates: the full commutator is not the identity
  auto a1 = ladder(space, Species::Photon, mode(1), LadderKind::Annihilate);
  auto c1 = ladder(space, Species::Photon, mode(1), LadderKind::Create);
  CHECK((commutator(a1, c1) - ident).frobenius_norm() > 0.5);
  // adjoint pairs are exact matrix adjoints for bose ladders too
  CHECK((c1 - a1.adjoint()).frobenius_norm() == 0.0);
}

TEST_CASE("annihilating the vacuum gives the zero vector") {
  auto space = mqtest::space_for(ExprFamily::Bose, 2, 3);
  auto a = ladder(space, Species::Photon, mode(1), LadderKind::Annihilate);
  auto v = apply(a, vacuum_state(space));
  CHECK(v.norm() == 0.0);
}

TEST_CASE("number operators are diagonal and consistent") {
  auto space = mqtest::space_for(ExprFamily::Fermi, 2, 0);
  auto n1 = number_op(space, Species::Electron, mode(1));
  auto vac = vacuum_state(space);
  CHECK(vac.expectation(n1) == cxd(0, 0));

  // one-particle state in mode (b,1)
  auto one = apply(ladder(space, Species::Electron, mode(1), LadderKind::Create), vac);
  CHECK(one.expectation(n1).real() == doctest::Approx(1.0));
  CHECK(one.expectation(number_op(space, Species::Electron, mode(2))).real() ==
        doctest::Approx(0.0));

  // two-particle state has total number 2
  auto two = apply(ladder(space, Species::Electron, mode(2), LadderKind::Create), one);
  CHECK(two.expectation(total_number(space)).real() == doctest::Approx(2.0));

  // create o annihilate equals the number operator exactly (fermi)
  auto prod = ladder(space, Species::Electron, mode(1), LadderKind::Create) *
              ladder(space, Species::Electron, mode(1), LadderKind::Annihilate);
  CHECK((prod - n1).frobenius_norm() == 0.0);

  CHECK_THROWS_AS(number_op(space, Species::Electron, mode(9)), UnknownMode);
}

TEST_CASE("create o annihilate equals the number operator on bose spaces") {
  auto space = mqtest::space_for(ExprFamily::Bose, 2, 3);
  for (std::int64_t j = 1; j <= 2; ++j) {
    auto prod = ladder(space, Species::Photon, mode(j), LadderKind::Create) *
                ladder(space, Species::Photon, mode(j), LadderKind::Annihilate);
    CHECK((prod - number_op(space, Species::Photon, mode(j))).max_abs() < 1e-12);
  }
}

TEST_CASE("total number is the sum of mode numbers and commutes with them") {
  auto space = mqtest::space_for(ExprFamily::Bose, 2, 3);
  auto total = total_number(space);
  auto sum = number_op(space, Species::Photon, mode(1)) +
             number_op(space, Species::Photon, mode(2));
  CHECK((total - sum).frobenius_norm() == 0.0);
  CHECK(commutator(total, number_op(space, Species::Photon, mode(1))).frobenius_norm() == 0.0);

  // eigenvalue on basis state (2,1) is 3
  auto idx = space->index_of({2, 1});
  REQUIRE(idx.has_value());
  CHECK(total.matrix().entry(*idx, *idx) == cxd(3, 0));

  // fermi: all modes occupied -> eigenvalue = number of modes
  auto fspace = mqtest::space_for(ExprFamily::Fermi, 2, 0);
  auto fidx = fspace->index_of({1, 1, 1, 1});
  REQUIRE(fidx.has_value());
  CHECK(total_number(fspace).matrix().entry(*fidx, *fidx) == cxd(4, 0));
}

TEST_CASE("hermiticity of number operators is exact") {
  auto space = mqtest::space_for(ExprFamily::Bose, 3, 3);
  auto n = number_op(space, Species::Photon, mode(2));
  CHECK((n - n.adjoint()).frobenius_norm() == 0.0);
  auto t = total_number(space);
  CHECK((t - t.adjoint()).frobenius_norm() == 0.0);
}

TEST_CASE("materialize maps the identity and number expressions correctly") {
  auto space = mqtest::space_for(ExprFamily::Fermi, 2, 0);
  CHECK((materialize(parse_expr("1"), space).matrix() -
         SparseMatrix::identity(space->dim()))
            .frobenius_norm() == 0.0);
  auto nop = materialize(parse_expr("b+(1) b(1)"), space);
  CHECK((nop - number_op(space, Species::Electron, mode(1))).frobenius_norm() == 0.0);
  CHECK_THROWS_AS(materialize(parse_expr("b(7)"), space), UnknownMode);
  CHECK_THROWS_AS(materialize(parse_expr("a(1)"), space), StatisticsMismatch);
}

TEST_CASE("materialize is a homomorphism for sums, products, adjoints") {
  Rng rng(2718);
  for (int rep = 0; rep < 40; ++rep) {
    auto fam = static_cast<ExprFamily>(rng.uniform_int(0, 2));
    auto space = mqtest::space_for(fam, 2, 6);
    auto x = mqtest::random_expr(rng, fam, 3, 2, 2);
    auto y = mqtest::random_expr(rng, fam, 3, 2, 2);
    auto mx = materialize(x, space);
    auto my = materialize(y, space);
    CHECK((materialize(x + y, space) - (mx + my)).max_abs() < 1e-12);
    CHECK((materialize(x * y, space) - mx * my).max_abs() < 1e-10);
    CHECK((materialize(x.adjoint(), space) - mx.adjoint()).max_abs() < 1e-12);
  }
}

TEST_CASE("normal ordering commutes with materialization on safe columns") {
  Rng rng(31415);
  for (int rep = 0; rep < 60; ++rep) {
    auto fam = static_cast<ExprFamily>(rng.uniform_int(0, 2));
    const int cutoff = 6, nfac = 6;
    auto space = mqtest::space_for(fam, 2, cutoff);
    auto cfg = mqtest::config_for(fam);
    auto e = mqtest::random_expr(rng, fam, nfac, 2, 2);
    auto direct = materialize(e, space);
    auto ordered = materialize(normal_order(e, cfg), space);
    // columns whose occupation cannot reach the cutoff through nfac factors
    auto keep_cols = space->total_at_most(cutoff - nfac);
    std::vector<char> all_rows(space->dim(), 1);
    CHECK((direct - ordered).matrix().masked(all_rows, keep_cols).max_abs() < 1e-10);
  }
}

TEST_CASE("symbolic vacuum expectation equals the numeric vacuum element") {
  Rng rng(424242);
  for (int rep = 0; rep < 150; ++rep) {
    auto fam = static_cast<ExprFamily>(rng.uniform_int(0, 2));
    auto space = mqtest::space_for(fam, 3, 6);
    auto cfg = mqtest::config_for(fam);
    auto e = mqtest::random_expr(rng, fam, 6, 3, 3);
    cxd sym = CoeffOps<RationalComplex>::to_complex(vacuum_expectation(e, cfg));
    cxd num = materialize(e, space).vacuum_element();
    CHECK(std::abs(sym - num) < 1e-10);
  }
}

TEST_CASE("coherent states reproduce poisson number statistics") {
  auto space = FockSpace::build({{Species::Photon, mode(1)}}, FockStatistics::bose(20));
  auto n = number_op(space, Species::Photon, mode(1));

  // alpha = 0 is the vacuum
  auto zero = coherent_state(space, Species::Photon, mode(1), {0, 0});
  CHECK(std::abs(StateVector::inner(zero, vacuum_state(space)) - cxd(1, 0)) < 1e-15);

  // independent oracle: moments of the truncated poisson weights
  auto truncated_moments = [](double a2, int nmax) {
    double z = 0, m1 = 0, m2 = 0, w = 1;
    for (int k = 0; k <= nmax; ++k) {
      z += w;
      m1 += k * w;
      m2 += double(k) * k * w;
      w *= a2 / (k + 1);
    }
    return std::pair<double, double>{m1 / z, m2 / z - (m1 / z) * (m1 / z)};
  };

  for (cxd alpha : {cxd(1.0, 0.0), cxd(0.5, 0.0), cxd(0.6, -0.6)}) {
    auto st = coherent_state(space, Species::Photon, mode(1), alpha);
    auto [mean_oracle, var_oracle] = truncated_moments(std::norm(alpha), 20);
    double mean = st.expectation(n).real();
    double second = st.expectation(n * n).real();
    CHECK(mean == doctest::Approx(mean_oracle).epsilon(1e-12));
    CHECK(second - mean * mean == doctest::Approx(var_oracle).epsilon(1e-12));
    // and the truncation error itself is far below 1e-6 for |alpha| <= 1
    CHECK(std::abs(mean - std::norm(alpha)) < 1e-6);
    CHECK(std::abs((second - mean * mean) - std::norm(alpha)) < 1e-6);
  }
  CHECK(std::abs(coherent_state(space, Species::Photon, mode(1), {0.5, 0})
                     .expectation(n)
                     .real() -
                 0.25) < 1e-8);

  CHECK_THROWS_AS(coherent_state(space, Species::Photon, mode(1), {4.0, 0}), Error);
}

TEST_CASE("operators on different spaces refuse to combine") {
  auto s1 = mqtest::space_for(ExprFamily::Bose, 2, 2);
  auto s2 = mqtest::space_for(ExprFamily::Bose, 2, 2);
  auto a = total_number(s1);
  auto b = total_number(s2);
  CHECK_THROWS_AS(a + b, SpaceMismatch);
}
