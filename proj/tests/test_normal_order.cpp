#include "doctest.h"
#include "helpers.hpp"
#include "mquant/normal_order.hpp"
#include "mquant/parser.hpp"

using namespace mq;
using mqtest::ExprFamily;

TEST_CASE("fermionic contraction on equal modes") {
  auto e = normal_order(parse_expr("b(m) b+(m)"));
  CHECK(print_expr(e) == "1 - b+(m) b(m)");
}

TEST_CASE("bosonic contraction keeps symbolic delta") {
  auto e = normal_order(parse_expr("a(k) a+(k')"));
  CHECK(print_expr(e) == "delta(k;k') + a+(k') a(k)");
}

TEST_CASE("fermionic creators are nilpotent") {
  CHECK(normal_order(parse_expr("b+(m) b+(m)")).is_zero());
  CHECK(normal_order(parse_expr("d(m) d(m)")).is_zero());
  CHECK(normal_order(parse_expr("b+(m) b(m) b+(m) b+(m)")).is_zero());
}

TEST_CASE("distinct fermion species anticommute without contraction") {
  auto e = normal_order(parse_expr("d(m) b+(m)"));
  CHECK(print_expr(e) == "-b+(m) d(m)");
}

TEST_CASE("fermion and boson factors commute") {
  auto e = normal_order(parse_expr("a(k) b+(m)"));
  CHECK(print_expr(e) == "b+(m) a(k)");
}

TEST_CASE("same-kind factors sort inside a block") {
  auto e = normal_order(parse_expr("b+(2) b+(1)"));
  CHECK(print_expr(e) == "-b+(1) b+(2)");
  auto f = normal_order(parse_expr("a+(2) a+(1)"));
  CHECK(print_expr(f) == "a+(1) a+(2)");
}

TEST_CASE("bosonic commutator from four factors") {
  auto e = normal_order(parse_expr("a(k) a(k) a+(k) a+(k)"));
  CHECK(print_expr(e) == "2 + a+(k) a+(k) a(k) a(k) + 4 a+(k) a(k)");
}

TEST_CASE("vacuum expectations") {
  CHECK(vacuum_expectation(parse_expr("b(m) b+(m)")) == RationalComplex::one());
  CHECK(vacuum_expectation(parse_expr("a+(k) a(k)")).is_zero());
  CHECK(vacuum_expectation(parse_expr("a(k) a(k) a+(k) a+(k)")) ==
        RationalComplex(Rational(2)));
  // deltas between distinct free labels resolve to zero
  CHECK(vacuum_expectation(parse_expr("a(k) a+(k')")).is_zero());
  CHECK(vacuum_expectation(parse_expr("b(1,1) b+(1,1) d(2,1) d+(2,1)")) ==
        RationalComplex::one());
}

TEST_CASE("green components: same component is bosonic, distinct anticommute") {
  StatisticsConfig cfg = mqtest::config_for(ExprFamily::Para, 2);
  auto same = normal_order(parse_expr("u(1,r) u+(1,r)"), cfg);
  CHECK(print_expr(same) == "1 + u+(1,r) u(1,r)");
  auto cross = normal_order(parse_expr("u(1,r) u+(2,r)"), cfg);
  CHECK(print_expr(cross) == "-u+(2,r) u(1,r)");
  // composite pairing <0| A A+ |0> = p
  auto a_dn = parabose_ladder_expr(mode("r"), LadderKind::Annihilate, 2);
  auto a_up = parabose_ladder_expr(mode("r"), LadderKind::Create, 2);
  CHECK(vacuum_expectation(a_dn * a_up, cfg) == RationalComplex(Rational(2)));
}

TEST_CASE("unexpanded parabose patterns are rejected") {
  StatisticsConfig cfg = mqtest::config_for(ExprFamily::Para, 2);
  CHECK_THROWS_AS(normal_order(parse_expr("u(r) u+(r)"), cfg), UnsupportedParabosePattern);
  CHECK_THROWS_AS(normal_order(parse_expr("u(3,r) u+(1,r)"), cfg), UnsupportedParabosePattern);
  CHECK_THROWS_AS(normal_order(parse_expr("u(0,r)"), cfg) /* component 0 */,
                  UnsupportedParabosePattern);
}

TEST_CASE("rewriting terminates and normal-orders random expressions") {
  Rng rng(7);
  for (int i = 0; i < 400; ++i) {
    auto fam = static_cast<ExprFamily>(rng.uniform_int(0, 2));
    auto e = mqtest::random_expr(rng, fam, 8, 3, 3);
    auto nf = normal_order(e, mqtest::config_for(fam));
    CHECK(mqtest::is_normal_ordered(nf));
    // idempotence
    CHECK(normal_order(nf, mqtest::config_for(fam)) == nf);
  }
}

TEST_CASE("rewriting is confluent over products") {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    auto fam = static_cast<ExprFamily>(rng.uniform_int(0, 2));
    auto cfg = mqtest::config_for(fam);
    auto x = mqtest::random_expr(rng, fam, 4, 3, 3);
    auto y = mqtest::random_expr(rng, fam, 4, 3, 3);
    auto direct = normal_order(x * y, cfg);
    auto staged = normal_order(normal_order(x, cfg) * normal_order(y, cfg), cfg);
    CHECK(direct == staged);
  }
}

TEST_CASE("parabose order one behaves as bose") {
  Rng rng(99);
  StatisticsConfig para1;
  para1.set_ur(SpeciesStatistics::parabose(1));
  StatisticsConfig bose;
  for (int i = 0; i < 200; ++i) {
    auto e = mqtest::random_expr(rng, ExprFamily::Para, 6, 3, 3, /*order=*/1);
    CHECK(normal_order(e, para1) == normal_order(e, bose));
  }
}

TEST_CASE("adjoint commutes with normal ordering") {
  Rng rng(55);
  for (int i = 0; i < 200; ++i) {
    auto fam = static_cast<ExprFamily>(rng.uniform_int(0, 2));
    auto cfg = mqtest::config_for(fam);
    auto e = mqtest::random_expr(rng, fam, 5, 3, 3);
    CHECK(normal_order(e.adjoint(), cfg) == normal_order(normal_order(e, cfg).adjoint(), cfg));
  }
}
