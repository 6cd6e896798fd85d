#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stability/error.hpp"
#include "stability/instances.hpp"
#include "stability/lex_engine.hpp"
#include "stability/p1.hpp"

#include <random>

using namespace stab;
using namespace stab::p1;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }
ExtendedSlope sl(long n, long d = 1) { return ExtendedSlope(q(n, d)); }
const ExtendedSlope kInf = ExtendedSlope::infinity();
const std::vector<Rational> kOnes{q(1), q(1)};

ChargePolynomial poly(std::vector<long> a, std::vector<long> b) {
  std::vector<Rational> ra, rb;
  for (auto x : a) ra.emplace_back(x);
  for (auto x : b) rb.emplace_back(x);
  return {ra, rb};
}

SplitSheaf fix_p1() { return SplitSheaf::line(1) + SplitSheaf::line(-1) + SplitSheaf::skyscraper("p", 2); }

// Independent brute-force count of sections: dim H^0(O(a)) = max(a + 1, 0).
long long h0(int a) { return a >= 0 ? a + 1 : 0; }

}  // namespace

TEST_CASE("canonical form and text") {
  CHECK(fix_p1().str() == "T(p,2)+O(1)+O(-1)");
  CHECK(SplitSheaf().str() == "0");
  CHECK(fix_p1() == SplitSheaf({-1, 1}, {{"p", 2}}));
  CHECK(fix_p1().rank() == 2);
  CHECK(fix_p1().degree() == 0);
  CHECK(fix_p1().torsion_length() == 2);
}

TEST_CASE("charge polynomials") {
  CHECK(sheaf_charge_poly(SplitSheaf::line(1)) == poly({-2, -1}, {2, 1}));
  CHECK(sheaf_charge_poly(SplitSheaf::skyscraper("p", 2)) == poly({-2, 0}, {2, 0}));
  CHECK(sheaf_charge_poly(SplitSheaf()).is_zero());
  CHECK_NOTHROW(check_z(GaussianRational{q(-1), q(0)}));
  CHECK_THROWS_AS(check_z(GaussianRational{q(1), q(0)}), Error);
  CHECK_THROWS_AS(check_z(GaussianRational{q(0), q(-1)}), Error);
}

TEST_CASE("closed-form lex filtration of the fixture") {
  const auto f = closed_form_lex_filtration(fix_p1(), kOnes);
  REQUIRE(f.size() == 3);
  CHECK(f.chain[1] == SplitSheaf::skyscraper("p", 2));
  CHECK(f.chain[2] == SplitSheaf::skyscraper("p", 2) + SplitSheaf::line(1));
  CHECK(f.chain[3] == fix_p1());
  CHECK(f.vectors[0] == PhaseVector{{kInf, sl(1)}});
  CHECK(f.vectors[1] == PhaseVector{{sl(3), sl(2)}});
  CHECK(f.vectors[2] == PhaseVector{{sl(1), sl(0)}});
}

TEST_CASE("isotypic sums and the zero sheaf") {
  const std::vector<Rational> t{q(3, 2), q(2)};
  const auto f = closed_form_lex_filtration(SplitSheaf::line(0) + SplitSheaf::line(0), t);
  REQUIRE(f.size() == 1);
  CHECK(f.vectors[0] == PhaseVector{{ExtendedSlope(t[0] + 1), ExtendedSlope(t[1])}});
  CHECK(closed_form_lex_filtration(SplitSheaf(), t).size() == 0);
}

TEST_CASE("slope and Gieseker semistability") {
  CHECK(is_slope_semistable(SplitSheaf::line(3) + SplitSheaf::line(3)));
  CHECK(is_gieseker_semistable(SplitSheaf::line(3) + SplitSheaf::line(3)));
  CHECK_FALSE(is_slope_semistable(SplitSheaf::line(1) + SplitSheaf::line(0)));
  CHECK_FALSE(is_gieseker_semistable(SplitSheaf::line(1) + SplitSheaf::line(0)));
  CHECK(closed_form_lex_filtration(SplitSheaf::line(1) + SplitSheaf::line(0), kOnes).size() == 2);
  CHECK_FALSE(is_slope_semistable(SplitSheaf::skyscraper("p", 1) + SplitSheaf::line(0)));
  CHECK(is_slope_semistable(SplitSheaf::skyscraper("p", 1) + SplitSheaf::skyscraper("q", 3)));
}

TEST_CASE("level semistability") {
  for (int a = -3; a <= 3; ++a) {
    const std::vector<Rational> t{q(2), q(3)};
    const auto v = level_semistable(SplitSheaf::line(a), t);
    CHECK(v.semistable);
    CHECK(v.vector == PhaseVector{{ExtendedSlope(t[0] + a + 1), ExtendedSlope((a + 1) * t[1])}});
  }
  const std::vector<Rational> t1{q(1)};
  CHECK_FALSE(level_semistable(SplitSheaf::line(1) + SplitSheaf::line(0), t1).semistable);
  bool threw = false;
  try {
    level_semistable(SplitSheaf(), t1);
  } catch (const Error& e) {
    threw = e.code() == Errc::kZeroObject;
  }
  CHECK(threw);
}

TEST_CASE("degree filtration") {
  const auto d = degree_filtration(fix_p1());
  REQUIRE(d.size() == 2);
  CHECK(d[0] == SplitSheaf::skyscraper("p", 2));
  CHECK(d[1] == fix_p1());
  const auto t = degree_filtration(SplitSheaf::skyscraper("q", 1));
  CHECK(t[0] == t[1]);
}

TEST_CASE("hom dimensions") {
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) CHECK(hom_dimension(SplitSheaf::line(a), SplitSheaf::line(b)) == h0(b - a));
  CHECK(hom_dimension(SplitSheaf::line(5), SplitSheaf::skyscraper("p", 2)) == 2);
  CHECK(hom_dimension(SplitSheaf::skyscraper("p", 2), SplitSheaf::line(5)) == 0);
  CHECK(hom_dimension(SplitSheaf::skyscraper("p", 2), SplitSheaf::skyscraper("p", 3)) == 2);
  CHECK(hom_dimension(SplitSheaf::skyscraper("p", 2), SplitSheaf::skyscraper("q", 3)) == 0);
}

TEST_CASE("torsion split") {
  const std::vector<ExtendedSlope> zero{sl(0), sl(0)};
  const auto all = torsion_split(fix_p1(), {zero}, kOnes);
  CHECK(all.t == fix_p1());
  CHECK(all.f.is_zero());
  const auto none = torsion_split(SplitSheaf::line(-2), {zero}, kOnes);
  CHECK(none.t.is_zero());
  CHECK(none.f == SplitSheaf::line(-2));
  CHECK(none.lex.vectors.front() == PhaseVector{{sl(0), sl(-1)}});
  bool threw = false;
  try {
    torsion_split(fix_p1(), {{kInf, kInf}}, kOnes);
  } catch (const Error&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("property: level semistability matches slope and Gieseker semistability") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    std::mt19937_64 rng(instances::mix(41, i));
    const auto e = random_sheaf(rng());
    const auto z = random_z(rng());
    if (e.is_zero()) continue;
    const std::vector<Rational> t{instances::random_t(rng), instances::random_t(rng)};
    CHECK(level_semistable(e, std::span(t).first(1), z).semistable == is_slope_semistable(e));
    CHECK(level_semistable(e, t, z).semistable == is_gieseker_semistable(e));
  }
}

TEST_CASE("property: closed-form filtration is well formed") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    std::mt19937_64 rng(instances::mix(42, i));
    const auto e = random_sheaf(rng());
    const auto z = random_z(rng());
    const std::vector<Rational> t{instances::random_t(rng), instances::random_t(rng)};
    const auto f = closed_form_lex_filtration(e, t, z);
    CHECK(lex::strictly_decreasing(f.vectors));
    ChargePolynomial total(1);
    for (std::size_t k = 0; k < f.size(); ++k) {
      CHECK(level_semistable(f.factors[k], t, z).semistable);
      CHECK(level_semistable(f.factors[k], t, z).vector == f.vectors[k]);
      CHECK(f.chain[k + 1] == f.chain[k] + f.factors[k]);
      total += sheaf_charge_poly(f.factors[k], z);
      for (std::size_t m = k + 1; m < f.size(); ++m) CHECK(hom_dimension(f.factors[k], f.factors[m]) == 0);
    }
    CHECK(total == sheaf_charge_poly(e, z));
    CHECK(lex::quadratic_value(sheaf_charge_poly(e, z)) == 0);
  }
}

TEST_CASE("property: torsion split has no maps from T to F") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    std::mt19937_64 rng(instances::mix(43, i));
    const auto e = random_sheaf(rng());
    const auto z = random_z(rng());
    const std::vector<Rational> t{instances::random_t(rng), instances::random_t(rng)};
    const PhaseVector cut{{ExtendedSlope(q(static_cast<long>(rng() % 5) - 2)), ExtendedSlope(q(static_cast<long>(rng() % 5) - 2))}};
    const auto s = torsion_split(e, cut, t, z);
    CHECK(s.t + s.f == e);
    CHECK(hom_dimension(s.t, s.f) == 0);
    CHECK(s.hom_vanishes);
  }
}
