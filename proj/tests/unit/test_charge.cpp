#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stability/charge.hpp"
#include "stability/error.hpp"
#include "stability/p1.hpp"

#include <random>

using namespace stab;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

ChargePolynomial poly(std::vector<long> a, std::vector<long> b) {
  std::vector<Rational> ra, rb;
  for (auto x : a) ra.emplace_back(x);
  for (auto x : b) rb.emplace_back(x);
  return {ra, rb};
}

PhaseVector pv(std::vector<ExtendedSlope> s) { return {std::move(s)}; }
const ExtendedSlope kInf = ExtendedSlope::infinity();
ExtendedSlope sl(long n, long d = 1) { return ExtendedSlope(q(n, d)); }

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::kInvalidArgument;
}

}  // namespace

TEST_CASE("rational parsing and canonical text") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-3")) == "-3");
  CHECK(code_of([] { parse_rational("2/-4"); }) == Errc::kParseError);
  CHECK(format_rational(parse_rational("0/7")) == "0");
  CHECK(code_of([] { parse_rational("1/0"); }) == Errc::kParseError);
  CHECK(code_of([] { parse_rational("abc"); }) == Errc::kParseError);
  CHECK(code_of([] { parse_rational(""); }) == Errc::kParseError);
}

TEST_CASE("rational arithmetic stays exact") {
  Rational x = q(1, 3) + q(1, 6);
  CHECK(x == q(1, 2));
  Rational big = 1;
  for (int i = 0; i < 80; ++i) big *= 3;
  CHECK((big + q(1, 7)) - big == q(1, 7));
}

TEST_CASE("poly_degree") {
  CHECK_FALSE(poly_degree(ChargePolynomial(1)).has_value());
  CHECK(poly_degree(poly({0, 0}, {3, 0})) == 0);
  CHECK(poly_degree(poly({-2, -1}, {2, 1})) == 1);
  CHECK(degree_at_most(ChargePolynomial(2), 0));
  CHECK_FALSE(degree_at_most(poly({0, 1}, {0, 0}), 0));
}

TEST_CASE("coefficients outside the range read as zero") {
  const auto p = poly({1, 2}, {3, 4});
  CHECK(p.b(-1) == 0);
  CHECK(p.a(5) == 0);
  CHECK(p == poly({1, 2, 0}, {3, 4, 0}));
}

TEST_CASE("slope_of") {
  CHECK(slope_of(q(-1), q(2)) == sl(1, 2));
  CHECK(slope_of(q(-3), q(0)).is_infinite());
  CHECK(slope_of(q(0), q(0)).is_infinite());
  CHECK(code_of([] { slope_of(q(1), q(-1)); }) == Errc::kNegativeImaginary);
}

TEST_CASE("extended slope order and text") {
  CHECK(kInf > sl(1000));
  CHECK(sl(-1) < sl(1, 2));
  CHECK(kInf == ExtendedSlope::infinity());
  CHECK(kInf.str() == "inf");
  CHECK(ExtendedSlope::parse("inf").is_infinite());
  CHECK(ExtendedSlope::parse("-4/6") == sl(-2, 3));
}

TEST_CASE("lex_compare") {
  CHECK(lex_compare(pv({kInf, kInf}), pv({sl(3), sl(2)})) == std::strong_ordering::greater);
  CHECK(lex_compare(pv({sl(3), sl(2)}), pv({sl(3), sl(0)})) == std::strong_ordering::greater);
  CHECK(lex_compare(pv({sl(1, 2), sl(5)}), pv({sl(1, 2), sl(5)})) == std::strong_ordering::equal);
  CHECK(code_of([] { lex_compare(pv({sl(1)}), pv({sl(1), sl(2)})); }) == Errc::kLengthMismatch);
}

TEST_CASE("nested charge of line bundles and torsion on the line") {
  const std::vector<Rational> t1{q(1)};
  const NestedChargeSpec spec{1, 0, t1, {}};
  for (int a = -3; a <= 3; ++a) {
    const auto p = poly({-(a + 1), -1}, {a + 1, 1});
    const auto z = nested_charge(p, spec);
    CHECK(z == GaussianRational{q(-(a + 2)), q(1)});
  }
  const auto o1 = nested_charge(poly({-2, -1}, {2, 1}), spec);
  CHECK(slope_of(o1) == sl(3));
  const auto torsion = nested_charge(poly({-2, 0}, {2, 0}), spec);
  CHECK(torsion == GaussianRational{q(-2), q(0)});
  CHECK(slope_of(torsion).is_infinite());
}

TEST_CASE("second level uses b_{-1} = 0") {
  const std::vector<Rational> t{q(1), q(1)};
  const NestedChargeSpec spec{1, 1, t, {}};
  const auto p = poly({-5, 7}, {11, 13});
  CHECK(nested_charge(p, spec) == GaussianRational{q(-5), q(13)});
}

TEST_CASE("second level after a phase-one first level") {
  // Im = -(a_1 t_1 - b_0).
  const std::vector<Rational> t{q(2), q(3)};
  const NestedChargeSpec spec{1, 1, t, {1}};
  const auto p = poly({-2, 0}, {2, 0});
  CHECK(nested_charge(p, spec) == GaussianRational{q(-6), q(2)});
}

TEST_CASE("level_spec reads the ones pattern off the prefix") {
  const std::vector<Rational> t{q(1), q(1), q(1)};
  const std::vector<ExtendedSlope> prefix{kInf, sl(2)};
  const auto s = level_spec(2, t, prefix);
  CHECK(s.k == 2);
  CHECK(s.ones == std::vector<int>{1});
  const std::vector<ExtendedSlope> gap{sl(2), kInf};
  CHECK(code_of([&] { level_spec(2, t, gap); }) == Errc::kNonContiguousOnes);
}

TEST_CASE("nested charge spec validation") {
  NestedChargeSpec bad{1, 0, {q(0)}, {}};
  CHECK(code_of([&] { bad.validate(); }) == Errc::kInvalidArgument);
  NestedChargeSpec gap{2, 2, {q(1), q(1), q(1)}, {2}};
  CHECK(code_of([&] { gap.validate(); }) == Errc::kNonContiguousOnes);
}

TEST_CASE("positivity_audit clauses") {
  CHECK(positivity_audit(poly({0, 0}, {0, 1}), true).pass());
  CHECK(positivity_audit(poly({0, 1}, {0, 0}), true).clause == PositivityVerdict::Clause::kANonPositive);
  CHECK(positivity_audit(poly({0, 0}, {0, 0}), true).clause == PositivityVerdict::Clause::kConstantNegative);
  CHECK(positivity_audit(poly({0, 0}, {0, 0}), false).pass());
  CHECK(positivity_audit(poly({0, 0}, {0, -1}), true).clause == PositivityVerdict::Clause::kTopBNonNegative);
  CHECK(positivity_audit(poly({0, 0}, {-1, 0}), true).clause == PositivityVerdict::Clause::kBNonNegative);
  CHECK(positivity_audit(poly({-1, 0}, {0, 0}), true).pass());
}

TEST_CASE("property: positivity cascade holds on every split sheaf charge") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto e = p1::random_sheaf(s);
    const auto z = p1::random_z(s + 1000);
    CHECK(positivity_audit(p1::sheaf_charge_poly(e, z), !e.is_zero()).pass());
  }
}

TEST_CASE("property: nested charge is additive") {
  std::mt19937_64 rng(5);
  auto r = [&] { return static_cast<long>(rng() % 11) - 5; };
  for (int i = 0; i < 200; ++i) {
    const auto p = poly({r(), r(), r()}, {r(), r(), r()});
    const auto u = poly({r(), r(), r()}, {r(), r(), r()});
    const std::vector<Rational> t{q(1 + static_cast<long>(rng() % 3), 2), q(2), q(3, 2)};
    for (int k = 0; k <= 2; ++k) {
      std::vector<Rational> tk(t.begin(), t.begin() + k + 1);
      for (int n = 0; n <= k; ++n) {
        std::vector<int> ones;
        for (int m = 1; m <= n; ++m) ones.push_back(m);
        const NestedChargeSpec spec{2, k, tk, ones};
        CHECK(nested_charge(p + u, spec) == nested_charge(p, spec) + nested_charge(u, spec));
      }
    }
  }
}

TEST_CASE("property: lex_compare is a total order") {
  std::mt19937_64 rng(9);
  auto pick = [&] { return rng() % 4 == 0 ? kInf : sl(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 2)); };
  for (int i = 0; i < 300; ++i) {
    const auto u = pv({pick(), pick()}), v = pv({pick(), pick()}), w = pv({pick(), pick()});
    CHECK((lex_compare(u, v) == 0) == (u == v));
    if (lex_compare(u, v) > 0 && lex_compare(v, w) > 0) CHECK(lex_compare(u, w) > 0);
    if (lex_compare(u, v) > 0) CHECK(lex_compare(v, u) < 0);
  }
}
