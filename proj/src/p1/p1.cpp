#include "stability/p1.hpp"

#include "stability/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace stab::p1 {

SplitSheaf::SplitSheaf(std::vector<int> line_degrees, std::vector<TorsionPoint> torsion)
    : line_degrees_(std::move(line_degrees)), torsion_(std::move(torsion)) {
  for (const auto& tp : torsion_) {
    if (tp.len < 1) throw Error(Errc::kInvalidArgument, "torsion length must be at least 1");
  }
  std::sort(line_degrees_.begin(), line_degrees_.end(), std::greater<>());
  std::sort(torsion_.begin(), torsion_.end());
}

int SplitSheaf::degree() const { return std::accumulate(line_degrees_.begin(), line_degrees_.end(), 0); }

int SplitSheaf::torsion_length() const {
  int n = 0;
  for (const auto& tp : torsion_) n += tp.len;
  return n;
}

std::string SplitSheaf::str() const {
  if (is_zero()) return "0";
  std::string out;
  auto add = [&](const std::string& s) {
    if (!out.empty()) out += "+";
    out += s;
  };
  for (const auto& tp : torsion_) add("T(" + tp.pt + "," + std::to_string(tp.len) + ")");
  for (int a : line_degrees_) add("O(" + std::to_string(a) + ")");
  return out;
}

SplitSheaf operator+(const SplitSheaf& x, const SplitSheaf& y) {
  auto degrees = x.line_degrees_;
  degrees.insert(degrees.end(), y.line_degrees_.begin(), y.line_degrees_.end());
  auto torsion = x.torsion_;
  torsion.insert(torsion.end(), y.torsion_.begin(), y.torsion_.end());
  return SplitSheaf(std::move(degrees), std::move(torsion));
}

void check_z(const GaussianRational& z) {
  if (z.im.sign() > 0) return;
  if (z.im.is_zero() && z.re.sign() < 0) return;
  throw Error(Errc::kInvalidArgument, "z = " + format_gaussian(z) + " is outside the admissible region");
}

GaussianRational default_z() { return {Rational(-1), Rational(1)}; }

ChargePolynomial sheaf_charge_poly(const SplitSheaf& e, const GaussianRational& z) {
  check_z(z);
  const Rational rk = e.rank();
  const Rational chi = Rational(e.rank() + e.degree() + e.torsion_length());
  ChargePolynomial out(1);
  out.set(1, z.re * rk, z.im * rk);
  out.set(0, z.re * chi, z.im * chi);
  return out;
}

std::vector<SplitSheaf> summands(const SplitSheaf& e) {
  std::vector<SplitSheaf> out;
  for (const auto& tp : e.torsion()) out.push_back(SplitSheaf({}, {tp}));
  for (int a : e.line_degrees()) out.push_back(SplitSheaf::line(a));
  return out;
}

PhaseVector summand_vector(const SplitSheaf& s, std::span<const Rational> t, const GaussianRational& z) {
  const auto p = sheaf_charge_poly(s, z);
  PhaseVector v;
  for (std::size_t m = 0; m < t.size(); ++m) {
    const auto spec = level_spec(1, t, v.slopes);
    v.slopes.push_back(slope_of(nested_charge(p, spec)));
  }
  return v;
}

namespace {

void check_levels(std::span<const Rational> t) {
  if (t.empty() || t.size() > 2) throw Error(Errc::kLevelOutOfRange, "levels 1 and 2 only");
  for (const auto& x : t) {
    if (x.sign() <= 0) throw Error(Errc::kInvalidArgument, "t-parameters must be positive");
  }
}

struct Group {
  PhaseVector vector;
  SplitSheaf sum;
};

std::vector<Group> grouped(const SplitSheaf& e, std::span<const Rational> t, const GaussianRational& z) {
  check_levels(t);
  std::vector<Group> groups;
  for (const auto& s : summands(e)) {
    auto v = summand_vector(s, t, z);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.vector == v; });
    if (it == groups.end()) {
      groups.push_back({std::move(v), s});
    } else {
      it->sum = it->sum + s;
    }
  }
  std::sort(groups.begin(), groups.end(), [](const Group& x, const Group& y) {
    return lex_compare(x.vector, y.vector) == std::strong_ordering::greater;
  });
  return groups;
}

}  // namespace

SheafFiltration closed_form_lex_filtration(const SplitSheaf& e, std::span<const Rational> t,
                                           const GaussianRational& z) {
  SheafFiltration out;
  out.chain.emplace_back();
  for (auto& g : grouped(e, t, z)) {
    out.chain.push_back(out.chain.back() + g.sum);
    out.factors.push_back(std::move(g.sum));
    out.vectors.push_back(std::move(g.vector));
  }
  return out;
}

bool is_slope_semistable(const SplitSheaf& e) {
  if (e.is_torsion()) return true;
  if (!e.torsion().empty()) return false;
  const auto& d = e.line_degrees();
  return std::all_of(d.begin(), d.end(), [&](int a) { return a == d.front(); });
}

bool is_gieseker_semistable(const SplitSheaf& e) { return is_slope_semistable(e); }

LevelVerdict level_semistable(const SplitSheaf& e, std::span<const Rational> t, const GaussianRational& z) {
  if (e.is_zero()) throw Error(Errc::kZeroObject, "semistability of the zero sheaf");
  const auto groups = grouped(e, t, z);
  return {groups.size() == 1, groups.front().vector};
}

std::vector<SplitSheaf> degree_filtration(const SplitSheaf& e) {
  return {SplitSheaf({}, e.torsion()), e};
}

long long hom_dimension(const SplitSheaf& e, const SplitSheaf& f) {
  long long n = 0;
  for (int a : e.line_degrees()) {
    for (int b : f.line_degrees()) n += std::max(0, b - a + 1);
    n += f.torsion_length();
  }
  for (const auto& x : e.torsion())
    for (const auto& y : f.torsion())
      if (x.pt == y.pt) n += std::min(x.len, y.len);
  return n;
}

SheafTorsionSplit torsion_split(const SplitSheaf& e, const PhaseVector& cutoff, std::span<const Rational> t,
                                const GaussianRational& z) {
  if (cutoff.size() != t.size()) throw Error(Errc::kLengthMismatch, "cutoff length differs from the level");
  for (const auto& s : cutoff.slopes) {
    if (s.is_infinite()) throw Error(Errc::kInvalidArgument, "cutoff coordinates must be finite");
  }
  SheafTorsionSplit out;
  out.cutoff = cutoff;
  out.lex = closed_form_lex_filtration(e, t, z);
  for (std::size_t i = 0; i < out.lex.size(); ++i) {
    if (lex_compare(out.lex.vectors[i], cutoff) == std::strong_ordering::greater) {
      out.t = out.t + out.lex.factors[i];
    } else {
      out.f = out.f + out.lex.factors[i];
    }
  }
  out.hom_vanishes = hom_dimension(out.t, out.f) == 0;
  return out;
}

SplitSheaf random_sheaf(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(rng() % 5);
  std::vector<int> degrees;
  std::vector<TorsionPoint> torsion;
  static const char* const points[] = {"p", "q", "r"};
  for (int i = 0; i < n; ++i) {
    if (rng() % 4 == 0) {
      torsion.push_back({points[rng() % 3], 1 + static_cast<int>(rng() % 3)});
    } else {
      degrees.push_back(static_cast<int>(rng() % 7) - 3);
    }
  }
  return SplitSheaf(std::move(degrees), std::move(torsion));
}

GaussianRational random_z(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Rational re(static_cast<long long>(rng() % 7) - 3, static_cast<long long>(1 + rng() % 2));
  const Rational im(static_cast<long long>(1 + rng() % 3), static_cast<long long>(1 + rng() % 2));
  return {re, im};
}

}  // namespace stab::p1
