#pragma once

// Degree filtration, l-th level semistability, the lexicographic-order
// filtration, torsion pairs cut out by phase vectors, and K_0-level audits of
// the tilted heart.

#include "stability/cat_api.hpp"
#include "stability/charge.hpp"
#include "stability/hn_engine.hpp"
#include "stability/parallel.hpp"

#include <optional>
#include <span>
#include <vector>

namespace stab::lex {

/// Degree level j, number of levels l and the parameters t_1..t_l.
struct LexContext {
  int j = 0;
  int level = 1;
  std::vector<Rational> t;

  /// Throws kLevelOutOfRange unless 1 <= level <= j + 1, and
  /// kInvalidArgument unless t has `level` positive entries.
  void validate() const;

  /// The level-(prefix.size() + 1) charge.
  hn::ChargePlane plane(std::span<const ExtendedSlope> prefix) const;
};

struct LexOptions {
  hn::HnOptions hn;
  /// Workers for refining the level-1 factors.
  unsigned threads = 1;
};

template <class C>
struct LexFiltration {
  std::vector<typename C::Subobject> chain;  // E_0 = 0, ..., E_n = E
  std::vector<typename C::Object> factors;
  std::vector<PhaseVector> vectors;

  std::size_t size() const { return factors.size(); }
};

/// Once a coordinate is INFINITY every earlier one is too.
bool infinity_propagates(const PhaseVector& v);
bool strictly_decreasing(const std::vector<PhaseVector>& vectors);

struct LevelResult {
  bool semistable = false;
  PhaseVector vector;     // slopes of the levels that passed
  int failed_level = 0;   // 1-based; 0 when semistable
};

/// Membership of y in the slice cut out by the phase prefix: quasi-
/// semistable of phase prefix[m-1] for the level-m charge inside the
/// level-(m-1) slice, for every m.
template <cat::EnumerableCategory C>
bool in_slice(const C& cat, const typename C::Object& y, const LexContext& ctx,
              std::span<const ExtendedSlope> prefix) {
  for (std::size_t m = 1; m <= prefix.size(); ++m) {
    const auto inner = prefix.first(m - 1);
    hn::Slice<C> slice;
    if (m > 1) {
      slice = [&cat, &ctx, inner](const typename C::Object& g) { return in_slice(cat, g, ctx, inner); };
    }
    if (!hn::quasi_semistable_of(cat, y, ctx.plane(inner), prefix[m - 1], slice)) return false;
  }
  return true;
}

template <cat::EnumerableCategory C>
hn::Slice<C> slice_of(const C& cat, const LexContext& ctx, const PhaseVector& prefix) {
  if (prefix.slopes.empty()) return {};
  return [&cat, &ctx, slopes = prefix.slopes](const typename C::Object& g) {
    return in_slice(cat, g, ctx, std::span<const ExtendedSlope>(slopes));
  };
}

/// E_0 ⊂ ... ⊂ E_r with E_j the sum of all subobjects of degree at most j.
template <cat::EnumerableCategory C>
std::vector<typename C::Subobject> degree_filtration(const C& cat, const typename C::Object& e) {
  const int r = cat.charge(e).r();
  const auto subs = cat.subobjects(e);
  std::vector<int> degree;
  degree.reserve(subs.size());
  for (const auto& s : subs) {
    const auto d = poly_degree(cat.charge(cat.child(s)));
    degree.push_back(d ? *d : -1);
  }
  std::vector<typename C::Subobject> out;
  for (int j = 0; j <= r; ++j) {
    auto acc = cat.zero_subobject(e);
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (degree[i] <= j) acc = cat.sum(acc, subs[i]);
    out.push_back(std::move(acc));
  }
  return out;
}

template <cat::EnumerableCategory C>
LevelResult is_lth_level_semistable(const C& cat, const typename C::Object& e, const LexContext& ctx) {
  ctx.validate();
  LevelResult out;
  for (int m = 1; m <= ctx.level; ++m) {
    const auto ss = hn::is_semistable(cat, e, ctx.plane(out.vector.slopes), slice_of(cat, ctx, out.vector));
    if (!ss.semistable) {
      out.failed_level = m;
      return out;
    }
    out.vector.slopes.push_back(ss.slope);
  }
  out.semistable = true;
  return out;
}

namespace detail {

template <class C>
struct Piece {
  typename C::Subobject top;
  typename C::Object factor;
  PhaseVector vector;
};

/// Lex pieces of x above the given prefix: HN at the next level inside the
/// prefix slice, each factor refined recursively and spliced back by
/// pulling back along x -> x / E_{i-1}.
template <cat::EnumerableCategory C>
std::vector<Piece<C>> refine(const C& cat, const typename C::Object& x, const LexContext& ctx,
                             const PhaseVector& prefix, const LexOptions& options, unsigned threads) {
  if (static_cast<int>(prefix.size()) == ctx.level) return {{cat.whole(x), x, prefix}};
  const auto hnf = hn::hn_filtration(cat, x, ctx.plane(prefix.slopes), slice_of(cat, ctx, prefix), options.hn);
  std::vector<std::vector<Piece<C>>> parts(hnf.steps.size());
  parallel_for(hnf.steps.size(), threads, [&](std::size_t i) {
    const auto& step = hnf.steps[i];
    PhaseVector next = prefix;
    next.slopes.push_back(step.slope);
    auto sub = refine(cat, step.factor, ctx, next, options, 1);
    for (auto& p : sub) p.top = cat.pullback(cat.embed(p.top, step.destabilizer), step.projection);
    parts[i] = std::move(sub);
  });
  std::vector<Piece<C>> out;
  for (auto& part : parts)
    for (auto& p : part) out.push_back(std::move(p));
  return out;
}

}  // namespace detail

template <cat::EnumerableCategory C>
LexFiltration<C> lex_filtration(const C& cat, const typename C::Object& e, const LexContext& ctx,
                                const LexOptions& options = {}) {
  ctx.validate();
  LexFiltration<C> out;
  out.chain.push_back(cat.zero_subobject(e));
  if (cat.is_zero(e)) return out;
  for (auto& p : detail::refine(cat, e, ctx, PhaseVector{}, options, options.threads)) {
    out.chain.push_back(std::move(p.top));
    out.factors.push_back(std::move(p.factor));
    out.vectors.push_back(std::move(p.vector));
  }
  return out;
}

template <class C>
struct TorsionSplit {
  typename C::Subobject torsion;  // T as a subobject of E
  typename C::Object t;
  typename C::Object f;
  typename C::Morphism projection;  // E -> F
  PhaseVector cutoff;
  LexFiltration<C> lex;
  std::size_t torsion_factors = 0;
  /// Hom(T, F) = 0, when the backend can compute Hom.
  std::optional<bool> hom_vanishes;
};

/// Throws kInvalidArgument unless the cutoff has `level` finite entries.
void check_cutoff(const PhaseVector& cutoff, const LexContext& ctx);

/// T is the largest prefix of the lex filtration whose vectors exceed the
/// cutoff; F = E / T.
template <cat::EnumerableCategory C>
TorsionSplit<C> torsion_split(const C& cat, const typename C::Object& e, const PhaseVector& cutoff,
                              const LexContext& ctx, const LexOptions& options = {}) {
  check_cutoff(cutoff, ctx);
  auto lex = lex_filtration(cat, e, ctx, options);
  std::size_t n = 0;
  while (n < lex.size() && lex_compare(lex.vectors[n], cutoff) == std::strong_ordering::greater) ++n;
  auto torsion = lex.chain[n];
  auto t = cat.child(torsion);
  auto f = cat.quotient(torsion);
  auto projection = cat.projection(torsion);
  std::optional<bool> hom_vanishes;
  if constexpr (C::capabilities().supports_hom_basis) hom_vanishes = cat.hom_basis(t, f).empty();
  return {std::move(torsion), std::move(t), std::move(f), std::move(projection),
          cutoff, std::move(lex), n, hom_vanishes};
}

/// The K_0 class charge(T) - charge(F) of an object of the tilted heart.
struct VirtualClass {
  ChargePolynomial charge;
};

VirtualClass virtual_class(const ChargePolynomial& t, const ChargePolynomial& f);

struct TiltedVerdict {
  bool pass = true;
  int failed_level = 0;         // 1-based
  std::vector<Rational> values;  // q_1, q_2, ... as far as evaluated
};

/// q_l = -a_{r-l+1} t_l + b_{r-l} for l = 1..r+1, cascaded: the first
/// nonzero q decides, and all-zero passes.
TiltedVerdict tilted_positivity_audit(const VirtualClass& v, std::span<const Rational> t);

/// Z_t = a_1 t - b_0 + i b_1 t.
hn::ChargePlane sigma_t_plane(const Rational& t);

/// b_1 a_0 - b_0 a_1.
Rational quadratic_value(const ChargePolynomial& p);

struct QuadraticVerdict {
  Rational value;
  int sign = 0;
};

/// Requires degree at most 1 and semistability under Z_t.
template <cat::EnumerableCategory C>
QuadraticVerdict sigma_t_quadratic_audit(const C& cat, const typename C::Object& e, const Rational& t) {
  const auto p = cat.charge(e);
  if (!degree_at_most(p, 1)) throw Error(Errc::kPreconditionViolated, "degree exceeds 1");
  if (cat.is_zero(e) || !hn::is_semistable(cat, e, sigma_t_plane(t)).semistable) {
    throw Error(Errc::kPreconditionViolated, "object is not semistable for Z_t");
  }
  auto value = quadratic_value(p);
  const int s = value.sign();
  return {std::move(value), s};
}

/// b_1 s + a_0 + i(-a_1 t + b_0).
GaussianRational tilted_charge(const VirtualClass& v, const Rational& s, const Rational& t);

/// Im >= 0, and Im = 0 forces Re < 0 for a nonzero class.
bool tilted_charge_contract(const GaussianRational& z, bool nonzero);

}  // namespace stab::lex
