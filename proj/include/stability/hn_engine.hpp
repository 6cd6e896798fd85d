#pragma once

// Semistability, Harder-Narasimhan filtrations and the zero-charge
// (abelianizer) toolkit for a weak stability function on an enumerable
// backend.

#include "stability/cat_api.hpp"
#include "stability/charge.hpp"
#include "stability/error.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stab::hn {

/// Assigns each charge polynomial a point of the upper half plane.
class ChargePlane {
 public:
  using Fn = std::function<GaussianRational(const ChargePolynomial&)>;

  ChargePlane(Fn fn, std::string label) : fn_(std::move(fn)), label_(std::move(label)) {}

  /// The nested charge for a fixed spec.
  static ChargePlane nested(NestedChargeSpec spec);

  GaussianRational operator()(const ChargePolynomial& p) const { return fn_(p); }
  const std::string& label() const { return label_; }

 private:
  Fn fn_;
  std::string label_;
};

/// Slope of a plane value. Throws kNegativeImaginary for Im < 0 and
/// kPreconditionViolated for Im = 0 with Re > 0.
ExtendedSlope plane_slope(const GaussianRational& z);

/// True when z is 0 or has slope exactly mu.
bool on_ray(const GaussianRational& z, const ExtendedSlope& mu);

/// The extremal vertices 0 = v_0, ..., v_n = target of the convex hull of
/// `points` that lie left of (or on) the directed line from 0 to target,
/// in boundary order. Collinear points are not vertices. All points must lie
/// in the closed upper half plane.
std::vector<GaussianRational> extremal_path(std::vector<GaussianRational> points,
                                            const GaussianRational& target);

/// Optional restriction of subobject searches to a full subcategory.
template <class C>
using Slice = std::function<bool(const typename C::Object&)>;

struct HnOptions {
  /// Take the first maximal-slope subobject instead of the sum of all of
  /// them. Deliberately wrong; used to check that the suites notice.
  bool inject_fault = false;
};

template <class C>
struct HnStep {
  typename C::Object quotient;         // E / E_{i-1}
  typename C::Morphism projection;     // E -> E / E_{i-1}
  typename C::Subobject destabilizer;  // E_i / E_{i-1} inside the quotient
  typename C::Object factor;
  GaussianRational charge;
  ExtendedSlope slope = ExtendedSlope::infinity();
};

template <class C>
struct Filtration {
  std::vector<typename C::Subobject> chain;  // E_0 = 0, ..., E_m = E
  std::vector<HnStep<C>> steps;              // one per factor

  std::size_t size() const { return steps.size(); }
};

template <class C>
struct SemistableResult {
  bool semistable = false;
  ExtendedSlope slope = ExtendedSlope::infinity();
  std::optional<typename C::Subobject> witness;
};

template <class C>
struct QuasiDecomposition {
  typename C::Subobject zero_part;  // Q', the maximal zero-charge subobject
  typename C::Object semistable_part;  // K' = E / Q'
  /// Slope of K'; empty when K' = 0.
  std::optional<ExtendedSlope> slope;
};

template <class C>
struct SwitchResult {
  typename C::Subobject zero_part;  // Q'
  typename C::Object semistable_part;  // K'
  ExtendedSlope slope = ExtendedSlope::infinity();
};

struct ClosureVerdict {
  bool pass = true;
  std::string failing;  // "kernel", "image" or "cokernel"
};

namespace detail {

template <class C>
struct Candidate {
  typename C::Subobject sub;
  GaussianRational z;
  ExtendedSlope slope = ExtendedSlope::infinity();
};

/// Nonzero subobjects of x whose underlying object lies in the slice.
template <cat::EnumerableCategory C>
std::vector<Candidate<C>> candidates(const C& cat, const typename C::Object& x,
                                     const ChargePlane& plane, const Slice<C>& slice) {
  std::vector<Candidate<C>> out;
  for (auto& s : cat.subobjects(x)) {
    auto child = cat.child(s);
    if (cat.is_zero(child)) continue;
    if (slice && !slice(child)) continue;
    auto z = plane(cat.charge(child));
    auto mu = plane_slope(z);
    out.push_back({std::move(s), std::move(z), std::move(mu)});
  }
  return out;
}

template <cat::EnumerableCategory C>
typename C::Subobject sum_all(const C& cat, const typename C::Object& x,
                              const std::vector<const typename C::Subobject*>& subs) {
  auto acc = cat.zero_subobject(x);
  for (const auto* s : subs) acc = cat.sum(acc, *s);
  return acc;
}

}  // namespace detail

template <cat::EnumerableCategory C>
GaussianRational charge_of(const C& cat, const ChargePlane& plane, const typename C::Object& x) {
  return plane(cat.charge(x));
}

/// Sum of all subobjects (within the slice) of zero charge.
template <cat::EnumerableCategory C>
typename C::Subobject max_zero_charge_subobject(const C& cat, const typename C::Object& e,
                                                const ChargePlane& plane,
                                                const Slice<C>& slice = {}) {
  std::vector<const typename C::Subobject*> zero;
  const auto cands = detail::candidates(cat, e, plane, slice);
  for (const auto& c : cands)
    if (c.z.is_zero()) zero.push_back(&c.sub);
  return detail::sum_all(cat, e, zero);
}

template <cat::EnumerableCategory C>
SemistableResult<C> is_semistable(const C& cat, const typename C::Object& e,
                                  const ChargePlane& plane, const Slice<C>& slice = {}) {
  if (cat.is_zero(e)) throw Error(Errc::kZeroObject, "semistability of the zero object");
  SemistableResult<C> out;
  out.slope = plane_slope(charge_of(cat, plane, e));
  const auto cands = detail::candidates(cat, e, plane, slice);
  std::optional<ExtendedSlope> best;
  for (const auto& c : cands)
    if (!best || c.slope > *best) best = c.slope;
  if (!best || *best <= out.slope) {
    out.semistable = true;
    return out;
  }
  std::vector<const typename C::Subobject*> top;
  for (const auto& c : cands)
    if (c.slope == *best) top.push_back(&c.sub);
  out.witness = detail::sum_all(cat, e, top);
  return out;
}

/// Greedy maximal-destabilizer construction: at each step take the sum of
/// all subobjects of E/E_{i-1} of maximal slope and pull it back to E.
template <cat::EnumerableCategory C>
Filtration<C> hn_filtration(const C& cat, const typename C::Object& e, const ChargePlane& plane,
                            const Slice<C>& slice = {}, const HnOptions& options = {}) {
  Filtration<C> out;
  auto current = cat.zero_subobject(e);
  const auto top = cat.whole(e);
  out.chain.push_back(current);
  while (!(current == top)) {
    auto projection = cat.projection(current);
    auto quotient = cat.quotient(current);
    const auto cands = detail::candidates(cat, quotient, plane, slice);
    if (cands.empty()) {
      throw Error(Errc::kPreconditionViolated, "nonzero quotient without subobjects in the slice");
    }
    ExtendedSlope best = cands.front().slope;
    for (const auto& c : cands)
      if (c.slope > best) best = c.slope;
    std::vector<const typename C::Subobject*> top_subs;
    for (const auto& c : cands) {
      if (c.slope == best) {
        top_subs.push_back(&c.sub);
        if (options.inject_fault) break;
      }
    }
    auto d = detail::sum_all(cat, quotient, top_subs);
    auto factor = cat.child(d);
    auto z = charge_of(cat, plane, factor);
    auto mu = plane_slope(z);
    auto next = cat.pullback(d, projection);
    out.steps.push_back({std::move(quotient), std::move(projection), std::move(d),
                         std::move(factor), std::move(z), std::move(mu)});
    out.chain.push_back(next);
    current = std::move(next);
  }
  return out;
}

/// Extremal hull vertices for Q = E / E_0, E_0 the maximal zero-charge
/// subobject, from the charges of every subobject of Q.
template <cat::EnumerableCategory C>
std::vector<GaussianRational> hull_vertices(const C& cat, const typename C::Object& e,
                                            const ChargePlane& plane) {
  const auto e0 = max_zero_charge_subobject(cat, e, plane);
  const auto q = cat.quotient(e0);
  std::vector<GaussianRational> points;
  for (const auto& s : cat.subobjects(q)) points.push_back(charge_of(cat, plane, cat.child(s)));
  return extremal_path(std::move(points), charge_of(cat, plane, q));
}

/// {0} together with the partial charge sums of the HN factors.
template <class C>
std::vector<GaussianRational> partial_sums(const Filtration<C>& f) {
  std::vector<GaussianRational> out{GaussianRational{}};
  GaussianRational acc;
  for (const auto& s : f.steps) {
    acc += s.charge;
    out.push_back(acc);
  }
  return out;
}

/// E / Q' semistable with Q' the maximal zero-charge subobject, or nullopt.
template <cat::EnumerableCategory C>
std::optional<QuasiDecomposition<C>> quasi_semistable_decompose(const C& cat,
                                                                const typename C::Object& e,
                                                                const ChargePlane& plane,
                                                                const Slice<C>& slice = {}) {
  auto q = max_zero_charge_subobject(cat, e, plane, slice);
  auto k = cat.quotient(q);
  if (cat.is_zero(k)) return QuasiDecomposition<C>{std::move(q), std::move(k), std::nullopt};
  auto ss = is_semistable(cat, k, plane, slice);
  if (!ss.semistable) return std::nullopt;
  return QuasiDecomposition<C>{std::move(q), std::move(k), std::move(ss.slope)};
}

/// Quasi-semistable of the given slope, counting zero-charge objects as
/// members of every phase.
template <cat::EnumerableCategory C>
bool quasi_semistable_of(const C& cat, const typename C::Object& e, const ChargePlane& plane,
                         const ExtendedSlope& mu, const Slice<C>& slice = {}) {
  auto d = quasi_semistable_decompose(cat, e, plane, slice);
  return d && (!d->slope || *d->slope == mu);
}

/// Given 0 -> K -> E -> Q -> 0 with K semistable and Z(Q) = 0, produce
/// 0 -> Q' -> E -> K' -> 0 with Z(Q') = 0 and K' semistable of K's phase.
template <cat::EnumerableCategory C>
SwitchResult<C> switch_decomposition(const C& cat, const typename C::Object& e,
                                     const typename C::Subobject& k, const ChargePlane& plane) {
  const auto k_obj = cat.child(k);
  if (cat.is_zero(k_obj)) throw Error(Errc::kPreconditionViolated, "K must be nonzero");
  const auto k_ss = is_semistable(cat, k_obj, plane);
  if (!k_ss.semistable) throw Error(Errc::kPreconditionViolated, "K is not semistable");
  if (!charge_of(cat, plane, cat.quotient(k)).is_zero()) {
    throw Error(Errc::kPreconditionViolated, "E/K has nonzero charge");
  }
  if (k_ss.slope.is_infinite()) return {cat.zero_subobject(e), e, k_ss.slope};

  // Q' is the largest subobject of phase one.
  std::vector<const typename C::Subobject*> phase_one;
  const auto cands = detail::candidates(cat, e, plane, Slice<C>{});
  for (const auto& c : cands)
    if (c.slope.is_infinite()) phase_one.push_back(&c.sub);
  auto q = detail::sum_all(cat, e, phase_one);
  if (!charge_of(cat, plane, cat.child(q)).is_zero()) {
    throw Error(Errc::kPreconditionViolated, "phase-one part of E has nonzero charge");
  }
  auto kp = cat.quotient(q);
  const auto kp_ss = is_semistable(cat, kp, plane);
  if (!kp_ss.semistable || !(kp_ss.slope == k_ss.slope)) {
    throw Error(Errc::kPreconditionViolated, "E/Q' is not semistable of the phase of K");
  }
  return {std::move(q), std::move(kp), k_ss.slope};
}

/// Kernel, image and cokernel of a map between quasi-semistables of one
/// phase are again quasi-semistable of that phase.
template <cat::EnumerableCategory C>
ClosureVerdict phase_closure_check(const C& cat, const typename C::Morphism& f,
                                   const typename C::Object& source,
                                   const typename C::Object& target, const ChargePlane& plane) {
  const auto ds = quasi_semistable_decompose(cat, source, plane);
  const auto dt = quasi_semistable_decompose(cat, target, plane);
  if (!ds || !dt) throw Error(Errc::kPreconditionViolated, "endpoint is not quasi-semistable");
  std::optional<ExtendedSlope> phase = ds->slope ? ds->slope : dt->slope;
  if (ds->slope && dt->slope && !(*ds->slope == *dt->slope)) {
    throw Error(Errc::kPreconditionViolated, "endpoints have different phases");
  }
  auto check = [&](const typename C::Object& x) {
    auto d = quasi_semistable_decompose(cat, x, plane);
    if (!d) return false;
    if (!d->slope) return true;
    return phase && *d->slope == *phase;
  };
  if (!check(cat.child(cat.kernel(f)))) return {false, "kernel"};
  if (!check(cat.child(cat.image(f)))) return {false, "image"};
  if (!check(cat.cokernel(f))) return {false, "cokernel"};
  return {};
}

}  // namespace stab::hn
