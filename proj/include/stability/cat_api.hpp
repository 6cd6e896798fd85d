#pragma once

// Backend-independent contract for a computable abelian category whose
// objects carry charge polynomials. The engines are written against
// EnumerableCategory only.

#include "stability/charge.hpp"

#include <concepts>
#include <vector>

namespace stab::cat {

struct BackendCapabilities {
  bool supports_subobject_enumeration = false;
  bool supports_hom_basis = false;
  bool supports_closed_form_hn = false;
};

template <class C>
concept EnumerableCategory =
    requires(const C& cat, const typename C::Object& e, const typename C::Subobject& s,
             const typename C::Morphism& f) {
      { C::capabilities() } -> std::same_as<BackendCapabilities>;
      { cat.charge(e) } -> std::same_as<ChargePolynomial>;
      { cat.is_zero(e) } -> std::same_as<bool>;
      { cat.subobjects(e) } -> std::same_as<std::vector<typename C::Subobject>>;
      { cat.zero_subobject(e) } -> std::same_as<typename C::Subobject>;
      { cat.whole(e) } -> std::same_as<typename C::Subobject>;
      { cat.child(s) } -> std::same_as<typename C::Object>;
      { cat.quotient(s) } -> std::same_as<typename C::Object>;
      { cat.projection(s) } -> std::same_as<typename C::Morphism>;
      { cat.inclusion(s) } -> std::same_as<typename C::Morphism>;
      { cat.embed(s, s) } -> std::same_as<typename C::Subobject>;
      { cat.sum(s, s) } -> std::same_as<typename C::Subobject>;
      { cat.intersect(s, s) } -> std::same_as<typename C::Subobject>;
      { cat.pullback(s, f) } -> std::same_as<typename C::Subobject>;
      { cat.kernel(f) } -> std::same_as<typename C::Subobject>;
      { cat.image(f) } -> std::same_as<typename C::Subobject>;
      { cat.cokernel(f) } -> std::same_as<typename C::Object>;
      { cat.hom_basis(e, e) } -> std::same_as<std::vector<typename C::Morphism>>;
      { s == s } -> std::convertible_to<bool>;
    };

/// 0 -> sub -> total -> quotient -> 0, witnessed by the subobject inclusion
/// and the projection onto the quotient.
template <EnumerableCategory C>
struct ShortExactSequence {
  typename C::Subobject sub;
  typename C::Object quotient;
  typename C::Morphism projection;
};

template <EnumerableCategory C>
ShortExactSequence<C> make_ses(const C& cat, const typename C::Subobject& sub) {
  return {sub, cat.quotient(sub), cat.projection(sub)};
}

/// Exact charge additivity: charge(total) = charge(sub) + charge(quotient).
template <EnumerableCategory C>
bool charge_additive(const C& cat, const typename C::Object& total,
                     const ShortExactSequence<C>& ses) {
  return cat.charge(total) == cat.charge(cat.child(ses.sub)) + cat.charge(ses.quotient);
}

}  // namespace stab::cat
