#include "stability/lex_engine.hpp"

namespace stab::lex {

void LexContext::validate() const {
  if (j < 0) throw Error(Errc::kInvalidArgument, "negative degree level");
  if (level < 1 || level > j + 1) {
    throw Error(Errc::kLevelOutOfRange,
                "level " + std::to_string(level) + " outside 1.." + std::to_string(j + 1));
  }
  if (static_cast<int>(t.size()) != level) {
    throw Error(Errc::kInvalidArgument, "need exactly " + std::to_string(level) + " t-parameters");
  }
  for (const auto& x : t) {
    if (x.sign() <= 0) throw Error(Errc::kInvalidArgument, "t-parameters must be positive");
  }
}

hn::ChargePlane LexContext::plane(std::span<const ExtendedSlope> prefix) const {
  return hn::ChargePlane::nested(level_spec(j, t, prefix));
}

bool infinity_propagates(const PhaseVector& v) {
  bool finite_seen = false;
  for (const auto& s : v.slopes) {
    if (!s.is_infinite()) {
      finite_seen = true;
    } else if (finite_seen) {
      return false;
    }
  }
  return true;
}

bool strictly_decreasing(const std::vector<PhaseVector>& vectors) {
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    if (lex_compare(vectors[i - 1], vectors[i]) != std::strong_ordering::greater) return false;
  }
  return true;
}

void check_cutoff(const PhaseVector& cutoff, const LexContext& ctx) {
  if (static_cast<int>(cutoff.size()) != ctx.level) {
    throw Error(Errc::kLengthMismatch, "cutoff length differs from the level");
  }
  for (const auto& s : cutoff.slopes) {
    if (s.is_infinite()) throw Error(Errc::kInvalidArgument, "cutoff coordinates must be finite");
  }
}

VirtualClass virtual_class(const ChargePolynomial& t, const ChargePolynomial& f) { return {t - f}; }

TiltedVerdict tilted_positivity_audit(const VirtualClass& v, std::span<const Rational> t) {
  const auto& p = v.charge;
  const int r = p.r();
  if (static_cast<int>(t.size()) < r + 1) {
    throw Error(Errc::kInvalidArgument, "need r+1 t-parameters for the tilted audit");
  }
  TiltedVerdict out;
  for (int l = 1; l <= r + 1; ++l) {
    Rational q = -p.a(r - l + 1) * t[static_cast<std::size_t>(l) - 1] + p.b(r - l);
    const int s = q.sign();
    out.values.push_back(std::move(q));
    if (s > 0) return out;
    if (s < 0) {
      out.pass = false;
      out.failed_level = l;
      return out;
    }
  }
  return out;
}

hn::ChargePlane sigma_t_plane(const Rational& t) {
  return hn::ChargePlane(
      [t](const ChargePolynomial& p) { return GaussianRational{p.a(1) * t - p.b(0), p.b(1) * t}; },
      "Z_t");
}

Rational quadratic_value(const ChargePolynomial& p) { return p.b(1) * p.a(0) - p.b(0) * p.a(1); }

GaussianRational tilted_charge(const VirtualClass& v, const Rational& s, const Rational& t) {
  const auto& p = v.charge;
  return {p.b(1) * s + p.a(0), -p.a(1) * t + p.b(0)};
}

bool tilted_charge_contract(const GaussianRational& z, bool nonzero) {
  if (z.im.sign() < 0) return false;
  if (z.im.is_zero() && nonzero) return z.re.sign() < 0;
  return true;
}

}  // namespace stab::lex
