#pragma once

// Charge polynomials, extended slopes and phase vectors. Everything here is
// exact; there is no floating point on any path.

#include "stability/rational.hpp"

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stab {

/// L_E(n) = sum_k (a_k + i b_k) n^k with a fixed degree bound r.
class ChargePolynomial {
 public:
  ChargePolynomial() : ChargePolynomial(0) {}
  explicit ChargePolynomial(int r);
  ChargePolynomial(std::vector<Rational> a, std::vector<Rational> b);

  int r() const { return static_cast<int>(a_.size()) - 1; }

  /// Coefficient reads outside 0..r return zero; this realizes b_{-1} = 0.
  const Rational& a(int k) const;
  const Rational& b(int k) const;
  void set(int k, Rational a, Rational b);

  const std::vector<Rational>& a_coeffs() const { return a_; }
  const std::vector<Rational>& b_coeffs() const { return b_; }

  bool is_zero() const;
  GaussianRational coefficient(int k) const { return {a(k), b(k)}; }

  friend ChargePolynomial operator+(const ChargePolynomial& p, const ChargePolynomial& q);
  friend ChargePolynomial operator-(const ChargePolynomial& p, const ChargePolynomial& q);
  friend ChargePolynomial operator*(const Rational& s, const ChargePolynomial& p);
  friend ChargePolynomial operator*(const GaussianRational& z, const ChargePolynomial& p);
  ChargePolynomial& operator+=(const ChargePolynomial& q) { return *this = *this + q; }

  /// Value-equality up to trailing zero coefficients, so that polynomials
  /// with different degree bounds compare by their actual coefficients.
  friend bool operator==(const ChargePolynomial& p, const ChargePolynomial& q);

 private:
  std::vector<Rational> a_;
  std::vector<Rational> b_;
};

/// Largest k with (a_k, b_k) != (0, 0); std::nullopt marks the zero polynomial.
std::optional<int> poly_degree(const ChargePolynomial& p);

/// Membership in A^{<=j}. The zero polynomial lies in every level.
bool degree_at_most(const ChargePolynomial& p, int j);

/// A slope mu = -Re/Im, or +infinity. Larger slope means larger phase in (0, 1].
class ExtendedSlope {
 public:
  explicit ExtendedSlope(Rational value) : value_(std::move(value)) {}
  static ExtendedSlope infinity() { return ExtendedSlope(); }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& value() const;

  friend std::strong_ordering operator<=>(const ExtendedSlope& x, const ExtendedSlope& y);
  friend bool operator==(const ExtendedSlope& x, const ExtendedSlope& y) {
    return (x <=> y) == std::strong_ordering::equal;
  }

  /// "inf" or a canonical rational.
  std::string str() const;
  static ExtendedSlope parse(std::string_view text);

 private:
  ExtendedSlope() = default;
  std::optional<Rational> value_;
};

/// Requires im >= 0; Im == 0 (including Z == 0) gives INFINITY.
ExtendedSlope slope_of(const Rational& re, const Rational& im);
inline ExtendedSlope slope_of(const GaussianRational& z) { return slope_of(z.re, z.im); }

struct PhaseVector {
  std::vector<ExtendedSlope> slopes;

  std::size_t size() const { return slopes.size(); }
  friend bool operator==(const PhaseVector&, const PhaseVector&) = default;
  std::string str() const;
};

/// Lexicographic comparison; throws kLengthMismatch on unequal lengths.
std::strong_ordering lex_compare(const PhaseVector& u, const PhaseVector& v);

/// Parameters of the level-(k+1) charge sigma_{phi_1..phi_k}^{t_1..t_{k+1}}
/// on A^{<=j}. `ones` holds the 1-based levels m <= k whose phase is 1.
struct NestedChargeSpec {
  int j = 0;
  int k = 0;
  std::vector<Rational> t;
  std::vector<int> ones;

  /// Throws kInvalidArgument on bad shape or non-positive t, and
  /// kNonContiguousOnes when `ones` is not of the form {1, ..., n}.
  void validate() const;
};

/// Spec for level `prefix.size() + 1`, with the ones pattern read off the
/// infinite entries of the already-known phase prefix.
NestedChargeSpec level_spec(int j, std::span<const Rational> t,
                            std::span<const ExtendedSlope> prefix);

GaussianRational nested_charge(const ChargePolynomial& p, const NestedChargeSpec& spec);

/// Outcome of the coefficient positivity cascade.
struct PositivityVerdict {
  enum class Clause {
    kNone,             // pass
    kTopBNonNegative,  // b_r >= 0
    kANonPositive,     // a_index <= 0 after a vanishing prefix
    kBNonNegative,     // b_index >= 0 after a vanishing prefix
    kConstantNegative  // a_0 < 0 for a nonzero object
  };

  Clause clause = Clause::kNone;
  int index = 0;

  bool pass() const { return clause == Clause::kNone; }
  std::string describe() const;
  friend bool operator==(const PositivityVerdict&, const PositivityVerdict&) = default;
};

PositivityVerdict positivity_audit(const ChargePolynomial& p, bool nonzero);

}  // namespace stab
