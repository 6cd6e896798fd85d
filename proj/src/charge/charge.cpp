#include "stability/charge.hpp"

#include "stability/error.hpp"

#include <algorithm>

namespace stab {

namespace {

const Rational& zero_rational() {
  static const Rational kZero{0};
  return kZero;
}

}  // namespace

ChargePolynomial::ChargePolynomial(int r) {
  if (r < 0) {
    throw Error(Errc::kInvalidArgument, "degree bound must be non-negative");
  }
  a_.assign(static_cast<std::size_t>(r) + 1, Rational(0));
  b_.assign(static_cast<std::size_t>(r) + 1, Rational(0));
}

ChargePolynomial::ChargePolynomial(std::vector<Rational> a, std::vector<Rational> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty() || a_.size() != b_.size()) {
    throw Error(Errc::kInvalidArgument, "coefficient arrays must be non-empty and of equal length");
  }
}

const Rational& ChargePolynomial::a(int k) const {
  if (k < 0 || k > r()) return zero_rational();
  return a_[static_cast<std::size_t>(k)];
}

const Rational& ChargePolynomial::b(int k) const {
  if (k < 0 || k > r()) return zero_rational();
  return b_[static_cast<std::size_t>(k)];
}

void ChargePolynomial::set(int k, Rational a, Rational b) {
  if (k < 0 || k > r()) {
    throw Error(Errc::kInvalidArgument, "coefficient index out of range");
  }
  a_[static_cast<std::size_t>(k)] = std::move(a);
  b_[static_cast<std::size_t>(k)] = std::move(b);
}

bool ChargePolynomial::is_zero() const { return !poly_degree(*this).has_value(); }

ChargePolynomial operator+(const ChargePolynomial& p, const ChargePolynomial& q) {
  ChargePolynomial out(std::max(p.r(), q.r()));
  for (int k = 0; k <= out.r(); ++k) out.set(k, p.a(k) + q.a(k), p.b(k) + q.b(k));
  return out;
}

ChargePolynomial operator-(const ChargePolynomial& p, const ChargePolynomial& q) {
  ChargePolynomial out(std::max(p.r(), q.r()));
  for (int k = 0; k <= out.r(); ++k) out.set(k, p.a(k) - q.a(k), p.b(k) - q.b(k));
  return out;
}

ChargePolynomial operator*(const Rational& s, const ChargePolynomial& p) {
  ChargePolynomial out(p.r());
  for (int k = 0; k <= p.r(); ++k) out.set(k, s * p.a(k), s * p.b(k));
  return out;
}

ChargePolynomial operator*(const GaussianRational& z, const ChargePolynomial& p) {
  ChargePolynomial out(p.r());
  for (int k = 0; k <= p.r(); ++k) {
    const GaussianRational c = z * p.coefficient(k);
    out.set(k, c.re, c.im);
  }
  return out;
}

bool operator==(const ChargePolynomial& p, const ChargePolynomial& q) {
  const int top = std::max(p.r(), q.r());
  for (int k = 0; k <= top; ++k) {
    if (p.a(k) != q.a(k) || p.b(k) != q.b(k)) return false;
  }
  return true;
}

std::optional<int> poly_degree(const ChargePolynomial& p) {
  for (int k = p.r(); k >= 0; --k) {
    if (!p.a(k).is_zero() || !p.b(k).is_zero()) return k;
  }
  return std::nullopt;
}

bool degree_at_most(const ChargePolynomial& p, int j) {
  const auto d = poly_degree(p);
  return !d || *d <= j;
}

const Rational& ExtendedSlope::value() const {
  if (!value_) throw Error(Errc::kInvalidArgument, "value() of an infinite slope");
  return *value_;
}

std::strong_ordering operator<=>(const ExtendedSlope& x, const ExtendedSlope& y) {
  if (x.is_infinite() || y.is_infinite()) {
    return x.is_infinite() <=> y.is_infinite();
  }
  if (*x.value_ < *y.value_) return std::strong_ordering::less;
  if (*y.value_ < *x.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExtendedSlope::str() const { return is_infinite() ? "inf" : format_rational(*value_); }

ExtendedSlope ExtendedSlope::parse(std::string_view text) {
  if (text == "inf" || text == "INF" || text == "infinity") return infinity();
  return ExtendedSlope(parse_rational(text));
}

ExtendedSlope slope_of(const Rational& re, const Rational& im) {
  if (im.sign() < 0) {
    throw Error(Errc::kNegativeImaginary,
                "charge " + format_rational(re) + " + " + format_rational(im) + "i");
  }
  if (im.is_zero()) return ExtendedSlope::infinity();
  return ExtendedSlope(-re / im);
}

std::string PhaseVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (i) out += ", ";
    out += slopes[i].str();
  }
  return out + ")";
}

std::strong_ordering lex_compare(const PhaseVector& u, const PhaseVector& v) {
  if (u.size() != v.size()) {
    throw Error(Errc::kLengthMismatch, "phase vectors of length " + std::to_string(u.size()) +
                                           " and " + std::to_string(v.size()));
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto c = u.slopes[i] <=> v.slopes[i];
    if (c != std::strong_ordering::equal) return c;
  }
  return std::strong_ordering::equal;
}

void NestedChargeSpec::validate() const {
  if (k < 0 || j < 0 || k > j) {
    throw Error(Errc::kInvalidArgument, "nesting depth must satisfy 0 <= k <= j");
  }
  if (t.size() != static_cast<std::size_t>(k) + 1) {
    throw Error(Errc::kInvalidArgument, "need exactly k+1 t-parameters");
  }
  for (const auto& ti : t) {
    if (ti.sign() <= 0) throw Error(Errc::kInvalidArgument, "t-parameters must be positive");
  }
  std::vector<int> sorted = ones;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1 || sorted[i] > k) {
      throw Error(Errc::kInvalidArgument, "phase-one level outside 1..k");
    }
    if (sorted[i] != static_cast<int>(i) + 1) {
      throw Error(Errc::kNonContiguousOnes, "phase-one levels must form a prefix {1..n}");
    }
  }
}

NestedChargeSpec level_spec(int j, std::span<const Rational> t,
                            std::span<const ExtendedSlope> prefix) {
  NestedChargeSpec spec;
  spec.j = j;
  spec.k = static_cast<int>(prefix.size());
  if (t.size() < prefix.size() + 1) {
    throw Error(Errc::kInvalidArgument, "not enough t-parameters for the requested level");
  }
  spec.t.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(prefix.size() + 1));
  for (std::size_t m = 0; m < prefix.size(); ++m) {
    if (prefix[m].is_infinite()) spec.ones.push_back(static_cast<int>(m) + 1);
  }
  spec.validate();
  return spec;
}

GaussianRational nested_charge(const ChargePolynomial& p, const NestedChargeSpec& spec) {
  spec.validate();
  if (!degree_at_most(p, spec.j)) {
    throw Error(Errc::kDegreeExceeded, "charge polynomial degree exceeds j=" + std::to_string(spec.j));
  }
  const int j = spec.j;
  const int k = spec.k;
  const Rational& t_next = spec.t[static_cast<std::size_t>(k)];
  GaussianRational z;
  z.re = p.a(j - k) * t_next - p.b(j - k - 1);
  if (spec.ones.empty()) {
    z.im = p.b(j);
  } else {
    const int n = *std::max_element(spec.ones.begin(), spec.ones.end());
    const Rational& t_n = spec.t[static_cast<std::size_t>(n) - 1];
    z.im = -(p.a(j - n + 1) * t_n - p.b(j - n));
  }
  return z;
}

std::string PositivityVerdict::describe() const {
  const std::string i = std::to_string(index);
  switch (clause) {
    case Clause::kNone: return "PASS";
    case Clause::kTopBNonNegative: return "b_" + i + " >= 0";
    case Clause::kANonPositive: return "a_" + i + " <= 0";
    case Clause::kBNonNegative: return "b_" + i + " >= 0";
    case Clause::kConstantNegative: return "a_0 < 0";
  }
  return "?";
}

PositivityVerdict positivity_audit(const ChargePolynomial& p, bool nonzero) {
  using Clause = PositivityVerdict::Clause;
  const int r = p.r();
  if (p.b(r).sign() < 0) return {Clause::kTopBNonNegative, r};
  // Walk b_r, a_r, b_{r-1}, ... and apply the clause guarded by each
  // vanishing prefix b_r = a_r = ... = a_{m+1} = b_m = 0.
  for (int m = r; m >= 0; --m) {
    if (!p.b(m).is_zero()) break;
    if (m == 0) {
      if (nonzero && p.a(0).sign() >= 0) return {Clause::kConstantNegative, 0};
      if (!nonzero && p.a(0).sign() > 0) return {Clause::kANonPositive, 0};
      break;
    }
    if (p.a(m).sign() > 0) return {Clause::kANonPositive, m};
    if (p.b(m - 1).sign() < 0) return {Clause::kBNonNegative, m - 1};
    if (!p.a(m).is_zero()) break;
  }
  return {};
}

}  // namespace stab
