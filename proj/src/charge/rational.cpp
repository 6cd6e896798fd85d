#include "stability/rational.hpp"

#include "stability/error.hpp"

#include <cctype>

namespace stab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::kNegativeImaginary: return "NEGATIVE_IMAGINARY";
    case Errc::kLengthMismatch: return "LENGTH_MISMATCH";
    case Errc::kDegreeExceeded: return "DEGREE_EXCEEDED";
    case Errc::kNonContiguousOnes: return "NON_CONTIGUOUS_ONES";
    case Errc::kBackendMismatch: return "BACKEND_MISMATCH";
    case Errc::kParentMismatch: return "PARENT_MISMATCH";
    case Errc::kNotSurjective: return "NOT_SURJECTIVE";
    case Errc::kDimensionBoundExceeded: return "DIMENSION_BOUND_EXCEEDED";
    case Errc::kZeroObject: return "ZERO_OBJECT";
    case Errc::kPreconditionViolated: return "PRECONDITION_VIOLATED";
    case Errc::kLevelOutOfRange: return "LEVEL_OUT_OF_RANGE";
    case Errc::kUnvalidatedPreset: return "UNVALIDATED_PRESET";
    case Errc::kParseError: return "PARSE_ERROR";
    case Errc::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw Error(Errc::kParseError, "malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(Errc::kParseError, "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw Error(Errc::kParseError, "sign in denominator of '" + std::string(text) + "'");
  }
  const BigInt den = parse_integer(den_text, text);
  if (den == 0) {
    throw Error(Errc::kParseError, "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& x) {
  const BigInt& den = boost::multiprecision::denominator(x);
  if (den == 1) {
    return boost::multiprecision::numerator(x).str();
  }
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

std::string format_gaussian(const GaussianRational& z) {
  std::string out = format_rational(z.re);
  if (z.im.sign() < 0) {
    out += " - " + format_rational(-z.im);
  } else {
    out += " + " + format_rational(z.im);
  }
  return out + "i";
}

}  // namespace stab
