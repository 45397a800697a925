#include "polarix/rational.hpp"

#include "polarix/errors.hpp"

#include <cctype>
#include <limits>
#include <numeric>

namespace polarix {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::UnknownModel: return "UnknownModel";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::EmptyLinearSeries: return "EmptyLinearSeries";
    case ErrorKind::NotBig: return "NotBig";
    case ErrorKind::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorKind::ImproperIntersection: return "ImproperIntersection";
    case ErrorKind::InterpolationUnstable: return "InterpolationUnstable";
    case ErrorKind::NotProjectivelyNormal: return "NotProjectivelyNormal";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::PointOnDivisor: return "PointOnDivisor";
    case ErrorKind::InvalidPlace: return "InvalidPlace";
    case ErrorKind::NotFano: return "NotFano";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string_view module, const std::string& detail)
    : std::runtime_error(std::string(module) + ": " + std::string(error_kind_name(kind)) +
                         ": " + detail),
      kind_(kind) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    negative = s[pos] == '-';
    ++pos;
  }
  if (pos == s.size()) {
    throw Error(ErrorKind::ParseError, "rational", "malformed rational '" + std::string(whole) + "'");
  }
  Integer value = 0;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) {
      throw Error(ErrorKind::ParseError, "rational",
                  "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (s[pos] - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  const Integer num = parse_integer(s.substr(0, slash), text);
  const Integer den = parse_integer(s.substr(slash + 1), text);
  if (den == 0) {
    throw Error(ErrorKind::ParseError, "rational", "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const Integer den = denominator_of(value);
  if (den == 1) return numerator_of(value).str();
  return numerator_of(value).str() + "/" + den.str();
}

Integer numerator_of(const Rational& value) { return boost::multiprecision::numerator(value); }
Integer denominator_of(const Rational& value) { return boost::multiprecision::denominator(value); }
bool is_integral(const Rational& value) { return denominator_of(value) == 1; }

Integer floor_of(const Rational& value) {
  const Integer num = numerator_of(value);
  const Integer den = denominator_of(value);
  Integer q = num / den;  // truncates toward zero
  if (q * den != num && num < 0) q -= 1;
  return q;
}

Integer ceil_of(const Rational& value) {
  const Integer f = floor_of(value);
  return Rational(f) == value ? f : Integer(f + 1);
}

std::int64_t to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::Overflow, "rational", "integer " + value.str() + " exceeds 64 bits");
  }
  return value.convert_to<std::int64_t>();
}

std::int64_t to_int64(const Rational& value) {
  if (!is_integral(value)) {
    throw Error(ErrorKind::Overflow, "rational", "expected an integer, got " + to_string(value));
  }
  return to_int64(numerator_of(value));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t gcd_int64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

}  // namespace polarix
