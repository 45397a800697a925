#pragma once

// Exact scalar types shared by every module.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polarix {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using RationalVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

/// Parses "p", "-p", "p/q" (surrounding whitespace allowed). Throws polarix::Error
/// with kind ParseError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer numerator_of(const Rational& value);
Integer denominator_of(const Rational& value);
bool is_integral(const Rational& value);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

/// Narrowing with an overflow check (Error kind Overflow).
std::int64_t to_int64(const Integer& value);
std::int64_t to_int64(const Rational& value);

double to_double(const Rational& value);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

std::int64_t gcd_int64(std::int64_t a, std::int64_t b);

}  // namespace polarix
