#pragma once

// Dense univariate polynomials over Q. Used for exact interpolation of
// Hilbert/volume functions and as the ring Q[t] under the function field Q(t).

#include "polarix/rational.hpp"

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polarix {

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RationalVector coeffs);  // coeffs[k] multiplies t^k
  Polynomial(const Rational& constant);        // NOLINT: constants promote implicitly

  static Polynomial monomial(const Rational& coeff, std::size_t degree);
  static Polynomial variable() { return monomial(1, 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree of the zero polynomial is -1.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coefficient(std::size_t k) const;
  Rational leading_coefficient() const;
  const RationalVector& coefficients() const noexcept { return coeffs_; }

  Rational operator()(const Rational& t) const;

  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const;
  Rational integrate(const Rational& lo, const Rational& hi) const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  std::string to_string(char var = 't') const;

 private:
  void trim();
  RationalVector coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

DivMod divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

/// Yun square-free decomposition of a nonzero polynomial: returns (g_k, k) with
/// a = lc(a) * prod g_k^k, each g_k monic, square-free, pairwise coprime, deg >= 1.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& a);

/// All distinct rational roots (rational root theorem on the cleared integer form).
std::vector<Rational> rational_roots(const Polynomial& a);

/// Multiplicity of the monic factor f in a (a != 0, deg f >= 1).
int multiplicity(const Polynomial& a, const Polynomial& f);

/// Lagrange interpolation through (xs[i], ys[i]); xs distinct.
Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

/// Parses expressions such as "3*t^2 - t/2 + 1", "(t-1)", "-t^3". Single variable
/// named by `var`; rational coefficients; no nested products of parentheses.
Polynomial parse_polynomial(std::string_view text, char var = 't');

}  // namespace polarix
