#include "polarix/polynomial.hpp"

#include "polarix/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace polarix {

Polynomial::Polynomial(RationalVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

Polynomial Polynomial::monomial(const Rational& coeff, std::size_t degree) {
  RationalVector c(degree + 1, Rational(0));
  c[degree] = coeff;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational Polynomial::leading_coefficient() const {
  return coeffs_.empty() ? Rational(0) : coeffs_.back();
}

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  RationalVector c(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) c[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return {};
  RationalVector c(coeffs_.size() + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    c[k + 1] = coeffs_[k] / Rational(static_cast<long>(k + 1));
  return Polynomial(std::move(c));
}

Rational Polynomial::integrate(const Rational& lo, const Rational& hi) const {
  const Polynomial anti = antiderivative();
  return anti(hi) - anti(lo);
}

Polynomial Polynomial::monic() const {
  if (coeffs_.empty()) return {};
  RationalVector c = coeffs_;
  const Rational lc = c.back();
  for (auto& x : c) x /= lc;
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  RationalVector c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
  RationalVector c = coeffs_;
  for (auto& x : c) x = -x;
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RationalVector c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

std::string Polynomial::to_string(char var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (i == 0 || mag != 1) {
      out += polarix::to_string(mag);
      if (i > 0) out += "*";
    }
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroElement, "polynomial", "division by zero polynomial");
  RationalVector rem = a.coefficients();
  const int db = b.degree();
  const Rational lb = b.leading_coefficient();
  if (a.degree() < db) return {Polynomial{}, a};
  RationalVector quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    const Rational q = rem[static_cast<std::size_t>(k)] / lb;
    quo[static_cast<std::size_t>(k - db)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= q * b.coefficient(static_cast<std::size_t>(j));
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& a) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "polynomial", "square-free decomposition of 0");
  std::vector<std::pair<Polynomial, int>> out;
  const Polynomial f = a.monic();
  if (f.degree() == 0) return out;
  Polynomial g = gcd(f, f.derivative());
  Polynomial c = divmod(f, g).quotient;
  Polynomial d = divmod(f.derivative(), g).quotient - c.derivative();
  int k = 1;
  while (c.degree() > 0) {
    Polynomial y = gcd(c, d);
    if (y.degree() > 0) out.emplace_back(y, k);
    c = divmod(c, y).quotient;
    d = divmod(d, y).quotient - c.derivative();
    ++k;
  }
  return out;
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> rational_roots(const Polynomial& a) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "polynomial", "roots of 0");
  std::set<Rational> roots;
  // Strip the factor t^k.
  std::size_t low = 0;
  while (a.coefficient(low) == 0) ++low;
  if (low > 0) roots.insert(Rational(0));
  RationalVector c(a.coefficients().begin() + static_cast<long>(low), a.coefficients().end());
  if (c.size() <= 1) return {roots.begin(), roots.end()};
  Integer lcm_den = 1;
  for (const auto& x : c) {
    const Integer den = denominator_of(x);
    lcm_den = lcm_den / boost::multiprecision::gcd(lcm_den, den) * den;
  }
  const Polynomial reduced(c);
  const Integer a0 = numerator_of(c.front() * Rational(lcm_den));
  const Integer an = numerator_of(c.back() * Rational(lcm_den));
  const auto ps = positive_divisors(a0);
  const auto qs = positive_divisors(an);
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      for (int sign : {1, -1}) {
        const Rational r(Integer(sign * p), q);
        if (reduced(r) == 0) roots.insert(r);
      }
    }
  }
  return {roots.begin(), roots.end()};
}

int multiplicity(const Polynomial& a, const Polynomial& f) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "polynomial", "multiplicity in 0");
  int k = 0;
  Polynomial cur = a;
  while (true) {
    auto dm = divmod(cur, f);
    if (!dm.remainder.is_zero()) return k;
    cur = std::move(dm.quotient);
    ++k;
  }
}

Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorKind::ConfigError, "polynomial", "interpolation node/value size mismatch");
  }
  Polynomial result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial basis(Rational(1));
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * Polynomial(RationalVector{-xs[j], Rational(1)});
      denom *= xs[i] - xs[j];
    }
    result = result + basis * Polynomial(ys[i] / denom);
  }
  return result;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, char var) : text_(text), var_(var) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, "polynomial",
                why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }
  Polynomial power(Polynomial base) {
    if (!accept('^')) return base;
    const auto e = to_int64(integer());
    Polynomial r(Rational(1));
    for (std::int64_t k = 0; k < e; ++k) r = r * base;
    return r;
  }
  Polynomial factor() {
    skip();
    if (accept('(')) {
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return power(inner);
    }
    if (pos_ < text_.size() && text_[pos_] == var_) {
      ++pos_;
      return power(Polynomial::variable());
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      return power(Polynomial(Rational(integer())));
    }
    fail("expected factor");
  }
  Polynomial term() {
    Polynomial p = factor();
    while (true) {
      skip();
      if (accept('*')) {
        p = p * factor();
      } else if (accept('/')) {
        Polynomial d = factor();
        if (d.degree() != 0) fail("division by a non-constant");
        p = p * Polynomial(Rational(1) / d.coefficient(0));
      } else if (pos_ < text_.size() && (text_[pos_] == var_ || text_[pos_] == '(')) {
        p = p * factor();  // implicit product such as "3t" or "2(t+1)"
      } else {
        return p;
      }
    }
  }
  Polynomial expr() {
    Polynomial p;
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (accept('-')) {
        sign = -1;
      } else if (accept('+')) {
      } else if (!first) {
        return p;
      }
      Polynomial t = term();
      p = sign > 0 ? p + t : p - t;
      first = false;
    }
  }

  std::string_view text_;
  char var_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, char var) { return PolyParser(text, var).parse(); }

}  // namespace polarix
