#include "polarix/arithmetic.hpp"

#include "polarix/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

namespace polarix::arithmetic {

namespace {

constexpr std::string_view kModule = "arithmetic";

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Brent's variant of Pollard rho; n odd composite.
u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

u64 to_u64(const Integer& n) {
  const Integer a = n < 0 ? Integer(-n) : n;
  if (a > Integer(std::numeric_limits<u64>::max()))
    throw Error(ErrorKind::Overflow, kModule, "integer " + polarix::to_string(n) + " exceeds 64 bits");
  return a.convert_to<u64>();
}

void require_q(const Place& v) {
  if (v.field() != Field::Q) throw Error(ErrorKind::InvalidPlace, kModule, "place " + v.to_string() + " is not a place of Q");
}

void require_qt(const Place& v) {
  if (v.field() != Field::Qt)
    throw Error(ErrorKind::InvalidPlace, kModule, "place " + v.to_string() + " is not a place of Q(t)");
}

// Places of Q(t) dividing a nonzero polynomial, one per factor class.
void polynomial_places(const Polynomial& a, std::vector<Place>& out) {
  if (a.degree() <= 0) return;
  for (const auto& [g, k] : squarefree_decomposition(a)) {
    Polynomial rest = g;
    for (const auto& r : rational_roots(g)) {
      const Polynomial lin(RationalVector{-r, Rational(1)});
      out.push_back(Place::polynomial(lin));
      rest = divmod(rest, lin).quotient;
    }
    if (rest.degree() <= 0) continue;
    if (rest.degree() <= 3) {
      out.push_back(Place::polynomial(rest));
    } else {
      Place group;
      group.kind = Place::Kind::Polynomial;
      group.f = rest.monic();
      group.group = true;
      out.push_back(group);
    }
  }
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) { return divmod(a * b, gcd(a, b)).quotient.monic(); }

LogValue local_height(const QtPoint& x, const Place& v) {
  std::optional<int> best;
  for (const auto& c : x) {
    if (c.is_zero()) continue;
    const int o = ord_at(c, v);
    if (!best || o < *best) best = o;
  }
  return LogValue::natural(Rational(-*best) * Rational(v.degree()));
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

// ---------------------------------------------------------------- integers

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factor(u64 n) {
  if (n == 0) throw Error(ErrorKind::ZeroElement, kModule, "factorization of 0");
  std::map<u64, int> f;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  factor_into(n, f);
  return {f.begin(), f.end()};
}

std::vector<std::pair<u64, int>> factor(const Integer& n) {
  if (n == 0) throw Error(ErrorKind::ZeroElement, kModule, "factorization of 0");
  return factor(to_u64(n));
}

int ord_p(const Rational& x, u64 p) {
  if (x == 0) throw Error(ErrorKind::ZeroElement, kModule, "order of 0");
  auto count = [p](Integer n) {
    int k = 0;
    if (n < 0) n = -n;
    const Integer pp(p);
    while (n % pp == 0) {
      n /= pp;
      ++k;
    }
    return k;
  };
  return count(numerator_of(x)) - count(denominator_of(x));
}

// ---------------------------------------------------------------- log values

void LogValue::add(u64 base, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(base, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LogValue LogValue::log_prime(u64 p, const Rational& coeff) {
  LogValue v;
  v.add(p, coeff);
  return v;
}

LogValue LogValue::natural(const Rational& coeff) {
  LogValue v;
  v.add(kE, coeff);
  return v;
}

LogValue LogValue::log_abs(const Rational& x) {
  if (x == 0) throw Error(ErrorKind::ZeroElement, kModule, "log of 0");
  LogValue v;
  for (const auto& [p, k] : factor(numerator_of(x))) v.add(p, k);
  for (const auto& [p, k] : factor(denominator_of(x))) v.add(p, -k);
  return v;
}

double LogValue::approx() const {
  double s = 0;
  for (const auto& [b, c] : terms_) s += to_double(c) * (b == kE ? 1.0 : std::log(static_cast<double>(b)));
  return s;
}

std::string LogValue::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    if (b == kE) {
      out += polarix::to_string(mag);
    } else {
      if (mag != 1) out += polarix::to_string(mag) + "*";
      out += "log(" + std::to_string(b) + ")";
    }
  }
  return out;
}

LogValue& LogValue::operator+=(const LogValue& o) {
  for (const auto& [b, c] : o.terms_) add(b, c);
  return *this;
}

LogValue operator*(const Rational& k, const LogValue& v) {
  LogValue out;
  if (k == 0) return out;
  for (const auto& [b, c] : v.terms_) out.terms_.emplace(b, k * c);
  return out;
}

// ---------------------------------------------------------------- fields

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::ZeroElement, kModule, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).quotient;
    den_ = divmod(den_, g).quotient;
  }
  const Rational lc = den_.leading_coefficient();
  num_ = num_ * Polynomial(1 / lc);
  den_ = den_ * Polynomial(1 / lc);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroElement, kModule, "division by zero in Q(t)");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RationalFunction::to_string() const {
  if (den_ == Polynomial(Rational(1))) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFunction parse_rational_function(std::string_view text) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == '/' && depth == 0 && text.substr(i + 1).find('t') != std::string_view::npos) {
      return {parse_polynomial(text.substr(0, i)), parse_polynomial(text.substr(i + 1))};
    }
  }
  return RationalFunction(parse_polynomial(text));
}

// ---------------------------------------------------------------- places

Place Place::prime(u64 p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidPlace, kModule, std::to_string(p) + " is not prime");
  Place v;
  v.kind = Kind::Prime;
  v.p = p;
  return v;
}

Place Place::polynomial(const Polynomial& f) {
  if (f.degree() < 1) throw Error(ErrorKind::InvalidPlace, kModule, "place polynomial must have degree >= 1");
  if (f.degree() > 3)
    throw Error(ErrorKind::InvalidPlace, kModule, "cannot certify irreducibility of " + f.to_string() + " (degree > 3)");
  if (f.degree() > 1 && !rational_roots(f).empty())
    throw Error(ErrorKind::InvalidPlace, kModule, f.to_string() + " is reducible over Q");
  Place v;
  v.kind = Kind::Polynomial;
  v.f = f.monic();
  return v;
}

Place Place::infinity() {
  Place v;
  v.kind = Kind::Infinity;
  return v;
}

std::int64_t Place::degree() const {
  switch (kind) {
    case Kind::Polynomial: return f.degree();
    case Kind::Infinity: return 1;
    default: throw Error(ErrorKind::InvalidPlace, kModule, "degree of a place of Q");
  }
}

std::string Place::to_string() const {
  switch (kind) {
    case Kind::Prime: return "p=" + std::to_string(p);
    case Kind::Archimedean: return "inf";
    case Kind::Polynomial: return (group ? "group(" : "(") + f.to_string() + ")";
    case Kind::Infinity: return "inf";
  }
  return "?";
}

Place parse_place(std::string_view text, Field field) {
  std::string s = trim(text);
  if (s == "inf" || s == "infinity" || s == "oo" || s == "archimedean" || s == "deg")
    return field == Field::Q ? Place::archimedean() : Place::infinity();
  if (field == Field::Q) {
    if (s.rfind("p=", 0) == 0) s = s.substr(2);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error(ErrorKind::InvalidPlace, kModule, "cannot parse place '" + std::string(text) + "'");
    return Place::prime(std::stoull(s));
  }
  return Place::polynomial(parse_polynomial(s));
}

int ord_at(const RationalFunction& x, const Place& v) {
  require_qt(v);
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, kModule, "order of 0");
  if (v.kind == Place::Kind::Infinity) return x.den().degree() - x.num().degree();
  return multiplicity(x.num(), v.f) - multiplicity(x.den(), v.f);
}

LogValue abs_value(const Rational& x, const Place& v) {
  require_q(v);
  if (x == 0) throw Error(ErrorKind::ZeroElement, kModule, "absolute value of 0");
  if (v.kind == Place::Kind::Prime) return LogValue::log_prime(v.p, Rational(-ord_p(x, v.p)));
  return LogValue::log_abs(x);
}

LogValue abs_value(const RationalFunction& x, const Place& v) {
  require_qt(v);
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, kModule, "absolute value of 0");
  return LogValue::natural(Rational(-ord_at(x, v)) * Rational(v.degree()));
}

std::vector<Place> support(const Rational& x) {
  if (x == 0) throw Error(ErrorKind::ZeroElement, kModule, "support of 0");
  std::set<u64> primes;
  for (const auto& [p, k] : factor(numerator_of(x))) primes.insert(p);
  for (const auto& [p, k] : factor(denominator_of(x))) primes.insert(p);
  std::vector<Place> out;
  for (auto p : primes) out.push_back(Place::prime(p));
  out.push_back(Place::archimedean());
  return out;
}

std::vector<Place> support(const RationalFunction& x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, kModule, "support of 0");
  std::vector<Place> out;
  polynomial_places(x.num(), out);
  polynomial_places(x.den(), out);
  out.push_back(Place::infinity());
  return out;
}

namespace {
template <class T>
ProductFormulaReport product_formula(const T& x) {
  ProductFormulaReport r;
  for (const auto& v : support(x)) {
    auto term = abs_value(x, v);
    r.total += term;
    r.terms.emplace_back(v, std::move(term));
  }
  r.holds = r.total.is_zero();
  return r;
}
}  // namespace

ProductFormulaReport check_product_formula(const Rational& x) { return product_formula(x); }
ProductFormulaReport check_product_formula(const RationalFunction& x) { return product_formula(x); }

// ---------------------------------------------------------------- heights

void validate_point(const QPoint& x) {
  if (x.size() < 2) throw Error(ErrorKind::ConfigError, kModule, "projective points need at least 2 coordinates");
  if (std::all_of(x.begin(), x.end(), [](const Rational& c) { return c == 0; }))
    throw Error(ErrorKind::ZeroElement, kModule, "all coordinates are zero");
}

void validate_point(const QtPoint& x) {
  if (x.size() < 2) throw Error(ErrorKind::ConfigError, kModule, "projective points need at least 2 coordinates");
  if (std::all_of(x.begin(), x.end(), [](const RationalFunction& c) { return c.is_zero(); }))
    throw Error(ErrorKind::ZeroElement, kModule, "all coordinates are zero");
}

std::vector<Integer> normalize(const QPoint& x) {
  validate_point(x);
  Integer l = 1;
  for (const auto& c : x) l = boost::multiprecision::lcm(l, denominator_of(c));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : x) {
    out.push_back(numerator_of(c * Rational(l)));
    g = boost::multiprecision::gcd(g, out.back());
  }
  bool negate = false;
  for (const auto& c : out) {
    if (c != 0) {
      negate = c < 0;
      break;
    }
  }
  for (auto& c : out) {
    c /= g;
    if (negate) c = -c;
  }
  return out;
}

LogValue local_height(const QPoint& x, const Place& v) {
  require_q(v);
  validate_point(x);
  if (v.kind == Place::Kind::Archimedean) {
    Rational best = 0;
    for (const auto& c : x) best = std::max(best, c < 0 ? Rational(-c) : c);
    return LogValue::log_abs(best);
  }
  std::optional<int> low;
  for (const auto& c : x) {
    if (c == 0) continue;
    const int o = ord_p(c, v.p);
    if (!low || o < *low) low = o;
  }
  return LogValue::log_prime(v.p, Rational(-*low));
}

LogValue height(const QPoint& x) {
  validate_point(x);
  std::set<u64> primes;
  for (const auto& c : x) {
    if (c == 0) continue;
    for (const auto& [p, k] : factor(numerator_of(c))) primes.insert(p);
    for (const auto& [p, k] : factor(denominator_of(c))) primes.insert(p);
  }
  LogValue h = local_height(x, Place::archimedean());
  for (auto p : primes) h += local_height(x, Place::prime(p));
  return h;
}

LogValue height(const QtPoint& x) {
  validate_point(x);
  Polynomial l(Rational(1));
  for (const auto& c : x) l = lcm(l, c.den());
  Polynomial g;
  int top = -1;
  for (const auto& c : x) {
    const Polynomial y = divmod(c.num() * l, c.den()).quotient;
    g = gcd(g, y);
    top = std::max(top, y.degree());
  }
  return LogValue::natural(Rational(top - g.degree()));
}

QPoint veronese(const QPoint& x, unsigned d) {
  validate_point(x);
  if (d == 0) throw Error(ErrorKind::ConfigError, kModule, "Veronese degree must be >= 1");
  QPoint out;
  const std::size_t n = x.size();
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      Rational m = 1;
      for (std::size_t j = 0; j < n; ++j)
        for (unsigned k = 0; k < e[j]; ++k) m *= x[j];
      out.push_back(m);
      return;
    }
    for (unsigned v = left + 1; v-- > 0;) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, d);
  return out;
}

// ---------------------------------------------------------------- Weil functions

std::string Hyperplane::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const auto& c = coeffs[j];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (mag != 1) out += polarix::to_string(mag) + "*";
    out += "x" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

Hyperplane parse_hyperplane(std::string_view text, std::size_t coords) {
  const std::string s = trim(text);
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::ConfigError, kModule, "cannot parse hyperplane '" + s + "': " + why);
  };
  Hyperplane h{std::vector<Rational>(coords, Rational(0))};
  if (!s.empty() && s.front() == '[') {
    const auto j = nlohmann::json::parse(s, nullptr, false);
    if (j.is_discarded() || !j.is_array() || j.size() != coords) throw fail("expected " + std::to_string(coords) + " coefficients");
    for (std::size_t i = 0; i < coords; ++i)
      h.coeffs[i] = j[i].is_string() ? parse_rational(j[i].get<std::string>()) : Rational(j[i].get<std::int64_t>());
  } else {
    std::size_t pos = 0;
    bool first = true;
    auto skip = [&] {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    while (true) {
      skip();
      if (pos >= s.size()) break;
      Rational sign = 1;
      if (s[pos] == '+' || s[pos] == '-') {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
        skip();
      } else if (!first) {
        throw fail("expected '+' or '-'");
      }
      Rational coeff = 1;
      const std::size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
      if (pos > start) coeff = parse_rational(s.substr(start, pos - start));
      skip();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        skip();
      }
      if (pos >= s.size() || s[pos] != 'x') throw fail("expected a coordinate x<j>");
      ++pos;
      const std::size_t digits = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == digits) throw fail("missing coordinate index");
      const auto j = std::stoul(s.substr(digits, pos - digits));
      if (j >= coords) throw fail("coordinate index out of range");
      h.coeffs[j] += sign * coeff;
      first = false;
    }
  }
  if (std::all_of(h.coeffs.begin(), h.coeffs.end(), [](const Rational& c) { return c == 0; })) throw fail("zero form");
  return h;
}

std::vector<Hyperplane> coordinate_hyperplanes(std::size_t coords) {
  std::vector<Hyperplane> out;
  for (std::size_t j = 0; j < coords; ++j) {
    Hyperplane h{std::vector<Rational>(coords, Rational(0))};
    h.coeffs[j] = 1;
    out.push_back(std::move(h));
  }
  return out;
}

LogValue weil_function(const Hyperplane& h, const Place& v, const QPoint& x) {
  if (h.coeffs.size() != x.size()) throw Error(ErrorKind::ConfigError, kModule, "hyperplane and point dimensions differ");
  Rational value = 0;
  for (std::size_t j = 0; j < x.size(); ++j) value += h.coeffs[j] * x[j];
  if (value == 0)
    throw Error(ErrorKind::PointOnDivisor, kModule, point_to_string(x) + " lies on " + h.to_string() + " = 0");
  return local_height(x, v) - abs_value(value, v);
}

LogValue weil_function(const Hyperplane& h, const Place& v, const QtPoint& x) {
  if (h.coeffs.size() != x.size()) throw Error(ErrorKind::ConfigError, kModule, "hyperplane and point dimensions differ");
  validate_point(x);
  RationalFunction value;
  for (std::size_t j = 0; j < x.size(); ++j) value = value + RationalFunction(h.coeffs[j]) * x[j];
  if (value.is_zero())
    throw Error(ErrorKind::PointOnDivisor, kModule, point_to_string(x) + " lies on " + h.to_string() + " = 0");
  return local_height(x, v) - abs_value(value, v);
}

LogValue proximity(const QPoint& x, const std::vector<Hyperplane>& d, const std::vector<Place>& s) {
  LogValue total;
  for (const auto& v : s)
    for (const auto& h : d) total += weil_function(h, v, x);
  return total;
}

LogValue proximity(const QtPoint& x, const std::vector<Hyperplane>& d, const std::vector<Place>& s) {
  LogValue total;
  for (const auto& v : s)
    for (const auto& h : d) total += weil_function(h, v, x);
  return total;
}

// ---------------------------------------------------------------- experiments

RothReport roth_experiment(const RothConfig& config) {
  if (config.n < 1 || config.d < 1) throw Error(ErrorKind::ConfigError, kModule, "need n >= 1 and d >= 1");
  if (config.divisor.empty()) throw Error(ErrorKind::ConfigError, kModule, "empty divisor");
  RothReport r;
  const auto pn = toric::catalog("Pn(" + std::to_string(config.n) + ")");
  const auto l = Rational(config.d) * toric::DivisorVector::prime(pn, config.n);
  const auto b = filtration::beta_integral(l, toric::DivisorVector::prime(pn, config.n), filtration::default_tolerance());
  if (!b.exact) throw Error(ErrorKind::ToleranceNotReached, kModule, "beta for the hyperplane class is not exact");
  r.beta = b.lower;
  r.gamma = 1 / r.beta;
  for (const auto& h : config.divisor)
    if (h.coeffs.size() != config.n + 1)
      throw Error(ErrorKind::ConfigError, kModule, "hyperplane " + h.to_string() + " has the wrong number of coordinates");

  struct Sample {
    double h, m;
  };
  std::vector<Sample> eligible;
  for (std::size_t i = 0; i < config.points.size(); ++i) {
    const auto& x = config.points[i];
    RothRow row;
    row.index = i;
    row.point = point_to_string(x);
    try {
      if (x.size() != config.n + 1) throw Error(ErrorKind::ConfigError, kModule, "point has the wrong number of coordinates");
      row.height = Rational(config.d) * height(x);
      row.proximity = proximity(x, config.divisor, config.places);
      const double h = row.height.approx();
      if (h >= config.height_cutoff) eligible.push_back({h, row.proximity.approx()});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PointOnDivisor && e.kind() != ErrorKind::ConfigError) throw;
      row.skipped = true;
      row.reason = e.what();
    }
    r.rows.push_back(std::move(row));
  }
  r.bound_approx = to_double(r.gamma) + config.epsilon;
  std::stable_sort(eligible.begin(), eligible.end(), [](const Sample& a, const Sample& b) { return a.h > b.h; });
  std::size_t take = static_cast<std::size_t>(std::ceil(config.top_fraction * static_cast<double>(eligible.size())));
  take = std::min(eligible.size(), std::max(take, config.min_fit_points));
  r.fitted = take;
  if (take < config.min_fit_points || take < 2) {
    r.verdict = "INSUFFICIENT-DATA";
    return r;
  }
  double mh = 0, mm = 0;
  for (std::size_t i = 0; i < take; ++i) {
    mh += eligible[i].h;
    mm += eligible[i].m;
  }
  mh /= static_cast<double>(take);
  mm /= static_cast<double>(take);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < take; ++i) {
    sxx += (eligible[i].h - mh) * (eligible[i].h - mh);
    sxy += (eligible[i].h - mh) * (eligible[i].m - mm);
  }
  if (sxx <= 1e-12) {
    r.verdict = "INSUFFICIENT-DATA";
    return r;
  }
  r.slope_approx = sxy / sxx;
  r.intercept_approx = mm - r.slope_approx * mh;
  r.verdict = r.slope_approx <= r.bound_approx ? "EMPIRICAL-CONSISTENT" : "EMPIRICAL-INCONSISTENT";
  return r;
}

std::vector<QPoint> golden_ratio_points(double max_log_height) {
  std::vector<QPoint> out;
  Integer a = 1, b = 1;  // F_k, F_{k+1}
  while (std::log(b.convert_to<double>()) <= max_log_height) {
    out.push_back({Rational(a), Rational(b)});
    const Integer c = a + b;
    a = b;
    b = c;
  }
  return out;
}

VojtaReport vojta_hypothesis_check(const toric::ModelPtr& model, const std::vector<std::size_t>& rays) {
  VojtaReport r;
  r.model = model->name;
  const auto k = toric::anticanonical(model);
  r.fano = toric::is_ample(k);
  if (!r.fano) throw Error(ErrorKind::NotFano, kModule, model->name + ": -K is not ample");
  std::vector<toric::DivisorVector> divisors;
  for (auto ray : rays) {
    if (ray >= model->rays.size()) throw Error(ErrorKind::ConfigError, kModule, "ray index out of range");
    divisors.push_back(toric::DivisorVector::prime(model, ray));
  }
  if (!toric::intersect_properly(divisors))
    throw Error(ErrorKind::ImproperIntersection, kModule, "the divisors do not intersect properly");
  r.rays = rays;
  r.satisfied = true;
  for (const auto& d : divisors) {
    const auto b = filtration::beta_integral(k, d, filtration::default_tolerance());
    if (!b.exact) throw Error(ErrorKind::ToleranceNotReached, kModule, "beta(-K, D) is not exact");
    r.betas.push_back(b.lower);
    r.satisfied = r.satisfied && b.lower >= 1;
  }
  r.verdict = r.satisfied ? "HYPOTHESIS-SATISFIED" : "HYPOTHESIS-NOT-SATISFIED";
  return r;
}

// ---------------------------------------------------------------- files

PointsFile points_from_json(const nlohmann::json& j) {
  PointsFile f;
  try {
    const auto field = j.value("field", std::string("Q"));
    if (field == "Q") f.field = Field::Q;
    else if (field == "Q(t)") f.field = Field::Qt;
    else throw Error(ErrorKind::ConfigError, kModule, "unknown field '" + field + "'");
    for (const auto& p : j.at("points")) {
      if (f.field == Field::Q) {
        QPoint x;
        for (const auto& c : p) x.push_back(c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<std::int64_t>()));
        validate_point(x);
        f.q_points.push_back(std::move(x));
      } else {
        QtPoint x;
        for (const auto& c : p)
          x.push_back(c.is_string() ? parse_rational_function(c.get<std::string>())
                                    : RationalFunction(Rational(c.get<std::int64_t>())));
        validate_point(x);
        f.qt_points.push_back(std::move(x));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, kModule, std::string("bad points file: ") + e.what());
  }
  return f;
}

std::string point_to_string(const QPoint& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ":" : "") + polarix::to_string(x[i]);
  return s + ")";
}

std::string point_to_string(const QtPoint& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " : " : "") + x[i].to_string();
  return s + ")";
}

}  // namespace polarix::arithmetic
