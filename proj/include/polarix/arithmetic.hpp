#pragma once

// Places and normalized absolute values over Q and Q(t), logarithmic heights on
// projective space, Weil and proximity functions for hyperplanes, and the
// empirical and hypothesis checks built on them.

#include "polarix/filtration.hpp"
#include "polarix/polynomial.hpp"
#include "polarix/rational.hpp"
#include "polarix/toric.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polarix::arithmetic {

// ---------------------------------------------------------------- integers

bool is_prime(std::uint64_t n);
/// Prime factorization, ascending primes. n >= 1.
std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n);
/// Factorization of |n| for a nonzero Integer; Overflow beyond 64 bits.
std::vector<std::pair<std::uint64_t, int>> factor(const Integer& n);
/// p-adic order of a nonzero rational.
int ord_p(const Rational& x, std::uint64_t p);

// ---------------------------------------------------------------- log values

/// A formal sum sum_w n_w log(b_w), b_w a prime or e, n_w rational.
class LogValue {
 public:
  static constexpr std::uint64_t kE = 0;  // key of the natural-log unit

  LogValue() = default;
  static LogValue log_prime(std::uint64_t p, const Rational& coeff = 1);
  static LogValue natural(const Rational& coeff);
  /// log |x| for a nonzero rational, exact in the prime log lattice.
  static LogValue log_abs(const Rational& x);

  const std::map<std::uint64_t, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  double approx() const;
  std::string to_string() const;

  LogValue& operator+=(const LogValue& o);
  friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
  friend LogValue operator-(LogValue a, const LogValue& b) { return a += (-1) * b; }
  friend LogValue operator*(const Rational& k, const LogValue& v);
  friend bool operator==(const LogValue& a, const LogValue& b) = default;

 private:
  void add(std::uint64_t base, const Rational& c);
  std::map<std::uint64_t, Rational> terms_;
};

// ---------------------------------------------------------------- fields

enum class Field { Q, Qt };

/// Element of Q(t) as num/den, coprime, den monic.
class RationalFunction {
 public:
  RationalFunction() : num_(Rational(0)), den_(Rational(1)) {}
  RationalFunction(Polynomial num, Polynomial den = Polynomial(Rational(1)));
  RationalFunction(const Rational& c) : RationalFunction(Polynomial(c)) {}  // NOLINT

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) = default;

  std::string to_string() const;

 private:
  Polynomial num_, den_;
};

/// "(t^2-1)/t^3", "t/(t-1)", "3t+1"; constant divisors stay inside the polynomial.
RationalFunction parse_rational_function(std::string_view text);

// ---------------------------------------------------------------- places

struct Place {
  enum class Kind { Prime, Archimedean, Polynomial, Infinity };
  Kind kind = Kind::Archimedean;
  std::uint64_t p = 0;
  Polynomial f;
  /// For Q(t): a squarefree factor whose irreducibility is not certified (degree >= 4,
  /// no rational roots); it stands for the sum of the places dividing it.
  bool group = false;

  static Place prime(std::uint64_t p);  // InvalidPlace unless p is prime
  static Place archimedean() { return {}; }
  static Place polynomial(const Polynomial& f);  // InvalidPlace unless certified irreducible
  static Place infinity();

  Field field() const { return kind == Kind::Prime || kind == Kind::Archimedean ? Field::Q : Field::Qt; }
  /// Weight deg(f) for polynomial places, 1 at infinity.
  std::int64_t degree() const;
  std::string to_string() const;
  friend bool operator==(const Place& a, const Place& b) = default;
};

/// "inf"/"archimedean", a prime "5", "p=5"; for Q(t): "t-1", "t^2+1", "deg".
Place parse_place(std::string_view text, Field field);

/// log |x|_v; ZeroElement for x = 0.
LogValue abs_value(const Rational& x, const Place& v);
LogValue abs_value(const RationalFunction& x, const Place& v);

/// Order at a place of Q(t) (a group place counts the common multiplicity).
int ord_at(const RationalFunction& x, const Place& v);

/// Places where x is not a unit: primes of num/den plus the archimedean place;
/// for Q(t), linear places t - r, certified irreducible factors, groups and infinity.
std::vector<Place> support(const Rational& x);
std::vector<Place> support(const RationalFunction& x);

struct ProductFormulaReport {
  std::vector<std::pair<Place, LogValue>> terms;
  LogValue total;
  bool holds = false;
};

ProductFormulaReport check_product_formula(const Rational& x);
ProductFormulaReport check_product_formula(const RationalFunction& x);

// ---------------------------------------------------------------- heights

using QPoint = std::vector<Rational>;
using QtPoint = std::vector<RationalFunction>;

/// Scaled to coprime integers with the first nonzero coordinate positive.
std::vector<Integer> normalize(const QPoint& x);
void validate_point(const QPoint& x);
void validate_point(const QtPoint& x);

/// max_j log |x_j|_v.
LogValue local_height(const QPoint& x, const Place& v);
/// Sum over places of max_j log |x_j|_v.
LogValue height(const QPoint& x);
/// max_j deg x_j - deg gcd after clearing denominators, in natural-log units.
LogValue height(const QtPoint& x);

/// Degree-d Veronese map P^n -> P^N (monomials in lexicographic exponent order).
QPoint veronese(const QPoint& x, unsigned d);

// ---------------------------------------------------------------- Weil functions

struct Hyperplane {
  std::vector<Rational> coeffs;  // l(x) = sum c_j x_j
  std::string to_string() const;
};

/// "x0", "x1 - x0", "2x0 + 3x2", or a coefficient list; n + 1 coordinates.
Hyperplane parse_hyperplane(std::string_view text, std::size_t coords);
/// The coordinate hyperplanes x_0 = 0, ..., x_n = 0.
std::vector<Hyperplane> coordinate_hyperplanes(std::size_t coords);

/// max_j log |x_j|_v - log |l(x)|_v; PointOnDivisor when l(x) = 0.
LogValue weil_function(const Hyperplane& h, const Place& v, const QPoint& x);
LogValue weil_function(const Hyperplane& h, const Place& v, const QtPoint& x);

LogValue proximity(const QPoint& x, const std::vector<Hyperplane>& d, const std::vector<Place>& s);
LogValue proximity(const QtPoint& x, const std::vector<Hyperplane>& d, const std::vector<Place>& s);

// ---------------------------------------------------------------- experiments

struct RothConfig {
  std::size_t n = 1;                       // X = P^n
  std::int64_t d = 1;                      // L = d H
  std::vector<Hyperplane> divisor;         // components, each of class H
  std::vector<Place> places;               // S
  std::vector<QPoint> points;
  double epsilon = 0.1;
  double height_cutoff = 1.0;              // points with h_L below this are not fitted
  double top_fraction = 0.1;               // fit on this top fraction by height
  std::size_t min_fit_points = 3;
};

struct RothRow {
  std::size_t index = 0;
  std::string point;
  bool skipped = false;
  std::string reason;
  LogValue height;     // h_L(x) = d h(x)
  LogValue proximity;  // m_S(x, D)
};

struct RothReport {
  std::vector<RothRow> rows;
  Rational beta;        // beta(L, H), exact
  Rational gamma;       // max_j gamma(L, D_j) = 1 / beta
  std::size_t fitted = 0;
  double slope_approx = 0, intercept_approx = 0, bound_approx = 0;
  std::string verdict;  // EMPIRICAL-CONSISTENT, EMPIRICAL-INCONSISTENT, INSUFFICIENT-DATA
  std::string label = "EMPIRICAL";
};

RothReport roth_experiment(const RothConfig& config);

/// (F_k : F_{k+1}) for k >= 1 with log F_{k+1} <= max_log_height.
std::vector<QPoint> golden_ratio_points(double max_log_height);

struct VojtaReport {
  std::string model;
  bool fano = false;
  std::vector<std::size_t> rays;
  std::vector<Rational> betas;  // beta(-K, D_i), exact
  std::string verdict;          // HYPOTHESIS-SATISFIED or HYPOTHESIS-NOT-SATISFIED
  bool satisfied = false;
};

/// NotFano unless -K is ample; ImproperIntersection unless the D_i intersect properly.
VojtaReport vojta_hypothesis_check(const toric::ModelPtr& model, const std::vector<std::size_t>& rays);

// ---------------------------------------------------------------- files

struct PointsFile {
  Field field = Field::Q;
  std::vector<QPoint> q_points;
  std::vector<QtPoint> qt_points;
};

/// {"field": "Q"|"Q(t)", "points": [[...], ...]} with integers, "p/q" or polynomial strings.
PointsFile points_from_json(const nlohmann::json& j);

std::string point_to_string(const QPoint& x);
std::string point_to_string(const QtPoint& x);

}  // namespace polarix::arithmetic
