#include "polarix/arithmetic.hpp"
#include "polarix/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace polarix;
using namespace polarix::arithmetic;

namespace {

// Height through the normalized integer representative: log max |a_j|.
LogValue height_from_normal_form(const QPoint& x) {
  Integer best = 0;
  for (auto a : normalize(x)) best = std::max(best, a < 0 ? Integer(-a) : a);
  return LogValue::log_abs(Rational(best));
}

Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

}  // namespace

TEST_CASE("primality and factorization") {
  CHECK(is_prime(2));
  CHECK(is_prime(1000000007ull));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
  CHECK(is_prime(18446744073709551557ull));
  const auto f = factor(std::uint64_t{600851475143ull});
  CHECK(f == std::vector<std::pair<std::uint64_t, int>>{{71, 1}, {839, 1}, {1471, 1}, {6857, 1}});
  CHECK(factor(std::uint64_t{1}).empty());
  CHECK(factor(std::uint64_t{1ull << 40}) == std::vector<std::pair<std::uint64_t, int>>{{2, 40}});
  CHECK(factor(std::uint64_t{4294967291ull * 4294967279ull}).size() == 2);
  const Integer huge = Integer(1) << 70;
  try {
    factor(huge);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
  CHECK(ord_p(q(12), 2) == 2);
  CHECK(ord_p(q(5, 24), 2) == -3);
  CHECK_THROWS_AS(ord_p(q(0), 2), Error);
}

TEST_CASE("log values are exact formal sums") {
  const auto a = LogValue::log_abs(q(12));
  CHECK(a.terms().at(2) == 2);
  CHECK(a.terms().at(3) == 1);
  CHECK(a.to_string() == "2*log(2) + log(3)");
  CHECK((a - a).is_zero());
  CHECK((a - a).to_string() == "0");
  CHECK(std::abs(a.approx() - std::log(12.0)) < 1e-12);
  CHECK(LogValue::log_abs(q(1, 6)) == -1 * LogValue::log_abs(q(6)));
  CHECK((LogValue::natural(q(3)) - LogValue::log_prime(5, q(1, 2))).to_string() == "3 - 1/2*log(5)");
}

TEST_CASE("absolute values over Q") {
  CHECK(abs_value(q(12), Place::prime(2)) == LogValue::log_prime(2, q(-2)));
  CHECK(abs_value(q(12), Place::prime(3)) == LogValue::log_prime(3, q(-1)));
  CHECK(abs_value(q(12), Place::prime(5)).is_zero());
  CHECK(abs_value(q(-12), Place::archimedean()) == LogValue::log_abs(q(12)));
  CHECK_THROWS_AS(Place::prime(6), Error);
  try {
    abs_value(q(0), Place::prime(2));
    FAIL("zero has no absolute value");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroElement);
  }
  try {
    abs_value(q(3), Place::infinity());
    FAIL("field mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidPlace);
  }
}

TEST_CASE("absolute values over Q(t)") {
  const auto x = parse_rational_function("t/(t-1)");
  CHECK(x.num() == parse_polynomial("t"));
  CHECK(x.den() == parse_polynomial("t-1"));
  CHECK(abs_value(x, Place::polynomial(parse_polynomial("t"))) == LogValue::natural(q(-1)));
  CHECK(abs_value(x, Place::polynomial(parse_polynomial("t-1"))) == LogValue::natural(q(1)));
  CHECK(abs_value(x, Place::infinity()).is_zero());
  const auto y = parse_rational_function("(t^2+1)/t^3");
  CHECK(abs_value(y, Place::polynomial(parse_polynomial("t^2+1"))) == LogValue::natural(q(-2)));
  CHECK(abs_value(y, Place::infinity()) == LogValue::natural(q(-1)));
  CHECK_THROWS_AS(Place::polynomial(parse_polynomial("t^2-1")), Error);
  CHECK_THROWS_AS(Place::polynomial(parse_polynomial("t^4+1")), Error);
  CHECK(parse_rational_function("(2t-2)/(4t^2-4)") == parse_rational_function("1/(2t+2)"));
}

TEST_CASE("places parse for both fields") {
  CHECK(parse_place("inf", Field::Q) == Place::archimedean());
  CHECK(parse_place("7", Field::Q) == Place::prime(7));
  CHECK(parse_place("p=7", Field::Q) == Place::prime(7));
  CHECK(parse_place("inf", Field::Qt) == Place::infinity());
  CHECK(parse_place("t - 1", Field::Qt) == Place::polynomial(parse_polynomial("t-1")));
  CHECK_THROWS_AS(parse_place("x", Field::Q), Error);
}

TEST_CASE("product formula on fixed and random elements") {
  const auto r = check_product_formula(q(6, 35));
  CHECK(r.holds);
  CHECK(r.terms.size() == 5);  // 2, 3, 5, 7 and the archimedean place
  const auto s = check_product_formula(parse_rational_function("(t^2-1)/t^3"));
  CHECK(s.holds);
  CHECK(s.terms.size() == 4);  // t+1, t-1, t, infinity
  CHECK(check_product_formula(parse_rational_function("(t^5+t+1)^2/(t^2+t+1)")).holds);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(-100000, 100000), den(1, 100000);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::int64_t a = num(rng);
    if (a == 0) continue;
    CHECK(check_product_formula(q(a, den(rng))).holds);
  }
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    auto random_poly = [&] {
      RationalVector c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& v : c) v = coef(rng);
      c.back() = c.back() == 0 ? Rational(1) : c.back();
      return Polynomial(c);
    };
    const auto p = random_poly();
    if (p.is_zero()) continue;
    CHECK(check_product_formula(RationalFunction(p, random_poly())).holds);
  }
}

TEST_CASE("heights over Q") {
  CHECK(height(QPoint{q(1), q(1)}).is_zero());
  CHECK(height(QPoint{q(1), q(2)}) == LogValue::log_prime(2));
  CHECK(height(QPoint{q(2), q(3)}) == LogValue::log_prime(3));
  CHECK(height(QPoint{q(1, 2), q(1, 3)}) == LogValue::log_prime(3));  // (3:2)
  CHECK(normalize(QPoint{q(-2, 3), q(4, 9)}) == std::vector<Integer>{3, -2});

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> num(-40, 40), den(1, 30);
  for (int trial = 0; trial < 100; ++trial) {
    QPoint x{q(num(rng), den(rng)), q(num(rng), den(rng)), q(num(rng), den(rng))};
    if (std::all_of(x.begin(), x.end(), [](const Rational& c) { return c == 0; })) continue;
    const auto h = height(x);
    CHECK(h == height_from_normal_form(x));
    const Rational lambda = q(3 + den(rng), den(rng));
    QPoint y = x;
    for (auto& c : y) c *= lambda;
    CHECK(height(y) == h);
    CHECK(height(veronese(x, 2)) == q(2) * h);
    CHECK(height(veronese(x, 3)) == q(3) * h);
  }
  CHECK_THROWS_AS(height(QPoint{q(0), q(0)}), Error);
}

TEST_CASE("Veronese embedding") {
  const QPoint x{q(1), q(2)};
  CHECK(veronese(x, 2) == QPoint{q(1), q(2), q(4)});
  CHECK(veronese(x, 3) == QPoint{q(1), q(2), q(4), q(8)});
  CHECK(veronese(QPoint{q(1), q(2), q(3)}, 2).size() == 6);
  CHECK(height(veronese(QPoint{q(2), q(3)}, 3)) == q(3) * LogValue::log_prime(3));
}

TEST_CASE("heights over Q(t)") {
  const QtPoint x{RationalFunction(Rational(1)), parse_rational_function("t^2+1")};
  CHECK(height(x) == LogValue::natural(q(2)));
  const QtPoint y{parse_rational_function("1/t"), parse_rational_function("1/(t-1)")};
  CHECK(height(y) == LogValue::natural(q(1)));  // (t-1 : t)
  const QtPoint z{parse_rational_function("t^2-1"), parse_rational_function("t-1")};
  CHECK(height(z) == LogValue::natural(q(1)));  // (t+1 : 1)
  // Summing a coordinate Weil function over all relevant places recovers the height.
  const std::vector<Place> places{Place::polynomial(parse_polynomial("t")), Place::polynomial(parse_polynomial("t-1")),
                                  Place::infinity()};
  for (const auto& h : coordinate_hyperplanes(2)) CHECK(proximity(y, {h}, places) == height(y));
}

TEST_CASE("hyperplanes parse from forms and coefficient lists") {
  CHECK(parse_hyperplane("x1 - x0", 2).coeffs == RationalVector{-1, 1});
  CHECK(parse_hyperplane("2x0 + 3*x2", 3).coeffs == RationalVector{2, 0, 3});
  CHECK(parse_hyperplane("x0 - 1/2 x1", 2).coeffs == RationalVector{1, q(-1, 2)});
  CHECK(parse_hyperplane("[1, \"-1/3\"]", 2).coeffs == RationalVector{1, q(-1, 3)});
  CHECK(parse_hyperplane("x1 - x0", 2).to_string() == "-x0 + x1");
  CHECK_THROWS_AS(parse_hyperplane("x3", 2), Error);
  CHECK_THROWS_AS(parse_hyperplane("x0 - x0", 2), Error);
  CHECK_THROWS_AS(parse_hyperplane("y0", 2), Error);
}

TEST_CASE("Weil functions and proximity") {
  const auto x0 = parse_hyperplane("x0", 2);
  const auto x1 = parse_hyperplane("x1", 2);
  const QPoint p{q(1), q(4)};
  CHECK(weil_function(x0, Place::archimedean(), p) == LogValue::log_prime(2, q(2)));
  CHECK(weil_function(x1, Place::archimedean(), p).is_zero());
  CHECK(weil_function(x1, Place::prime(2), p) == LogValue::log_prime(2, q(2)));
  // (1:2), S = {inf, 2}: x0 contributes log 2 at inf, x1 contributes log 2 at 2
  const QPoint r{q(1), q(2)};
  CHECK(proximity(r, {x0}, {Place::archimedean()}) == LogValue::log_prime(2));
  CHECK(proximity(r, {x0, x1}, {Place::archimedean(), Place::prime(2)}) == LogValue::log_prime(2, q(2)));
  try {
    weil_function(x1, Place::archimedean(), QPoint{q(1), q(0)});
    FAIL("point lies on the hyperplane");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PointOnDivisor);
  }
  // For a coordinate hyperplane, summing lambda over all places gives the height.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> c(1, 300);
  for (int trial = 0; trial < 50; ++trial) {
    const QPoint x{q(c(rng), c(rng)), q(-c(rng), c(rng))};
    std::vector<Place> places{Place::archimedean()};
    for (const auto& pt : x)
      for (auto pr : {numerator_of(pt), denominator_of(pt)})
        for (const auto& [p, k] : factor(pr)) places.push_back(Place::prime(p));
    std::sort(places.begin(), places.end(), [](const Place& a, const Place& b) { return a.p < b.p; });
    places.erase(std::unique(places.begin(), places.end()), places.end());
    for (const auto& h : coordinate_hyperplanes(2)) CHECK(proximity(x, {h}, places) == height(x));
  }
}

TEST_CASE("Weil functions over Q(t)") {
  const QtPoint x{RationalFunction(Rational(1)), parse_rational_function("t")};
  const auto x1 = parse_hyperplane("x1", 2);
  CHECK(weil_function(x1, Place::polynomial(parse_polynomial("t")), x) == LogValue::natural(q(1)));
  CHECK(weil_function(x1, Place::infinity(), x).is_zero());
  CHECK(proximity(x, {x1}, {Place::polynomial(parse_polynomial("t")), Place::infinity()}) == height(x));
}

TEST_CASE("Roth experiment on golden-ratio points") {
  RothConfig config;
  config.divisor = {parse_hyperplane("x0", 2), parse_hyperplane("x1", 2), parse_hyperplane("x1 - x0", 2)};
  config.places = {Place::archimedean()};
  config.points = golden_ratio_points(20);
  REQUIRE(config.points.size() > 20);
  CHECK(config.points[2] == QPoint{q(2), q(3)});
  const auto r = roth_experiment(config);
  CHECK(r.beta == q(1, 2));
  CHECK(r.gamma == 2);
  CHECK(r.verdict == "EMPIRICAL-CONSISTENT");
  CHECK(r.slope_approx <= 2.1);
  CHECK(std::abs(r.bound_approx - 2.1) < 1e-12);
  CHECK(r.fitted >= 3);

  config.d = 2;
  CHECK(roth_experiment(config).beta == 1);

  RothConfig tiny = config;
  tiny.points = {QPoint{q(1), q(2)}, QPoint{q(0), q(1)}};
  const auto t = roth_experiment(tiny);
  CHECK(t.verdict == "INSUFFICIENT-DATA");
  CHECK(t.rows[1].skipped);
}

TEST_CASE("Vojta-type hypothesis on Fano toric models") {
  const auto p2 = vojta_hypothesis_check(toric::catalog("Pn(2)"), {0, 1, 2});
  CHECK(p2.satisfied);
  CHECK(p2.betas == RationalVector{1, 1, 1});
  const auto p3 = vojta_hypothesis_check(toric::catalog("Pn(3)"), {0, 1});
  CHECK(p3.betas == RationalVector{1, 1});
  const auto pp = vojta_hypothesis_check(toric::catalog("P1xP1"), {0, 2});
  CHECK(pp.betas == RationalVector{1, 1});
  CHECK(pp.verdict == "HYPOTHESIS-SATISFIED");
  try {
    vojta_hypothesis_check(toric::catalog("Hirzebruch(2)"), {0});
    FAIL("F_2 is not Fano");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFano);
  }
  try {
    vojta_hypothesis_check(toric::catalog("P1xP1"), {0, 0});
    FAIL("a repeated component is not a proper intersection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ImproperIntersection);
  }
}

TEST_CASE("points files") {
  const auto f = points_from_json(nlohmann::json::parse(R"({"field": "Q", "points": [[1, "2/3"], [0, 5]]})"));
  REQUIRE(f.q_points.size() == 2);
  CHECK(f.q_points[0][1] == q(2, 3));
  const auto g = points_from_json(nlohmann::json::parse(R"J({"field": "Q(t)", "points": [["1", "t/(t+1)"]]})J"));
  REQUIRE(g.qt_points.size() == 1);
  CHECK(point_to_string(g.qt_points[0]) == "(1 : (t)/(t + 1))");
  CHECK_THROWS_AS(points_from_json(nlohmann::json::parse(R"({"field": "Q", "points": [[0, 0]]})")), Error);
  CHECK_THROWS_AS(points_from_json(nlohmann::json::parse(R"({"field": "F7", "points": []})")), Error);
}
