#include "oracles.hpp"
#include "polarix/errors.hpp"
#include "polarix/polynomial.hpp"
#include "polarix/toric.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace polarix;
using namespace polarix::toric;

TEST_CASE("catalog fans") {
  const auto p2 = catalog("Pn(2)");
  CHECK(p2->rays.size() == 3);
  CHECK(p2->max_cones.size() == 3);
  CHECK(p2->smooth());
  CHECK(catalog("P1xP1")->rays.size() == 4);
  const auto bl = catalog("BlowupP2");
  CHECK(bl->rays.size() == 4);
  CHECK(bl->smooth());
  CHECK(is_isomorphic(*catalog("Hirzebruch(1)"), *bl));
  CHECK_FALSE(is_isomorphic(*catalog("Hirzebruch(2)"), *bl));
  CHECK(is_isomorphic(*catalog("Hirzebruch(0)"), *catalog("P1xP1")));
  try {
    catalog("Grassmannian");
    FAIL("expected UnknownModel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownModel);
  }
}

TEST_CASE("invalid fans are rejected") {
  ToricModel m;
  m.name = "half";
  m.dim = 2;
  m.rays = {{1, 0}, {0, 1}};
  m.max_cones = {{0, 1}};
  CHECK_THROWS_AS(make_model(m), Error);
  m.rays = {{2, 0}, {0, 1}, {-1, -1}};
  m.max_cones = {{0, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(make_model(m), Error);
}

TEST_CASE("section polytopes and h0") {
  const auto p2 = catalog("Pn(2)");
  const auto threeH = parse_divisor(p2, "3H");
  CHECK(h0(threeH) == 10);
  CHECK(section_polytope(threeH).matches_vertices({{0, 0}, {3, 0}, {0, 3}}));
  CHECK(section_polytope(DivisorVector::zero(p2)).vertices() == std::vector<RationalVector>{{0, 0}});
  const auto p1 = catalog("Pn(1)");
  CHECK(section_polytope(parse_divisor(p1, "-H")).empty());
  CHECK(h0(parse_divisor(p1, "-H")) == 0);
  CHECK(h0(parse_divisor(catalog("P1xP1"), "H1 + H2")) == 4);
}

TEST_CASE("volumes and anticanonical divisors") {
  const auto p2 = catalog("Pn(2)");
  for (int d = 0; d <= 6; ++d) CHECK(divisor_volume(parse_divisor(p2, std::to_string(d) + "H")) == d * d);
  for (int n = 1; n <= 4; ++n) {
    const auto pn = catalog("Pn(" + std::to_string(n) + ")");
    CHECK(divisor_volume(parse_divisor(pn, "H")) == 1);
  }
  CHECK(anticanonical(p2).coeffs() == RationalVector{1, 1, 1});
  CHECK(divisor_volume(anticanonical(p2)) == 9);
  CHECK(h0(anticanonical(catalog("Pn(1)"))) == 3);
  CHECK(h0(anticanonical(catalog("P1xP1"))) == 9);
  CHECK(parse_divisor(p2, "-K") == anticanonical(p2));
  CHECK(divisor_volume(parse_divisor(catalog("Pn(1)"), "-H")) == 0);
}

TEST_CASE("divisor expression language") {
  const auto bl = catalog("BlowupP2");
  CHECK(parse_divisor(bl, "2piH - E").coeffs() == RationalVector{0, 0, 2, -1});
  CHECK(parse_divisor(bl, "1/2 D0 + (3/2)*D1").coeffs() == RationalVector{Rational(1, 2), Rational(3, 2), 0, 0});
  CHECK(parse_divisor(bl, "[1, 0, \"1/3\", 2]").coeffs() == RationalVector{1, 0, Rational(1, 3), 2});
  CHECK_THROWS_AS(parse_divisor(bl, "Q"), Error);
  CHECK_THROWS_AS(parse_divisor(bl, "[1, 2]"), Error);
  CHECK_THROWS_AS(parse_divisor(bl, "D9"), Error);
  const auto d = parse_divisor(bl, "2piH - E");
  CHECK(divisor_from_json(divisor_to_json(d), bl) == d);
}

TEST_CASE("proper intersection") {
  const auto p2 = catalog("Pn(2)");
  const std::vector<DivisorVector> lines{DivisorVector::prime(p2, 0), DivisorVector::prime(p2, 1)};
  CHECK(intersect_properly(lines));
  const std::vector<DivisorVector> twice{DivisorVector::prime(p2, 0), DivisorVector::prime(p2, 0)};
  CHECK_FALSE(intersect_properly(twice));
  const std::vector<DivisorVector> all{DivisorVector::prime(p2, 0), DivisorVector::prime(p2, 1),
                                       DivisorVector::prime(p2, 2)};
  CHECK(intersect_properly(all));
  const auto q = catalog("P1xP1");
  const std::vector<DivisorVector> fibres{DivisorVector::prime(q, 0), DivisorVector::prime(q, 2)};
  CHECK(intersect_properly(fibres));
  const std::vector<DivisorVector> bad{parse_divisor(p2, "2H")};
  try {
    intersect_properly(bad);
    FAIL("expected NotPrime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPrime);
  }
}

TEST_CASE("orders of vanishing of monomials") {
  const auto p2 = catalog("Pn(2)");
  const auto d = parse_divisor(p2, "3H");  // polytope 3 Delta_2; D_0 is the facet x = 0
  CHECK(ord_along(MonomialSection({3, 0}, d), 0) == 3);
  CHECK(ord_along(MonomialSection({0, 2}, d), 0) == 0);
  CHECK_THROWS_AS(MonomialSection({4, 0}, d), Error);
  const auto p1 = catalog("Pn(1)");
  const int m = 5;
  const auto om = parse_divisor(p1, std::to_string(m) + "H");
  for (int j = 0; j <= m; ++j) {
    const MonomialSection s({j}, om);
    CHECK(ord_along(s, 0) == j);
    CHECK(ord_along(s, 1) == m - j);
  }
}

TEST_CASE("ampleness") {
  CHECK(is_ample(parse_divisor(catalog("Pn(2)"), "H")));
  CHECK_FALSE(is_ample(DivisorVector::zero(catalog("Pn(2)"))));
  const auto bl = catalog("BlowupP2");
  CHECK(is_ample(parse_divisor(bl, "2piH - E")));
  CHECK(is_ample(anticanonical(bl)));
  CHECK_FALSE(is_ample(parse_divisor(bl, "piH")));
  CHECK_FALSE(is_ample(anticanonical(catalog("Hirzebruch(2)"))));
  CHECK(is_ample(parse_divisor(catalog("Hirzebruch(2)"), catalog("Hirzebruch(2)")->polarization)));
}

TEST_CASE("h0 of multiples is a polynomial of degree dim") {
  for (const std::string name : {"Pn(2)", "Pn(3)", "P1xP1", "BlowupP2", "Hirzebruch(2)"}) {
    const auto x = catalog(name);
    const auto l = parse_divisor(x, x->polarization);
    REQUIRE(is_ample(l));
    std::vector<Rational> ms, vals;
    for (std::size_t m = 1; m <= x->dim + 2; ++m) {
      ms.emplace_back(m);
      vals.emplace_back(h0(Rational(m) * l));
    }
    const auto p = interpolate(ms, vals);
    CHECK(p.degree() == static_cast<int>(x->dim));
    const Rational m = x->dim + 3;
    CHECK(p(m) == Rational(h0(m * l)));
    // Leading coefficient recovers the volume.
    CHECK(p.leading_coefficient() * Rational(factorial(x->dim)) == divisor_volume(l));
    for (const Rational k : {Rational(2), Rational(3), Rational(1, 2)}) {
      Rational kn = 1;
      for (std::size_t i = 0; i < x->dim; ++i) kn *= k;
      CHECK(divisor_volume(k * l) == kn * divisor_volume(l));
    }
  }
}

TEST_CASE("h0 is monotone in the coefficients") {
  const auto x = catalog("BlowupP2");
  auto d = parse_divisor(x, "piH - E");
  std::size_t prev = h0(d);
  for (std::size_t step = 0; step < 8; ++step) {
    d = d + DivisorVector::prime(x, step % 4);
    const auto cur = h0(d);
    CHECK(cur >= prev);
    CHECK((cur >= 1) == !section_polytope(d).empty());
    prev = cur;
  }
}

TEST_CASE("volume of pi^*H - tE on the blow-up") {
  const auto x = catalog("BlowupP2");
  const auto h = parse_divisor(x, "piH");
  const auto e = parse_divisor(x, "E");
  for (int k = 0; k <= 12; ++k) {
    const Rational t(k, 8);
    const auto d = h - t * e;
    const Rational expected = t <= 1 ? 1 - t * t : Rational(0);
    CHECK(divisor_volume(d) == expected);
    CHECK(2 * oracle::shoelace_area(section_polytope(d).vertices()) == expected);
  }
}

TEST_CASE("model files and the search path") {
  const auto dir = std::filesystem::temp_directory_path() / "polarix_models_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "Line.json");
    out << R"({"name": "Line", "dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]})";
  }
  ::setenv("POLARIX_MODEL_PATH", dir.c_str(), 1);
  const auto line = resolve_model("Line");
  CHECK(line->rays.size() == 2);
  CHECK(h0(DivisorVector(line, {2, 1})) == 4);
  CHECK(model_from_json(model_to_json(*catalog("BlowupP2")))->max_cones == catalog("BlowupP2")->max_cones);
  CHECK(resolve_model("Pn(2)")->rays.size() == 3);
  ::unsetenv("POLARIX_MODEL_PATH");
  std::filesystem::remove_all(dir);
}
