#include "oracles.hpp"
#include "polarix/errors.hpp"
#include "polarix/geometry.hpp"
#include "polarix/polynomial.hpp"

#include <doctest.h>

#include <random>

using namespace polarix;
using namespace polarix::geometry;

namespace {

RationalPolytope unit_square() { return RationalPolytope::box({0, 0}, {1, 1}); }

}  // namespace

TEST_CASE("lattice points of 3 times the standard 2-simplex") {
  const auto p = RationalPolytope::simplex(2, 3);
  const auto pts = lattice_points(p);
  CHECK(pts.size() == 10);
  CHECK(pts == oracle::brute_force_lattice_points(p));
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(count_lattice_points(p) == 10);
}

TEST_CASE("empty and one-dimensional lattice point cases") {
  // x >= 1 and x <= 0
  const RationalPolytope empty(1, {{{1}, Rational(-1)}, {{-1}, Rational(0)}});
  CHECK(empty.empty());
  CHECK(lattice_points(empty).empty());
  CHECK(volume(empty) == 0);

  const auto segment = RationalPolytope::box({0}, {1});
  CHECK(lattice_points(segment) == std::vector<LatticePoint>{{0}, {1}});
}

TEST_CASE("Ehrhart counts of dilated simplices match brute force") {
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned k = 0; k <= 12; ++k) {
      const auto p = RationalPolytope::simplex(n, k);
      const std::size_t expected = oracle::binom(n + k, n).convert_to<std::size_t>();
      CHECK(count_lattice_points(p) == expected);
      if (k <= 6) CHECK(oracle::brute_force_lattice_points(p).size() == expected);
    }
  }
}

TEST_CASE("rational offsets round inward") {
  // 0 <= x <= 5/2 contains 0, 1, 2
  const RationalPolytope p(1, {{{1}, Rational(0)}, {{-1}, Rational(5, 2)}});
  CHECK(count_lattice_points(p) == 3);
  CHECK(volume(p) == Rational(5, 2));
}

TEST_CASE("unbounded inputs are rejected") {
  CHECK_THROWS_AS(RationalPolytope(2, {{{1, 0}, Rational(0)}, {{0, 1}, Rational(0)}}), Error);
  try {
    RationalPolytope(2, {{{1, 0}, Rational(0)}, {{-1, 0}, Rational(1)}});
    FAIL("strip should be unbounded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnboundedPolytope);
  }
  // An infeasible strip is empty, not unbounded.
  const RationalPolytope none(2, {{{1, 0}, Rational(-2)}, {{-1, 0}, Rational(1)}});
  CHECK(none.empty());
}

TEST_CASE("volume: unit square, dilated triangles, degenerate segment") {
  CHECK(volume(unit_square()) == 1);
  for (int d = 1; d <= 5; ++d) {
    const auto p = RationalPolytope::simplex(2, d);
    CHECK(volume(p) == Rational(d * d, 2));
    CHECK(volume(p) == oracle::shoelace_area(p.vertices()));
  }
  // y = 0, 0 <= x <= 1 embedded in the plane
  const RationalPolytope seg(2, {{{0, 1}, Rational(0)}, {{0, -1}, Rational(0)}, {{1, 0}, Rational(0)},
                                 {{-1, 0}, Rational(1)}});
  CHECK(seg.affine_dimension() == 1);
  CHECK(volume(seg) == 0);
}

TEST_CASE("volume of simplices in dimension 3 and 4") {
  CHECK(volume(RationalPolytope::simplex(3, 1)) == Rational(1, 6));
  CHECK(volume(RationalPolytope::simplex(3, 2)) == Rational(8, 6));
  CHECK(volume(RationalPolytope::simplex(4, 3)) == Rational(81, 24));
  CHECK(volume(RationalPolytope::box({0, 0, 0}, {1, 2, Rational(1, 3)})) == Rational(2, 3));
}

TEST_CASE("intersect_halfspace") {
  const auto sq = unit_square();
  const auto beyond = intersect_halfspace(sq, {1, 0}, Rational(-2));  // x >= 2
  CHECK(beyond.empty());
  const auto half = intersect_halfspace(sq, {1, 0}, Rational(-1, 2));  // x >= 1/2
  CHECK(volume(half) == Rational(1, 2));
  CHECK(half.vertices().size() == 4);
  CHECK(oracle::shoelace_area(half.vertices()) == Rational(1, 2));
  const auto same = intersect_halfspace(sq, {1, 1}, Rational(5));
  CHECK(same.same_set(sq));
  // rational normals are cleared: x/2 + y/3 <= 1/6 keeps only the origin corner region
  const auto cut = intersect_halfspace(sq, {Rational(-1, 2), Rational(-1, 3)}, Rational(1, 6));
  CHECK(cut.inequalities().back().normal == IntVector{-3, -2});
  CHECK(volume(cut) == oracle::shoelace_area(cut.vertices()));
}

TEST_CASE("volume monotone under halfspace cuts and homogeneous under dilation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> off(0, 4);
  const std::vector<RationalPolytope> bodies = {
      RationalPolytope::simplex(2, 3), RationalPolytope::box({0, 0}, {2, 1}),
      RationalPolytope::simplex(3, 2), RationalPolytope::box({-1, 0, 0}, {1, 1, 2})};
  for (const auto& p : bodies) {
    const Rational base = volume(p);
    for (int trial = 0; trial < 15; ++trial) {
      RationalVector a(p.ambient_dim());
      for (auto& x : a) x = coef(rng);
      const auto cut = intersect_halfspace(p, a, Rational(off(rng)));
      CHECK(volume(cut) <= base);
      if (p.ambient_dim() == 2) CHECK(volume(cut) == oracle::shoelace_area(cut.vertices()));
    }
    for (const Rational t : {Rational(1, 2), Rational(2), Rational(7, 3)}) {
      Rational tn = 1;
      for (std::size_t i = 0; i < p.ambient_dim(); ++i) tn *= t;
      CHECK(volume(p.scaled(t)) == tn * base);
    }
  }
}

TEST_CASE("H and V representations agree by mutual containment") {
  const std::vector<RationalPolytope> corpus = {
      RationalPolytope::simplex(2, 3), RationalPolytope::box({0, 0}, {2, 1}),
      RationalPolytope::simplex(3, 2), intersect_halfspace(unit_square(), {1, 1}, Rational(-1, 2))};
  for (const auto& p : corpus) {
    CHECK(p.matches_vertices(p.vertices()));
    for (const auto& v : p.vertices()) CHECK(p.contains(v));
  }
  auto wrong = unit_square().vertices();
  wrong.pop_back();
  CHECK_FALSE(unit_square().matches_vertices(wrong));
}

TEST_CASE("polytope literal round trip") {
  const auto j = nlohmann::json::parse(
      R"({"dim": 2, "ineqs": [{"a": [1, 0], "b": "0"}, {"a": [0, 1], "b": 0},
          {"a": [-1, -1], "b": "3/2"}], "vertices": [["0","0"],["3/2","0"],["0","3/2"]]})");
  const auto p = polytope_from_json(j);
  CHECK(volume(p) == Rational(9, 8));
  CHECK(polytope_from_json(polytope_to_json(p)).same_set(p));
  auto bad = j;
  bad["vertices"][1] = {"2", "0"};
  CHECK_THROWS_AS(polytope_from_json(bad), Error);
}

TEST_CASE("polynomial helpers") {
  const auto p = parse_polynomial("t^2 - 1");
  CHECK(p.degree() == 2);
  CHECK(rational_roots(p) == std::vector<Rational>{-1, 1});
  CHECK(parse_polynomial("3t^2 - t/2 + 1")(Rational(2)) == Rational(12));
  const auto sq = squarefree_decomposition(parse_polynomial("t^3*(t-1)^2*(t^2+1)"));
  REQUIRE(sq.size() == 3);
  CHECK(sq[0].second == 1);
  CHECK(sq[0].first == parse_polynomial("t^2+1"));
  CHECK(sq[1].first == parse_polynomial("t-1"));
  CHECK(sq[2].second == 3);
  const std::vector<Rational> xs{0, 1, 2, 3}, ys{1, 2, 5, 10};
  CHECK(interpolate(xs, ys) == parse_polynomial("t^2 + 1"));
  CHECK(parse_polynomial("1 - t^2").integrate(0, 1) == Rational(2, 3));
}
