#pragma once

// Exact rational convex geometry: H-represented polytopes, vertex enumeration,
// lattice-point enumeration and exact Euclidean volume.

#include "polarix/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace polarix::geometry {

/// The halfspace <normal, x> >= -offset.
struct Inequality {
  IntVector normal;
  Rational offset;

  bool holds_at(const RationalVector& x) const;
  bool tight_at(const RationalVector& x) const;
  Rational slack_at(const RationalVector& x) const;  // <normal,x> + offset
};

using LatticePoint = IntVector;

/// A bounded rational polytope. Construction enumerates vertices exactly and
/// rejects unbounded inputs with Error(UnboundedPolytope). Immutable afterwards.
class RationalPolytope {
 public:
  RationalPolytope(std::size_t ambient_dim, std::vector<Inequality> inequalities);

  /// Rational normals are scaled by the lcm of their denominators.
  static RationalPolytope from_rational(std::size_t ambient_dim,
                                        const std::vector<std::pair<RationalVector, Rational>>& rows);

  /// The dilated standard simplex {x >= 0, sum x <= k}.
  static RationalPolytope simplex(std::size_t dim, const Rational& k = 1);
  /// Axis-aligned box prod [lo_i, hi_i].
  static RationalPolytope box(const RationalVector& lo, const RationalVector& hi);

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<Inequality>& inequalities() const noexcept { return ineqs_; }
  const std::vector<RationalVector>& vertices() const noexcept { return vertices_; }
  bool empty() const noexcept { return vertices_.empty(); }

  /// Dimension of the affine hull (-1 for the empty set).
  int affine_dimension() const;
  bool full_dimensional() const { return affine_dimension() == static_cast<int>(dim_); }

  bool contains(const RationalVector& x) const;
  bool contains(const LatticePoint& x) const;

  /// Mutual containment: every listed vertex satisfies the H-representation and
  /// every vertex of the H-representation is among the listed ones.
  bool matches_vertices(const std::vector<RationalVector>& listed) const;

  /// Set equality through the vertex sets (both polytopes are bounded).
  bool same_set(const RationalPolytope& other) const;

  RationalPolytope scaled(const Rational& t) const;  // t > 0

  /// Inequalities after removing exact duplicates (normals made primitive).
  std::vector<Inequality> distinct_inequalities() const;

 private:
  std::size_t dim_;
  std::vector<Inequality> ineqs_;
  std::vector<RationalVector> vertices_;
};

RationalPolytope intersect_halfspace(const RationalPolytope& p, const RationalVector& normal,
                                     const Rational& offset);

/// Integer points of P in lexicographic order.
std::vector<LatticePoint> lattice_points(const RationalPolytope& p);

/// Number of integer points of P; same scan as lattice_points without storage.
std::size_t count_lattice_points(const RationalPolytope& p);

/// Exact Euclidean volume; 0 when P is not full-dimensional.
Rational volume(const RationalPolytope& p);

/// Literal format {"dim": n, "ineqs": [{"a": [...], "b": "p/q"}], "vertices": [...]}.
RationalPolytope polytope_from_json(const nlohmann::json& j);
nlohmann::json polytope_to_json(const RationalPolytope& p, bool with_vertices = true);

/// Exact solve of a square system; nullopt when singular.
std::optional<RationalVector> solve_linear(std::vector<RationalVector> a, RationalVector b);
/// Rank of a rational matrix given by rows.
std::size_t rank_of(std::vector<RationalVector> rows);

}  // namespace polarix::geometry
