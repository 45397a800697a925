#pragma once

// Complete toric varieties given by fans, torus-invariant divisors, and the
// section-polytope dictionary: h0(D) = #(P_D ∩ Z^n), Vol(D) = n! vol(P_D).

#include "polarix/geometry.hpp"
#include "polarix/rational.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polarix::toric {

struct ToricModel {
  std::string name;
  std::size_t dim = 0;
  std::vector<IntVector> rays;
  std::vector<std::vector<std::size_t>> max_cones;
  /// Named divisors for the expression language, e.g. {"H", (0,0,1)}.
  std::vector<std::pair<std::string, RationalVector>> generators;
  /// A known ample divisor in the expression language (may be empty).
  std::string polarization;

  std::size_t ray_count() const noexcept { return rays.size(); }
  bool simplicial() const;
  bool smooth() const;
};

using ModelPtr = std::shared_ptr<const ToricModel>;

/// Validates (primitive rays, index ranges, fan completeness) and freezes the model.
ModelPtr make_model(ToricModel model);

/// "Pn(n)", "P1xP1", "BlowupP2", "Hirzebruch(a)". Ray orders:
///   Pn(n):          e_1..e_n, -(e_1+..+e_n); H = D_n
///   P1xP1:          e1, -e1, e2, -e2; H1 = D_1, H2 = D_3
///   BlowupP2:       e1, e2, -e1-e2, e1+e2; piH = D_2, E = D_3 (exceptional)
///   Hirzebruch(a):  e1, e2, -e1+a e2, -e2; F = D_0, S = D_1 (S^2 = -a)
ModelPtr catalog(std::string_view name);

/// Path to a model file, else $POLARIX_MODEL_PATH/<name>.json, else catalog(name).
ModelPtr resolve_model(std::string_view name_or_path);

ModelPtr model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ToricModel& model);

class DivisorVector {
 public:
  DivisorVector(ModelPtr model, RationalVector coeffs);

  static DivisorVector zero(ModelPtr model);
  static DivisorVector prime(ModelPtr model, std::size_t ray);

  const ToricModel& model() const noexcept { return *model_; }
  const ModelPtr& model_ptr() const noexcept { return model_; }
  const RationalVector& coeffs() const noexcept { return coeffs_; }
  const Rational& coeff(std::size_t ray) const { return coeffs_.at(ray); }

  /// The ray index when this is a single prime toric divisor D_rho.
  std::optional<std::size_t> prime_ray() const;
  bool effective() const;
  bool integral() const;
  bool is_zero() const;

  friend DivisorVector operator+(const DivisorVector& a, const DivisorVector& b);
  friend DivisorVector operator-(const DivisorVector& a, const DivisorVector& b);
  friend DivisorVector operator*(const Rational& k, const DivisorVector& d);
  friend bool operator==(const DivisorVector& a, const DivisorVector& b);

  std::string to_string() const;

 private:
  ModelPtr model_;
  RationalVector coeffs_;
};

/// Divisor file {"model": name, "coeffs": ["p/q", ...]}.
DivisorVector divisor_from_json(const nlohmann::json& j, const ModelPtr& model);
nlohmann::json divisor_to_json(const DivisorVector& d);

/// Expression language: "3H", "2*H1 + H2", "piH - E", "-K", "1/2 D0", or a raw
/// coefficient list "[1, 0, 1/2]" ordered by ray index.
DivisorVector parse_divisor(const ModelPtr& model, std::string_view text);

struct MonomialSection {
  geometry::LatticePoint point;
  DivisorVector divisor;

  /// Throws ConfigError unless the point lies in the section polytope.
  MonomialSection(geometry::LatticePoint point, DivisorVector divisor);
};

geometry::RationalPolytope section_polytope(const DivisorVector& d);
std::size_t h0(const DivisorVector& d);
Rational divisor_volume(const DivisorVector& d);
DivisorVector anticanonical(const ModelPtr& model);

/// Monomial basis of H^0(O(D)), lattice points in lexicographic order.
std::vector<MonomialSection> monomial_basis(const DivisorVector& d);

/// <m, u_rho> + a_rho: the order of vanishing of the monomial along D_rho.
Rational ord_along(const MonomialSection& s, std::size_t ray);

/// True when the rays lie in a common cone, i.e. the D_rho meet.
bool rays_meet(const ToricModel& model, std::span<const std::size_t> rays);

/// Toric proper-intersection test for prime toric divisors; NotPrime otherwise.
bool intersect_properly(std::span<const DivisorVector> divisors);

/// Strict convexity of the support function on every maximal cone.
bool is_ample(const DivisorVector& d);

/// GL_n(Z) equivalence of fans (ray sets and cone structure).
bool is_isomorphic(const ToricModel& a, const ToricModel& b);

/// Membership of a direction in the cone generated by the listed rays.
bool cone_contains(const ToricModel& model, const std::vector<std::size_t>& cone,
                   const RationalVector& direction);

}  // namespace polarix::toric
