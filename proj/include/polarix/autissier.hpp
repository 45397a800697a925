#pragma once

// Filtrations of H^0(mL) attached to a properly intersecting family of prime
// toric divisors D_1..D_q: the family Sigma of meeting subsets, weight choices
// a in Delta_sigma(b), the values mu_a(s), adapted bases and their expectations,
// minimal sets K and the divisor bounds built from them.

#include "polarix/rational.hpp"
#include "polarix/toric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polarix::autissier {

using toric::DivisorVector;
using toric::MonomialSection;

/// Indices into the divisor family (0-based; reports print them 1-based).
using Sigma = std::vector<std::size_t>;

/// D_1..D_q as prime toric divisors on one model, checked to intersect properly.
struct DivisorFamily {
  toric::ModelPtr model;
  std::vector<DivisorVector> divisors;
  std::vector<std::size_t> rays;  // ray of D_i

  std::size_t size() const noexcept { return divisors.size(); }
  /// D = D_1 + ... + D_q.
  DivisorVector total() const;
};

/// Throws NotPrime for non-prime members and ImproperIntersection when the family fails the test.
DivisorFamily make_family(std::vector<DivisorVector> divisors);
/// All prime toric divisors of the model.
DivisorFamily boundary_family(const toric::ModelPtr& model);

struct SigmaFamily {
  std::size_t q = 0;
  std::vector<Sigma> members;  // by size, then lexicographic
};

struct WeightChoice {
  Sigma sigma;
  std::int64_t b = 1;
  std::vector<std::int64_t> a;  // indexed like sigma, sum = b

  std::string to_string() const;
};

struct AdaptedBasis {
  std::size_t m = 0;
  std::vector<MonomialSection> sections;
  std::vector<Rational> mu_values;  // non-increasing
};

SigmaFamily sigma_family(const DivisorFamily& family);

/// All a in N^{#sigma} with sum b, lexicographic.
std::vector<WeightChoice> delta_sigma(const Sigma& sigma, std::int64_t b);

/// sum_{i in sigma} a_i floor(ord_{D_i}(s)) / b.
Rational mu(const MonomialSection& s, const WeightChoice& w, const DivisorFamily& family);
/// For a sum of monomials: the minimum over the monomials present.
Rational mu_general(const std::vector<MonomialSection>& monomials, const WeightChoice& w, const DivisorFamily& family);

/// dim F^t(m; sigma; a) = #{monomials s of mL : mu(s) >= t}.
std::size_t filtration_dim(const DivisorVector& l, std::size_t m, const WeightChoice& w, const Rational& t,
                           const DivisorFamily& family);

/// Monomial basis of mL sorted by mu descending, ties by lattice point in decreasing lexicographic order.
AdaptedBasis adapted_basis(const DivisorVector& l, std::size_t m, const WeightChoice& w, const DivisorFamily& family);

/// (1/(m h0(mL))) sum over the adapted basis of mu.
Rational expectation_Ea(const DivisorVector& l, std::size_t m, const WeightChoice& w, const DivisorFamily& family);
Rational expectation_Ea(const AdaptedBasis& basis);

/// min_i sum_{l >= 1} h0(mL - l D_i).
Integer min_tail_sum(const DivisorVector& l, std::size_t m, const DivisorFamily& family);

struct ExpectationBound {
  Rational lhs, rhs, slack;
  bool passed = false;
};

ExpectationBound check_expectation_bound(const DivisorVector& l, std::size_t m, const WeightChoice& w,
                                         const DivisorFamily& family);

/// Minimal elements of {beta in N^{#sigma} : sum a_i beta_i >= b mu_a(s)}, lexicographic.
std::vector<std::vector<std::int64_t>> minimal_set_K(const MonomialSection& s, const WeightChoice& w,
                                                     const DivisorFamily& family);

struct DivLowerBound {
  std::vector<std::vector<std::int64_t>> k;
  RationalVector div_s;  // ord along every ray
  RationalVector wedge;  // coefficient-wise min over K of sum beta_i D_i
  bool passed = false;
};

DivLowerBound check_div_lower_bound(const MonomialSection& s, const WeightChoice& w, const DivisorFamily& family);

struct JoinBound {
  std::size_t m = 0;
  std::int64_t b = 0;
  RationalVector join;         // coefficient-wise max over (sigma, a) of sum_s div(s)
  Integer min_sum;             // min_i sum_l h0(mL - l D_i)
  Rational factor;             // b / (b + dim)
  RationalVector rhs;          // factor * min_sum * D
  std::size_t cells = 0;
  bool passed = false;
};

JoinBound check_join_bound(const DivisorVector& l, std::size_t m, std::int64_t b, const DivisorFamily& family);

struct GridCell {
  std::string model;
  std::size_t m = 0;
  WeightChoice w;
  ExpectationBound bound;
  std::size_t sections = 0;
  std::size_t div_failures = 0;
};

struct GridReport {
  std::vector<GridCell> cells;
  std::size_t violations = 0;
  std::size_t sections_checked = 0;
  std::size_t div_failures = 0;
};

/// Exhaustive check over models (default polarization, all prime toric divisors),
/// 1 <= m <= m_max, 1 <= b <= b_max, all sigma and all a; cells in deterministic order.
GridReport run_grid(const std::vector<std::string>& models, std::size_t m_max, std::int64_t b_max,
                    std::size_t jobs = 1);

/// The models of the exhaustive grid.
std::vector<std::string> grid_models();

}  // namespace polarix::autissier
