#pragma once

// Hilbert weights s(m, c) of a toric embedding X -> P(H^0(L)) and the Chow
// weight e_X(c), for weight vectors c induced by orders of vanishing.

#include "polarix/polynomial.hpp"
#include "polarix/rational.hpp"
#include "polarix/toric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polarix::weights {

using toric::DivisorVector;

/// Weights on the monomial basis of H^0(L) (lexicographic lattice-point order).
/// When `ray` is set, c_k = ord_ray(p_k) + shift, which enables the direct formula.
struct WeightVector {
  DivisorVector l;
  std::vector<Rational> c;
  std::optional<std::size_t> ray;
  Rational shift = 0;

  /// The weights sorted ascending (the vanishing numbers when unshifted).
  std::vector<Rational> sorted() const;
};

/// c = orders of vanishing along the prime divisor E, optionally shifted by kappa.
WeightVector divisor_weights(const DivisorVector& l, const DivisorVector& e, const Rational& kappa = 0);
/// Arbitrary weights on the monomial basis of H^0(L).
WeightVector explicit_weights(const DivisorVector& l, std::vector<Rational> c);

enum class Method { Automatic, Direct, BruteForce };

/// s(m, c): maximal total weight of a monomial basis of the degree-m part of the
/// homogeneous coordinate ring. Direct: sum over P_{mL} of the induced weight.
/// BruteForce: all degree-m monomials in h0(L) variables, best weight per image point;
/// NotProjectivelyNormal if the images miss a lattice point of P_{mL}.
Rational hilbert_weight(const WeightVector& w, std::size_t m, Method method = Method::Automatic,
                        std::string* used = nullptr);

/// Number of degree-m monomials in h0(L) variables, saturating at the cap.
std::size_t brute_force_size(const WeightVector& w, std::size_t m, std::size_t cap = 1u << 20);

struct ExpectationIdentity {
  std::size_t m = 0;
  Rational expectation;  // E(nu_m)
  Rational weight;       // s(m, c)
  std::size_t h0 = 0;
  Rational rhs;          // s / (m h0)
  std::string method;
  bool holds = false;
};

ExpectationIdentity expectation_identity(const DivisorVector& l, const DivisorVector& e, std::size_t m);

struct ChowWeight {
  Rational e;
  Polynomial s_of_m;
  std::size_t verified_up_to = 0;
  bool stable = false;
};

/// e_X(c) = (dim + 1)! * leading coefficient of s(m, c), interpolated on m = 1..dim+3
/// and verified on m = dim+4..max(m_max, dim+4). InterpolationUnstable unless verified.
ChowWeight chow_weight(const WeightVector& w, std::size_t m_max = 0);

struct ChowFormula {
  Rational beta;    // beta_integral(L, E)
  Rational e;       // e_X(c)
  Rational degree;  // Vol(L)
  Rational rhs;     // e / ((dim + 1) deg)
  bool holds = false;
};

ChowFormula check_chow_formula(const DivisorVector& l, const DivisorVector& e);

struct AlphaWeightIdentity {
  std::size_t m = 0;
  Rational alpha;   // alpha(mL, D) = m beta_m
  Rational weight;  // s(m, c)
  std::size_t h0 = 0;
  Rational rhs;     // s / h0
  bool holds = false;
};

AlphaWeightIdentity alpha_weight_identity(const DivisorVector& l, const DivisorVector& d, std::size_t m);

}  // namespace polarix::weights
