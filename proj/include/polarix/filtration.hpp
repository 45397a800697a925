#pragma once

// Filtrations of section spaces by order of vanishing along a divisor:
// vanishing numbers, the normalized measures nu_m, alpha(L,E), the sum form
// beta_m = alpha(mL,E)/m and the integral form int Vol(L - tE)/Vol(L) dt.

#include "polarix/rational.hpp"
#include "polarix/toric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polarix::filtration {

using toric::DivisorVector;

struct VanishingProfile {
  std::size_t m = 0;
  std::vector<Rational> values;  // non-decreasing, length h0(mL)
};

struct DiscreteMeasure {
  std::vector<std::pair<Rational, Rational>> atoms;  // (location, mass), sorted by location

  Rational total_mass() const;
};

/// A value that is either exact (lower == upper, exact == true) or a certified enclosure.
struct CertifiedValue {
  bool exact = true;
  Rational lower, upper;

  static CertifiedValue exactly(const Rational& v) { return {true, v, v}; }
  Rational width() const { return upper - lower; }
  friend bool operator==(const CertifiedValue&, const CertifiedValue&) = default;
  Rational midpoint() const { return (lower + upper) / 2; }
  bool contains(const Rational& v) const { return lower <= v && v <= upper; }
  /// Distance from v to the enclosure (0 inside).
  Rational distance(const Rational& v) const;
};

struct BetaResult {
  std::vector<std::pair<std::size_t, Rational>> sum_sequence;
  CertifiedValue integral_value;
  std::optional<CertifiedValue> gamma;  // empty when the integral is 0
  Rational tau;
  std::string mode;  // "exact" or "interval"
};

/// Sorted orders of vanishing along the prime divisor E over the monomial basis of mL.
VanishingProfile vanishing_numbers(const DivisorVector& l, const DivisorVector& e, std::size_t m);

/// Same profile recomputed from the codimension jumps of t -> F^t (for small m).
VanishingProfile vanishing_numbers_by_codimension(const DivisorVector& l, const DivisorVector& e,
                                                  std::size_t m);

DiscreteMeasure measure_nu(const VanishingProfile& profile);
Rational expectation(const DiscreteMeasure& nu);

/// sum_{l >= 1} h0(L - lE) / h0(L).
Rational alpha(const DivisorVector& l, const DivisorVector& e);

/// beta_m = alpha(mL, E) / m.
Rational beta_m(const DivisorVector& l, const DivisorVector& e, std::size_t m);
std::vector<std::pair<std::size_t, Rational>> beta_sum(const DivisorVector& l, const DivisorVector& e,
                                                       std::size_t m_max);

/// Integral of the floor-step function t -> h0(mL - floor(mt) E)/h0(mL), from the profile.
Rational step_integral(const VanishingProfile& profile);

/// Largest t with L - tE having a nonempty section polytope (= smallest t with zero volume).
Rational pseudoeffective_threshold(const DivisorVector& l, const DivisorVector& e);

/// int_0^tau Vol(L - tE)/Vol(L) dt: exact when every polynomial piece is certified,
/// otherwise an enclosure of width <= tol from monotone step sums.
CertifiedValue beta_integral(const DivisorVector& l, const DivisorVector& e, const Rational& tol,
                             std::string* mode = nullptr, Rational* tau_out = nullptr);

/// Monotone upper/lower step sums on [0, tau], refined to width <= tol.
CertifiedValue beta_enclosure(const DivisorVector& l, const DivisorVector& e, const Rational& tau,
                              const Rational& tol);

/// Reciprocal of a beta value; empty when it is 0.
std::optional<CertifiedValue> gamma(const CertifiedValue& beta);

BetaResult beta(const DivisorVector& l, const DivisorVector& e, std::size_t m_max, const Rational& tol);

struct BetaEqualityReport {
  std::size_t m_max = 0;
  BetaResult result;
  Rational beta_last;       // beta_{m_max}
  Rational difference;      // distance from beta_{m_max} to the integral value
  Rational constant;        // C estimated from the sequence
  Rational allowance;       // tol + 2 C / m_max
  bool identity_holds = true;  // int h_m = 1/m + beta_m for all m <= m_max
  std::vector<std::pair<std::size_t, Rational>> step_integrals;
  bool passed = false;
};

BetaEqualityReport check_beta_equality(const DivisorVector& l, const DivisorVector& e, std::size_t m_max,
                                       const Rational& tol);

/// Default enclosure width for interval mode.
inline Rational default_tolerance() { return Rational(1, 1000); }

}  // namespace polarix::filtration
