#include "polarix/filtration.hpp"

#include "polarix/errors.hpp"
#include "polarix/geometry.hpp"
#include "polarix/polynomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace polarix::filtration {

namespace {

constexpr std::string_view kModule = "filtration";

std::size_t require_prime(const DivisorVector& e) {
  const auto ray = e.prime_ray();
  if (!ray) throw Error(ErrorKind::NotPrime, kModule, "divisor " + e.to_string() + " is not a prime toric divisor");
  return *ray;
}

void require_effective(const DivisorVector& e) {
  if (!e.effective() || e.is_zero())
    throw Error(ErrorKind::ConfigError, kModule, "E must be a nonzero effective divisor, got " + e.to_string());
}

Rational require_big(const DivisorVector& l) {
  const Rational vol = toric::divisor_volume(l);
  if (vol <= 0) throw Error(ErrorKind::NotBig, kModule, "L = " + l.to_string() + " has volume 0");
  return vol;
}

bool nonempty_at(const DivisorVector& l, const DivisorVector& e, const Rational& t) {
  return !toric::section_polytope(l - t * e).empty();
}

// The (x, t) system <x, u_rho> - t e_rho >= -a_rho; each (n+1)-subset of rows solved
// with equality gives a candidate time at which the combinatorics of P_{L - tE} can change.
struct Candidate {
  Rational t;
  bool feasible;
};

std::vector<Candidate> candidate_times(const DivisorVector& l, const DivisorVector& e, std::size_t cap) {
  const auto& model = l.model();
  const std::size_t n = model.dim;
  const std::size_t rows = model.rays.size();
  std::vector<Candidate> out;
  if (rows < n + 1) return out;
  if (binomial(static_cast<unsigned>(rows), static_cast<unsigned>(n + 1)) > Integer(cap)) {
    throw Error(ErrorKind::InterpolationUnstable, kModule, "too many breakpoint candidates");
  }
  std::vector<std::size_t> idx(n + 1);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<RationalVector> a;
    RationalVector b;
    for (auto r : idx) {
      RationalVector row;
      for (auto c : model.rays[r]) row.emplace_back(c);
      row.push_back(-e.coeff(r));
      a.push_back(std::move(row));
      b.push_back(-l.coeff(r));
    }
    if (auto sol = geometry::solve_linear(std::move(a), std::move(b))) {
      const Rational t = sol->back();
      bool feasible = true;
      for (std::size_t r = 0; r < rows && feasible; ++r) {
        Rational s = -t * e.coeff(r) + l.coeff(r);
        for (std::size_t i = 0; i < n; ++i) s += (*sol)[i] * Rational(model.rays[r][i]);
        feasible = s >= 0;
      }
      out.push_back({t, feasible});
    }
    std::size_t i = n + 1;
    while (i > 0 && idx[i - 1] == rows - (n + 1) + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j <= n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Simplest rational (smallest denominator) in [lo, hi], 0 <= lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi) {
  const Integer fl = floor_of(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  const Rational rest = simplest_between(1 / (hi - Rational(fl)), 1 / (lo - Rational(fl)));
  return Rational(fl) + 1 / rest;
}

bool certify_threshold(const DivisorVector& l, const DivisorVector& e, const Rational& tau) {
  // If P_tau is nonempty but not full-dimensional, no larger t can be nonempty: otherwise
  // P_tau would contain a convex combination of P_0 (full-dimensional) and P_t.
  const auto p = toric::section_polytope(l - tau * e);
  return !p.empty() && geometry::volume(p) == 0;
}

Rational normalized_volume(const DivisorVector& l, const DivisorVector& e, const Rational& t, const Rational& vol) {
  return toric::divisor_volume(l - t * e) / vol;
}

std::optional<Rational> exact_piecewise_integral(const DivisorVector& l, const DivisorVector& e,
                                                 const Rational& tau, const Rational& vol) {
  std::vector<Rational> cuts{Rational(0), tau};
  try {
    for (const auto& c : candidate_times(l, e, 200000))
      if (c.t > 0 && c.t < tau) cuts.push_back(c.t);
  } catch (const Error&) {
    return std::nullopt;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const std::size_t n = l.model().dim;
  const std::size_t fit = n + 2, extra = 2;
  Rational total = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rational p = cuts[k], q = cuts[k + 1];
    const Rational step = (q - p) / Rational(fit + extra + 1);
    std::vector<Rational> xs, ys;
    for (std::size_t i = 1; i <= fit; ++i) {
      xs.push_back(p + Rational(i) * step);
      ys.push_back(toric::divisor_volume(l - xs.back() * e));
    }
    const Polynomial piece = interpolate(xs, ys);
    for (std::size_t i = fit + 1; i <= fit + extra; ++i) {
      const Rational t = p + Rational(i) * step;
      if (piece(t) != toric::divisor_volume(l - t * e)) return std::nullopt;
    }
    if (piece.degree() > static_cast<int>(n)) return std::nullopt;
    total += piece.integrate(p, q);
  }
  return total / vol;
}

}  // namespace

Rational DiscreteMeasure::total_mass() const {
  Rational s = 0;
  for (const auto& [loc, mass] : atoms) s += mass;
  return s;
}

Rational CertifiedValue::distance(const Rational& v) const {
  if (v < lower) return lower - v;
  if (v > upper) return v - upper;
  return 0;
}

VanishingProfile vanishing_numbers(const DivisorVector& l, const DivisorVector& e, std::size_t m) {
  const std::size_t ray = require_prime(e);
  const DivisorVector ml = Rational(m) * l;
  VanishingProfile out{m, {}};
  for (const auto& s : toric::monomial_basis(ml)) out.values.push_back(toric::ord_along(s, ray));
  if (out.values.empty())
    throw Error(ErrorKind::EmptyLinearSeries, kModule, "h0(" + std::to_string(m) + "L) = 0");
  std::sort(out.values.begin(), out.values.end());
  return out;
}

VanishingProfile vanishing_numbers_by_codimension(const DivisorVector& l, const DivisorVector& e,
                                                  std::size_t m) {
  const std::size_t ray = require_prime(e);
  const DivisorVector ml = Rational(m) * l;
  const std::size_t total = toric::h0(ml);
  if (total == 0) throw Error(ErrorKind::EmptyLinearSeries, kModule, "h0(" + std::to_string(m) + "L) = 0");
  // Orders lie in a_E + Z; a_j is the (j+1)-th time codim F^t jumps past j.
  const Rational shift = ml.coeff(ray);
  Rational t = shift - Rational(floor_of(shift));
  VanishingProfile out{m, {}};
  std::size_t below = 0;  // #{ord <= t}
  while (out.values.size() < total) {
    const std::size_t at_least_next = toric::h0(ml - (t + 1) * e);
    const std::size_t upto = total - at_least_next;
    for (; below < upto; ++below) out.values.push_back(t);
    t += 1;
  }
  return out;
}

DiscreteMeasure measure_nu(const VanishingProfile& profile) {
  DiscreteMeasure nu;
  if (profile.values.empty()) return nu;
  std::map<Rational, std::size_t> counts;
  for (const auto& a : profile.values) ++counts[a / Rational(profile.m == 0 ? 1 : profile.m)];
  const Rational n(profile.values.size());
  for (const auto& [loc, c] : counts) nu.atoms.emplace_back(loc, Rational(c) / n);
  return nu;
}

Rational expectation(const DiscreteMeasure& nu) {
  Rational s = 0;
  for (const auto& [loc, mass] : nu.atoms) s += loc * mass;
  return s;
}

Rational alpha(const DivisorVector& l, const DivisorVector& e) {
  require_effective(e);
  const std::size_t base = toric::h0(l);
  if (base == 0) throw Error(ErrorKind::EmptyLinearSeries, kModule, "h0(L) = 0 for L = " + l.to_string());
  std::size_t sum = 0;
  for (std::size_t ell = 1;; ++ell) {
    const std::size_t c = toric::h0(l - Rational(ell) * e);
    if (c == 0) break;
    sum += c;
  }
  return Rational(sum) / Rational(base);
}

Rational beta_m(const DivisorVector& l, const DivisorVector& e, std::size_t m) {
  if (m == 0) throw Error(ErrorKind::ConfigError, kModule, "m must be >= 1");
  return alpha(Rational(m) * l, e) / Rational(m);
}

std::vector<std::pair<std::size_t, Rational>> beta_sum(const DivisorVector& l, const DivisorVector& e,
                                                       std::size_t m_max) {
  require_big(l);
  std::vector<std::pair<std::size_t, Rational>> out;
  for (std::size_t m = 1; m <= m_max; ++m) out.emplace_back(m, beta_m(l, e, m));
  return out;
}

Rational step_integral(const VanishingProfile& profile) {
  // h_m(t) = #{j : a_j >= floor(mt)} / h0 on [l/m, (l+1)/m): each a_j contributes floor(a_j) + 1 steps.
  Rational steps = 0;
  for (const auto& a : profile.values) steps += Rational(floor_of(a) + 1);
  return steps / Rational(profile.m * profile.values.size());
}

Rational pseudoeffective_threshold(const DivisorVector& l, const DivisorVector& e) {
  require_effective(e);
  require_big(l);
  Rational lo = 0, hi = 1;
  while (nonempty_at(l, e, hi)) {
    lo = hi;
    hi *= 2;
  }
  for (int iter = 0; iter < 48; ++iter) {
    const Rational mid = (lo + hi) / 2;
    (nonempty_at(l, e, mid) ? lo : hi) = mid;
  }
  const Rational guess = simplest_between(lo, hi);
  if (denominator_of(guess) <= Integer(1 << 16) && certify_threshold(l, e, guess)) return guess;
  // Exact fallback: the threshold is the largest t at a vertex of the (x, t) polyhedron.
  std::optional<Rational> best;
  for (const auto& c : candidate_times(l, e, 2000000))
    if (c.feasible && (!best || c.t > *best)) best = c.t;
  if (!best || !certify_threshold(l, e, *best))
    throw Error(ErrorKind::ToleranceNotReached, kModule, "could not certify the pseudoeffective threshold");
  return *best;
}

CertifiedValue beta_integral(const DivisorVector& l, const DivisorVector& e, const Rational& tol, std::string* mode,
                             Rational* tau_out) {
  const Rational vol = require_big(l);
  const Rational tau = pseudoeffective_threshold(l, e);
  if (tau_out) *tau_out = tau;
  if (tau == 0) {
    if (mode) *mode = "exact";
    return CertifiedValue::exactly(0);
  }
  if (auto exact = exact_piecewise_integral(l, e, tau, vol)) {
    if (mode) *mode = "exact";
    return CertifiedValue::exactly(*exact);
  }
  if (mode) *mode = "interval";
  return beta_enclosure(l, e, tau, tol);
}

CertifiedValue beta_enclosure(const DivisorVector& l, const DivisorVector& e, const Rational& tau,
                              const Rational& tol) {
  const Rational vol = require_big(l);
  if (tau == 0) return CertifiedValue::exactly(0);
  if (tol <= 0) throw Error(ErrorKind::ConfigError, kModule, "tolerance must be positive");
  // Monotone integrand: the upper and lower step sums differ by (f(0) - f(tau)) * tau / N = tau / N.
  constexpr std::int64_t kMaxSteps = 1 << 16;
  const Integer wanted = ceil_of(tau / tol);
  if (wanted > Integer(kMaxSteps))
    throw Error(ErrorKind::ToleranceNotReached, kModule, "tolerance " + to_string(tol) + " needs too many steps");
  const std::int64_t steps = std::max<std::int64_t>(1, to_int64(wanted));
  const Rational dt = tau / Rational(steps);
  Rational lower = 0, upper = 0;
  Rational prev = 1;  // normalized volume at t = 0
  for (std::int64_t k = 1; k <= steps; ++k) {
    const Rational cur = normalized_volume(l, e, dt * Rational(k), vol);
    upper += prev * dt;
    lower += cur * dt;
    prev = cur;
  }
  return {false, lower, upper};
}

std::optional<CertifiedValue> gamma(const CertifiedValue& b) {
  if (b.exact) {
    if (b.lower == 0) return std::nullopt;
    return CertifiedValue::exactly(1 / b.lower);
  }
  if (b.lower <= 0) return std::nullopt;
  return CertifiedValue{false, 1 / b.upper, 1 / b.lower};
}

BetaResult beta(const DivisorVector& l, const DivisorVector& e, std::size_t m_max, const Rational& tol) {
  BetaResult r;
  r.integral_value = beta_integral(l, e, tol, &r.mode, &r.tau);
  r.gamma = gamma(r.integral_value);
  r.sum_sequence = beta_sum(l, e, m_max);
  return r;
}

BetaEqualityReport check_beta_equality(const DivisorVector& l, const DivisorVector& e, std::size_t m_max,
                                       const Rational& tol) {
  if (m_max == 0) throw Error(ErrorKind::ConfigError, kModule, "m_max must be >= 1");
  BetaEqualityReport rep;
  rep.m_max = m_max;
  rep.result = beta(l, e, m_max, tol);
  const auto& seq = rep.result.sum_sequence;
  rep.beta_last = seq.back().second;
  rep.difference = rep.result.integral_value.distance(rep.beta_last);
  // beta_m ~ beta + C/m gives beta_m - beta_2m ~ C/(2m).
  rep.constant = 0;
  for (std::size_t m = 1; 2 * m <= m_max; ++m) {
    Rational d = seq[m - 1].second - seq[2 * m - 1].second;
    if (d < 0) d = -d;
    rep.constant = std::max(rep.constant, Rational(2 * m) * d);
  }
  rep.allowance = tol + 2 * rep.constant / Rational(m_max);
  for (const auto& [m, bm] : seq) {
    const Rational lhs = step_integral(vanishing_numbers(l, e, m));
    rep.step_integrals.emplace_back(m, lhs);
    if (lhs != 1 / Rational(m) + bm) rep.identity_holds = false;
  }
  rep.passed = rep.identity_holds && rep.difference <= rep.allowance;
  return rep;
}

}  // namespace polarix::filtration
