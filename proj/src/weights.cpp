#include "polarix/weights.hpp"

#include "polarix/errors.hpp"
#include "polarix/filtration.hpp"

#include <algorithm>
#include <map>

namespace polarix::weights {

namespace {

constexpr std::string_view kModule = "weights";
constexpr std::size_t kBruteForceCap = 200000;

Rational direct_weight(const WeightVector& w, std::size_t m) {
  const auto ml = Rational(m) * w.l;
  const auto basis = toric::monomial_basis(ml);
  if (basis.empty()) throw Error(ErrorKind::EmptyLinearSeries, kModule, "h0(mL) = 0");
  Rational s = 0;
  for (const auto& sec : basis) s += toric::ord_along(sec, *w.ray);
  return s + Rational(m) * w.shift * Rational(basis.size());
}

Rational brute_force_weight(const WeightVector& w, std::size_t m) {
  const auto basis = toric::monomial_basis(w.l);
  if (basis.empty()) throw Error(ErrorKind::EmptyLinearSeries, kModule, "h0(L) = 0");
  const std::size_t n = basis.size();
  const std::size_t dim = w.l.model().dim;
  std::map<geometry::LatticePoint, Rational> best;
  geometry::LatticePoint point(dim, 0);
  // Multisets of size m from the n variables, as non-decreasing index sequences.
  auto rec = [&](auto&& self, std::size_t from, std::size_t left, const Rational& weight) -> void {
    if (left == 0) {
      auto [it, inserted] = best.emplace(point, weight);
      if (!inserted && weight > it->second) it->second = weight;
      return;
    }
    for (std::size_t k = from; k < n; ++k) {
      for (std::size_t i = 0; i < dim; ++i) point[i] += basis[k].point[i];
      self(self, k, left - 1, weight + w.c[k]);
      for (std::size_t i = 0; i < dim; ++i) point[i] -= basis[k].point[i];
    }
  };
  if (m == 0) {
    best.emplace(point, Rational(0));
  } else {
    rec(rec, 0, m, Rational(0));
  }
  const auto targets = geometry::lattice_points(toric::section_polytope(Rational(m) * w.l));
  if (targets.size() != best.size()) {
    throw Error(ErrorKind::NotProjectivelyNormal, kModule,
                "degree-" + std::to_string(m) + " monomials reach " + std::to_string(best.size()) + " of " +
                    std::to_string(targets.size()) + " lattice points");
  }
  Rational s = 0;
  for (const auto& q : targets) {
    auto it = best.find(q);
    if (it == best.end()) throw Error(ErrorKind::NotProjectivelyNormal, kModule, "lattice point not reached");
    s += it->second;
  }
  return s;
}

}  // namespace

std::vector<Rational> WeightVector::sorted() const {
  auto out = c;
  std::sort(out.begin(), out.end());
  return out;
}

WeightVector divisor_weights(const DivisorVector& l, const DivisorVector& e, const Rational& kappa) {
  const auto ray = e.prime_ray();
  if (!ray) throw Error(ErrorKind::NotPrime, kModule, "divisor " + e.to_string() + " is not a prime toric divisor");
  WeightVector w{l, {}, ray, kappa};
  for (const auto& s : toric::monomial_basis(l)) w.c.push_back(toric::ord_along(s, *ray) + kappa);
  if (w.c.empty()) throw Error(ErrorKind::EmptyLinearSeries, kModule, "h0(L) = 0");
  return w;
}

WeightVector explicit_weights(const DivisorVector& l, std::vector<Rational> c) {
  const auto n = toric::h0(l);
  if (n == 0) throw Error(ErrorKind::EmptyLinearSeries, kModule, "h0(L) = 0");
  if (c.size() != n)
    throw Error(ErrorKind::ConfigError, kModule,
                "weight vector has " + std::to_string(c.size()) + " entries, h0(L) = " + std::to_string(n));
  return WeightVector{l, std::move(c), std::nullopt, 0};
}

std::size_t brute_force_size(const WeightVector& w, std::size_t m, std::size_t cap) {
  // C(n + m - 1, m), saturating.
  const std::size_t n = w.c.size();
  Integer count = binomial(static_cast<unsigned>(n + m - 1), static_cast<unsigned>(m));
  return count > Integer(cap) ? cap : count.convert_to<std::size_t>();
}

Rational hilbert_weight(const WeightVector& w, std::size_t m, Method method, std::string* used) {
  if (method == Method::Automatic)
    method = (w.ray && brute_force_size(w, m) >= kBruteForceCap) ? Method::Direct : Method::BruteForce;
  if (method == Method::Direct) {
    if (!w.ray) throw Error(ErrorKind::ConfigError, kModule, "direct Hilbert weight needs a divisor-induced c");
    if (used) *used = "direct";
    return direct_weight(w, m);
  }
  if (brute_force_size(w, m) >= kBruteForceCap)
    throw Error(ErrorKind::ConfigError, kModule, "brute-force Hilbert weight is too large at m = " + std::to_string(m));
  if (used) *used = "brute-force";
  return brute_force_weight(w, m);
}

ExpectationIdentity expectation_identity(const DivisorVector& l, const DivisorVector& e, std::size_t m) {
  ExpectationIdentity r;
  r.m = m;
  const auto prof = filtration::vanishing_numbers(l, e, m);
  r.expectation = filtration::expectation(filtration::measure_nu(prof));
  r.h0 = prof.values.size();
  r.weight = hilbert_weight(divisor_weights(l, e), m, Method::Automatic, &r.method);
  r.rhs = r.weight / (Rational(m) * Rational(r.h0));
  r.holds = r.expectation == r.rhs;
  return r;
}

ChowWeight chow_weight(const WeightVector& w, std::size_t m_max) {
  const std::size_t dim = w.l.model().dim;
  std::vector<Rational> xs, ys;
  for (std::size_t m = 1; m <= dim + 3; ++m) {
    xs.emplace_back(m);
    ys.push_back(hilbert_weight(w, m));
  }
  ChowWeight r;
  r.s_of_m = interpolate(xs, ys);
  r.stable = r.s_of_m.degree() <= static_cast<int>(dim + 1);
  const std::size_t last = std::max(m_max, dim + 4);
  for (std::size_t m = dim + 4; m <= last && r.stable; ++m) {
    if (r.s_of_m(Rational(m)) != hilbert_weight(w, m)) r.stable = false;
    else r.verified_up_to = m;
  }
  if (!r.stable)
    throw Error(ErrorKind::InterpolationUnstable, kModule, "s(m, c) is not a polynomial of degree <= dim + 1");
  r.e = Rational(factorial(static_cast<unsigned>(dim + 1))) * r.s_of_m.coefficient(static_cast<int>(dim + 1));
  return r;
}

ChowFormula check_chow_formula(const DivisorVector& l, const DivisorVector& e) {
  ChowFormula r;
  const auto b = filtration::beta_integral(l, e, filtration::default_tolerance());
  if (!b.exact) throw Error(ErrorKind::ToleranceNotReached, kModule, "beta integral is not exact");
  r.beta = b.lower;
  r.e = chow_weight(divisor_weights(l, e)).e;
  r.degree = toric::divisor_volume(l);
  r.rhs = r.e / (Rational(l.model().dim + 1) * r.degree);
  r.holds = r.beta == r.rhs;
  return r;
}

AlphaWeightIdentity alpha_weight_identity(const DivisorVector& l, const DivisorVector& d, std::size_t m) {
  AlphaWeightIdentity r;
  r.m = m;
  const auto ml = Rational(m) * l;
  r.alpha = filtration::alpha(ml, d);
  r.h0 = toric::h0(ml);
  r.weight = hilbert_weight(divisor_weights(l, d), m);
  r.rhs = r.weight / Rational(r.h0);
  r.holds = r.alpha == r.rhs;
  return r;
}

}  // namespace polarix::weights
