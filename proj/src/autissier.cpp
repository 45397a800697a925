#include "polarix/autissier.hpp"

#include "polarix/errors.hpp"
#include "polarix/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace polarix::autissier {

namespace {

constexpr std::string_view kModule = "autissier";

// Floor of the order of vanishing of each basis monomial along each D_i.
struct SectionData {
  std::vector<MonomialSection> sections;
  std::vector<std::vector<std::int64_t>> ords;  // [section][i]
};

SectionData section_data(const DivisorVector& l, std::size_t m, const DivisorFamily& family) {
  SectionData d;
  d.sections = toric::monomial_basis(Rational(m) * l);
  for (const auto& s : d.sections) {
    std::vector<std::int64_t> row;
    for (auto ray : family.rays) row.push_back(to_int64(floor_of(toric::ord_along(s, ray))));
    d.ords.push_back(std::move(row));
  }
  return d;
}

// b * mu as an integer: sum_{k} a_k floor(ord_{sigma_k}).
std::int64_t weighted_order(const std::vector<std::int64_t>& ords, const WeightChoice& w) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < w.sigma.size(); ++k) s += w.a[k] * ords[w.sigma[k]];
  return s;
}

std::vector<std::int64_t> orders_of(const MonomialSection& s, const DivisorFamily& family) {
  std::vector<std::int64_t> row;
  for (auto ray : family.rays) row.push_back(to_int64(floor_of(toric::ord_along(s, ray))));
  return row;
}

void validate_weight(const WeightChoice& w, const DivisorFamily& family) {
  if (w.b < 1) throw Error(ErrorKind::ConfigError, kModule, "b must be >= 1");
  if (w.a.size() != w.sigma.size() || w.sigma.empty())
    throw Error(ErrorKind::ConfigError, kModule, "weight vector does not match sigma");
  std::int64_t total = 0;
  for (auto x : w.a) {
    if (x < 0) throw Error(ErrorKind::ConfigError, kModule, "weights must be non-negative");
    total += x;
  }
  if (total != w.b) throw Error(ErrorKind::ConfigError, kModule, "weights of " + w.to_string() + " do not sum to b");
  for (auto i : w.sigma)
    if (i >= family.size()) throw Error(ErrorKind::ConfigError, kModule, "sigma index out of range");
}

// Minimal beta with sum a_k beta_k >= threshold: enumerate leading coordinates in the box
// beta_k <= ceil(threshold / a_k), take the last coordinate as small as possible, keep the
// vectors where no positive coordinate can be decremented.
std::vector<std::vector<std::int64_t>> minimal_solutions(const std::vector<std::int64_t>& a, std::int64_t threshold) {
  const std::size_t k = a.size();
  std::vector<std::vector<std::int64_t>> out;
  if (threshold <= 0) {
    out.emplace_back(k, 0);
    return out;
  }
  std::vector<std::int64_t> bound(k, 0);
  for (std::size_t i = 0; i < k; ++i) bound[i] = a[i] > 0 ? (threshold + a[i] - 1) / a[i] : 0;
  std::vector<std::int64_t> beta(k, 0);
  auto rec = [&](auto&& self, std::size_t level, std::int64_t partial) -> void {
    if (level + 1 == k) {
      std::int64_t last = 0;
      if (partial < threshold) {
        if (a[level] == 0) return;
        last = (threshold - partial + a[level] - 1) / a[level];
      }
      beta[level] = last;
      const std::int64_t total = partial + a[level] * last;
      for (std::size_t i = 0; i < k; ++i)
        if (beta[i] > 0 && total - a[i] >= threshold) return;
      out.push_back(beta);
      return;
    }
    for (std::int64_t v = 0; v <= bound[level]; ++v) {
      beta[level] = v;
      self(self, level + 1, partial + a[level] * v);
    }
    beta[level] = 0;
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

AdaptedBasis sort_basis(std::size_t m, const SectionData& data, const WeightChoice& w) {
  std::vector<std::size_t> order(data.sections.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::int64_t> key(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) key[i] = weighted_order(data.ords[i], w);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (key[x] != key[y]) return key[x] > key[y];
    return data.sections[x].point > data.sections[y].point;
  });
  AdaptedBasis basis;
  basis.m = m;
  for (auto i : order) {
    basis.sections.push_back(data.sections[i]);
    basis.mu_values.push_back(Rational(key[i]) / Rational(w.b));
  }
  return basis;
}

Integer min_tail(const DivisorVector& l, std::size_t m, const DivisorFamily& family) {
  const DivisorVector ml = Rational(m) * l;
  std::optional<Integer> best;
  for (const auto& d : family.divisors) {
    Integer sum = 0;
    for (std::size_t ell = 1;; ++ell) {
      const std::size_t c = toric::h0(ml - Rational(ell) * d);
      if (c == 0) break;
      sum += c;
    }
    if (!best || sum < *best) best = sum;
  }
  return best.value_or(Integer(0));
}

ExpectationBound bound_from(const AdaptedBasis& basis, const Integer& min_sum) {
  ExpectationBound r;
  r.lhs = expectation_Ea(basis);
  r.rhs = Rational(min_sum) / (Rational(basis.m) * Rational(basis.sections.size()));
  r.slack = r.lhs - r.rhs;
  r.passed = r.slack >= 0;
  return r;
}

DivLowerBound div_bound_from(const MonomialSection& s, const std::vector<std::int64_t>& ords, const WeightChoice& w,
                             const DivisorFamily& family) {
  DivLowerBound r;
  std::vector<std::int64_t> a(w.a.begin(), w.a.end());
  r.k = minimal_solutions(a, weighted_order(ords, w));
  const std::size_t rays = family.model->rays.size();
  for (std::size_t rho = 0; rho < rays; ++rho) r.div_s.push_back(toric::ord_along(s, rho));
  r.wedge.assign(rays, Rational(0));
  bool first = true;
  for (const auto& beta : r.k) {
    RationalVector c(rays, Rational(0));
    for (std::size_t k = 0; k < beta.size(); ++k) {
      const auto& coeffs = family.divisors[w.sigma[k]].coeffs();
      for (std::size_t rho = 0; rho < rays; ++rho) c[rho] += Rational(beta[k]) * coeffs[rho];
    }
    for (std::size_t rho = 0; rho < rays; ++rho) r.wedge[rho] = first ? c[rho] : std::min(r.wedge[rho], c[rho]);
    first = false;
  }
  r.passed = true;
  for (std::size_t rho = 0; rho < rays; ++rho) r.passed = r.passed && r.div_s[rho] >= r.wedge[rho];
  return r;
}

}  // namespace

DivisorVector DivisorFamily::total() const {
  DivisorVector d = DivisorVector::zero(model);
  for (const auto& x : divisors) d = d + x;
  return d;
}

std::string WeightChoice::to_string() const {
  std::string s = "sigma={";
  for (std::size_t i = 0; i < sigma.size(); ++i) s += (i ? "," : "") + std::to_string(sigma[i] + 1);
  s += "} a=(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ") b=" + std::to_string(b);
}

DivisorFamily make_family(std::vector<DivisorVector> divisors) {
  if (divisors.empty()) throw Error(ErrorKind::ConfigError, kModule, "empty divisor family");
  DivisorFamily f;
  f.model = divisors.front().model_ptr();
  for (const auto& d : divisors) {
    if (d.model().name != f.model->name) throw Error(ErrorKind::ConfigError, kModule, "divisors on different models");
    const auto ray = d.prime_ray();
    if (!ray) throw Error(ErrorKind::NotPrime, kModule, "divisor " + d.to_string() + " is not a prime toric divisor");
    f.rays.push_back(*ray);
  }
  if (!toric::intersect_properly(divisors))
    throw Error(ErrorKind::ImproperIntersection, kModule, "the divisors do not intersect properly");
  f.divisors = std::move(divisors);
  return f;
}

DivisorFamily boundary_family(const toric::ModelPtr& model) {
  std::vector<DivisorVector> all;
  for (std::size_t r = 0; r < model->rays.size(); ++r) all.push_back(DivisorVector::prime(model, r));
  return make_family(std::move(all));
}

SigmaFamily sigma_family(const DivisorFamily& family) {
  SigmaFamily out;
  out.q = family.size();
  if (out.q > 20) throw Error(ErrorKind::ConfigError, kModule, "too many divisors");
  for (std::uint32_t mask = 1; mask < (1u << out.q); ++mask) {
    Sigma sigma;
    std::vector<std::size_t> rays;
    for (std::size_t i = 0; i < out.q; ++i) {
      if (mask & (1u << i)) {
        sigma.push_back(i);
        rays.push_back(family.rays[i]);
      }
    }
    if (toric::rays_meet(*family.model, rays)) out.members.push_back(std::move(sigma));
  }
  std::sort(out.members.begin(), out.members.end(), [](const Sigma& x, const Sigma& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

std::vector<WeightChoice> delta_sigma(const Sigma& sigma, std::int64_t b) {
  if (b < 1) throw Error(ErrorKind::ConfigError, kModule, "b must be >= 1");
  if (sigma.empty()) throw Error(ErrorKind::ConfigError, kModule, "sigma must be nonempty");
  std::vector<WeightChoice> out;
  std::vector<std::int64_t> a(sigma.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, std::int64_t left) -> void {
    if (k + 1 == sigma.size()) {
      a[k] = left;
      out.push_back({sigma, b, a});
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      a[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, b);
  return out;
}

Rational mu(const MonomialSection& s, const WeightChoice& w, const DivisorFamily& family) {
  validate_weight(w, family);
  return Rational(weighted_order(orders_of(s, family), w)) / Rational(w.b);
}

Rational mu_general(const std::vector<MonomialSection>& monomials, const WeightChoice& w,
                    const DivisorFamily& family) {
  if (monomials.empty()) throw Error(ErrorKind::ZeroElement, kModule, "mu of the zero section");
  Rational best = mu(monomials.front(), w, family);
  for (const auto& s : monomials) best = std::min(best, mu(s, w, family));
  return best;
}

std::size_t filtration_dim(const DivisorVector& l, std::size_t m, const WeightChoice& w, const Rational& t,
                           const DivisorFamily& family) {
  validate_weight(w, family);
  const auto data = section_data(l, m, family);
  std::size_t count = 0;
  for (const auto& row : data.ords)
    if (Rational(weighted_order(row, w)) / Rational(w.b) >= t) ++count;
  return count;
}

AdaptedBasis adapted_basis(const DivisorVector& l, std::size_t m, const WeightChoice& w, const DivisorFamily& family) {
  validate_weight(w, family);
  const auto data = section_data(l, m, family);
  if (data.sections.empty())
    throw Error(ErrorKind::EmptyLinearSeries, kModule, "h0(" + std::to_string(m) + "L) = 0");
  return sort_basis(m, data, w);
}

Rational expectation_Ea(const AdaptedBasis& basis) {
  if (basis.sections.empty()) throw Error(ErrorKind::EmptyLinearSeries, kModule, "empty basis");
  Rational sum = 0;
  for (const auto& v : basis.mu_values) sum += v;
  return sum / (Rational(basis.m) * Rational(basis.sections.size()));
}

Rational expectation_Ea(const DivisorVector& l, std::size_t m, const WeightChoice& w, const DivisorFamily& family) {
  return expectation_Ea(adapted_basis(l, m, w, family));
}

Integer min_tail_sum(const DivisorVector& l, std::size_t m, const DivisorFamily& family) {
  return min_tail(l, m, family);
}

ExpectationBound check_expectation_bound(const DivisorVector& l, std::size_t m, const WeightChoice& w,
                                         const DivisorFamily& family) {
  return bound_from(adapted_basis(l, m, w, family), min_tail(l, m, family));
}

std::vector<std::vector<std::int64_t>> minimal_set_K(const MonomialSection& s, const WeightChoice& w,
                                                     const DivisorFamily& family) {
  validate_weight(w, family);
  std::vector<std::int64_t> a(w.a.begin(), w.a.end());
  return minimal_solutions(a, weighted_order(orders_of(s, family), w));
}

DivLowerBound check_div_lower_bound(const MonomialSection& s, const WeightChoice& w, const DivisorFamily& family) {
  validate_weight(w, family);
  return div_bound_from(s, orders_of(s, family), w, family);
}

JoinBound check_join_bound(const DivisorVector& l, std::size_t m, std::int64_t b, const DivisorFamily& family) {
  JoinBound r;
  r.m = m;
  r.b = b;
  const auto data = section_data(l, m, family);
  if (data.sections.empty())
    throw Error(ErrorKind::EmptyLinearSeries, kModule, "h0(" + std::to_string(m) + "L) = 0");
  const std::size_t rays = family.model->rays.size();
  r.join.assign(rays, Rational(0));
  bool first = true;
  for (const auto& sigma : sigma_family(family).members) {
    for (const auto& w : delta_sigma(sigma, b)) {
      const auto basis = sort_basis(m, data, w);
      RationalVector sum(rays, Rational(0));
      for (const auto& s : basis.sections)
        for (std::size_t rho = 0; rho < rays; ++rho) sum[rho] += toric::ord_along(s, rho);
      for (std::size_t rho = 0; rho < rays; ++rho) r.join[rho] = first ? sum[rho] : std::max(r.join[rho], sum[rho]);
      first = false;
      ++r.cells;
    }
  }
  r.min_sum = min_tail(l, m, family);
  r.factor = Rational(b) / Rational(b + static_cast<std::int64_t>(family.model->dim));
  const auto d = family.total();
  r.rhs.resize(rays);
  r.passed = true;
  for (std::size_t rho = 0; rho < rays; ++rho) {
    r.rhs[rho] = r.factor * Rational(r.min_sum) * d.coeff(rho);
    if (d.coeff(rho) != 0 && r.join[rho] < r.rhs[rho]) r.passed = false;
  }
  return r;
}

std::vector<std::string> grid_models() {
  return {"Pn(1)", "Pn(2)", "Pn(3)", "P1xP1", "BlowupP2", "Hirzebruch(1)", "Hirzebruch(2)"};
}

GridReport run_grid(const std::vector<std::string>& models, std::size_t m_max, std::int64_t b_max, std::size_t jobs) {
  struct Context {
    std::string name;
    std::size_t m;
    DivisorFamily family;
    SectionData data;
    Integer min_sum;
  };
  struct Task {
    std::size_t context;
    WeightChoice w;
  };
  std::vector<Context> contexts;
  std::vector<Task> tasks;
  for (const auto& name : models) {
    const auto x = toric::resolve_model(name);
    const auto l = toric::parse_divisor(x, x->polarization);
    const auto family = boundary_family(x);
    const auto sigmas = sigma_family(family);
    for (std::size_t m = 1; m <= m_max; ++m) {
      contexts.push_back({name, m, family, section_data(l, m, family), min_tail(l, m, family)});
      if (contexts.back().data.sections.empty())
        throw Error(ErrorKind::EmptyLinearSeries, kModule, name + ": empty linear series");
      for (std::int64_t b = 1; b <= b_max; ++b)
        for (const auto& sigma : sigmas.members)
          for (auto& w : delta_sigma(sigma, b)) tasks.push_back({contexts.size() - 1, std::move(w)});
    }
  }
  GridReport report;
  report.cells = parallel_map(tasks.size(), jobs, [&](std::size_t i) {
    const auto& ctx = contexts[tasks[i].context];
    const auto& w = tasks[i].w;
    GridCell cell;
    cell.model = ctx.name;
    cell.m = ctx.m;
    cell.w = w;
    const auto basis = sort_basis(ctx.m, ctx.data, w);
    cell.bound = bound_from(basis, ctx.min_sum);
    for (std::size_t s = 0; s < ctx.data.sections.size(); ++s) {
      if (!div_bound_from(ctx.data.sections[s], ctx.data.ords[s], w, ctx.family).passed) ++cell.div_failures;
      ++cell.sections;
    }
    return cell;
  });
  for (const auto& c : report.cells) {
    if (!c.bound.passed) ++report.violations;
    report.sections_checked += c.sections;
    report.div_failures += c.div_failures;
  }
  return report;
}

}  // namespace polarix::autissier
