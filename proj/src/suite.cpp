#include "polarix/arithmetic.hpp"
#include "polarix/autissier.hpp"
#include "polarix/cli.hpp"
#include "polarix/errors.hpp"
#include "polarix/filtration.hpp"
#include "polarix/toric.hpp"
#include "polarix/weights.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace polarix::cli {

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome(const RunConfig&)> check;
  double time_limit_seconds = 0;  // 0: none
};

struct Triple {
  const char* model;
  const char* l;
  const char* e;
};

toric::DivisorVector divisor(const toric::ModelPtr& model, const char* text) { return toric::parse_divisor(model, text); }

Outcome beta_closed_forms(const RunConfig& c) {
  bool ok = true;
  Rational worst = 0;
  std::size_t exact = 0;
  for (unsigned n = 1; n <= 3; ++n) {
    const auto model = toric::resolve_model("Pn(" + std::to_string(n) + ")");
    for (unsigned d = 1; d <= 4; ++d) {
      const auto l = Rational(d) * toric::DivisorVector::prime(model, n);
      const auto h = toric::DivisorVector::prime(model, n);
      const Rational expected(d, n + 1);
      const auto b = filtration::beta_integral(l, h, c.tol);
      if (b.exact && b.lower == expected) ++exact;
      else ok = false;
      const Rational gap = abs(filtration::beta_m(l, h, 40) - expected);
      worst = std::max(worst, gap / Rational(d));
      if (gap > Rational(d, 40)) ok = false;
    }
  }
  return {ok, std::to_string(exact) + "/12 integrals equal d/(n+1) exactly; max |beta_40 - d/(n+1)|/d = " + str(worst) +
                  " (bound 1/40)"};
}

Outcome beta_equality_blowup(const RunConfig& c) {
  const auto model = toric::resolve_model("BlowupP2");
  const auto rep = filtration::check_beta_equality(divisor(model, "piH"), divisor(model, "E"), 30, c.tol);
  const auto& v = rep.result.integral_value;
  const bool integral_ok = v.exact && v.lower == Rational(2, 3);
  const bool close = abs(rep.beta_last - Rational(2, 3)) <= Rational(1, 15);
  return {integral_ok && close && rep.identity_holds,
          "beta_integral = " + (v.exact ? str(v.lower) : "[" + str(v.lower) + ", " + str(v.upper) + "]") +
              "; beta_30 = " + str(rep.beta_last) + "; step identity for m <= 30: " +
              (rep.identity_holds ? "exact" : "FAILED")};
}

Outcome measure_layer(const RunConfig&) {
  const auto p1 = toric::resolve_model("Pn(1)");
  bool ok = true;
  for (std::size_t m = 1; m <= 50; ++m) {
    const auto nu = filtration::measure_nu(filtration::vanishing_numbers(divisor(p1, "H"), divisor(p1, "D0"), m));
    ok = ok && filtration::expectation(nu) == Rational(1, 2) && nu.total_mass() == 1;
  }
  const Triple corpus[] = {{"Pn(1)", "H", "D0"},        {"Pn(2)", "2H", "D0"},           {"Pn(3)", "H", "D3"},
                           {"P1xP1", "H1 + H2", "D0"},  {"P1xP1", "2H1 + H2", "D2"},     {"BlowupP2", "piH", "E"},
                           {"BlowupP2", "2piH - E", "D0"}, {"Hirzebruch(1)", "S + 2F", "D1"},
                           {"Hirzebruch(2)", "S + 3F", "D0"}, {"Hirzebruch(2)", "S + 3F", "D1"}};
  std::size_t measures = 0;
  bool masses = true;
  for (const auto& t : corpus) {
    const auto model = toric::resolve_model(t.model);
    for (std::size_t m = 1; m <= 6; ++m) {
      masses = masses && filtration::measure_nu(filtration::vanishing_numbers(divisor(model, t.l), divisor(model, t.e), m))
                             .total_mass() == 1;
      ++measures;
    }
  }
  return {ok && masses, std::string("E(nu_m) = 1/2 for m <= 50: ") + (ok ? "yes" : "no") + "; " +
                            std::to_string(measures) + " corpus measures of mass 1: " + (masses ? "yes" : "no")};
}

const Triple kWeightModels[] = {{"Pn(1)", "H", "D0"}, {"Pn(1)", "2H", "D0"}, {"Pn(2)", "H", "D0"}};

Outcome expectation_weight(const RunConfig&) {
  bool ok = true;
  std::size_t checks = 0;
  for (const auto& t : kWeightModels) {
    const auto model = toric::resolve_model(t.model);
    for (std::size_t m = 1; m <= 10; ++m) {
      ok = ok && weights::expectation_identity(divisor(model, t.l), divisor(model, t.e), m).holds;
      ++checks;
    }
  }
  return {ok, std::to_string(checks) + " identities E(nu_m) = s(m,c)/(m h0(mL)) checked exactly"};
}

Outcome chow_formula(const RunConfig&) {
  bool ok = true;
  std::string detail;
  for (const auto& t : kWeightModels) {
    const auto model = toric::resolve_model(t.model);
    const auto f = weights::check_chow_formula(divisor(model, t.l), divisor(model, t.e));
    ok = ok && f.holds;
    if (!detail.empty()) detail += "; ";
    detail += std::string(t.model) + " by " + t.l + ": beta = " + str(f.beta) + ", e/((dim+1)deg) = " + str(f.e) +
              "/(" + std::to_string(model->dim + 1) + "*" + str(f.degree) + ")";
  }
  return {ok, detail};
}

Outcome expectation_bound_grid(const RunConfig& c) {
  const auto g = autissier::run_grid(autissier::grid_models(), 4, 3, c.jobs);
  return {g.violations == 0 && !g.cells.empty(),
          std::to_string(g.cells.size()) + " cells, " + std::to_string(g.violations) + " violations"};
}

Outcome div_and_join(const RunConfig& c) {
  const auto g = autissier::run_grid(autissier::grid_models(), 4, 3, c.jobs);
  bool ok = g.div_failures == 0 && g.sections_checked > 0;
  std::string detail = std::to_string(g.sections_checked) + " sections, " + std::to_string(g.div_failures) +
                       " div failures";
  auto join = [&](const char* name, std::int64_t b) {
    const auto model = toric::resolve_model(name);
    const auto family = autissier::boundary_family(model);
    const auto j = autissier::check_join_bound(toric::DivisorVector::prime(model, model->dim), 1, b, family);
    ok = ok && j.passed;
    auto vec = [](const RationalVector& v) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + str(v[i]);
      return s + ")";
    };
    detail += std::string("; ") + name + " b=" + std::to_string(b) + ": join " + vec(j.join) + " >= " + vec(j.rhs);
  };
  join("Pn(1)", 1);
  join("Pn(2)", 2);
  return {ok, detail};
}

Outcome arithmetic_layer(const RunConfig& c) {
  using namespace arithmetic;
  std::size_t bad = 0;
  for (const auto& x : random_rationals(c.seed, 1000))
    if (!check_product_formula(x).holds) ++bad;
  for (const auto& s : random_rational_functions(c.seed, 200))
    if (!check_product_formula(parse_rational_function(s)).holds) ++bad;
  const bool h12 = height(QPoint{Rational(1), Rational(2)}) == LogValue::log_prime(2);
  std::size_t veronese_bad = 0;
  const auto coords = random_rationals(c.seed + 1, 200);
  for (std::size_t i = 0; i < 100; ++i) {
    const QPoint x{coords[2 * i], coords[2 * i + 1]};
    const auto h = height(x);
    for (unsigned d : {2u, 3u})
      if (height(veronese(x, d)) != Rational(d) * h) ++veronese_bad;
  }
  return {bad == 0 && h12 && veronese_bad == 0,
          std::to_string(bad) + " product formula failures in 1200 elements; h(1:2) = " +
              height(QPoint{Rational(1), Rational(2)}).to_string() + "; " + std::to_string(veronese_bad) +
              " Veronese failures in 200"};
}

Outcome roth(const RunConfig&) {
  using namespace arithmetic;
  RothConfig rc;
  rc.divisor = {parse_hyperplane("x0", 2), parse_hyperplane("x1", 2), parse_hyperplane("x1 - x0", 2)};
  rc.places = {Place::archimedean()};
  rc.points = golden_ratio_points(20);
  const auto r = roth_experiment(rc);
  std::ostringstream slope;
  slope.precision(6);
  slope << std::fixed << r.slope_approx;
  return {r.verdict == "EMPIRICAL-CONSISTENT" && r.slope_approx <= 2.1 && r.label == "EMPIRICAL",
          r.label + ": " + r.verdict + ", slope " + slope.str() + " <= 2.1 over " + std::to_string(r.fitted) +
              " of " + std::to_string(r.rows.size()) + " points; beta = " + str(r.beta)};
}

Outcome vojta(const RunConfig&) {
  bool ok = true;
  std::string detail;
  for (const auto& [name, rays] : std::vector<std::pair<std::string, std::vector<std::size_t>>>{
           {"Pn(2)", {0, 1, 2}}, {"Pn(3)", {0, 1, 2, 3}}}) {
    const auto r = arithmetic::vojta_hypothesis_check(toric::resolve_model(name), rays);
    bool ones = r.betas.size() == rays.size();
    for (const auto& b : r.betas) ones = ones && b == 1;
    ok = ok && r.satisfied && ones;
    if (!detail.empty()) detail += "; ";
    detail += name + ": " + r.verdict + ", betas";
    for (const auto& b : r.betas) detail += " " + str(b);
  }
  return {ok, detail};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "beta closed forms on P^n", beta_closed_forms, 5.0},
      {2, "beta equality on the blow-up of P^2", beta_equality_blowup},
      {3, "measure layer", measure_layer},
      {4, "expectation equals normalized Hilbert weight", expectation_weight},
      {5, "beta from the Chow weight", chow_formula},
      {6, "Autissier expectation lower bound grid", expectation_bound_grid, 60.0},
      {7, "divisor lower bound and join bound", div_and_join},
      {8, "product formula, heights, Veronese", arithmetic_layer},
      {9, "empirical Roth slope", roth},
      {10, "Vojta-type hypothesis checker", vojta},
  };
  return list;
}

Json run_rows(const RunConfig& c, Json* timings) {
  Json rows = Json::array();
  for (const auto& cr : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.check(c);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.time_limit_seconds > 0 && secs >= cr.time_limit_seconds) {
      o.passed = false;
      o.detail += "; time limit exceeded";
    }
    if (timings) (*timings)["criterion_" + std::to_string(cr.id) + "_seconds"] = secs;
    Json row;
    row["id"] = cr.id;
    row["criterion"] = cr.name;
    row["passed"] = o.passed;
    row["detail"] = o.detail;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Report suite(const RunConfig& config) {
  if (config.suite_name != "acceptance") throw Error(ErrorKind::ConfigError, "cli", "unknown suite '" + config.suite_name + "'");
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.command = "suite";
  r.inputs["suite"] = config.suite_name;
  r.inputs["seed"] = config.seed;
  r.inputs["tol"] = str(config.tol);
  r.rows = run_rows(config, &r.timings);

  // Determinism: a second pass over the same rows must serialize identically.
  const auto rerun_start = std::chrono::steady_clock::now();
  bool same = false;
  std::string detail;
  try {
    same = run_rows(config, nullptr).dump() == r.rows.dump();
    detail = same ? "second run of criteria 1-10 is byte-identical" : "second run differs";
  } catch (const std::exception& e) {
    detail = std::string("error: ") + e.what();
  }
  r.timings["criterion_11_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - rerun_start).count();
  Json row;
  row["id"] = 11;
  row["criterion"] = "determinism";
  row["passed"] = same;
  row["detail"] = detail;
  r.rows.push_back(row);

  std::size_t passed = 0;
  for (const auto& x : r.rows) passed += x["passed"].get<bool>() ? 1 : 0;
  r.results["criteria"] = r.rows.size();
  r.results["passed"] = passed;
  r.verdict = passed == r.rows.size() ? "PASS" : "FAIL";
  r.failed = passed != r.rows.size();
  r.timings["total_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace polarix::cli
