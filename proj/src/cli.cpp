#include "polarix/cli.hpp"

#include "polarix/arithmetic.hpp"
#include "polarix/autissier.hpp"
#include "polarix/errors.hpp"
#include "polarix/filtration.hpp"
#include "polarix/toric.hpp"
#include "polarix/weights.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace polarix::cli {

namespace {

constexpr std::string_view kModule = "cli";

Error config_error(const std::string& what) { return Error(ErrorKind::ConfigError, kModule, what); }

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Json certified(const filtration::CertifiedValue& v) {
  Json j;
  j["exact"] = v.exact;
  j["value"] = v.exact ? Json(str(v.lower)) : Json(nullptr);
  j["lower"] = str(v.lower);
  j["upper"] = str(v.upper);
  j["value_approx"] = to_double(v.midpoint());
  return j;
}

toric::DivisorVector require_divisor(const toric::ModelPtr& model, const std::string& text, const char* flag) {
  if (trim(text).empty()) throw config_error(std::string("missing ") + flag);
  return toric::parse_divisor(model, text);
}

bool is_boundary_keyword(const std::string& s) {
  return s == "boundary" || s == "coordinate-lines" || s == "coordinate-hyperplanes" || s == "all";
}

autissier::DivisorFamily load_family(const toric::ModelPtr& model, const std::vector<std::string>& specs) {
  const auto items = split_list(specs);
  if (items.empty() || (items.size() == 1 && is_boundary_keyword(items[0]))) return autissier::boundary_family(model);
  std::vector<toric::DivisorVector> divisors;
  for (const auto& s : items) divisors.push_back(toric::parse_divisor(model, s));
  return autissier::make_family(std::move(divisors));
}

weights::WeightVector load_weights(const RunConfig& c, const toric::DivisorVector& l, const toric::ModelPtr& model) {
  if (!c.weights.empty()) {
    std::vector<Rational> w;
    for (const auto& s : split_list(c.weights)) w.push_back(parse_rational(s));
    return weights::explicit_weights(l, std::move(w));
  }
  return weights::divisor_weights(l, require_divisor(model, c.e, "--E (or --weights)"));
}

weights::Method parse_method(const std::string& s) {
  if (s == "auto") return weights::Method::Automatic;
  if (s == "direct") return weights::Method::Direct;
  if (s == "brute-force") return weights::Method::BruteForce;
  throw config_error("unknown method '" + s + "' (auto|direct|brute-force)");
}

void set_verdict(Report& r, bool ok) {
  r.verdict = ok ? "PASS" : "FAIL";
  r.failed = !ok;
}

Json geometry_inputs(const RunConfig& c, const toric::ModelPtr& model) {
  Json in;
  in["model"] = model->name;
  if (!c.l.empty()) in["L"] = c.l;
  if (!c.e.empty()) in["E"] = c.e;
  return in;
}

// ---------------------------------------------------------------- commands

Report cmd_beta(const RunConfig& c) {
  Report r;
  const auto model = toric::resolve_model(c.model);
  const auto l = require_divisor(model, c.l, "--L");
  const auto e = require_divisor(model, c.e, "--E");
  r.inputs = geometry_inputs(c, model);
  r.inputs["m_max"] = c.m_max;
  r.inputs["tol"] = str(c.tol);
  const auto rep = filtration::check_beta_equality(l, e, c.m_max, c.tol);
  r.results["beta"] = certified(rep.result.integral_value);
  r.results["mode"] = rep.result.mode;
  r.results["tau"] = str(rep.result.tau);
  r.results["gamma"] = rep.result.gamma ? certified(*rep.result.gamma) : Json(nullptr);
  r.results["beta_m_last"] = str(rep.beta_last);
  r.results["difference"] = str(rep.difference);
  r.results["constant"] = str(rep.constant);
  r.results["allowance"] = str(rep.allowance);
  r.results["step_identity_holds"] = rep.identity_holds;
  for (std::size_t i = 0; i < rep.result.sum_sequence.size(); ++i) {
    const auto& [m, b] = rep.result.sum_sequence[i];
    Json row;
    row["m"] = m;
    row["beta_m"] = str(b);
    row["step_integral"] = i < rep.step_integrals.size() ? Json(str(rep.step_integrals[i].second)) : Json(nullptr);
    row["beta_m_approx"] = to_double(b);
    r.rows.push_back(row);
  }
  set_verdict(r, rep.passed);
  return r;
}

Report cmd_alpha(const RunConfig& c) {
  Report r;
  const auto model = toric::resolve_model(c.model);
  const auto l = require_divisor(model, c.l, "--L");
  const auto e = require_divisor(model, c.e, "--E");
  r.inputs = geometry_inputs(c, model);
  r.inputs["m"] = c.m;
  const auto id = weights::alpha_weight_identity(l, e, c.m);
  r.results["alpha"] = str(id.alpha);
  r.results["beta_m"] = str(id.alpha / Rational(c.m));
  r.results["hilbert_weight"] = str(id.weight);
  r.results["h0"] = id.h0;
  r.results["weight_over_h0"] = str(id.rhs);
  r.results["alpha_approx"] = to_double(id.alpha);
  set_verdict(r, id.holds);
  return r;
}

Report cmd_measure(const RunConfig& c) {
  Report r;
  const auto model = toric::resolve_model(c.model);
  const auto l = require_divisor(model, c.l, "--L");
  const auto e = require_divisor(model, c.e, "--E");
  r.inputs = geometry_inputs(c, model);
  r.inputs["m"] = c.m;
  const auto profile = filtration::vanishing_numbers(l, e, c.m);
  const auto nu = filtration::measure_nu(profile);
  r.results["h0"] = profile.values.size();
  r.results["vanishing_numbers"] = str_vector(profile.values);
  r.results["total_mass"] = str(nu.total_mass());
  r.results["expectation"] = str(filtration::expectation(nu));
  r.results["step_integral"] = str(filtration::step_integral(profile));
  r.results["expectation_approx"] = to_double(filtration::expectation(nu));
  for (const auto& [x, w] : nu.atoms) {
    Json row;
    row["location"] = str(x);
    row["mass"] = str(w);
    r.rows.push_back(row);
  }
  set_verdict(r, nu.total_mass() == 1);
  return r;
}

Report cmd_hilbert_weight(const RunConfig& c) {
  Report r;
  const auto model = toric::resolve_model(c.model);
  const auto l = require_divisor(model, c.l, "--L");
  const auto w = load_weights(c, l, model);
  r.inputs = geometry_inputs(c, model);
  r.inputs["m"] = c.m;
  r.inputs["method"] = c.method;
  if (!c.weights.empty()) r.inputs["weights"] = str_vector(w.c);
  std::string used;
  const auto s = weights::hilbert_weight(w, c.m, parse_method(c.method), &used);
  r.results["weight"] = str(s);
  r.results["method"] = used;
  r.results["h0"] = toric::h0(Rational(c.m) * l);
  r.results["weight_approx"] = to_double(s);
  if (c.weights.empty()) {
    const auto id = weights::expectation_identity(l, require_divisor(model, c.e, "--E"), c.m);
    r.results["expectation"] = str(id.expectation);
    r.results["weight_over_m_h0"] = str(id.rhs);
    set_verdict(r, id.holds && id.weight == s);
  }
  return r;
}

Report cmd_chow_weight(const RunConfig& c) {
  Report r;
  const auto model = toric::resolve_model(c.model);
  const auto l = require_divisor(model, c.l, "--L");
  const auto w = load_weights(c, l, model);
  r.inputs = geometry_inputs(c, model);
  r.inputs["m_max"] = c.m_max;
  if (!c.weights.empty()) r.inputs["weights"] = str_vector(w.c);
  const auto cw = weights::chow_weight(w, c.m_max);
  r.results["chow_weight"] = str(cw.e);
  r.results["s_of_m"] = cw.s_of_m.to_string('m');
  r.results["verified_up_to"] = cw.verified_up_to;
  r.results["chow_weight_approx"] = to_double(cw.e);
  bool ok = cw.stable;
  if (c.weights.empty()) {
    const auto f = weights::check_chow_formula(l, require_divisor(model, c.e, "--E"));
    r.results["beta"] = str(f.beta);
    r.results["degree"] = str(f.degree);
    r.results["chow_over_dim1_degree"] = str(f.rhs);
    ok = ok && f.holds;
  }
  set_verdict(r, ok);
  return r;
}

Report cmd_autissier_grid(const RunConfig& c) {
  Report r;
  const std::size_t m_max = c.m;
  const std::int64_t b_max = c.b > 0 ? c.b : 3;
  const auto models = autissier::grid_models();
  r.inputs["grid"] = models;
  r.inputs["m_max"] = m_max;
  r.inputs["b_max"] = b_max;
  const auto g = autissier::run_grid(models, m_max, b_max, c.jobs);
  r.results["cells"] = g.cells.size();
  r.results["violations"] = g.violations;
  r.results["sections_checked"] = g.sections_checked;
  r.results["div_failures"] = g.div_failures;
  for (const auto& cell : g.cells) {
    Json row;
    row["model"] = cell.model;
    row["m"] = cell.m;
    row["weight"] = cell.w.to_string();
    row["lhs"] = str(cell.bound.lhs);
    row["rhs"] = str(cell.bound.rhs);
    row["passed"] = cell.bound.passed;
    row["div_failures"] = cell.div_failures;
    r.rows.push_back(row);
  }
  set_verdict(r, g.violations == 0 && g.div_failures == 0);
  return r;
}

Report cmd_autissier(const RunConfig& c) {
  if (c.grid) return cmd_autissier_grid(c);
  Report r;
  const auto model = toric::resolve_model(c.model);
  const auto l = require_divisor(model, c.l, "--L");
  const auto family = load_family(model, c.family);
  const std::int64_t b = c.b > 0 ? c.b : static_cast<std::int64_t>(model->dim + 1);
  r.inputs = geometry_inputs(c, model);
  Json fam = Json::array();
  for (const auto& d : family.divisors) fam.push_back(d.to_string());
  r.inputs["D"] = fam;
  r.inputs["m"] = c.m;
  r.inputs["b"] = b;

  const auto ml = Rational(c.m) * l;
  const auto basis = toric::monomial_basis(ml);
  bool ok = true;
  std::size_t div_failures = 0, cells = 0;
  for (const auto& sigma : autissier::sigma_family(family).members) {
    for (const auto& w : autissier::delta_sigma(sigma, b)) {
      const auto bound = autissier::check_expectation_bound(l, c.m, w, family);
      std::size_t failures = 0;
      for (const auto& s : basis)
        if (!autissier::check_div_lower_bound(s, w, family).passed) ++failures;
      Json row;
      row["weight"] = w.to_string();
      row["expectation"] = str(bound.lhs);
      row["lower_bound"] = str(bound.rhs);
      row["slack"] = str(bound.slack);
      row["passed"] = bound.passed;
      row["div_failures"] = failures;
      r.rows.push_back(row);
      ok = ok && bound.passed && failures == 0;
      div_failures += failures;
      ++cells;
    }
  }
  const auto join = autissier::check_join_bound(l, c.m, b, family);
  r.results["cells"] = cells;
  r.results["sections"] = basis.size();
  r.results["div_failures"] = div_failures;
  r.results["min_tail_sum"] = str(Rational(join.min_sum));
  Json jb;
  jb["join"] = str_vector(join.join);
  jb["rhs"] = str_vector(join.rhs);
  jb["factor"] = str(join.factor);
  jb["passed"] = join.passed;
  r.results["join_bound"] = jb;
  set_verdict(r, ok && join.passed);
  return r;
}

Report cmd_vojta(const RunConfig& c) {
  Report r;
  const auto model = toric::resolve_model(c.model);
  const auto family = load_family(model, c.family);
  r.inputs["model"] = model->name;
  Json fam = Json::array();
  for (auto ray : family.rays) fam.push_back("D" + std::to_string(ray));
  r.inputs["D"] = fam;
  const auto v = arithmetic::vojta_hypothesis_check(model, family.rays);
  r.results["anticanonical"] = toric::anticanonical(model).to_string();
  r.results["fano"] = v.fano;
  r.results["satisfied"] = v.satisfied;
  for (std::size_t i = 0; i < v.betas.size(); ++i) {
    Json row;
    row["component"] = "D" + std::to_string(family.rays[i]);
    row["beta"] = str(v.betas[i]);
    row["at_least_one"] = v.betas[i] >= 1;
    row["beta_approx"] = to_double(v.betas[i]);
    r.rows.push_back(row);
  }
  // Checks only the hypothesis; an unsatisfied hypothesis is a result, not a failure.
  r.verdict = v.verdict;
  return r;
}

Report cmd_roth(const RunConfig& c) {
  Report r;
  arithmetic::RothConfig rc;
  rc.n = c.n;
  rc.d = c.degree;
  rc.epsilon = c.epsilon;
  rc.height_cutoff = c.height_cutoff;
  rc.top_fraction = c.top_fraction;
  const auto forms = split_list(c.hyperplanes);
  if (forms.empty()) {
    rc.divisor = arithmetic::coordinate_hyperplanes(c.n + 1);
    if (c.n == 1) rc.divisor.push_back(arithmetic::parse_hyperplane("x1 - x0", 2));
  } else {
    for (const auto& f : forms) rc.divisor.push_back(arithmetic::parse_hyperplane(f, c.n + 1));
  }
  const auto places = split_list(c.places);
  if (places.empty()) rc.places = {arithmetic::Place::archimedean()};
  for (const auto& p : places) rc.places.push_back(arithmetic::parse_place(p, arithmetic::Field::Q));
  std::string source;
  if (!c.points_file.empty()) {
    std::ifstream in(c.points_file);
    const auto f = arithmetic::points_from_json(nlohmann::json::parse(in));
    if (f.field != arithmetic::Field::Q) throw config_error("roth-experiment needs points over Q");
    rc.points = f.q_points;
    source = c.points_file;
  } else {
    if (c.n != 1) throw config_error("golden-ratio points live on P^1; pass --points for n > 1");
    rc.points = arithmetic::golden_ratio_points(c.max_log_height);
    source = "golden-ratio";
  }
  r.inputs["n"] = c.n;
  r.inputs["L"] = std::to_string(c.degree) + "H";
  Json d = Json::array();
  for (const auto& h : rc.divisor) d.push_back(h.to_string());
  r.inputs["D"] = d;
  Json s = Json::array();
  for (const auto& v : rc.places) s.push_back(v.to_string());
  r.inputs["S"] = s;
  r.inputs["points"] = source;
  r.inputs["epsilon_approx"] = c.epsilon;
  r.inputs["height_cutoff_approx"] = c.height_cutoff;
  r.inputs["top_fraction_approx"] = c.top_fraction;

  const auto rep = arithmetic::roth_experiment(rc);
  for (const auto& row : rep.rows) {
    Json j;
    j["index"] = row.index;
    j["point"] = row.point;
    j["skipped"] = row.skipped;
    if (row.skipped) {
      j["reason"] = row.reason;
    } else {
      j["height"] = row.height.to_string();
      j["proximity"] = row.proximity.to_string();
      j["height_approx"] = row.height.approx();
      j["proximity_approx"] = row.proximity.approx();
    }
    r.rows.push_back(j);
  }
  r.results["label"] = rep.label;
  r.results["beta"] = str(rep.beta);
  r.results["gamma"] = str(rep.gamma);
  r.results["fitted_points"] = rep.fitted;
  r.results["slope_approx"] = rep.slope_approx;
  r.results["intercept_approx"] = rep.intercept_approx;
  r.results["bound_approx"] = rep.bound_approx;
  r.verdict = rep.verdict;
  r.failed = rep.verdict == "EMPIRICAL-INCONSISTENT";
  return r;
}

template <class T>
Json product_row(const std::string& text, const T& x) {
  const auto rep = arithmetic::check_product_formula(x);
  Json row;
  row["element"] = text;
  Json terms = Json::array();
  for (const auto& [v, val] : rep.terms) terms.push_back(v.to_string() + ": " + val.to_string());
  row["terms"] = terms;
  row["total"] = rep.total.to_string();
  row["holds"] = rep.holds;
  return row;
}

Report cmd_product_formula(const RunConfig& c) {
  Report r;
  const bool qt = c.field == "Q(t)" || c.field == "Qt";
  if (!qt && c.field != "Q") throw config_error("unknown field '" + c.field + "' (Q|Q(t))");
  r.inputs["field"] = qt ? "Q(t)" : "Q";
  auto values = split_list(c.values);
  if (c.random > 0) {
    r.inputs["random"] = c.random;
    r.inputs["seed"] = c.seed;
    if (qt) {
      for (auto& s : random_rational_functions(c.seed, c.random)) values.push_back(s);
    } else {
      for (const auto& x : random_rationals(c.seed, c.random)) values.push_back(str(x));
    }
  }
  if (values.empty()) throw config_error("pass --x values or --random N");
  bool ok = true;
  for (const auto& s : values) {
    Json row = qt ? product_row(s, arithmetic::parse_rational_function(s)) : product_row(s, parse_rational(s));
    ok = ok && row["holds"].get<bool>();
    r.rows.push_back(std::move(row));
  }
  r.results["elements"] = values.size();
  set_verdict(r, ok);
  return r;
}

// ---------------------------------------------------------------- rendering

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string md_field(std::string s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += "\\|";
    else if (ch == '\n') out += ' ';
    else out += ch;
  }
  return out;
}

std::vector<std::string> row_columns(const Json& rows) {
  std::vector<std::string> cols;
  std::set<std::string> seen;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (seen.insert(k).second) cols.push_back(k);
  return cols;
}

void md_key_values(std::ostringstream& out, const Json& obj) {
  out << "| key | value |\n|---|---|\n";
  for (const auto& [k, v] : obj.items()) out << "| " << md_field(k) << " | " << md_field(cell(v)) << " |\n";
  out << "\n";
}

}  // namespace

// ---------------------------------------------------------------- public

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "md") return Format::Md;
  throw config_error("unknown format '" + std::string(text) + "' (json|csv|md)");
}

void RunConfig::validate() const {
  if (tol <= 0) throw config_error("--tol must be positive");
  if (m == 0) throw config_error("--m must be >= 1");
  if (m_max == 0) throw config_error("--m-max must be >= 1");
  if (jobs == 0) throw config_error("--jobs must be >= 1");
  if (!points_file.empty() && !std::filesystem::exists(points_file))
    throw config_error("points file '" + points_file + "' does not exist");
  const bool looks_like_path = model.find('/') != std::string::npos || model.ends_with(".json");
  if (looks_like_path && !std::filesystem::exists(model)) throw config_error("model file '" + model + "' does not exist");
}

Json Report::body() const {
  Json j;
  j["tool"] = "polarix";
  j["version"] = version();
  j["command"] = command;
  j["inputs"] = inputs;
  j["results"] = results;
  j["rows"] = rows;
  j["verdict"] = verdict.empty() ? Json(nullptr) : Json(verdict);
  return j;
}

Json Report::to_json() const {
  Json j = body();
  j["timings_approx"] = timings;
  return j;
}

std::string render(const Report& report, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::Json: return report.to_json().dump(2) + "\n";
    case Format::Csv: {
      if (report.rows.empty()) {
        out << "key,value\n";
        for (const auto& [k, v] : report.results.items()) out << csv_field(k) << "," << csv_field(cell(v)) << "\n";
        if (!report.verdict.empty()) out << "verdict," << report.verdict << "\n";
        return out.str();
      }
      const auto cols = row_columns(report.rows);
      for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_field(cols[i]);
      out << "\n";
      for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < cols.size(); ++i)
          out << (i ? "," : "") << csv_field(row.contains(cols[i]) ? cell(row[cols[i]]) : "");
        out << "\n";
      }
      return out.str();
    }
    case Format::Md: {
      out << "# polarix " << report.command << "\n\n";
      if (!report.inputs.empty()) {
        out << "## Inputs\n\n";
        md_key_values(out, report.inputs);
      }
      if (!report.results.empty()) {
        out << "## Results\n\n";
        md_key_values(out, report.results);
      }
      if (!report.rows.empty()) {
        const auto cols = row_columns(report.rows);
        out << "## Rows\n\n|";
        for (const auto& c : cols) out << " " << md_field(c) << " |";
        out << "\n|";
        for (std::size_t i = 0; i < cols.size(); ++i) out << "---|";
        out << "\n";
        for (const auto& row : report.rows) {
          out << "|";
          for (const auto& c : cols) out << " " << md_field(row.contains(c) ? cell(row[c]) : "") << " |";
          out << "\n";
        }
        out << "\n";
      }
      if (!report.verdict.empty()) out << "**Verdict:** " << report.verdict << "\n\n";
      if (!report.timings.empty()) {
        out << "## Timings (approximate)\n\n";
        md_key_values(out, report.timings);
      }
      return out.str();
    }
  }
  return {};
}

Report run(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report r;
  const auto& s = config.subcommand;
  if (s == "beta") r = cmd_beta(config);
  else if (s == "alpha") r = cmd_alpha(config);
  else if (s == "measure") r = cmd_measure(config);
  else if (s == "hilbert-weight") r = cmd_hilbert_weight(config);
  else if (s == "chow-weight") r = cmd_chow_weight(config);
  else if (s == "autissier-check") r = cmd_autissier(config);
  else if (s == "vojta-check") r = cmd_vojta(config);
  else if (s == "roth-experiment") r = cmd_roth(config);
  else if (s == "product-formula") r = cmd_product_formula(config);
  else if (s == "suite") return suite(config);
  else throw config_error("unknown subcommand '" + s + "'");
  r.command = s;
  r.timings["total_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int exit_code(const Report& report) { return report.failed ? 2 : 0; }

std::string version() { return POLARIX_VERSION; }

std::vector<Rational> random_rationals(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> out;
  while (out.size() < count) {
    const auto a = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    const auto b = static_cast<std::int64_t>(rng() % 1000000) + 1;
    if (a != 0) out.emplace_back(a, b);
  }
  return out;
}

std::vector<std::string> random_rational_functions(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  auto poly = [&] {
    const std::size_t deg = rng() % 6;
    RationalVector c(deg + 1);
    for (auto& v : c) v = static_cast<std::int64_t>(rng() % 11) - 5;
    if (c.back() == 0) c.back() = 1;
    return Polynomial(c);
  };
  std::vector<std::string> out;
  while (out.size() < count) {
    const auto num = poly();
    if (num.is_zero()) continue;
    out.push_back("(" + num.to_string() + ")/(" + poly().to_string() + ")");
  }
  return out;
}

Json str_vector(const std::vector<Rational>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(str(x));
  return j;
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    int depth = 0;
    std::string cur;
    for (char ch : item) {
      if (ch == '[' || ch == '(') ++depth;
      if (ch == ']' || ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        if (!trim(cur).empty()) out.push_back(trim(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
  }
  return out;
}

}  // namespace polarix::cli
