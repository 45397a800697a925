// polarix: exact invariants of polarized toric models and arithmetic checks.

#include "polarix/cli.hpp"
#include "polarix/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using polarix::cli::RunConfig;

namespace {

void geometry_flags(CLI::App* sub, RunConfig& c, bool with_e = true) {
  sub->add_option("--model", c.model, "Catalog name or model file")->capture_default_str();
  sub->add_option("--L", c.l, "Polarization, e.g. 3H or 'piH - E'")->required();
  if (with_e) sub->add_option("--E", c.e, "Prime divisor, e.g. H, D0, E");
}

int emit(const polarix::cli::Report& report, const RunConfig& c) {
  const auto text = polarix::cli::render(report, c.format);
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output);
    if (!out) throw polarix::Error(polarix::ErrorKind::ConfigError, "cli", "cannot write '" + c.output + "'");
    out << text;
  }
  return polarix::cli::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants of polarized toric models: volume constants, filtrations, weights, heights"};
  app.set_version_flag("--version", polarix::cli::version());
  app.require_subcommand(1);

  RunConfig c;
  std::string format = "json", tol = "1/1000";
  app.add_option("--output,-o", c.output, "Write the report to this file");
  app.add_option("--format", format, "json|csv|md")->capture_default_str();
  app.add_option("--tol", tol, "Rational tolerance")->capture_default_str();
  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  app.fallthrough();

  auto* beta = app.add_subcommand("beta", "Asymptotic volume constant beta(L, E) and its lattice-sum sequence");
  geometry_flags(beta, c);
  beta->add_option("--m-max", c.m_max, "Last m of the beta_m sequence")->capture_default_str();

  auto* alpha = app.add_subcommand("alpha", "alpha(mL, E) and the Hilbert-weight identity");
  geometry_flags(alpha, c);
  alpha->add_option("--m", c.m, "Degree m")->capture_default_str();

  auto* measure = app.add_subcommand("measure", "Vanishing numbers and the measure nu_m");
  geometry_flags(measure, c);
  measure->add_option("--m", c.m, "Degree m")->capture_default_str();

  auto* hw = app.add_subcommand("hilbert-weight", "Hilbert weight s(m, c)");
  geometry_flags(hw, c);
  hw->add_option("--weights", c.weights, "Explicit weight vector in lattice-point order (instead of --E)");
  hw->add_option("--m", c.m, "Degree m")->capture_default_str();
  hw->add_option("--method", c.method, "auto|direct|brute-force")->capture_default_str();

  auto* cw = app.add_subcommand("chow-weight", "Chow weight e(c) and the beta formula");
  geometry_flags(cw, c);
  cw->add_option("--weights", c.weights, "Explicit weight vector in lattice-point order (instead of --E)");
  cw->add_option("--m-max", c.m_max, "Verify the interpolated s(m) up to this m")->capture_default_str();

  auto* au = app.add_subcommand("autissier-check", "Autissier filtration bounds for a divisor family");
  au->add_option("--model", c.model, "Catalog name or model file")->capture_default_str();
  au->add_option("--L", c.l, "Polarization");
  au->add_option("--D", c.family, "Family members, or 'boundary' / 'coordinate-lines'");
  au->add_option("--m", c.m, "Degree m (grid: largest m)")->capture_default_str();
  au->add_option("--b", c.b, "Weight budget b (default dim + 1; grid: largest b, default 3)");
  au->add_flag("--grid", c.grid, "Run the full catalog grid");
  au->callback([&] {
    if (!c.grid && c.l.empty()) throw CLI::ValidationError("--L", "required unless --grid is given");
  });

  auto* vo = app.add_subcommand("vojta-check", "Check beta(-K, D_i) >= 1 for a Fano model");
  vo->add_option("--model", c.model, "Catalog name or model file")->capture_default_str();
  vo->add_option("--D", c.family, "Components, or 'coordinate-lines' / 'coordinate-hyperplanes' / 'boundary'");

  auto* ro = app.add_subcommand("roth-experiment", "Empirical proximity/height slope on P^n");
  ro->add_option("--n", c.n, "Projective dimension")->capture_default_str();
  ro->add_option("--d", c.degree, "L = dH")->capture_default_str();
  ro->add_option("--D", c.hyperplanes, "Hyperplanes such as 'x1 - x0' (default x0, x1, x1 - x0 on P^1)");
  ro->add_option("--S", c.places, "Places: inf or primes (default inf)");
  ro->add_option("--points", c.points_file, "Points file (default golden-ratio convergents)");
  ro->add_option("--max-log-height", c.max_log_height, "Golden-ratio sample bound")->capture_default_str();
  ro->add_option("--epsilon", c.epsilon, "Slack added to 1/beta")->capture_default_str();
  ro->add_option("--height-cutoff", c.height_cutoff, "Ignore points below this height")->capture_default_str();
  ro->add_option("--top-fraction", c.top_fraction, "Fit on this top fraction by height")->capture_default_str();

  auto* pf = app.add_subcommand("product-formula", "Sum of log absolute values over all places");
  pf->add_option("--field", c.field, "Q or Q(t)")->capture_default_str();
  pf->add_option("--x", c.values, "Elements, e.g. 6/35 or '(t^2-1)/t^3'");
  pf->add_option("--random", c.random, "Add N random elements drawn from --seed");

  auto* su = app.add_subcommand("suite", "Run a named check suite");
  su->add_option("name", c.suite_name, "Suite name")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    c.subcommand = app.get_subcommands().front()->get_name();
    c.format = polarix::cli::parse_format(format);
    c.tol = polarix::parse_rational(tol);
    return emit(polarix::cli::run(c), c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
