#pragma once

// Front end shared by the command-line tool and the acceptance suite: run
// configuration, subcommand dispatch and report rendering.

#include "polarix/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace polarix::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Md };

Format parse_format(std::string_view text);

struct RunConfig {
  std::string subcommand;

  // global
  std::string output;  // empty: stdout
  Format format = Format::Json;
  Rational tol = Rational(1, 1000);
  std::uint64_t seed = 0x5eed;
  std::size_t jobs = 1;

  // geometry
  std::string model = "Pn(2)";  // catalog name or path to a model file
  std::string l;                // divisor expressions
  std::string e;
  std::vector<std::string> family;  // --D, possibly comma separated
  std::vector<std::string> weights;  // explicit c vector for weight commands
  std::size_t m = 1;
  std::size_t m_max = 10;
  std::int64_t b = 0;  // 0: dim + 1
  std::string method = "auto";
  bool grid = false;

  // arithmetic
  std::string field = "Q";
  std::vector<std::string> values;
  std::size_t random = 0;
  std::size_t n = 1;
  std::size_t degree = 1;
  std::vector<std::string> hyperplanes;
  std::vector<std::string> places;
  std::string points_file;
  double max_log_height = 20.0;
  double epsilon = 0.1;
  double height_cutoff = 1.0;
  double top_fraction = 0.1;

  // suite
  std::string suite_name = "acceptance";

  /// ConfigError on tol <= 0, m_max = 0, m = 0 or missing referenced files.
  void validate() const;
};

/// Exact values are rational strings; floating point only under *_approx keys.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  Json rows = Json::array();
  std::string verdict;   // empty when the command has no pass/fail notion
  bool failed = false;   // a checked identity or inequality did not hold
  Json timings = Json::object();

  /// Everything except timings; byte-identical across reruns.
  Json body() const;
  Json to_json() const;
};

std::string render(const Report& report, Format format);
inline std::string render_body(const Report& report) { return report.body().dump(2); }

/// Dispatches to the owning module. Domain errors propagate as polarix::Error.
Report run(const RunConfig& config);

/// Exit status for a completed report: 0 ok, 2 when a check failed.
int exit_code(const Report& report);

/// The acceptance suite; each criterion is one row, failures never throw.
Report suite(const RunConfig& config);

std::string version();

/// Deterministic samples shared by the product-formula command and the suite.
std::vector<Rational> random_rationals(std::uint64_t seed, std::size_t count);
/// Elements of Q(t) as "num/den" strings accepted by parse_rational_function.
std::vector<std::string> random_rational_functions(std::uint64_t seed, std::size_t count);

inline std::string str(const Rational& x) { return polarix::to_string(x); }
Json str_vector(const std::vector<Rational>& xs);

/// Split at commas outside brackets and parentheses, trimming blanks.
std::vector<std::string> split_list(const std::vector<std::string>& items);

}  // namespace polarix::cli
