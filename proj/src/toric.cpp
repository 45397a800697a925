#include "polarix/toric.hpp"

#include "polarix/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace polarix::toric {

namespace {

constexpr std::string_view kModule = "toric";

RationalVector to_rational(const IntVector& v) {
  RationalVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

RationalVector unit(std::size_t n, std::size_t i) {
  RationalVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

// dim-element subsets of a cone's rays that are linearly independent.
std::vector<std::vector<std::size_t>> simplicial_pieces(const ToricModel& m,
                                                        const std::vector<std::size_t>& cone) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t k = m.dim;
  if (cone.size() < k) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<RationalVector> rows;
    std::vector<std::size_t> pick;
    for (auto i : idx) {
      rows.push_back(to_rational(m.rays[cone[i]]));
      pick.push_back(cone[i]);
    }
    if (geometry::rank_of(rows) == k) out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == cone.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Coefficients lambda with sum lambda_i u_{rays[i]} = v, or nullopt.
std::optional<RationalVector> express_in_rays(const ToricModel& m, const std::vector<std::size_t>& rays,
                                              const RationalVector& v) {
  const std::size_t n = m.dim;
  std::vector<RationalVector> a(n, RationalVector(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = Rational(m.rays[rays[c]][r]);
  return geometry::solve_linear(std::move(a), v);
}

Rational pair_with(const geometry::LatticePoint& p, const IntVector& u) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * u[i];
  return Rational(s);
}

void validate(const ToricModel& m) {
  if (m.dim == 0) throw Error(ErrorKind::InvalidModel, kModule, m.name + ": dimension must be >= 1");
  if (m.rays.empty() || m.max_cones.empty())
    throw Error(ErrorKind::InvalidModel, kModule, m.name + ": fan needs rays and maximal cones");
  for (const auto& u : m.rays) {
    if (u.size() != m.dim) throw Error(ErrorKind::InvalidModel, kModule, m.name + ": ray length mismatch");
    std::int64_t g = 0;
    for (auto x : u) g = std::gcd(g, x);
    if (g != 1) throw Error(ErrorKind::InvalidModel, kModule, m.name + ": ray is zero or not primitive");
  }
  std::vector<bool> used(m.rays.size(), false);
  for (const auto& cone : m.max_cones) {
    std::vector<RationalVector> rows;
    for (auto i : cone) {
      if (i >= m.rays.size()) throw Error(ErrorKind::InvalidModel, kModule, m.name + ": cone index out of range");
      used[i] = true;
      rows.push_back(to_rational(m.rays[i]));
    }
    if (geometry::rank_of(rows) != m.dim)
      throw Error(ErrorKind::InvalidModel, kModule, m.name + ": maximal cone is not full-dimensional");
  }
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw Error(ErrorKind::InvalidModel, kModule, m.name + ": ray not contained in any maximal cone");
  // Completeness by sampling generic directions.
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> coord(-1000, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    RationalVector v(m.dim);
    bool nonzero = false;
    for (auto& x : v) {
      x = coord(rng);
      nonzero = nonzero || x != 0;
    }
    if (!nonzero) continue;
    bool covered = false;
    for (const auto& cone : m.max_cones) {
      if (cone_contains(m, cone, v)) {
        covered = true;
        break;
      }
    }
    if (!covered) throw Error(ErrorKind::InvalidModel, kModule, m.name + ": fan is not complete");
  }
}

ToricModel projective_space(std::size_t n) {
  ToricModel m;
  m.name = "Pn(" + std::to_string(n) + ")";
  m.dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector u(n, 0);
    u[i] = 1;
    m.rays.push_back(u);
  }
  m.rays.push_back(IntVector(n, -1));
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::size_t> cone;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) cone.push_back(i);
    m.max_cones.push_back(cone);
  }
  m.generators.emplace_back("H", unit(n + 1, n));
  m.polarization = "H";
  return m;
}

ToricModel hirzebruch(std::int64_t a) {
  ToricModel m;
  m.name = "Hirzebruch(" + std::to_string(a) + ")";
  m.dim = 2;
  m.rays = {{1, 0}, {0, 1}, {-1, a}, {0, -1}};
  m.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  m.generators = {{"F", unit(4, 0)}, {"S", unit(4, 1)}};
  m.polarization = "S + " + std::to_string(a + 1) + "F";
  return m;
}

std::optional<std::int64_t> parse_argument(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix || name.size() < prefix.size() + 2 || name.back() != ')')
    return std::nullopt;
  const auto inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
  if (name[prefix.size()] != '(' || inner.empty()) return std::nullopt;
  std::int64_t v = 0;
  for (char c : inner) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + (c - '0');
    if (v > 64) return std::nullopt;
  }
  return v;
}

}  // namespace

bool ToricModel::simplicial() const {
  return std::all_of(max_cones.begin(), max_cones.end(), [&](const auto& c) { return c.size() == dim; });
}

bool ToricModel::smooth() const {
  if (!simplicial()) return false;
  for (const auto& cone : max_cones) {
    std::vector<RationalVector> rows;
    for (auto i : cone) rows.push_back(to_rational(rays[i]));
    // |det| = 1 iff the inverse exists and is integral: solve for each unit vector.
    for (std::size_t k = 0; k < dim; ++k) {
      auto x = express_in_rays(*this, cone, unit(dim, k));
      if (!x) return false;
      for (const auto& c : *x)
        if (!is_integral(c)) return false;
    }
  }
  return true;
}

bool cone_contains(const ToricModel& model, const std::vector<std::size_t>& cone,
                   const RationalVector& direction) {
  for (const auto& piece : simplicial_pieces(model, cone)) {
    auto lambda = express_in_rays(model, piece, direction);
    if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const auto& x) { return x >= 0; }))
      return true;
  }
  return false;
}

ModelPtr make_model(ToricModel model) {
  validate(model);
  for (const auto& [name, coeffs] : model.generators)
    if (coeffs.size() != model.rays.size())
      throw Error(ErrorKind::InvalidModel, kModule, model.name + ": generator '" + name + "' has wrong length");
  return std::make_shared<const ToricModel>(std::move(model));
}

ModelPtr catalog(std::string_view name) {
  if (auto n = parse_argument(name, "Pn"); n && *n >= 1) return make_model(projective_space(*n));
  if (auto a = parse_argument(name, "Hirzebruch")) return make_model(hirzebruch(*a));
  if (name == "P1xP1") {
    ToricModel m;
    m.name = "P1xP1";
    m.dim = 2;
    m.rays = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    m.max_cones = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    m.generators = {{"H1", unit(4, 1)}, {"H2", unit(4, 3)}};
    m.polarization = "H1 + H2";
    return make_model(std::move(m));
  }
  if (name == "BlowupP2") {
    ToricModel m;
    m.name = "BlowupP2";
    m.dim = 2;
    m.rays = {{1, 0}, {0, 1}, {-1, -1}, {1, 1}};
    m.max_cones = {{0, 3}, {3, 1}, {1, 2}, {2, 0}};
    m.generators = {{"piH", unit(4, 2)}, {"H", unit(4, 2)}, {"E", unit(4, 3)}};
    m.polarization = "2piH - E";
    return make_model(std::move(m));
  }
  throw Error(ErrorKind::UnknownModel, kModule, "no catalog entry '" + std::string(name) + "'");
}

ModelPtr model_from_json(const nlohmann::json& j) {
  try {
    ToricModel m;
    m.name = j.at("name").get<std::string>();
    m.dim = j.at("dim").get<std::size_t>();
    m.rays = j.at("rays").get<std::vector<IntVector>>();
    m.max_cones = j.at("max_cones").get<std::vector<std::vector<std::size_t>>>();
    if (j.contains("generators")) {
      for (const auto& [key, value] : j.at("generators").items()) {
        RationalVector c;
        for (const auto& x : value)
          c.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<std::int64_t>()));
        m.generators.emplace_back(key, std::move(c));
      }
    }
    if (j.contains("polarization")) m.polarization = j.at("polarization").get<std::string>();
    return make_model(std::move(m));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, kModule, std::string("bad model file: ") + e.what());
  }
}

nlohmann::json model_to_json(const ToricModel& model) {
  nlohmann::ordered_json j;
  j["name"] = model.name;
  j["dim"] = model.dim;
  j["rays"] = model.rays;
  j["max_cones"] = model.max_cones;
  if (!model.generators.empty()) {
    nlohmann::ordered_json g = nlohmann::ordered_json::object();
    for (const auto& [key, coeffs] : model.generators) {
      std::vector<std::string> c;
      for (const auto& x : coeffs) c.push_back(to_string(x));
      g[key] = c;
    }
    j["generators"] = g;
  }
  if (!model.polarization.empty()) j["polarization"] = model.polarization;
  return nlohmann::json(j);
}

ModelPtr resolve_model(std::string_view name_or_path) {
  namespace fs = std::filesystem;
  auto load = [](const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw Error(ErrorKind::ConfigError, kModule, "cannot read model file " + p.string());
    try {
      return model_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, kModule, p.string() + ": " + e.what());
    }
  };
  const fs::path direct{std::string(name_or_path)};
  if (direct.extension() == ".json" || (fs::exists(direct) && fs::is_regular_file(direct))) return load(direct);
  if (const char* dir = std::getenv("POLARIX_MODEL_PATH"); dir != nullptr && *dir != '\0') {
    const fs::path candidate = fs::path(dir) / (std::string(name_or_path) + ".json");
    if (fs::exists(candidate)) return load(candidate);
  }
  return catalog(name_or_path);
}

DivisorVector::DivisorVector(ModelPtr model, RationalVector coeffs)
    : model_(std::move(model)), coeffs_(std::move(coeffs)) {
  if (!model_) throw Error(ErrorKind::ConfigError, kModule, "divisor without a model");
  if (coeffs_.size() != model_->rays.size()) {
    throw Error(ErrorKind::ConfigError, kModule,
                "divisor has " + std::to_string(coeffs_.size()) + " coefficients, model " + model_->name +
                    " has " + std::to_string(model_->rays.size()) + " rays");
  }
}

DivisorVector DivisorVector::zero(ModelPtr model) {
  const std::size_t n = model->rays.size();
  return DivisorVector(std::move(model), RationalVector(n, Rational(0)));
}

DivisorVector DivisorVector::prime(ModelPtr model, std::size_t ray) {
  const std::size_t n = model->rays.size();
  if (ray >= n) throw Error(ErrorKind::ConfigError, kModule, "ray index out of range");
  return DivisorVector(std::move(model), unit(n, ray));
}

std::optional<std::size_t> DivisorVector::prime_ray() const {
  std::optional<std::size_t> ray;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (coeffs_[i] != 1 || ray) return std::nullopt;
    ray = i;
  }
  return ray;
}

bool DivisorVector::effective() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return c >= 0; });
}

bool DivisorVector::integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return is_integral(c); });
}

bool DivisorVector::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return c == 0; });
}

namespace {
void require_same_model(const DivisorVector& a, const DivisorVector& b) {
  if (a.model_ptr() != b.model_ptr() && a.model().name != b.model().name)
    throw Error(ErrorKind::ConfigError, kModule, "divisors live on different models");
}
}  // namespace

DivisorVector operator+(const DivisorVector& a, const DivisorVector& b) {
  require_same_model(a, b);
  RationalVector c = a.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
  return DivisorVector(a.model_, std::move(c));
}

DivisorVector operator-(const DivisorVector& a, const DivisorVector& b) {
  require_same_model(a, b);
  RationalVector c = a.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
  return DivisorVector(a.model_, std::move(c));
}

DivisorVector operator*(const Rational& k, const DivisorVector& d) {
  RationalVector c = d.coeffs_;
  for (auto& x : c) x *= k;
  return DivisorVector(d.model_, std::move(c));
}

bool operator==(const DivisorVector& a, const DivisorVector& b) {
  return a.model().name == b.model().name && a.coeffs_ == b.coeffs_;
}

std::string DivisorVector::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ", ";
    out += polarix::to_string(coeffs_[i]);
  }
  return out + "]";
}

DivisorVector divisor_from_json(const nlohmann::json& j, const ModelPtr& model) {
  try {
    if (j.contains("model") && j.at("model").get<std::string>() != model->name) {
      throw Error(ErrorKind::ConfigError, kModule,
                  "divisor file is for model '" + j.at("model").get<std::string>() + "', not " + model->name);
    }
    RationalVector c;
    for (const auto& x : j.at("coeffs"))
      c.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<std::int64_t>()));
    return DivisorVector(model, std::move(c));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, kModule, std::string("bad divisor file: ") + e.what());
  }
}

nlohmann::json divisor_to_json(const DivisorVector& d) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : d.coeffs()) coeffs.push_back(polarix::to_string(c));
  return {{"model", d.model().name}, {"coeffs", coeffs}};
}

DivisorVector parse_divisor(const ModelPtr& model, std::string_view text) {
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::ConfigError, kModule,
                 "cannot parse divisor '" + std::string(text) + "' on " + model->name + ": " + why);
  };
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos < text.size() && text[pos] == '[') {
    const auto close = text.find(']', pos);
    if (close == std::string_view::npos) throw fail("missing ']'");
    RationalVector c;
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    std::size_t start = 0;
    while (start <= body.size()) {
      const auto comma = body.find(',', start);
      std::string_view item = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
      std::string cleaned;
      for (char ch : item)
        if (ch != '"' && !std::isspace(static_cast<unsigned char>(ch))) cleaned += ch;
      if (!cleaned.empty()) c.push_back(parse_rational(cleaned));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return DivisorVector(model, std::move(c));
  }

  DivisorVector total = DivisorVector::zero(model);
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) break;
    Rational sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    Rational coeff = 1;
    if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '(')) {
      const bool paren = text[pos] == '(';
      if (paren) ++pos;
      const std::size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
      coeff = parse_rational(text.substr(start, pos - start));
      if (paren) {
        if (pos >= text.size() || text[pos] != ')') throw fail("missing ')'");
        ++pos;
      }
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
      }
    }
    const std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    const std::string name(text.substr(start, pos - start));
    if (name.empty()) throw fail("expected a generator name");
    std::optional<DivisorVector> term;
    for (const auto& [gname, coeffs] : model->generators)
      if (gname == name) term = DivisorVector(model, coeffs);
    if (!term && name == "K") term = Rational(-1) * anticanonical(model);
    if (!term && name.size() > 1 && name[0] == 'D' &&
        std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const auto ray = static_cast<std::size_t>(std::stoul(name.substr(1)));
      if (ray >= model->rays.size()) throw fail("ray index out of range");
      term = DivisorVector::prime(model, ray);
    }
    if (!term) throw fail("unknown generator '" + name + "'");
    total = total + (sign * coeff) * *term;
    first = false;
  }
  if (first) throw fail("empty expression");
  return total;
}

MonomialSection::MonomialSection(geometry::LatticePoint p, DivisorVector d)
    : point(std::move(p)), divisor(std::move(d)) {
  const auto& m = divisor.model();
  if (point.size() != m.dim) throw Error(ErrorKind::ConfigError, kModule, "section point has wrong length");
  for (std::size_t r = 0; r < m.rays.size(); ++r) {
    if (pair_with(point, m.rays[r]) + divisor.coeff(r) < 0)
      throw Error(ErrorKind::ConfigError, kModule, "lattice point is outside the section polytope");
  }
}

geometry::RationalPolytope section_polytope(const DivisorVector& d) {
  const auto& m = d.model();
  std::vector<geometry::Inequality> ineqs;
  for (std::size_t r = 0; r < m.rays.size(); ++r) ineqs.push_back({m.rays[r], d.coeff(r)});
  return geometry::RationalPolytope(m.dim, std::move(ineqs));
}

std::size_t h0(const DivisorVector& d) { return geometry::count_lattice_points(section_polytope(d)); }

Rational divisor_volume(const DivisorVector& d) {
  return Rational(factorial(static_cast<unsigned>(d.model().dim))) * geometry::volume(section_polytope(d));
}

DivisorVector anticanonical(const ModelPtr& model) {
  return DivisorVector(model, RationalVector(model->rays.size(), Rational(1)));
}

std::vector<MonomialSection> monomial_basis(const DivisorVector& d) {
  std::vector<MonomialSection> out;
  for (auto& p : geometry::lattice_points(section_polytope(d))) out.emplace_back(std::move(p), d);
  return out;
}

Rational ord_along(const MonomialSection& s, std::size_t ray) {
  return pair_with(s.point, s.divisor.model().rays.at(ray)) + s.divisor.coeff(ray);
}

bool rays_meet(const ToricModel& model, std::span<const std::size_t> rays) {
  return std::any_of(model.max_cones.begin(), model.max_cones.end(), [&](const auto& cone) {
    return std::all_of(rays.begin(), rays.end(),
                       [&](auto r) { return std::find(cone.begin(), cone.end(), r) != cone.end(); });
  });
}

bool intersect_properly(std::span<const DivisorVector> divisors) {
  std::vector<std::size_t> rays;
  for (const auto& d : divisors) {
    auto r = d.prime_ray();
    if (!r) throw Error(ErrorKind::NotPrime, kModule, "divisor " + d.to_string() + " is not a prime toric divisor");
    rays.push_back(*r);
  }
  if (rays.empty()) return true;
  const auto& model = divisors.front().model();
  const std::size_t q = rays.size();
  if (q > 20) throw Error(ErrorKind::ConfigError, kModule, "too many divisors for the subset test");
  for (std::uint32_t mask = 1; mask < (1u << q); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < q; ++i)
      if (mask & (1u << i)) subset.push_back(rays[i]);
    if (!rays_meet(model, subset)) continue;
    // Nonempty intersection must have codimension #subset.
    std::set<std::size_t> distinct(subset.begin(), subset.end());
    if (distinct.size() != subset.size()) return false;
    std::vector<RationalVector> rows;
    for (auto r : subset) rows.push_back(to_rational(model.rays[r]));
    if (geometry::rank_of(rows) != subset.size()) return false;
  }
  return true;
}

bool is_ample(const DivisorVector& d) {
  const auto& m = d.model();
  for (const auto& cone : m.max_cones) {
    const auto pieces = simplicial_pieces(m, cone);
    if (pieces.empty()) return false;
    const auto& basis = pieces.front();
    // <x, u_rho> = -a_rho on the chosen rays.
    std::vector<RationalVector> a;
    RationalVector b;
    for (auto r : basis) {
      a.push_back(to_rational(m.rays[r]));
      b.push_back(-d.coeff(r));
    }
    const auto x = geometry::solve_linear(std::move(a), std::move(b));
    if (!x) return false;
    for (std::size_t r = 0; r < m.rays.size(); ++r) {
      Rational pairing = 0;
      for (std::size_t i = 0; i < m.dim; ++i) pairing += (*x)[i] * Rational(m.rays[r][i]);
      const Rational slack = pairing + d.coeff(r);
      const bool in_cone = std::find(cone.begin(), cone.end(), r) != cone.end();
      if (in_cone ? slack != 0 : slack <= 0) return false;
    }
  }
  return true;
}

bool is_isomorphic(const ToricModel& a, const ToricModel& b) {
  if (a.dim != b.dim || a.rays.size() != b.rays.size() || a.max_cones.size() != b.max_cones.size()) return false;
  const std::size_t n = a.dim;
  const auto a_pieces = simplicial_pieces(a, a.max_cones.front());
  if (a_pieces.empty()) return false;
  const auto& src = a_pieces.front();
  auto canonical_cones = [](const std::vector<std::vector<std::size_t>>& cones) {
    std::set<std::vector<std::size_t>> out;
    for (auto c : cones) {
      std::sort(c.begin(), c.end());
      out.insert(c);
    }
    return out;
  };
  const auto b_cones = canonical_cones(b.max_cones);
  std::map<IntVector, std::size_t> b_index;
  for (std::size_t i = 0; i < b.rays.size(); ++i) b_index[b.rays[i]] = i;

  for (std::size_t ci = 0; ci < b.max_cones.size(); ++ci) {
    std::vector<std::size_t> target = b.max_cones[ci];
    std::sort(target.begin(), target.end());
    if (target.size() < n) continue;
    // Every ordered choice of n rays of the target cone.
    std::vector<std::size_t> choice(n);
    std::function<bool(std::size_t, std::vector<bool>&)> rec = [&](std::size_t k, std::vector<bool>& taken) -> bool {
      if (k == n) {
        // M u_src[i] = u_choice[i]  =>  M = U_b U_a^{-1}; solve column by column on transposes.
        std::vector<IntVector> image(n);
        std::vector<RationalVector> ua(n, RationalVector(n));
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) ua[r][c] = Rational(a.rays[src[c]][r]);
        // Row i of M solves M_i . U_a = (U_b row i).
        std::vector<RationalVector> mrows;
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<RationalVector> at(n, RationalVector(n));
          RationalVector rhs(n);
          for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t r = 0; r < n; ++r) at[c][r] = ua[r][c];
            rhs[c] = Rational(b.rays[choice[c]][i]);
          }
          auto row = geometry::solve_linear(at, rhs);
          if (!row) return false;
          for (const auto& x : *row)
            if (!is_integral(x)) return false;
          mrows.push_back(*row);
        }
        std::vector<std::size_t> perm(a.rays.size());
        for (std::size_t r = 0; r < a.rays.size(); ++r) {
          IntVector img(n);
          for (std::size_t i = 0; i < n; ++i) {
            Rational s = 0;
            for (std::size_t c = 0; c < n; ++c) s += mrows[i][c] * Rational(a.rays[r][c]);
            img[i] = to_int64(s);
          }
          auto it = b_index.find(img);
          if (it == b_index.end()) return false;
          perm[r] = it->second;
        }
        std::vector<std::vector<std::size_t>> mapped;
        for (const auto& cone : a.max_cones) {
          std::vector<std::size_t> c;
          for (auto r : cone) c.push_back(perm[r]);
          mapped.push_back(c);
        }
        return canonical_cones(mapped) == b_cones;
      }
      for (std::size_t j = 0; j < target.size(); ++j) {
        if (taken[j]) continue;
        taken[j] = true;
        choice[k] = target[j];
        if (rec(k + 1, taken)) return true;
        taken[j] = false;
      }
      return false;
    };
    std::vector<bool> taken(target.size(), false);
    if (rec(0, taken)) return true;
  }
  return false;
}

}  // namespace polarix::toric
