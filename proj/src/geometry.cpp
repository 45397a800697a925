#include "polarix/geometry.hpp"

#include "polarix/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace polarix::geometry {

namespace {

constexpr std::string_view kModule = "geometry";

Rational dot(const IntVector& a, const RationalVector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += x[i] * Rational(a[i]);
  return s;
}

// Calls visit(indices) for every k-subset of {0..n-1}, lexicographically.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Rational determinant(std::vector<RationalVector> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

// A nonzero vector orthogonal to n-1 linearly independent rows in R^n.
RationalVector orthogonal_direction(const std::vector<RationalVector>& rows, std::size_t n) {
  RationalVector y(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<RationalVector> minor;
    minor.reserve(rows.size());
    for (const auto& r : rows) {
      RationalVector m;
      m.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) m.push_back(r[c]);
      minor.push_back(std::move(m));
    }
    const Rational d = minor.empty() ? Rational(1) : determinant(std::move(minor));
    y[j] = (j % 2 == 0) ? d : Rational(-d);
  }
  return y;
}

RationalVector to_rational(const IntVector& v) {
  RationalVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

// Feasibility of {a.x + b >= 0} by Fourier-Motzkin elimination.
bool fm_feasible(std::vector<std::pair<RationalVector, Rational>> rows, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::pair<RationalVector, Rational>> pos, neg, next;
    for (auto& row : rows) {
      if (row.first[k] > 0) pos.push_back(std::move(row));
      else if (row.first[k] < 0) neg.push_back(std::move(row));
      else next.push_back(std::move(row));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const Rational fp = -q.first[k];
        const Rational fq = p.first[k];
        RationalVector a(n);
        for (std::size_t c = 0; c < n; ++c) a[c] = fp * p.first[c] + fq * q.first[c];
        next.emplace_back(std::move(a), fp * p.second + fq * q.second);
      }
    }
    // Normalize and drop duplicates to keep growth in check.
    std::set<std::pair<RationalVector, Rational>> seen;
    rows.clear();
    for (auto& row : next) {
      Rational scale = 0;
      for (const auto& x : row.first)
        if (x != 0) {
          scale = abs(x);
          break;
        }
      if (scale == 0) {
        if (row.second < 0) return false;
        continue;
      }
      for (auto& x : row.first) x /= scale;
      row.second /= scale;
      if (seen.insert(row).second) rows.push_back(row);
    }
  }
  return true;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

Inequality primitive(const Inequality& ineq) {
  std::int64_t g = 0;
  for (auto a : ineq.normal) g = std::gcd(g, a);
  if (g <= 1) return ineq;
  Inequality out{ineq.normal, ineq.offset / Rational(g)};
  for (auto& a : out.normal) a /= g;
  return out;
}

}  // namespace

bool Inequality::holds_at(const RationalVector& x) const { return slack_at(x) >= 0; }
bool Inequality::tight_at(const RationalVector& x) const { return slack_at(x) == 0; }
Rational Inequality::slack_at(const RationalVector& x) const { return dot(normal, x) + offset; }

std::optional<RationalVector> solve_linear(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

std::size_t rank_of(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

RationalPolytope::RationalPolytope(std::size_t ambient_dim, std::vector<Inequality> inequalities)
    : dim_(ambient_dim), ineqs_(std::move(inequalities)) {
  bool infeasible = false;
  std::vector<RationalVector> normals;
  for (const auto& ineq : ineqs_) {
    if (ineq.normal.size() != dim_) {
      throw Error(ErrorKind::ConfigError, kModule, "inequality length does not match dimension");
    }
    if (std::all_of(ineq.normal.begin(), ineq.normal.end(), [](auto a) { return a == 0; })) {
      if (ineq.offset < 0) infeasible = true;
      continue;
    }
    normals.push_back(to_rational(ineq.normal));
  }
  if (infeasible) return;
  if (dim_ == 0) {
    vertices_.push_back({});
    return;
  }
  const std::size_t rank = rank_of(normals);
  if (rank < dim_) {
    std::vector<std::pair<RationalVector, Rational>> rows;
    for (const auto& ineq : ineqs_) rows.emplace_back(to_rational(ineq.normal), ineq.offset);
    if (fm_feasible(std::move(rows), dim_)) {
      throw Error(ErrorKind::UnboundedPolytope, kModule,
                  "normals do not span the ambient space; the polytope has a lineality direction");
    }
    return;
  }

  std::set<RationalVector> found;
  for_each_subset(ineqs_.size(), dim_, [&](const std::vector<std::size_t>& idx) {
    std::vector<RationalVector> a;
    RationalVector b;
    for (auto i : idx) {
      a.push_back(to_rational(ineqs_[i].normal));
      b.push_back(-ineqs_[i].offset);
    }
    auto x = solve_linear(std::move(a), std::move(b));
    if (!x) return;
    for (const auto& ineq : ineqs_)
      if (!ineq.holds_at(*x)) return;
    found.insert(std::move(*x));
  });
  vertices_.assign(found.begin(), found.end());
  if (vertices_.empty()) return;

  // Pointed and nonempty: bounded iff the recession cone {A y >= 0} has no extreme ray.
  for_each_subset(ineqs_.size(), dim_ - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<RationalVector> rows;
    for (auto i : idx) rows.push_back(to_rational(ineqs_[i].normal));
    if (rank_of(rows) != dim_ - 1) return;
    const RationalVector y = orthogonal_direction(rows, dim_);
    for (int sign : {1, -1}) {
      bool recedes = true;
      for (const auto& ineq : ineqs_) {
        if (Rational(sign) * dot(ineq.normal, y) < 0) {
          recedes = false;
          break;
        }
      }
      if (recedes) {
        throw Error(ErrorKind::UnboundedPolytope, kModule, "polytope has a recession direction");
      }
    }
  });
}

RationalPolytope RationalPolytope::from_rational(
    std::size_t ambient_dim, const std::vector<std::pair<RationalVector, Rational>>& rows) {
  std::vector<Inequality> ineqs;
  for (const auto& [normal, offset] : rows) {
    Integer lcm = 1;
    for (const auto& a : normal) {
      const Integer d = denominator_of(a);
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    Inequality ineq;
    for (const auto& a : normal) ineq.normal.push_back(to_int64(a * Rational(lcm)));
    ineq.offset = offset * Rational(lcm);
    ineqs.push_back(std::move(ineq));
  }
  return RationalPolytope(ambient_dim, std::move(ineqs));
}

RationalPolytope RationalPolytope::simplex(std::size_t dim, const Rational& k) {
  std::vector<Inequality> ineqs;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector a(dim, 0);
    a[i] = 1;
    ineqs.push_back({a, Rational(0)});
  }
  ineqs.push_back({IntVector(dim, -1), k});
  return RationalPolytope(dim, std::move(ineqs));
}

RationalPolytope RationalPolytope::box(const RationalVector& lo, const RationalVector& hi) {
  const std::size_t dim = lo.size();
  std::vector<Inequality> ineqs;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector a(dim, 0);
    a[i] = 1;
    ineqs.push_back({a, -lo[i]});
    a[i] = -1;
    ineqs.push_back({a, hi[i]});
  }
  return RationalPolytope(dim, std::move(ineqs));
}

int RationalPolytope::affine_dimension() const {
  if (vertices_.empty()) return -1;
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    RationalVector d(dim_);
    for (std::size_t c = 0; c < dim_; ++c) d[c] = vertices_[i][c] - vertices_[0][c];
    diffs.push_back(std::move(d));
  }
  return static_cast<int>(rank_of(std::move(diffs)));
}

bool RationalPolytope::contains(const RationalVector& x) const {
  if (empty()) return false;
  return std::all_of(ineqs_.begin(), ineqs_.end(), [&](const auto& q) { return q.holds_at(x); });
}

bool RationalPolytope::contains(const LatticePoint& x) const { return contains(to_rational(x)); }

bool RationalPolytope::matches_vertices(const std::vector<RationalVector>& listed) const {
  for (const auto& v : listed)
    if (!contains(v)) return false;
  const std::set<RationalVector> listed_set(listed.begin(), listed.end());
  return std::all_of(vertices_.begin(), vertices_.end(),
                     [&](const auto& v) { return listed_set.count(v) > 0; });
}

bool RationalPolytope::same_set(const RationalPolytope& other) const {
  return dim_ == other.dim_ && vertices_ == other.vertices_;
}

RationalPolytope RationalPolytope::scaled(const Rational& t) const {
  if (t <= 0) throw Error(ErrorKind::ConfigError, kModule, "scale factor must be positive");
  std::vector<Inequality> ineqs = ineqs_;
  for (auto& q : ineqs) q.offset *= t;
  return RationalPolytope(dim_, std::move(ineqs));
}

std::vector<Inequality> RationalPolytope::distinct_inequalities() const {
  std::vector<Inequality> out;
  std::set<std::pair<IntVector, Rational>> seen;
  for (const auto& q : ineqs_) {
    if (std::all_of(q.normal.begin(), q.normal.end(), [](auto a) { return a == 0; })) continue;
    Inequality p = primitive(q);
    if (seen.emplace(p.normal, p.offset).second) out.push_back(std::move(p));
  }
  return out;
}

RationalPolytope intersect_halfspace(const RationalPolytope& p, const RationalVector& normal,
                                     const Rational& offset) {
  std::vector<std::pair<RationalVector, Rational>> rows;
  for (const auto& q : p.inequalities()) rows.emplace_back(to_rational(q.normal), q.offset);
  rows.emplace_back(normal, offset);
  return RationalPolytope::from_rational(p.ambient_dim(), rows);
}

namespace {

// Integer form of the H-representation: <a, x> >= c for lattice x.
struct IntegerRows {
  std::vector<IntVector> normals;
  std::vector<std::int64_t> thresholds;
  std::vector<int> last_axis;  // last nonzero coordinate of each normal
};

IntegerRows integer_rows(const RationalPolytope& p) {
  IntegerRows rows;
  for (const auto& q : p.inequalities()) {
    int last = -1;
    for (std::size_t i = 0; i < q.normal.size(); ++i)
      if (q.normal[i] != 0) last = static_cast<int>(i);
    if (last < 0) continue;  // constant rows were resolved at construction
    rows.normals.push_back(q.normal);
    rows.thresholds.push_back(to_int64(ceil_of(-q.offset)));
    rows.last_axis.push_back(last);
  }
  return rows;
}

// Scans the integer points of P: bounding box on the leading axes, exact
// interval on the last axis, early rejection once an inequality is fully fixed.
template <class Visit>
void scan_lattice(const RationalPolytope& p, Visit&& visit) {
  if (p.empty()) return;
  const std::size_t n = p.ambient_dim();
  if (n == 0) {
    visit(LatticePoint{}, std::int64_t{0}, std::int64_t{0});
    return;
  }
  std::vector<std::int64_t> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices()[0][i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = to_int64(ceil_of(mn));
    hi[i] = to_int64(floor_of(mx));
    if (lo[i] > hi[i]) return;
  }
  const IntegerRows rows = integer_rows(p);
  const std::size_t m = rows.normals.size();
  std::vector<std::size_t> on_last;
  for (std::size_t r = 0; r < m; ++r)
    if (rows.last_axis[r] == static_cast<int>(n - 1)) on_last.push_back(r);

  LatticePoint x(n, 0);
  // partial[r] = sum_{i < level} a_ri x_i
  std::vector<std::vector<std::int64_t>> partial(n, std::vector<std::int64_t>(m, 0));

  auto recurse = [&](auto&& self, std::size_t level) -> void {
    if (level == n - 1) {
      std::int64_t a = lo[level], b = hi[level];
      for (auto r : on_last) {
        const std::int64_t coef = rows.normals[r][level];
        const std::int64_t rhs = rows.thresholds[r] - partial[level][r];
        if (coef > 0) a = std::max(a, ceil_div(rhs, coef));
        else b = std::min(b, floor_div(rhs, coef));
      }
      if (a <= b) visit(x, a, b);
      return;
    }
    for (std::int64_t v = lo[level]; v <= hi[level]; ++v) {
      x[level] = v;
      bool ok = true;
      auto& next = partial[level + 1];
      for (std::size_t r = 0; r < m; ++r) {
        next[r] = partial[level][r] + rows.normals[r][level] * v;
        if (rows.last_axis[r] == static_cast<int>(level) && next[r] < rows.thresholds[r]) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, level + 1);
    }
  };
  recurse(recurse, 0);
}

}  // namespace

std::vector<LatticePoint> lattice_points(const RationalPolytope& p) {
  std::vector<LatticePoint> out;
  scan_lattice(p, [&](const LatticePoint& prefix, std::int64_t a, std::int64_t b) {
    if (prefix.empty()) {
      out.push_back({});
      return;
    }
    LatticePoint pt = prefix;
    for (std::int64_t v = a; v <= b; ++v) {
      pt.back() = v;
      out.push_back(pt);
    }
  });
  return out;
}

std::size_t count_lattice_points(const RationalPolytope& p) {
  std::size_t count = 0;
  scan_lattice(p, [&](const LatticePoint& prefix, std::int64_t a, std::int64_t b) {
    count += prefix.empty() ? 1 : static_cast<std::size_t>(b - a + 1);
  });
  return count;
}

Rational volume(const RationalPolytope& p) {
  const std::size_t n = p.ambient_dim();
  if (p.empty()) return 0;
  if (n == 0) return 1;
  if (!p.full_dimensional()) return 0;
  if (n == 1) {
    Rational mn = p.vertices()[0][0], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[0]);
      mx = std::max(mx, v[0]);
    }
    return mx - mn;
  }
  // Cone decomposition from the apex v0 over every facet not containing it.
  const RationalVector& apex = p.vertices().front();
  const auto facets = p.distinct_inequalities();
  Rational total = 0;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const Inequality& f = facets[i];
    const Rational height = f.slack_at(apex);
    if (height == 0) continue;
    std::size_t k = 0;
    while (f.normal[k] == 0) ++k;
    const std::int64_t ak = f.normal[k];
    const std::int64_t sign = ak > 0 ? 1 : -1;
    const std::int64_t mag = ak * sign;
    // Substitute x_k = -(offset + sum_{l != k} a_l x_l) / a_k into the other rows.
    std::vector<Inequality> projected;
    for (std::size_t j = 0; j < facets.size(); ++j) {
      if (j == i) continue;
      const Inequality& g = facets[j];
      Inequality q;
      q.normal.reserve(n - 1);
      for (std::size_t l = 0; l < n; ++l) {
        if (l == k) continue;
        const __int128 v = static_cast<__int128>(g.normal[l]) * mag -
                           static_cast<__int128>(g.normal[k]) * f.normal[l] * sign;
        if (v > std::numeric_limits<std::int64_t>::max() ||
            v < std::numeric_limits<std::int64_t>::min()) {
          throw Error(ErrorKind::Overflow, kModule, "facet projection overflows 64-bit normals");
        }
        q.normal.push_back(static_cast<std::int64_t>(v));
      }
      q.offset = g.offset * Rational(mag) - Rational(g.normal[k] * sign) * f.offset;
      projected.push_back(primitive(q));
    }
    const RationalPolytope facet(n - 1, std::move(projected));
    const Rational facet_volume = volume(facet);
    if (facet_volume == 0) continue;
    total += height * facet_volume / Rational(static_cast<long>(n) * mag);
  }
  return total;
}

RationalPolytope polytope_from_json(const nlohmann::json& j) {
  try {
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<Inequality> ineqs;
    for (const auto& row : j.at("ineqs")) {
      Inequality q;
      q.normal = row.at("a").get<IntVector>();
      const auto& b = row.at("b");
      q.offset = b.is_string() ? parse_rational(b.get<std::string>()) : Rational(b.get<std::int64_t>());
      ineqs.push_back(std::move(q));
    }
    RationalPolytope p(dim, std::move(ineqs));
    if (j.contains("vertices")) {
      std::vector<RationalVector> listed;
      for (const auto& v : j.at("vertices")) {
        RationalVector r;
        for (const auto& c : v)
          r.push_back(c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<std::int64_t>()));
        listed.push_back(std::move(r));
      }
      if (!p.matches_vertices(listed)) {
        throw Error(ErrorKind::ConfigError, kModule, "listed vertices disagree with the inequalities");
      }
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, kModule, std::string("bad polytope literal: ") + e.what());
  }
}

nlohmann::json polytope_to_json(const RationalPolytope& p, bool with_vertices) {
  nlohmann::json j;
  j["dim"] = p.ambient_dim();
  j["ineqs"] = nlohmann::json::array();
  for (const auto& q : p.inequalities()) j["ineqs"].push_back({{"a", q.normal}, {"b", to_string(q.offset)}});
  if (with_vertices) {
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : p.vertices()) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& c : v) row.push_back(to_string(c));
      j["vertices"].push_back(row);
    }
  }
  return j;
}

}  // namespace polarix::geometry
