#pragma once

// Test-only reference computations. Each one follows a different route from the
// library code it is compared against (brute force, closed forms, shoelace).

#include "polarix/geometry.hpp"
#include "polarix/rational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using polarix::Integer;
using polarix::Rational;
using polarix::RationalVector;

// Every integer point of the vertex bounding box, tested against each inequality.
inline std::vector<polarix::IntVector> brute_force_lattice_points(
    const polarix::geometry::RationalPolytope& p) {
  std::vector<polarix::IntVector> out;
  if (p.empty()) return out;
  const std::size_t n = p.ambient_dim();
  std::vector<std::int64_t> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices()[0][i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = polarix::to_int64(polarix::ceil_of(mn));
    hi[i] = polarix::to_int64(polarix::floor_of(mx));
  }
  polarix::IntVector x(n);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      RationalVector r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = Rational(x[i]);
      bool ok = true;
      for (const auto& q : p.inequalities()) ok = ok && q.holds_at(r);
      if (ok) out.push_back(x);
      return;
    }
    for (std::int64_t v = lo[k]; v <= hi[k]; ++v) {
      x[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

// Area of a convex polygon from its vertex set: order by angle, then shoelace.
inline Rational shoelace_area(std::vector<RationalVector> verts) {
  if (verts.size() < 3) return 0;
  double cx = 0, cy = 0;
  for (const auto& v : verts) {
    cx += polarix::to_double(v[0]);
    cy += polarix::to_double(v[1]);
  }
  cx /= static_cast<double>(verts.size());
  cy /= static_cast<double>(verts.size());
  std::sort(verts.begin(), verts.end(), [&](const auto& a, const auto& b) {
    return std::atan2(polarix::to_double(a[1]) - cy, polarix::to_double(a[0]) - cx) <
           std::atan2(polarix::to_double(b[1]) - cy, polarix::to_double(b[0]) - cx);
  });
  Rational twice = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& a = verts[i];
    const auto& b = verts[(i + 1) % verts.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return abs(twice) / 2;
}

inline Integer binom(unsigned n, unsigned k) { return polarix::binomial(n, k); }

// Sum of Delta-indexed compositions of b into k parts, by recursion.
inline std::size_t count_compositions(unsigned k, unsigned b) {
  if (k == 1) return 1;
  std::size_t total = 0;
  for (unsigned first = 0; first <= b; ++first) total += count_compositions(k - 1, b - first);
  return total;
}

}  // namespace oracle

namespace oracle {

// beta_m for P^2, L = H, E = a line: sum_{l=1}^m C(m-l+2, 2) / (m C(m+2, 2)).
inline Rational p2_line_beta_m(unsigned m) {
  Integer num = 0;
  for (unsigned l = 1; l <= m; ++l) num += binom(m - l + 2, 2);
  return Rational(num) / (Rational(m) * Rational(binom(m + 2, 2)));
}

// Degree-n polynomial integral int_0^d ((d - t)/d)^n dt = d/(n+1), by expanding the binomial.
inline Rational projective_beta(unsigned n, unsigned d) {
  Rational total = 0;
  for (unsigned k = 0; k <= n; ++k) {
    // ((d - t)/d)^n = sum_k C(n,k) (-t/d)^k
    Rational term = Rational(binom(n, k));
    for (unsigned i = 0; i < k; ++i) term *= Rational(-1, static_cast<int>(d));
    Rational dk1 = 1;
    for (unsigned i = 0; i <= k; ++i) dk1 *= d;
    total += term * dk1 / Rational(k + 1);
  }
  return total;
}

}  // namespace oracle
