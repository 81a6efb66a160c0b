#include "dhtk/toric.hpp"

#include <algorithm>
#include <limits>

#include "dhtk/errors.hpp"

namespace dhtk {

namespace {

long long to_ll(const Int& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw InputError("lattice datum exceeds the integer range");
  return v.convert_to<long long>();
}

/// Primitive integer vector with det(X, Y) = 1 — the lattice-conjugate
/// coordinate used to measure along extremal edges.
RVec conjugate_direction(const RVec& x) {
  RMat w = unimodular_completion(x);
  RVec y = w.col(1);
  if (det2(x, y) == Rational(1)) return y;
  return -y;
}

/// Rate of travel in the conjugate coordinate per unit of level along an
/// edge direction u: <u, Y>/<u, X>. Orientation-free (u and -u agree).
Rational edge_rate(const RVec& u, const RVec& x, const RVec& y) {
  return dot(u, y) / dot(u, x);
}

}  // namespace

Int max_vertex_order(const Polytope& polygon) {
  if (polygon.dimension() != 2) throw InputError("vertex orders need a polygon");
  const auto& vs = polygon.vertices();
  Int worst = 1;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const RVec& v = vs[i];
    RVec u1 = primitive(vs[(i + vs.size() - 1) % vs.size()] - v);
    RVec u2 = primitive(vs[(i + 1) % vs.size()] - v);
    Int d = mp::abs(det2(u1, u2).num());
    worst = std::max(worst, d);
  }
  return worst;
}

S1FixedPointData delzant_to_s1data(const Polytope& polygon, const Direction& x) {
  if (polygon.dimension() != 2) throw InputError("fixed-point data needs a polygon");
  if (x.dim() != 2) throw InputError("direction does not match the polygon dimension");
  const auto& vs = polygon.vertices();
  for (const RVec& v : vs)
    if (!is_integer_vector(v)) throw InputError("expected a lattice polygon");

  const RVec& xc = x.coords();
  RVec y = conjugate_direction(xc);

  const std::size_t n = vs.size();
  std::vector<Rational> levels(n);
  for (std::size_t i = 0; i < n; ++i) levels[i] = dot(vs[i], xc);
  Rational lo = *std::min_element(levels.begin(), levels.end());
  Rational hi = *std::max_element(levels.begin(), levels.end());

  // Generic direction: a level-constant edge is only allowed at an extreme.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    if (levels[i] == levels[j] && levels[i] != lo && levels[i] != hi)
      throw InputError("non-generic direction");
  }

  auto prev_of = [&](std::size_t i) { return (i + n - 1) % n; };
  auto next_of = [&](std::size_t i) { return (i + 1) % n; };

  std::vector<InteriorFixedPoint> interior;
  for (std::size_t i = 0; i < n; ++i) {
    if (levels[i] == lo || levels[i] == hi) continue;
    RVec u1 = primitive(vs[prev_of(i)] - vs[i]);
    RVec u2 = primitive(vs[next_of(i)] - vs[i]);
    long long w1 = to_ll(dot(u1, xc).num());
    long long w2 = to_ll(dot(u2, xc).num());
    if (w1 > w2) std::swap(w1, w2);
    long long d = to_ll(mp::abs(det2(u1, u2).num()));
    interior.push_back(InteriorFixedPoint{levels[i], w1, w2, d});
  }

  // One extremal set per end: an isolated vertex or a level-constant edge.
  auto extremal_set = [&](const Rational& level) -> ExtremalSet {
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < n; ++i)
      if (levels[i] == level) at.push_back(i);

    if (at.size() == 1) {
      std::size_t i = at.front();
      RVec u1 = primitive(vs[prev_of(i)] - vs[i]);
      RVec u2 = primitive(vs[next_of(i)] - vs[i]);
      long long w1 = to_ll(dot(u1, xc).num());
      long long w2 = to_ll(dot(u2, xc).num());
      if (w1 > w2) std::swap(w1, w2);
      long long d = to_ll(mp::abs(det2(u1, u2).num()));
      return IsolatedExtremum{level, w1, w2, d};
    }
    if (at.size() != 2)
      throw InputError("extremal level touches more than one edge");  // not convex
    // The two extremal vertices are adjacent (strict convexity); order them
    // along the conjugate coordinate and read the boundary rates just
    // inside the extremum from the two non-extremal adjacent edges.
    std::size_t a = at[0], b = at[1];
    if (next_of(b) == a) std::swap(a, b);
    if (next_of(a) != b) throw InputError("extremal level touches more than one edge");
    std::size_t low_v = a, high_v = b;
    if (dot(vs[low_v], y) > dot(vs[high_v], y)) std::swap(low_v, high_v);
    // Adjacent edge at each endpoint, skipping the extremal edge itself.
    RVec u_low = primitive((low_v == a ? vs[prev_of(a)] : vs[next_of(b)]) - vs[low_v]);
    RVec u_high = primitive((high_v == a ? vs[prev_of(a)] : vs[next_of(b)]) - vs[high_v]);
    Rational r_low = edge_rate(u_low, xc, y);
    Rational r_high = edge_rate(u_high, xc, y);
    Rational area = abs(dot(vs[b] - vs[a], y));  // lattice length of the edge
    // Fiber length grows at r_high - r_low per unit level; the declared
    // euler_integral is minus that at a minimum, plus that at a maximum.
    Rational euler = (level == lo) ? r_low - r_high : r_high - r_low;
    return SurfaceExtremum{level, area, euler};
  };

  return S1FixedPointData(extremal_set(lo), extremal_set(hi), std::move(interior));
}

}  // namespace dhtk
