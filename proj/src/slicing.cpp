#include "dhtk/slicing.hpp"

#include <algorithm>
#include <optional>

#include "dhtk/errors.hpp"

namespace dhtk {

namespace {

/// Intersection of finitely many closed halfplanes {a.x <= b} known to be
/// bounded: vertices are the feasible pairwise line intersections.
struct Halfplane {
  RVec a;
  Rational b;
};

std::vector<RVec> halfplane_vertices(const std::vector<Halfplane>& hs) {
  std::vector<RVec> candidates;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      Rational d = det2(hs[i].a, hs[j].a);
      if (d.is_zero()) continue;
      // Cramer on the 2x2 system a_i.x = b_i, a_j.x = b_j.
      RVec x = rvec({(hs[i].b * hs[j].a(1) - hs[j].b * hs[i].a(1)) / d,
                     (hs[i].a(0) * hs[j].b - hs[j].a(0) * hs[i].b) / d});
      bool feasible = true;
      for (const Halfplane& h : hs)
        if (dot(h.a, x) > h.b) { feasible = false; break; }
      if (feasible) candidates.push_back(x);
    }
  }
  return candidates;
}

/// Density of the push-forward of a triangle's Lebesgue measure under the
/// level map: a tent over [a, c] with peak 2*area/(c - a) at the middle
/// level b (the fiber length is affine on [a, b] and [b, c]).
struct Tent {
  Rational a, b, c;  // sorted vertex levels, a < c
  Rational peak;

  Rational eval(const Rational& t) const {
    if (t < a || t > c) return Rational(0);
    if (t <= b) {
      if (a == b) return peak;  // left side degenerate: edge at the min level
      return peak * (t - a) / (b - a);
    }
    if (b == c) return peak;
    return peak * (c - t) / (c - b);
  }
};

}  // namespace

Polytope plane_section(const Polytope& p, const RVec& base, const Direction& span1,
                       const Direction& span2) {
  const int n = p.dimension();
  if (base.size() != n || span1.dim() != n || span2.dim() != n)
    throw InputError("plane data does not match the polytope dimension");
  RMat spans(n, 2);
  spans.col(0) = span1.coords();
  spans.col(1) = span2.coords();
  if (rank(spans) != 2) throw InputError("plane spans must be linearly independent");

  // Substitute x = base + u*span1 + v*span2 into each facet inequality.
  std::vector<Halfplane> hs;
  for (const auto& f : p.facets()) {
    RVec a = rvec({dot(f.normal, span1.coords()), dot(f.normal, span2.coords())});
    Rational b = f.offset - dot(f.normal, base);
    if (is_zero_vector(a)) {
      if (Rational(0) > b) throw InputError("degenerate section");
      continue;  // plane parallel to the facet and on the feasible side
    }
    hs.push_back(Halfplane{a, b});
  }

  std::vector<RVec> pts = halfplane_vertices(hs);
  std::vector<RVec> hull = convex_hull_2d(std::move(pts));
  if (hull.size() < 3) throw InputError("degenerate section");

  // A 2-dimensional section can still lie inside a facet of P (touching the
  // boundary only); the plane must meet the interior.
  RVec centroid = RVec::Zero(2);
  for (const RVec& v : hull) centroid += v;
  centroid /= Rational(static_cast<long long>(hull.size()));
  RVec ambient = base + span1.coords() * centroid(0) + span2.coords() * centroid(1);
  if (!p.strictly_contains(ambient)) throw InputError("degenerate section");

  return Polytope(2, std::move(hull));
}

PLDensity slice_density(const Polytope& polygon, const Direction& x) {
  if (polygon.dimension() != 2) throw InputError("slice_density needs a polygon");
  if (x.dim() != 2) throw InputError("direction does not match the polygon dimension");

  const auto& vs = polygon.vertices();
  std::vector<Rational> levels(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) levels[i] = dot(vs[i], x.coords());

  // Fan triangulation from the lowest-level vertex (lexicographic smallest
  // among ties). Convexity guarantees every fan triangle is nondegenerate.
  std::size_t apex = 0;
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (levels[i] < levels[apex]) apex = i;

  std::vector<Tent> tents;
  std::vector<Rational> breaks;
  for (std::size_t k = 1; k + 1 < vs.size(); ++k) {
    std::size_t i = (apex + k) % vs.size();
    std::size_t j = (apex + k + 1) % vs.size();
    Rational area = abs(det2(vs[i] - vs[apex], vs[j] - vs[apex])) / Rational(2);
    Rational a = levels[apex], b = levels[i], c = levels[j];
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    Tent tent{a, b, c, Rational(2) * area / (c - a)};
    breaks.insert(breaks.end(), {tent.a, tent.b, tent.c});
    tents.push_back(tent);
  }

  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // Each tent is affine between consecutive global breakpoints, so the sum
  // of tent values at the breakpoints determines the density exactly.
  std::vector<Rational> values(breaks.size(), Rational(0));
  for (const Tent& tent : tents)
    for (std::size_t i = 0; i < breaks.size(); ++i) values[i] += tent.eval(breaks[i]);

  PLDensity density = PLDensity(std::move(breaks), std::move(values)).canonical();
  for (const SlopeJump& j : slope_jumps(density))
    if (j.jump > Rational(0))
      throw InconsistencyError("slice density of a convex polygon must be concave");
  return density;
}

SectionFrame section_frame(const Direction& proj_kernel, const RVec& line_base,
                           const Direction& line_dir) {
  const Eigen::Index n = proj_kernel.dim();
  if (line_base.size() != n - 1 || line_dir.dim() != n - 1)
    throw InputError("line data must live in the projected coordinates");
  RMat w = unimodular_completion(proj_kernel.coords());
  SectionFrame frame;
  frame.fiber_span = w.col(0);
  frame.base = RVec::Zero(n);
  frame.line_span = RVec::Zero(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    frame.base += w.col(i + 1) * line_base(i);
    frame.line_span += w.col(i + 1) * line_dir.coords()(i);
  }
  return frame;
}

PLDensity projected_slice_density(const Polytope& p, const Direction& proj_kernel,
                                  const RVec& line_base, const Direction& line_dir) {
  if (proj_kernel.dim() != p.dimension())
    throw InputError("projection kernel does not match the polytope dimension");
  SectionFrame frame = section_frame(proj_kernel, line_base, line_dir);

  // Restrict each facet <a, x> <= b to x = base + y0*kernel + t*line_span:
  //   alpha*y0 <= (b - <a, base>) - t*<a, line_span> =: p + q*t.
  // alpha > 0 bounds y0 above, alpha < 0 below, alpha = 0 restricts t.
  struct Affine {
    Rational p, q;  // value p + q*t
    Rational at(const Rational& t) const { return p + q * t; }
  };
  std::vector<Affine> upper, lower;
  // Feasible t-window from the alpha = 0 facets (and later from U >= L).
  std::optional<Rational> t_lo, t_hi;
  auto tighten_lo = [&](const Rational& v) { if (!t_lo || v > *t_lo) t_lo = v; };
  auto tighten_hi = [&](const Rational& v) { if (!t_hi || v < *t_hi) t_hi = v; };

  for (const auto& f : p.facets()) {
    Rational alpha = dot(f.normal, frame.fiber_span);
    Rational pp = f.offset - dot(f.normal, frame.base);
    Rational qq = -dot(f.normal, frame.line_span);
    if (alpha.is_zero()) {
      // 0 <= pp + qq*t: a halfline (or emptiness) in t.
      if (qq.is_zero()) {
        if (pp < Rational(0)) throw InputError("degenerate section");
      } else if (qq > Rational(0)) {
        tighten_lo(-pp / qq);
      } else {
        tighten_hi(-pp / qq);
      }
      continue;
    }
    if (alpha > Rational(0)) upper.push_back(Affine{pp / alpha, qq / alpha});
    else lower.push_back(Affine{pp / alpha, qq / alpha});
  }
  if (upper.empty() || lower.empty())
    throw InputError("degenerate section");  // cannot happen for bounded P

  auto env_u = [&](const Rational& t) {  // U(t) = min over upper bounds
    Rational v = upper.front().at(t);
    for (const Affine& u : upper) v = min(v, u.at(t));
    return v;
  };
  auto env_l = [&](const Rational& t) {  // L(t) = max over lower bounds
    Rational v = lower.front().at(t);
    for (const Affine& l : lower) v = max(v, l.at(t));
    return v;
  };

  // Candidate breakpoints: kinks of U (pairwise crossings of upper bounds),
  // kinks of L, roots of U - L (the support endpoints), and the t-window.
  std::vector<Rational> cand;
  auto crossings = [&cand](const std::vector<Affine>& fs, const std::vector<Affine>& gs) {
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < gs.size(); ++j) {
        if (&fs == &gs && j <= i) continue;
        Rational dq = fs[i].q - gs[j].q;
        if (!dq.is_zero()) cand.push_back((gs[j].p - fs[i].p) / dq);
      }
  };
  crossings(upper, upper);
  crossings(lower, lower);
  crossings(upper, lower);
  if (t_lo) cand.push_back(*t_lo);
  if (t_hi) cand.push_back(*t_hi);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // Keep candidates inside the feasible window with nonnegative extent;
  // the support of the density is exactly where U - L >= 0 holds there.
  std::vector<Rational> breaks;
  std::vector<Rational> values;
  for (const Rational& t : cand) {
    if (t_lo && t < *t_lo) continue;
    if (t_hi && t > *t_hi) continue;
    Rational extent = env_u(t) - env_l(t);
    if (extent < Rational(0)) continue;
    breaks.push_back(t);
    values.push_back(extent);
  }
  // U - L is concave (min of affines minus max of affines), so the kept
  // candidates cover a single interval; a full-dimensional section has
  // positive extent somewhere on it. A plane that only touches the boundary
  // of P leaves at most a point or an all-zero segment.
  if (breaks.size() < 2) throw InputError("degenerate section");
  bool any_positive = false;
  for (const Rational& v : values)
    if (!v.is_zero()) any_positive = true;
  if (!any_positive) throw InputError("degenerate section");

  return PLDensity(std::move(breaks), std::move(values)).canonical();
}

}  // namespace dhtk
