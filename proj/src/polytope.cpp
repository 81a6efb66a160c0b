#include "dhtk/polytope.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "dhtk/errors.hpp"

namespace dhtk {

namespace {

bool lex_less(const RVec& a, const RVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

/// All supporting hyperplanes spanned by (n-1)-point subsets of `points`
/// with every point on one side — the facet hyperplanes of the hull. Brute
/// force over subsets; fine for n <= 4 at toolkit scale.
std::vector<Polytope::Facet> enumerate_facets(int n, const std::vector<RVec>& points) {
  std::map<std::string, Polytope::Facet> found;  // keyed by canonical form

  // Iterate over all n-subsets via prev_permutation on a selection mask
  // (starting from the lexicographically largest mask T..TF..F).
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  std::vector<bool> sel(points.size(), false);
  std::fill(sel.begin(), sel.begin() + n, true);
  do {
    std::size_t k = 0;
    for (std::size_t i = 0; i < sel.size(); ++i)
      if (sel[i]) idx[k++] = i;

    // Hyperplane through the subset: normal spans the kernel of the
    // difference matrix. Skip affinely dependent subsets (rank < n-1); any
    // facet still shows up through one of its independent vertex subsets.
    RMat diffs(n - 1, n);
    for (int r = 0; r + 1 < n; ++r)
      diffs.row(r) = (points[idx[static_cast<std::size_t>(r) + 1]] - points[idx[0]]).transpose();
    RMat ker = kernel(diffs);
    if (ker.cols() != 1) continue;
    RVec normal = primitive(ker.col(0));
    Rational offset = dot(normal, points[idx[0]]);

    bool any_below = false, any_above = false;
    for (const RVec& p : points) {
      Rational v = dot(normal, p);
      if (v < offset) any_below = true;
      if (v > offset) any_above = true;
    }
    if (any_below && any_above) continue;  // not supporting
    if (any_above) {                       // flip to outward orientation
      normal = -normal;
      offset = -offset;
    }
    std::string key = to_string(normal) + "|" + to_string(offset);
    found.emplace(key, Polytope::Facet{normal, offset});
  } while (std::prev_permutation(sel.begin(), sel.end()));

  std::vector<Polytope::Facet> facets;
  for (auto& [key, f] : found) facets.push_back(std::move(f));
  return facets;
}

}  // namespace

std::vector<RVec> convex_hull_2d(std::vector<RVec> points) {
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end(),
                           [](const RVec& a, const RVec& b) { return a == b; }),
               points.end());
  if (points.size() < 3) return points;

  auto turns_right = [](const RVec& o, const RVec& a, const RVec& b) {
    return det2(a - o, b - o) <= Rational(0);
  };

  std::vector<RVec> hull(2 * points.size());
  std::size_t k = 0;
  for (const RVec& p : points) {  // lower chain
    while (k >= 2 && turns_right(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i > 0; --i) {  // upper chain
    const RVec& p = points[i - 1];
    while (k >= lower && turns_right(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);  // last point equals the first
  return hull;
}

Polytope::Polytope(int dimension, std::vector<RVec> points) : dimension_(dimension) {
  if (dimension_ < 2 || dimension_ > 4)
    throw InputError("polytope dimension must be between 2 and 4");
  for (const RVec& p : points)
    if (p.size() != dimension_)
      throw InputError("polytope vertex has wrong number of coordinates");
  if (points.size() < static_cast<std::size_t>(dimension_) + 1)
    throw InputError("polytope needs at least dimension+1 vertices");

  if (dimension_ == 2) {
    vertices_ = convex_hull_2d(std::move(points));
    if (vertices_.size() < 3)
      throw InputError("polytope vertices do not span the full dimension");
    // Rotate so the lexicographically smallest vertex comes first (monotone
    // chain already starts there, but keep the invariant explicit).
    auto smallest = std::min_element(vertices_.begin(), vertices_.end(), lex_less);
    std::rotate(vertices_.begin(), smallest, vertices_.end());
    facets_.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const RVec& a = vertices_[i];
      const RVec& b = vertices_[(i + 1) % vertices_.size()];
      RVec edge = b - a;
      // Outward normal of a CCW edge is the edge rotated clockwise.
      RVec normal = primitive(rvec({edge(1), -edge(0)}));
      facets_.push_back(Facet{normal, dot(normal, a)});
    }
    return;
  }

  // Full-dimensionality: the affine span of the points must have rank n.
  RMat diffs(static_cast<Eigen::Index>(points.size()) - 1, dimension_);
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.row(static_cast<Eigen::Index>(i) - 1) = (points[i] - points[0]).transpose();
  if (rank(diffs) != dimension_)
    throw InputError("polytope vertices do not span the full dimension");

  facets_ = enumerate_facets(dimension_, points);

  // A point of the input is a vertex iff its active facet normals span R^n.
  for (const RVec& p : points) {
    RMat active(0, dimension_);
    for (const Facet& f : facets_) {
      if (dot(f.normal, p) == f.offset) {
        active.conservativeResize(active.rows() + 1, Eigen::NoChange);
        active.row(active.rows() - 1) = f.normal.transpose();
      }
    }
    if (active.rows() >= dimension_ && rank(active) == dimension_)
      vertices_.push_back(p);
  }
  std::sort(vertices_.begin(), vertices_.end(), lex_less);
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end(),
                              [](const RVec& a, const RVec& b) { return a == b; }),
                  vertices_.end());
}

bool Polytope::contains(const RVec& x) const {
  for (const Facet& f : facets_)
    if (dot(f.normal, x) > f.offset) return false;
  return true;
}

bool Polytope::strictly_contains(const RVec& x) const {
  for (const Facet& f : facets_)
    if (!(dot(f.normal, x) < f.offset)) return false;
  return true;
}

void Polytope::bounding_box(RVec& lo, RVec& hi) const {
  lo = vertices_.front();
  hi = vertices_.front();
  for (const RVec& v : vertices_) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      lo(i) = min(lo(i), v(i));
      hi(i) = max(hi(i), v(i));
    }
  }
}

Rational polygon_area(const Polytope& polygon) {
  if (polygon.dimension() != 2) throw InputError("polygon_area needs a 2-dimensional polytope");
  const auto& vs = polygon.vertices();
  Rational twice(0);
  for (std::size_t i = 0; i < vs.size(); ++i)
    twice += det2(vs[i], vs[(i + 1) % vs.size()]);
  return twice / Rational(2);  // positive: vertices are CCW
}

}  // namespace dhtk
