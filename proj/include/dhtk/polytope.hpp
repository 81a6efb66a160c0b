#pragma once

#include <vector>

#include "dhtk/linalg.hpp"

namespace dhtk {

/// Full-dimensional rational convex polytope in dimension 2 <= n <= 4,
/// vertex representation. Construction canonicalizes: redundant input points
/// (inside the hull of the others) are dropped, 2-dimensional vertex lists
/// are ordered counterclockwise from the lexicographically smallest vertex,
/// higher-dimensional ones lexicographically. Facets (outward primitive
/// integer normals with rational offsets, normal . x <= offset) are computed
/// once at construction; membership tests are exact.
class Polytope {
 public:
  struct Facet {
    RVec normal;      // primitive integer outward normal
    Rational offset;  // facet hyperplane is {x : <normal, x> = offset}
  };

  Polytope(int dimension, std::vector<RVec> points);

  int dimension() const { return dimension_; }
  const std::vector<RVec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool contains(const RVec& x) const;
  bool strictly_contains(const RVec& x) const;

  /// Componentwise bounding box [lo, hi].
  void bounding_box(RVec& lo, RVec& hi) const;

 private:
  int dimension_;
  std::vector<RVec> vertices_;
  std::vector<Facet> facets_;
};

/// Euclidean area of a polygon (shoelace over the canonical CCW order).
Rational polygon_area(const Polytope& polygon);

/// Convex hull of rational points in the plane (Andrew monotone chain),
/// counterclockwise, collinear points dropped. Degenerate input (all points
/// collinear) yields fewer than 3 vertices.
std::vector<RVec> convex_hull_2d(std::vector<RVec> points);

}  // namespace dhtk
