#pragma once

// Seeded random generators shared by the property tests and the acceptance
// suite: rationals, convex and Delzant polygons, small 3-/4-d polytopes,
// closure-consistent fixed-point data, and synthetic x-rays. Everything is
// deterministic per rng state.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dhtk/errors.hpp"
#include "dhtk/linalg.hpp"
#include "dhtk/polytope.hpp"
#include "dhtk/random_util.hpp"
#include "dhtk/s1_orbifold.hpp"
#include "dhtk/toric.hpp"
#include "dhtk/xray.hpp"

namespace dhtk::testgen {

inline long long rand_int(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline Rational rand_rational(std::mt19937_64& rng, long long max_abs_num, long long max_den) {
  return Rational{Int(rand_int(rng, -max_abs_num, max_abs_num)), Int(rand_int(rng, 1, max_den))};
}

inline Direction random_direction(std::mt19937_64& rng, int dim, int bound) {
  for (;;) {
    RVec v(dim);
    bool zero = true;
    for (int i = 0; i < dim; ++i) {
      v(i) = Rational(rand_int(rng, -bound, bound));
      zero = zero && v(i).is_zero();
    }
    if (zero) continue;
    return Direction(primitive(v));
  }
}

inline Polytope random_convex_polygon(std::mt19937_64& rng) {
  for (;;) {
    int k = static_cast<int>(rand_int(rng, 4, 9));
    std::vector<RVec> pts;
    for (int i = 0; i < k; ++i)
      pts.push_back(rvec({rand_rational(rng, 8, 3), rand_rational(rng, 8, 3)}));
    try {
      Polytope p(2, pts);
      if (p.vertices().size() >= 3) return p;
    } catch (const InputError&) {
      // collinear draw; redraw
    }
  }
}

/// Delzant polygons: an axis-aligned lattice rectangle with unimodular
/// corner chops (toric blow-ups), then a random GL(2,Z) shear pair and a
/// lattice translation. Every vertex keeps |det(u1, u2)| = 1.
inline Polytope random_delzant_polygon(std::mt19937_64& rng) {
  long long a = rand_int(rng, 3, 6), b = rand_int(rng, 3, 6);
  long long c[4];
  for (;;) {
    for (auto& ci : c) ci = rand_int(rng, 0, 2);
    if (c[0] + c[1] <= a - 1 && c[1] + c[2] <= b - 1 && c[2] + c[3] <= a - 1 &&
        c[3] + c[0] <= b - 1)
      break;
  }
  std::vector<RVec> pts;
  auto add = [&](long long x, long long y) { pts.push_back(rvec({Rational(x), Rational(y)})); };
  if (c[0]) { add(c[0], 0); add(0, c[0]); } else { add(0, 0); }
  if (c[1]) { add(a - c[1], 0); add(a, c[1]); } else { add(a, 0); }
  if (c[2]) { add(a, b - c[2]); add(a - c[2], b); } else { add(a, b); }
  if (c[3]) { add(c[3], b); add(0, b - c[3]); } else { add(0, b); }

  long long k = rand_int(rng, -2, 2), m = rand_int(rng, -2, 2);
  long long tx = rand_int(rng, -3, 3), ty = rand_int(rng, -3, 3);
  for (RVec& v : pts) {
    Rational x = v(0) + Rational(k) * v(1);  // shear [[1,k],[0,1]]
    Rational y = v(1) + Rational(m) * (v(0) + Rational(k) * v(1));
    v(0) = x + Rational(tx);
    v(1) = y + Rational(ty);
  }
  return Polytope(2, pts);
}

/// A direction along which no interior edge of the polygon is level.
inline Direction generic_direction_for(std::mt19937_64& rng, const Polytope& polygon) {
  for (;;) {
    Direction x = random_direction(rng, 2, 3);
    try {
      delzant_to_s1data(polygon, x);
      return x;
    } catch (const InputError&) {
      // non-generic (or otherwise rejected) direction; redraw
    }
  }
}

inline Polytope random_polytope_nd(std::mt19937_64& rng, int dim) {
  for (;;) {
    int k = static_cast<int>(rand_int(rng, dim + 1, 10));
    std::vector<RVec> pts;
    for (int i = 0; i < k; ++i) {
      RVec v(dim);
      for (int j = 0; j < dim; ++j) v(j) = Rational(rand_int(rng, -4, 4));
      pts.push_back(v);
    }
    try {
      return Polytope(dim, pts);
    } catch (const InputError&) {
      // degenerate draw; redraw
    }
  }
}

inline ExtremalSet mirror_extremal(const ExtremalSet& e) {
  if (const auto* iso = std::get_if<IsolatedExtremum>(&e))
    return IsolatedExtremum{-iso->level, -iso->weight1, -iso->weight2, iso->order};
  const auto& s = std::get<SurfaceExtremum>(e);
  return SurfaceExtremum{-s.level, s.area, s.euler_integral};
}

/// Level-reversed data describing t -> f(-t); consistency is preserved
/// (isolated weights flip sign, surface data is invariant, interior weight
/// pairs flip and swap).
inline S1FixedPointData mirror(const S1FixedPointData& data) {
  std::vector<InteriorFixedPoint> interior;
  for (const auto& p : data.interior())
    interior.push_back({-p.level, -p.weight2, -p.weight1, p.order});
  return S1FixedPointData(mirror_extremal(data.max()), mirror_extremal(data.min()),
                          std::move(interior));
}

/// Closure-consistent data with a fixed-surface maximum: draw the minimum
/// and the walls freely, telescope, and declare the maximum from the
/// computed terminal value/slope (the "extremal set adjusted for closure").
inline S1FixedPointData random_s1data_surface_max(std::mt19937_64& rng) {
  for (;;) {
    Rational t = rand_rational(rng, 4, 2);
    ExtremalSet min;
    Rational value, slope;
    if (rand_int(rng, 0, 1) == 1) {
      long long a = rand_int(rng, 1, 9), b = rand_int(rng, 1, 9), d = rand_int(rng, 1, 4);
      min = IsolatedExtremum{t, a, b, d};
      value = Rational(0);
      slope = Rational{Int(1), Int(d * a * b)};
    } else {
      Rational area{Int(rand_int(rng, 1, 8)), Int(rand_int(rng, 1, 4))};
      Rational euler = rand_rational(rng, 2, 2);
      min = SurfaceExtremum{t, area, euler};
      value = area;
      slope = -euler;
    }

    std::vector<InteriorFixedPoint> interior;
    bool positive = true;
    int nwalls = static_cast<int>(rand_int(rng, 0, 3));
    for (int i = 0; i < nwalls; ++i) {
      Rational dt{Int(rand_int(rng, 1, 4)), Int(rand_int(rng, 1, 3))};
      t += dt;
      value += slope * dt;
      if (value.sign() <= 0) { positive = false; break; }
      long long p1 = -rand_int(rng, 1, 9), p2 = rand_int(rng, 1, 9), d = rand_int(rng, 1, 4);
      interior.push_back({t, p1, p2, d});
      slope += Rational{Int(1), Int(d * p1 * p2)};
    }
    if (!positive) continue;

    Rational dt{Int(rand_int(rng, 1, 4)), Int(rand_int(rng, 1, 3))};
    t += dt;
    value += slope * dt;
    if (value.sign() <= 0) continue;
    return S1FixedPointData(min, SurfaceExtremum{t, value, slope}, interior);
  }
}

/// Closure-consistent data with isolated extrema: a mirror-symmetric
/// telescope. The minimum's slope 1/N is cancelled by a mirrored pair of
/// walls each with d*|p1|*p2 = N, so the density returns to 0 with slope
/// -1/N, exactly the isolated maximum's local model.
inline S1FixedPointData random_s1data_isolated_pair(std::mt19937_64& rng) {
  long long a = rand_int(rng, 1, 9), b = rand_int(rng, 1, 9), d = rand_int(rng, 1, 4);
  Rational shift = rand_rational(rng, 4, 2);
  Rational span{Int(rand_int(rng, 2, 8)), Int(rand_int(rng, 1, 2))};
  Rational t = span * Rational{Int(rand_int(rng, 1, 3)), Int(8)};  // in (0, span/2)
  std::vector<InteriorFixedPoint> interior = {
      {shift + t, -a, b, d},
      {shift + span - t, -b, a, d},
  };
  return S1FixedPointData(IsolatedExtremum{shift, a, b, d},
                          IsolatedExtremum{shift + span, -a, -b, d}, interior);
}

/// Random valid, closure-consistent fixed-point data covering all four
/// extremal-type combinations; optionally includes toric-derived instances.
inline S1FixedPointData random_s1data(std::mt19937_64& rng, bool include_toric = false) {
  S1FixedPointData data = [&] {
    if (include_toric && rand_int(rng, 0, 3) == 0) {
      Polytope polygon = random_delzant_polygon(rng);
      return delzant_to_s1data(polygon, generic_direction_for(rng, polygon));
    }
    if (rand_int(rng, 0, 1) == 0) return random_s1data_isolated_pair(rng);
    return random_s1data_surface_max(rng);
  }();
  if (rand_int(rng, 0, 1) == 1) return mirror(data);
  return data;
}

// --- synthetic x-rays -------------------------------------------------

namespace detail {

inline RVec pt2(const Rational& x, const Rational& y) { return rvec({x, y}); }

inline Face point_face(std::string label, const RVec& p) {
  return Face{std::move(label), 0, {}, {p}};
}

inline Face segment_face(std::string label, const RVec& a, const RVec& b) {
  return Face{std::move(label), 1, {primitive(b - a)}, {a, b}};
}

}  // namespace detail

/// Box x-ray in the plane: the image, its boundary edges and corners, and
/// 1..3 interior walls (vertical / horizontal / crossing diagonals) at
/// half-integer positions with their endpoint 0-faces.
inline XRay random_xray_2d(std::mt19937_64& rng) {
  using detail::point_face;
  using detail::pt2;
  using detail::segment_face;
  Rational w(rand_int(rng, 3, 5)), h(rand_int(rng, 3, 5));
  RVec c00 = pt2(0, 0), c10 = pt2(w, 0), c11 = pt2(w, h), c01 = pt2(0, h);
  Polytope image(2, {c00, c10, c11, c01});

  std::vector<Face> faces;
  faces.push_back(Face{"image", 2, {rvec({1, 0}), rvec({0, 1})}, image.vertices()});
  faces.push_back(segment_face("bottom", c00, c10));
  faces.push_back(segment_face("right", c10, c11));
  faces.push_back(segment_face("top", c01, c11));
  faces.push_back(segment_face("left", c00, c01));
  faces.push_back(point_face("corner00", c00));
  faces.push_back(point_face("corner10", c10));
  faces.push_back(point_face("corner11", c11));
  faces.push_back(point_face("corner01", c01));

  int nwalls = static_cast<int>(rand_int(rng, 1, 3));
  for (int i = 0; i < nwalls; ++i) {
    std::string tag = "wall" + std::to_string(i);
    RVec a, b;
    switch (rand_int(rng, 0, 2)) {
      case 0: {  // vertical
        Rational cx{Int(rand_int(rng, 1, 2 * w.num().convert_to<long long>() - 1)), Int(2)};
        a = pt2(cx, 0);
        b = pt2(cx, h);
        break;
      }
      case 1: {  // horizontal
        Rational cy{Int(rand_int(rng, 1, 2 * h.num().convert_to<long long>() - 1)), Int(2)};
        a = pt2(0, cy);
        b = pt2(w, cy);
        break;
      }
      default: {  // diagonal, left edge to right edge
        Rational y0{Int(rand_int(rng, 0, 2 * h.num().convert_to<long long>())), Int(2)};
        Rational y1{Int(rand_int(rng, 0, 2 * h.num().convert_to<long long>())), Int(2)};
        a = pt2(0, y0);
        b = pt2(w, y1);
        break;
      }
    }
    faces.push_back(segment_face(tag, a, b));
    faces.push_back(point_face(tag + "_a", a));
    faces.push_back(point_face(tag + "_b", b));
  }
  return XRay(2, image, faces);
}

/// Box x-ray in 3-space: the cube [0,3]^3 with its full boundary
/// stratification plus 1..2 interior axis-aligned walls (and possibly one
/// diagonal wall), each carrying its edge and corner subfaces.
inline XRay random_xray_3d(std::mt19937_64& rng) {
  using detail::point_face;
  using detail::segment_face;
  const Rational w(3);
  std::vector<RVec> corners;
  for (int mask = 0; mask < 8; ++mask)
    corners.push_back(rvec({Rational((mask & 1) ? w : Rational(0)),
                            Rational((mask & 2) ? w : Rational(0)),
                            Rational((mask & 4) ? w : Rational(0))}));
  Polytope image(3, corners);

  std::vector<Face> faces;
  faces.push_back(
      Face{"image", 3, {rvec({1, 0, 0}), rvec({0, 1, 0}), rvec({0, 0, 1})}, corners});

  auto rectangle = [&](std::string label, int axis, const Rational& at) {
    std::vector<RVec> vs;
    for (int s = 0; s < 4; ++s) {
      RVec v(3);
      v(axis) = at;
      int other = 0;
      for (int j = 0; j < 3; ++j) {
        if (j == axis) continue;
        v(j) = ((s >> other) & 1) ? w : Rational(0);
        ++other;
      }
      vs.push_back(v);
    }
    std::vector<RVec> basis;
    for (int j = 0; j < 3; ++j) {
      if (j == axis) continue;
      RVec e = RVec::Zero(3);
      e(j) = Rational(1);
      basis.push_back(e);
    }
    faces.push_back(Face{label, 2, basis, vs});
    // edge and corner subfaces of the rectangle
    faces.push_back(segment_face(label + "_e0", vs[0], vs[1]));
    faces.push_back(segment_face(label + "_e1", vs[0], vs[2]));
    faces.push_back(segment_face(label + "_e2", vs[3], vs[1]));
    faces.push_back(segment_face(label + "_e3", vs[3], vs[2]));
    for (int s = 0; s < 4; ++s) faces.push_back(point_face(label + "_c" + std::to_string(s), vs[s]));
  };

  rectangle("facet_x0", 0, Rational(0));
  rectangle("facet_x1", 0, w);
  rectangle("facet_y0", 1, Rational(0));
  rectangle("facet_y1", 1, w);
  rectangle("facet_z0", 2, Rational(0));
  rectangle("facet_z1", 2, w);

  int nwalls = static_cast<int>(rand_int(rng, 1, 2));
  for (int i = 0; i < nwalls; ++i) {
    int axis = static_cast<int>(rand_int(rng, 0, 2));
    Rational at{Int(rand_int(rng, 1, 5)), Int(2)};
    rectangle("wall" + std::to_string(i), axis, at);
  }
  if (rand_int(rng, 0, 1) == 1) {
    // diagonal wall x + y = 3 through the cube
    std::vector<RVec> vs = {rvec({3, 0, 0}), rvec({0, 3, 0}), rvec({3, 0, 3}),
                            rvec({0, 3, 3})};
    faces.push_back(Face{"diag", 2, {rvec({-1, 1, 0}), rvec({0, 0, 1})}, vs});
    faces.push_back(segment_face("diag_e0", vs[0], vs[1]));
    faces.push_back(segment_face("diag_e1", vs[2], vs[3]));
    faces.push_back(segment_face("diag_e2", vs[0], vs[2]));
    faces.push_back(segment_face("diag_e3", vs[1], vs[3]));
  }
  return XRay(3, image, faces);
}

inline XRay random_xray(std::mt19937_64& rng, int ambient) {
  return ambient == 2 ? random_xray_2d(rng) : random_xray_3d(rng);
}

/// Interior anchor on a denominator-q grid, never on a half-integer face.
inline RVec random_anchor(std::mt19937_64& rng, const Polytope& image, long long q) {
  RVec lo, hi;
  image.bounding_box(lo, hi);
  for (;;) {
    RVec p(lo.size());
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
      long long steps = ((hi(i) - lo(i)) * Rational(q)).num().convert_to<long long>();
      p(i) = lo(i) + Rational{Int(rand_int(rng, 1, steps - 1)), Int(q)};
    }
    if (image.strictly_contains(p)) return p;
  }
}

}  // namespace dhtk::testgen
