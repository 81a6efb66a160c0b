#pragma once

#include "dhtk/pl_density.hpp"
#include "dhtk/polytope.hpp"

namespace dhtk {

/// Intersection of P with the affine 2-plane {base + u*span1 + v*span2},
/// returned as a polygon in the exact (u, v) plane coordinates. The plane
/// must meet the interior of P; a lower-dimensional or empty intersection
/// (including a section lying inside a facet) is rejected as degenerate.
Polytope plane_section(const Polytope& p, const RVec& base, const Direction& span1,
                       const Direction& span2);

/// Exact density of the push-forward of 2-dimensional Lebesgue measure
/// under x -> <x, X>: f(t) = length of the fiber {x in P : <x, X> = t},
/// so that the integral of f is area(P). Piecewise linear with breakpoints
/// among the vertex levels.
///
/// Computed by fan triangulation from the lowest-level vertex: each triangle
/// with levels a <= b <= c and area A pushes forward to the tent with peak
/// 2A/(c - a) at b and zeros at a and c; the tents are summed on the common
/// breakpoint set and the result canonicalized. Concavity of the result on
/// its support (Brunn–Minkowski for convex polygons) is asserted.
PLDensity slice_density(const Polytope& polygon, const Direction& x);

/// Density along a line in the projection of P modulo proj_kernel — the
/// reduction-in-stages route. Splitting coordinates via the unimodular
/// completion W = [kernel | c_1 .. c_{n-1}], a point of P is W*(y0, y') with
/// y' the projected coordinates; over the line y' = line_base + t*line_dir
/// the density is the fiber extent U(t) - L(t), where U and L are the lower
/// envelope of the facet upper bounds on y0 and the upper envelope of the
/// lower bounds. Bit-identical to plane_section followed by slice_density
/// in the induced coordinates; computed independently (envelopes of affine
/// functions, not triangulation) so the identity is a genuine cross-check.
PLDensity projected_slice_density(const Polytope& p, const Direction& proj_kernel,
                                  const RVec& line_base, const Direction& line_dir);

/// Ambient lift of the projected line data used by projected_slice_density:
/// the plane {W*(y0, line_base + t*line_dir)} expressed as base + spans, so
/// callers can compose plane_section/slice_density in the same coordinates.
struct SectionFrame {
  RVec base;        // W * (0, line_base)
  RVec fiber_span;  // W * e_0 = the kernel direction
  RVec line_span;   // W * (0, line_dir)
};

SectionFrame section_frame(const Direction& proj_kernel, const RVec& line_base,
                           const Direction& line_dir);

}  // namespace dhtk
