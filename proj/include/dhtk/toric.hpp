#pragma once

#include "dhtk/polytope.hpp"
#include "dhtk/s1_orbifold.hpp"

namespace dhtk {

/// Largest |det(u1, u2)| over the polygon's vertices (primitive edge vector
/// pairs). 1 means Delzant/smooth; larger values flag orbifold vertices.
Int max_vertex_order(const Polytope& polygon);

/// Translates a rational lattice polygon with a generic circle direction
/// into the fixed-point data of the corresponding toric 4-orbifold:
///   - a vertex at an interior level contributes an interior fixed point
///     with weights <u1, X>, <u2, X> (primitive edge vectors) and order
///     |det(u1, u2)|;
///   - an extremal edge (constant level) contributes a fixed surface whose
///     area is the edge's lattice length and whose euler_integral is read
///     off the two adjacent edge slopes;
///   - an extremal vertex contributes an isolated extremum.
///
/// For Delzant polygons (all orders 1) build_dh of the result reproduces
/// slice_density(P, X) bit-exactly. For orbifold vertices (order d > 1) the
/// emitted weights are the edge pairings, which are d times the weights of
/// the uniformizing chart; the jump formula then understates the true jump
/// by a factor of d^2 (see the d = 2 regression test), so the bit-exact
/// contract is asserted only at d = 1.
///
/// A non-extremal edge on which <., X> is constant makes the direction
/// non-generic and is rejected.
S1FixedPointData delzant_to_s1data(const Polytope& polygon, const Direction& x);

}  // namespace dhtk
