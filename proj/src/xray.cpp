#include "dhtk/xray.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "dhtk/errors.hpp"
#include "dhtk/random_util.hpp"

namespace dhtk {

namespace {

RMat basis_matrix(const Face& face, Eigen::Index ambient) {
  RMat b(ambient, face.dim);
  for (int c = 0; c < face.dim; ++c) b.col(c) = face.basis[static_cast<std::size_t>(c)];
  return b;
}

void validate_face(const Face& face, int ambient) {
  if (face.dim < 0 || face.dim > ambient) throw InputError("face dimension out of range");
  if (face.basis.size() != static_cast<std::size_t>(face.dim))
    throw InputError("face needs one basis vector per dimension");
  if (face.vertices.empty()) throw InputError("face needs at least one vertex");
  for (const RVec& b : face.basis)
    if (b.size() != ambient) throw InputError("face basis vector has wrong length");
  for (const RVec& v : face.vertices)
    if (v.size() != ambient) throw InputError("face vertex has wrong length");

  if (face.dim > 0 && rank(basis_matrix(face, ambient)) != face.dim)
    throw InputError("face basis is not linearly independent");

  // The carrier's affine span must be exactly the basis span.
  RMat diffs(static_cast<Eigen::Index>(face.vertices.size()) - 1, ambient);
  for (std::size_t i = 1; i < face.vertices.size(); ++i)
    diffs.row(static_cast<Eigen::Index>(i) - 1) =
        (face.vertices[i] - face.vertices[0]).transpose();
  if (rank(diffs) != face.dim)
    throw InputError("face vertices do not span the declared dimension");
  if (face.dim > 0) {
    RMat combined(ambient, face.dim + static_cast<Eigen::Index>(face.vertices.size()) - 1);
    combined.block(0, 0, ambient, face.dim) = basis_matrix(face, ambient);
    for (std::size_t i = 1; i < face.vertices.size(); ++i)
      combined.col(face.dim + static_cast<Eigen::Index>(i) - 1) =
          face.vertices[i] - face.vertices[0];
    if (rank(combined) != face.dim)
      throw InputError("face vertices leave the basis span");
  }
}

/// Coordinates of the carrier in its own basis, for relative-interior and
/// closed-membership tests. Solves B*lambda = x - v0 per query.
struct CarrierFrame {
  RMat basis;                 // ambient x m
  RVec origin;                // first vertex
  std::vector<RVec> lambdas;  // vertices in basis coordinates
};

CarrierFrame carrier_frame(const Face& face, Eigen::Index ambient) {
  CarrierFrame frame{basis_matrix(face, ambient), face.vertices.front(), {}};
  for (const RVec& v : face.vertices) {
    RVec l;
    if (!solve(frame.basis, v - frame.origin, l))
      throw InputError("face vertices leave the basis span");
    frame.lambdas.push_back(l);
  }
  return frame;
}

/// Membership of a lambda-coordinate point in the carrier hull; strict
/// variant tests the relative interior.
bool carrier_member(const Face& face, const CarrierFrame& frame, const RVec& lambda,
                    bool strict) {
  if (face.dim == 0) return true;  // consistency alone pins the point
  if (face.dim == 1) {
    Rational lo = frame.lambdas.front()(0), hi = lo;
    for (const RVec& l : frame.lambdas) {
      lo = min(lo, l(0));
      hi = max(hi, l(0));
    }
    return strict ? (lo < lambda(0) && lambda(0) < hi)
                  : (lo <= lambda(0) && lambda(0) <= hi);
  }
  Polytope hull(face.dim, frame.lambdas);
  return strict ? hull.strictly_contains(lambda) : hull.contains(lambda);
}

/// Closed-carrier membership of an ambient point.
bool face_contains(const Face& face, const RVec& x) {
  Eigen::Index ambient = x.size();
  if (face.dim == 0) return x == face.vertices.front();
  CarrierFrame frame = carrier_frame(face, ambient);
  RVec lambda;
  if (!solve(frame.basis, x - frame.origin, lambda)) return false;
  return carrier_member(face, frame, lambda, /*strict=*/false);
}

}  // namespace

std::string to_string(LineFaceClass c) {
  switch (c) {
    case LineFaceClass::disjoint: return "disjoint";
    case LineFaceClass::transversal_crossing: return "transversal_crossing";
    case LineFaceClass::non_transversal: return "non_transversal";
  }
  return "unknown";
}

XRay::XRay(int ambient_dim, Polytope moment_image, std::vector<Face> faces)
    : ambient_dim_(ambient_dim),
      moment_image_(std::move(moment_image)),
      faces_(std::move(faces)) {
  if (moment_image_.dimension() != ambient_dim_)
    throw InputError("moment image does not match the ambient dimension");

  std::set<std::string> labels;
  int top_faces = 0;
  for (const Face& face : faces_) {
    validate_face(face, ambient_dim_);
    if (!labels.insert(face.label).second)
      throw InputError("duplicate face label: " + face.label);
    for (const RVec& v : face.vertices)
      if (!moment_image_.contains(v))
        throw InputError("face carrier leaves the moment image");
    if (face.dim == ambient_dim_) ++top_faces;
  }
  if (top_faces != 1)
    throw InputError("the moment image must appear as the unique top face");
}

const Face& XRay::face(const std::string& label) const {
  for (const Face& f : faces_)
    if (f.label == label) return f;
  throw InputError("unknown face label: " + label);
}

LineFaceResult classify_line_vs_face(const RVec& base, const Direction& dir,
                                     const Face& face) {
  const Eigen::Index ambient = base.size();
  const RVec& v = dir.coords();

  if (face.dim == 0) {
    // A point face: on the line iff v0 - base is proportional to v.
    const RVec& v0 = face.vertices.front();
    RMat pair(ambient, 2);
    pair.col(0) = v;
    pair.col(1) = v0 - base;
    if (rank(pair) <= 1) return LineFaceResult{LineFaceClass::transversal_crossing, v0};
    return LineFaceResult{LineFaceClass::disjoint, std::nullopt};
  }

  CarrierFrame frame = carrier_frame(face, ambient);

  // Solve  B*lambda - s*v = base - v0  for (lambda, s).
  RMat m(ambient, face.dim + 1);
  m.block(0, 0, ambient, face.dim) = frame.basis;
  m.col(face.dim) = -v;
  RVec rhs = base - frame.origin;

  if (rank(m) == face.dim + 1) {
    RVec sol;
    if (!solve(m, rhs, sol)) return LineFaceResult{LineFaceClass::disjoint, std::nullopt};
    RVec lambda = sol.head(face.dim);
    Rational s = sol(face.dim);
    if (!carrier_member(face, frame, lambda, /*strict=*/true))
      return LineFaceResult{LineFaceClass::disjoint, std::nullopt};
    RVec point = base + v * s;
    return LineFaceResult{LineFaceClass::transversal_crossing, point};
  }

  // Direction lies in the face's direction space: the line is parallel to
  // the face. Off the affine hull it is disjoint; inside the hull it is
  // non-transversal exactly when it meets the open carrier.
  RVec lambda_p, lambda_v;
  if (!solve(frame.basis, rhs, lambda_p))
    return LineFaceResult{LineFaceClass::disjoint, std::nullopt};
  if (!solve(frame.basis, v, lambda_v))
    return LineFaceResult{LineFaceClass::disjoint, std::nullopt};  // unreachable

  if (face.dim == 1) {
    // The line coincides with the carrier's line; it meets the open segment.
    return LineFaceResult{LineFaceClass::non_transversal, std::nullopt};
  }

  // Strict feasibility of lambda_p + s*lambda_v against the carrier facets:
  // a nonempty open s-interval means the line passes through the open face.
  Polytope hull(face.dim, frame.lambdas);
  bool empty = false;
  std::optional<Rational> s_lo, s_hi;
  for (const auto& facet : hull.facets()) {
    Rational c0 = facet.offset - dot(facet.normal, lambda_p);
    Rational c1 = dot(facet.normal, lambda_v);
    // Need c1*s < c0 strictly.
    if (c1.is_zero()) {
      if (!(Rational(0) < c0)) { empty = true; break; }
    } else if (c1 > Rational(0)) {
      Rational bound = c0 / c1;
      if (!s_hi || bound < *s_hi) s_hi = bound;
    } else {
      Rational bound = c0 / c1;
      if (!s_lo || bound > *s_lo) s_lo = bound;
    }
  }
  if (!empty && (!s_lo || !s_hi || *s_lo < *s_hi))
    return LineFaceResult{LineFaceClass::non_transversal, std::nullopt};
  return LineFaceResult{LineFaceClass::disjoint, std::nullopt};
}

LineSelection select_line(const XRay& xray, const RVec& x0, const RVec& x1,
                          const Rational& epsilon, int max_attempts,
                          std::uint64_t seed) {
  const Eigen::Index ambient = xray.ambient_dim();
  if (x0.size() != ambient || x1.size() != ambient)
    throw InputError("anchor points do not match the ambient dimension");
  if (x0 == x1) throw InputError("coincident endpoints");
  if (!(epsilon > Rational(0))) throw InputError("epsilon must be positive");
  if (max_attempts < 1) throw InputError("need at least one attempt");
  if (!xray.moment_image().contains(x0) || !xray.moment_image().contains(x1))
    throw InputError("anchor points must lie in the moment image");

  // Coarsest dyadic grid fine enough to fit several steps inside epsilon.
  int g0 = 2;
  while (floor_int(epsilon * Rational(Int(1) << g0)) < 2) ++g0;

  std::mt19937_64 rng(seed);
  int grid = g0;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    grid = g0 + (attempt - 1);  // refine with every retry
    Int steps = floor_int(epsilon * Rational(Int(1) << grid));
    std::uint64_t span = 2 * steps.convert_to<std::uint64_t>() + 1;

    auto perturb = [&](const RVec& x) {
      RVec out = x;
      for (Eigen::Index i = 0; i < ambient; ++i) {
        Int offset = Int(draw_below(rng, span)) - steps;
        out(i) += Rational(offset, Int(1) << grid);
      }
      return out;
    };
    RVec xi0 = perturb(x0);
    RVec xi1 = perturb(x1);
    if (xi0 == xi1) continue;
    if (!xray.moment_image().strictly_contains(xi0) ||
        !xray.moment_image().strictly_contains(xi1))
      continue;
    Direction direction(primitive(xi1 - xi0));

    bool ok = true;
    std::vector<Crossing> crossings;
    std::map<std::string, LineFaceClass> certificate;
    for (const Face& face : xray.faces()) {
      if (face.dim == ambient) continue;  // the line's own carrier
      // Regular endpoints: neither point may lie on any proper face.
      if (face_contains(face, xi0) || face_contains(face, xi1)) { ok = false; break; }
      LineFaceResult r = classify_line_vs_face(xi0, direction, face);
      if (face.dim == ambient - 1) {
        if (r.cls == LineFaceClass::non_transversal) { ok = false; break; }
        if (r.cls == LineFaceClass::transversal_crossing)
          crossings.push_back(Crossing{face.label, *r.point});
      } else if (r.cls != LineFaceClass::disjoint) {
        ok = false;  // lines must avoid faces of dimension <= n-3 entirely
        break;
      }
      certificate[face.label] = r.cls;
    }
    if (!ok) continue;

    return LineSelection{xi0,       xi1,     direction, std::move(crossings),
                         std::move(certificate), attempt, grid};
  }
  throw SelectionError("selection failed after " + std::to_string(max_attempts) +
                       " attempts; finest grid 1/2^" + std::to_string(grid));
}

bool regularity_check(const LineSelection& selection, const XRay& xray) {
  for (const Crossing& crossing : selection.crossings) {
    const Face& face = xray.face(crossing.label);
    if (face.dim == 0) continue;  // no direction space to be trapped in
    RMat m(xray.ambient_dim(), face.dim + 1);
    m.block(0, 0, xray.ambient_dim(), face.dim) = basis_matrix(face, xray.ambient_dim());
    m.col(face.dim) = selection.direction.coords();
    if (rank(m) != face.dim + 1) return false;  // direction inside the wall
  }
  return true;
}

SubtorusSplit split_subtorus(const Direction& direction) {
  if (direction.dim() < 2)
    throw InputError("subtorus splitting needs dimension at least 2");
  RMat w = unimodular_completion(direction.coords());
  std::vector<Direction> complement;
  for (Eigen::Index c = 1; c < w.cols(); ++c) complement.emplace_back(w.col(c));
  return SubtorusSplit{direction, std::move(complement), det(w)};
}

}  // namespace dhtk
