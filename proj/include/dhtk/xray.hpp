#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dhtk/polytope.hpp"

namespace dhtk {

/// One stratum of an x-ray: an m-dimensional face of the moment image,
/// given by a point set (its vertices, in ambient coordinates) together
/// with a basis of its direction space. By the structure of moment images
/// the direction space represents the annihilator of the stabilizer
/// subalgebra, so transversality against it is what the regular-value
/// argument needs.
struct Face {
  std::string label;
  int dim = 0;
  std::vector<RVec> basis;     // dim linearly independent direction vectors
  std::vector<RVec> vertices;  // carrier vertices, affine span = basis
};

/// The face stratification of a moment image. The moment image itself is
/// listed as the unique top-dimensional face; every carrier is contained in
/// the moment image, labels are unique.
class XRay {
 public:
  XRay(int ambient_dim, Polytope moment_image, std::vector<Face> faces);

  int ambient_dim() const { return ambient_dim_; }
  const Polytope& moment_image() const { return moment_image_; }
  const std::vector<Face>& faces() const { return faces_; }

  const Face& face(const std::string& label) const;

 private:
  int ambient_dim_;
  Polytope moment_image_;
  std::vector<Face> faces_;
};

enum class LineFaceClass { disjoint, transversal_crossing, non_transversal };

std::string to_string(LineFaceClass c);

struct LineFaceResult {
  LineFaceClass cls = LineFaceClass::disjoint;
  std::optional<RVec> point;  // the crossing point when transversal
};

/// Exact classification of a line against an open face: solve the affine
/// intersection with the face's hull, test the relative interior of the
/// carrier, and compare the line direction with the direction space. A
/// single relative-interior intersection point with the direction outside
/// the face's direction space is a transversal crossing; a line inside the
/// affine hull that meets the open carrier is non-transversal; everything
/// else is disjoint. Total function.
LineFaceResult classify_line_vs_face(const RVec& base, const Direction& dir,
                                     const Face& face);

struct Crossing {
  std::string label;
  RVec point;
};

/// A certified transversal line: rational endpoints near the requested
/// anchors, integer primitive direction (rational-difference condition),
/// the wall crossings, and a classification of every proper face. The
/// moment image itself (the line's carrier) is not classified — a line
/// inside it is neither disjoint from it nor a point-crossing.
struct LineSelection {
  RVec xi0;
  RVec xi1;
  Direction direction;
  std::vector<Crossing> crossings;
  std::map<std::string, LineFaceClass> certificate;
  int attempts = 0;       // attempts consumed, 1-based
  int grid_exponent = 0;  // perturbations were drawn from (1/2^g)-grid
};

/// Picks perturbed rational endpoints xi0 in B(x0, epsilon), xi1 in
/// B(x1, epsilon) (max-norm balls, dyadic perturbation grid that refines
/// with each attempt) such that the full line through them crosses walls
/// ((n-2)-faces) only, transversally, avoids every lower-dimensional face,
/// and both endpoints are regular (interior to the moment image, on no
/// proper face). Deterministic per seed; throws SelectionError after
/// max_attempts, reporting the finest grid tried.
LineSelection select_line(const XRay& xray, const RVec& x0, const RVec& x1,
                          const Rational& epsilon, int max_attempts,
                          std::uint64_t seed);

/// Independent re-check of the regular-value argument: for every crossed
/// wall, the line's direction must lie outside the wall's direction space
/// (exact rank test). True iff all crossings pass.
bool regularity_check(const LineSelection& selection, const XRay& xray);

/// Lattice splitting induced by a circle direction: the direction generates
/// the kernel subalgebra, and an integer complement basis completes it
/// unimodularly (|det| = 1 certificate), so the complement exponentiates to
/// a closed subtorus. Complementarity over the rationals replaces the
/// orthogonal complement, which need not be a lattice summand.
struct SubtorusSplit {
  Direction kernel;
  std::vector<Direction> complement;
  Rational det;  // determinant of [kernel | complement], always +-1
};

SubtorusSplit split_subtorus(const Direction& direction);

}  // namespace dhtk
