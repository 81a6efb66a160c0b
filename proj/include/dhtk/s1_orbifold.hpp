#pragma once

#include <variant>
#include <vector>

#include "dhtk/pl_density.hpp"
#include "dhtk/rational.hpp"

namespace dhtk {

/// An isolated fixed point of the circle action in the interior of the
/// moment interval: tangent weights (p1, p2) with p1*p2 < 0 (one attracting,
/// one repelling direction — forced at interior levels) and the order d of
/// the local uniformizing group (d = 1 at manifold points).
struct InteriorFixedPoint {
  Rational level;
  long long weight1 = 0;
  long long weight2 = 0;
  long long order = 1;
};

/// Extremal fixed component at the minimum or maximum level: either an
/// isolated fixed point (weights of equal sign, order d) or a fixed surface
/// (its symplectic area is the density value at the extremal level, and the
/// density slope adjacent to the extremum is -euler_integral at a minimum,
/// +euler_integral at a maximum).
struct IsolatedExtremum {
  Rational level;
  long long weight1 = 0;
  long long weight2 = 0;
  long long order = 1;
};

struct SurfaceExtremum {
  Rational level;
  Rational area;
  Rational euler_integral;
};

using ExtremalSet = std::variant<IsolatedExtremum, SurfaceExtremum>;

Rational extremal_level(const ExtremalSet& e);

/// Fixed-point data of a closed 4-dimensional Hamiltonian circle orbifold:
/// the two extremal sets plus all interior isolated fixed points, sorted by
/// level (several points may share a critical level). Constructor-validated.
class S1FixedPointData {
 public:
  S1FixedPointData(ExtremalSet min, ExtremalSet max,
                   std::vector<InteriorFixedPoint> interior);

  const ExtremalSet& min() const { return min_; }
  const ExtremalSet& max() const { return max_; }
  const std::vector<InteriorFixedPoint>& interior() const { return interior_; }

 private:
  ExtremalSet min_;
  ExtremalSet max_;
  std::vector<InteriorFixedPoint> interior_;
};

/// Exact jump of DH' across a critical level: sum over the fixed points on
/// that fiber of 1/(d_p * p1 * p2). Strictly negative, since every interior
/// point has p1*p2 < 0. All points must share one level.
Rational wall_crossing_jump(const std::vector<InteriorFixedPoint>& points);

/// Builds the Duistermaat–Heckman density on [min.level, max.level] by
/// integrating the wall-crossing formula: the density is affine between
/// critical levels (DH'' = 0 there), the slope drops by wall_crossing_jump
/// at each interior critical level, and the extremal sets fix the boundary
/// behavior — a fixed surface starts at value = area with slope
/// -euler_integral; an isolated extremum starts at 0 with slope
/// 1/(d * p1 * p2) (reduced volume of the uniformized local chart; the
/// convention is pinned bit-exactly by the polytope slicing oracle).
///
/// Throws InconsistencyError("inconsistent data — negative density") when
/// the running value dips below zero before the maximum: no closed orbifold
/// produces such data.
PLDensity build_dh(const S1FixedPointData& data);

/// Everything closure_check knows, in one record (no error channel):
/// the telescoped terminal-value residual and both terminal slopes.
struct ClosureReport {
  Rational residual;        // value at max.level minus declared terminal value
  Rational expected_slope;  // forced by the maximum's local model
  Rational computed_slope;  // slope of the last affine piece
  bool slope_ok = false;
};

ClosureReport closure_report(const S1FixedPointData& data);

/// Global consistency of the data against the localization package: returns
/// the residual r = (telescoped value at max.level) - (declared terminal
/// value: 0 for an isolated maximum, area for a fixed surface). Computed by
/// pure telescoping, so it never trips build_dh's positivity error. r = 0
/// iff the data closes up.
///
/// When the residual is zero, the terminal slope is additionally checked
/// against the maximum's local model (isolated max: -1/(d*p1*p2); surface
/// max: +euler_integral); a mismatch throws InconsistencyError
/// ("localization closure violated: slope ...") carrying both slopes. A
/// nonzero residual is returned, not thrown — it is itself the report.
Rational closure_check(const S1FixedPointData& data);

/// Verdict of the log-concavity theorem on this data, with the jump list
/// for reporting. Builds DH and runs the piecewise-linear verdict; for any
/// data satisfying the invariants the verdict must be true (every interior
/// jump is strictly negative).
struct TheoremCheckResult {
  LogConcavityVerdict verdict;
  std::vector<SlopeJump> jumps;
  PLDensity density;
};

TheoremCheckResult is_log_concave_theorem_check(const S1FixedPointData& data);

}  // namespace dhtk
