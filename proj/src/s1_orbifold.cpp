#include "dhtk/s1_orbifold.hpp"

#include <algorithm>

#include "dhtk/errors.hpp"

namespace dhtk {

namespace {

void validate_interior(const InteriorFixedPoint& p) {
  if (p.weight1 == 0 || p.weight2 == 0)
    throw InputError("interior fixed point weights must be nonzero");
  if ((p.weight1 < 0) == (p.weight2 < 0))
    throw InputError("interior fixed point weights must have opposite signs");
  if (p.order < 1) throw InputError("fixed point order must be positive");
}

void validate_extremal(const ExtremalSet& e, bool is_min) {
  if (const auto* iso = std::get_if<IsolatedExtremum>(&e)) {
    if (iso->weight1 == 0 || iso->weight2 == 0)
      throw InputError("extremal fixed point weights must be nonzero");
    bool positive = iso->weight1 > 0 && iso->weight2 > 0;
    bool negative = iso->weight1 < 0 && iso->weight2 < 0;
    if (is_min ? !positive : !negative)
      throw InputError(is_min ? "isolated minimum needs positive weights"
                              : "isolated maximum needs negative weights");
    if (iso->order < 1) throw InputError("fixed point order must be positive");
  } else {
    const auto& surf = std::get<SurfaceExtremum>(e);
    if (!(surf.area > Rational(0)))
      throw InputError("fixed surface area must be positive");
  }
}

/// Slope of the density adjacent to an isolated extremum: 1/(d*p1*p2).
/// Positive at a minimum (both weights > 0), negative at a maximum.
Rational isolated_slope(const IsolatedExtremum& e) {
  return Rational(1) / Rational(Int(e.order) * Int(e.weight1) * Int(e.weight2));
}

/// Levels, accumulated jump per level, initial value/slope — the shared
/// telescoping walk under build_dh, closure_report, and the report output.
struct Telescope {
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;   // value at each breakpoint, telescoped
  std::vector<Rational> slopes;   // slope after each breakpoint but the last
};

Telescope telescope(const S1FixedPointData& data) {
  Telescope out;
  out.breakpoints.push_back(extremal_level(data.min()));

  Rational value;
  Rational slope;
  if (const auto* iso = std::get_if<IsolatedExtremum>(&data.min())) {
    value = Rational(0);
    slope = isolated_slope(*iso);
  } else {
    const auto& surf = std::get<SurfaceExtremum>(data.min());
    value = surf.area;
    slope = -surf.euler_integral;
  }
  out.values.push_back(value);

  // Group interior points by level (the list is sorted) and drop the slope
  // by the wall-crossing jump of each group.
  const auto& pts = data.interior();
  for (std::size_t i = 0; i < pts.size();) {
    std::size_t j = i;
    std::vector<InteriorFixedPoint> group;
    while (j < pts.size() && pts[j].level == pts[i].level) group.push_back(pts[j++]);
    value += slope * (pts[i].level - out.breakpoints.back());
    out.breakpoints.push_back(pts[i].level);
    out.values.push_back(value);
    out.slopes.push_back(slope);
    slope += wall_crossing_jump(group);
    i = j;
  }

  Rational max_level = extremal_level(data.max());
  value += slope * (max_level - out.breakpoints.back());
  out.breakpoints.push_back(max_level);
  out.values.push_back(value);
  out.slopes.push_back(slope);
  return out;
}

}  // namespace

Rational extremal_level(const ExtremalSet& e) {
  if (const auto* iso = std::get_if<IsolatedExtremum>(&e)) return iso->level;
  return std::get<SurfaceExtremum>(e).level;
}

S1FixedPointData::S1FixedPointData(ExtremalSet min, ExtremalSet max,
                                   std::vector<InteriorFixedPoint> interior)
    : min_(std::move(min)), max_(std::move(max)), interior_(std::move(interior)) {
  validate_extremal(min_, /*is_min=*/true);
  validate_extremal(max_, /*is_min=*/false);
  Rational lo = extremal_level(min_);
  Rational hi = extremal_level(max_);
  if (!(lo < hi)) throw InputError("minimum level must be below maximum level");
  for (const auto& p : interior_) {
    validate_interior(p);
    if (!(lo < p.level && p.level < hi))
      throw InputError("interior fixed point level outside (min, max)");
  }
  std::stable_sort(interior_.begin(), interior_.end(),
                   [](const InteriorFixedPoint& a, const InteriorFixedPoint& b) {
                     return a.level < b.level;
                   });
}

Rational wall_crossing_jump(const std::vector<InteriorFixedPoint>& points) {
  if (points.empty()) throw InputError("wall crossing needs at least one fixed point");
  for (const auto& p : points) {
    validate_interior(p);
    if (!(p.level == points.front().level))
      throw InputError("wall crossing points must share one level");
  }
  Rational jump(0);
  for (const auto& p : points)
    jump += Rational(1) / Rational(Int(p.order) * Int(p.weight1) * Int(p.weight2));
  return jump;
}

PLDensity build_dh(const S1FixedPointData& data) {
  Telescope t = telescope(data);
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    bool endpoint = (i == 0 || i + 1 == t.values.size());
    if (t.values[i] < Rational(0) || (!endpoint && t.values[i] == Rational(0)))
      throw InconsistencyError("inconsistent data — negative density");
  }
  return PLDensity(std::move(t.breakpoints), std::move(t.values));
}

ClosureReport closure_report(const S1FixedPointData& data) {
  Telescope t = telescope(data);
  ClosureReport report;

  Rational declared_terminal;
  if (const auto* iso = std::get_if<IsolatedExtremum>(&data.max())) {
    declared_terminal = Rational(0);
    report.expected_slope = -isolated_slope(*iso);
  } else {
    const auto& surf = std::get<SurfaceExtremum>(data.max());
    declared_terminal = surf.area;
    report.expected_slope = surf.euler_integral;
  }
  report.residual = t.values.back() - declared_terminal;
  report.computed_slope = t.slopes.back();
  report.slope_ok = (report.computed_slope == report.expected_slope);
  return report;
}

Rational closure_check(const S1FixedPointData& data) {
  ClosureReport report = closure_report(data);
  if (report.residual == Rational(0) && !report.slope_ok)
    throw InconsistencyError("localization closure violated: slope; expected " +
                             to_string(report.expected_slope) + ", computed " +
                             to_string(report.computed_slope));
  return report.residual;
}

TheoremCheckResult is_log_concave_theorem_check(const S1FixedPointData& data) {
  PLDensity density = build_dh(data);
  return TheoremCheckResult{is_log_concave(density), slope_jumps(density), density};
}

}  // namespace dhtk
