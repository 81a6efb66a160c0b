#pragma once

#include <cstdint>
#include <string>

#include "dhtk/mc.hpp"
#include "dhtk/pl_density.hpp"
#include "dhtk/polytope.hpp"
#include "dhtk/s1_orbifold.hpp"
#include "dhtk/xray.hpp"

namespace dhtk {

// File formats. Rationals cross every boundary as exact "p/q" strings (the
// "/q" omitted for integers); weights and orders are plain JSON integers.
// Densities serialize in canonical form. Floats appear only in histogram
// CSV and SVG plot artifacts. All malformed input surfaces as ParseError.

std::string density_to_json(const PLDensity& f);
PLDensity density_from_json(const std::string& text);

/// CSV rows (t, value, right_slope) per breakpoint; the final breakpoint's
/// right slope is 0 (the function vanishes beyond the support).
std::string density_to_csv(const PLDensity& f);

std::string s1data_to_json(const S1FixedPointData& data);
S1FixedPointData s1data_from_json(const std::string& text);

std::string polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const std::string& text);

std::string xray_to_json(const XRay& xray);
XRay xray_from_json(const std::string& text);

std::string selection_to_json(const LineSelection& selection);
std::string subtorus_to_json(const SubtorusSplit& split);

/// CSV (bin_left, bin_right, count, density_estimate); the estimate is
/// count/total * mass/width, a float by design.
std::string histogram_to_csv(const Histogram& hist, const Rational& mass);

/// Minimal static plot: the density polyline with breakpoint ticks.
std::string density_to_svg(const PLDensity& f);

std::uint64_t fnv1a64(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a digest of a file's bytes, as fixed-width hex.
std::string file_digest(const std::string& path);

}  // namespace dhtk
