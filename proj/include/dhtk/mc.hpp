#pragma once

#include <cstdint>
#include <vector>

#include "dhtk/pl_density.hpp"
#include "dhtk/polytope.hpp"

namespace dhtk {

/// Empirical push-forward of uniform measure on a polytope under a level
/// map: counts of accepted samples per level bin. Bin edges are floats —
/// the histogram is the float-world oracle, never a canonical artifact.
struct Histogram {
  std::vector<double> bin_edges;       // bins + 1 edges over the exact support
  std::vector<std::uint64_t> counts;   // one per bin; sums to total_samples
  std::uint64_t total_samples = 0;
};

/// Rejection-samples `samples` uniform points of P (exact membership tests
/// on a dyadic grid in the bounding box) and histograms <x, X> into `bins`
/// equal bins over the exact level range. Deterministic per seed; sampling
/// is chunked with per-chunk derived seeds and merged in chunk order, so
/// the result does not depend on scheduling.
///
/// `samples` counts accepted points. An observed acceptance rate below
/// 1/1000 aborts with "degenerate polytope for sampling".
Histogram mc_pushforward(const Polytope& p, const Direction& x, long long samples,
                         int bins, std::uint64_t seed);

/// Exact sup-norm distance between the histogram's density estimate and the
/// exact density, maximized over bins: the estimate for a bin is
/// count/total * mass/width, the reference is the average of `exact` over
/// the bin. Bin edges are dyadic doubles, hence exactly rational, so the
/// distance itself is an exact Rational.
Rational histogram_supnorm(const Histogram& hist, const PLDensity& exact);

}  // namespace dhtk
