#include <doctest.h>

#include <cstdint>
#include <numeric>

#include "dhtk/errors.hpp"
#include "dhtk/mc.hpp"
#include "dhtk/slicing.hpp"

using namespace dhtk;

namespace {

Polytope unit_square() {
  return Polytope(2, {rvec({0, 0}), rvec({1, 0}), rvec({1, 1}), rvec({0, 1})});
}

Polytope hirzebruch_trapezoid() {
  return Polytope(2, {rvec({0, 0}), rvec({2, 0}), rvec({1, 1}), rvec({0, 1})});
}

std::uint64_t count_sum(const Histogram& h) {
  return std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0});
}

}  // namespace

TEST_CASE("sampling is deterministic per seed and conserves the sample count") {
  Histogram a = mc_pushforward(unit_square(), Direction(rvec({1, 0})), 10000, 10, 42);
  Histogram b = mc_pushforward(unit_square(), Direction(rvec({1, 0})), 10000, 10, 42);
  CHECK(a.counts == b.counts);
  CHECK(a.bin_edges == b.bin_edges);
  CHECK(a.total_samples == 10000);
  CHECK(count_sum(a) == 10000);
  CHECK(a.bin_edges.size() == 11);

  Histogram c = mc_pushforward(unit_square(), Direction(rvec({1, 0})), 10000, 10, 43);
  CHECK(c.counts != a.counts);  // different stream
}

TEST_CASE("estimates converge to the exact density") {
  Direction e1(rvec({1, 0}));
  Rational tol{Int(1), Int(50)};

  Histogram sq = mc_pushforward(unit_square(), e1, 1000000, 50, 11);
  CHECK(histogram_supnorm(sq, slice_density(unit_square(), e1)) <= tol);

  Histogram hz = mc_pushforward(hirzebruch_trapezoid(), e1, 1000000, 50, 12);
  CHECK(histogram_supnorm(hz, slice_density(hirzebruch_trapezoid(), e1)) <= tol);

  // level map with a nontrivial kernel direction in 3-space: the fiber areas
  // are constant, so the exact push-forward is still piecewise linear
  std::vector<RVec> cube;
  for (int mask = 0; mask < 8; ++mask)
    cube.push_back(rvec({Rational(mask & 1), Rational((mask >> 1) & 1),
                         Rational((mask >> 2) & 1)}));
  Histogram cb = mc_pushforward(Polytope(3, cube), Direction(rvec({1, 0, 0})), 100000, 10, 13);
  CHECK(histogram_supnorm(cb, PLDensity({Rational(0), Rational(1)},
                                        {Rational(1), Rational(1)})) <= Rational{Int(1), Int(25)});
}

TEST_CASE("degenerate and undersized requests are rejected") {
  Rational eps{Int(1), Int(5000)};
  Polytope sliver(2, {rvec({0, 0}), rvec({1, 1}), rvec({Rational(1), Rational(1) + eps}),
                      rvec({Rational(0), eps})});
  CHECK_THROWS_WITH_AS(mc_pushforward(sliver, Direction(rvec({1, 0})), 10000, 10, 1),
                       "degenerate polytope for sampling", InputError);
  CHECK_THROWS_WITH_AS(mc_pushforward(unit_square(), Direction(rvec({1, 0})), 9999, 10, 1),
                       "need at least 10^4 samples", InputError);
  CHECK_THROWS_WITH_AS(mc_pushforward(unit_square(), Direction(rvec({1, 0})), 10000, 9, 1),
                       "need at least 10 bins", InputError);
  CHECK_THROWS_AS(mc_pushforward(unit_square(), Direction(rvec({1, 0, 0})), 10000, 10, 1),
                  InputError);
}

TEST_CASE("histogram_supnorm is exact on hand-built histograms") {
  PLDensity flat({Rational(0), Rational(1)}, {Rational(1), Rational(1)});
  Histogram h{{0.0, 0.5, 1.0}, {500, 500}, 1000};
  CHECK(histogram_supnorm(h, flat) == Rational(0));
  Histogram skew{{0.0, 0.5, 1.0}, {400, 600}, 1000};
  CHECK(histogram_supnorm(skew, flat) == Rational{Int(1), Int(5)});

  CHECK_THROWS_WITH_AS(histogram_supnorm(Histogram{}, flat), "empty histogram", InputError);
  Histogram bad{{0.0, 0.0}, {7}, 7};
  CHECK_THROWS_WITH_AS(histogram_supnorm(bad, flat), "histogram bins must be increasing",
                       InputError);
}
