#include <doctest.h>

#include <random>

#include "dhtk/errors.hpp"
#include "dhtk/s1_orbifold.hpp"
#include "support/generators.hpp"

using namespace dhtk;

namespace {

const Rational kThird{Int(1), Int(3)};

S1FixedPointData hirzebruch() {
  return S1FixedPointData(SurfaceExtremum{Rational(0), Rational(1), Rational(0)},
                          IsolatedExtremum{Rational(2), -1, -1, 1},
                          {InteriorFixedPoint{Rational(1), -1, 1, 1}});
}

S1FixedPointData product_spheres() {
  return S1FixedPointData(SurfaceExtremum{Rational(0), Rational(1), Rational(0)},
                          SurfaceExtremum{Rational(1), Rational(1), Rational(0)}, {});
}

S1FixedPointData cp2() {
  return S1FixedPointData(SurfaceExtremum{Rational(0), Rational(1), Rational(1)},
                          IsolatedExtremum{Rational(1), -1, -1, 1}, {});
}

}  // namespace

TEST_CASE("wall_crossing_jump instantiates the localization formula") {
  CHECK(wall_crossing_jump({{Rational(0), -1, 1, 1}}) == Rational(-1));
  CHECK(wall_crossing_jump({{Rational(0), -1, 1, 1}, {Rational(0), -1, 2, 1}}) ==
        Rational{Int(-3), Int(2)});
  CHECK(wall_crossing_jump({{Rational(0), -1, 1, 2}}) == Rational{Int(-1), Int(2)});

  CHECK_THROWS_AS(wall_crossing_jump({}), InputError);
  CHECK_THROWS_AS(wall_crossing_jump({{Rational(0), -1, 1, 1}, {Rational(1), -1, 1, 1}}),
                  InputError);
}

TEST_CASE("wall_crossing_jump is strictly negative for every valid input") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    int k = 1 + static_cast<int>(rng() % 4);
    std::vector<InteriorFixedPoint> pts;
    for (int i = 0; i < k; ++i)
      pts.push_back({Rational(0), -(1 + static_cast<long long>(rng() % 9)),
                     1 + static_cast<long long>(rng() % 9),
                     1 + static_cast<long long>(rng() % 4)});
    CHECK(wall_crossing_jump(pts) < Rational(0));
  }
}

TEST_CASE("fixed point data validation") {
  // same-sign interior weights
  CHECK_THROWS_AS(S1FixedPointData(SurfaceExtremum{Rational(0), Rational(1), Rational(0)},
                                   SurfaceExtremum{Rational(2), Rational(1), Rational(0)},
                                   {InteriorFixedPoint{Rational(1), 1, 1, 1}}),
                  InputError);
  // interior level outside (min, max)
  CHECK_THROWS_AS(S1FixedPointData(SurfaceExtremum{Rational(0), Rational(1), Rational(0)},
                                   SurfaceExtremum{Rational(2), Rational(1), Rational(0)},
                                   {InteriorFixedPoint{Rational(2), -1, 1, 1}}),
                  InputError);
  // min level must be below max level
  CHECK_THROWS_AS(S1FixedPointData(SurfaceExtremum{Rational(2), Rational(1), Rational(0)},
                                   SurfaceExtremum{Rational(0), Rational(1), Rational(0)}, {}),
                  InputError);
  // isolated minimum needs positive weights
  CHECK_THROWS_AS(S1FixedPointData(IsolatedExtremum{Rational(0), -1, 1, 1},
                                   IsolatedExtremum{Rational(1), -1, -1, 1}, {}),
                  InputError);
  // nonpositive order
  CHECK_THROWS_AS(S1FixedPointData(SurfaceExtremum{Rational(0), Rational(1), Rational(0)},
                                   SurfaceExtremum{Rational(2), Rational(1), Rational(0)},
                                   {InteriorFixedPoint{Rational(1), -1, 1, 0}}),
                  InputError);
  // zero area
  CHECK_THROWS_AS(S1FixedPointData(SurfaceExtremum{Rational(0), Rational(0), Rational(0)},
                                   SurfaceExtremum{Rational(2), Rational(1), Rational(0)}, {}),
                  InputError);

  // interior list is sorted by level on construction
  S1FixedPointData data(SurfaceExtremum{Rational(0), Rational(3), Rational(0)},
                        SurfaceExtremum{Rational(3), Rational(3), Rational(-2)},
                        {InteriorFixedPoint{Rational(2), -1, 1, 1},
                         InteriorFixedPoint{Rational(1), -1, 1, 1}});
  CHECK(data.interior()[0].level == Rational(1));
  CHECK(data.interior()[1].level == Rational(2));
}

TEST_CASE("build_dh reproduces the pinned densities") {
  PLDensity hirz = build_dh(hirzebruch());
  CHECK(hirz.breakpoints() == std::vector<Rational>{Rational(0), Rational(1), Rational(2)});
  CHECK(hirz.values() == std::vector<Rational>{Rational(1), Rational(1), Rational(0)});

  PLDensity cp = build_dh(cp2());
  CHECK(cp.breakpoints() == std::vector<Rational>{Rational(0), Rational(1)});
  CHECK(cp.values() == std::vector<Rational>{Rational(1), Rational(0)});

  PLDensity prod = build_dh(product_spheres());
  CHECK(prod.breakpoints() == std::vector<Rational>{Rational(0), Rational(1)});
  CHECK(prod.values() == std::vector<Rational>{Rational(1), Rational(1)});
}

TEST_CASE("build_dh handles the orbifold chart-weight fixture") {
  S1FixedPointData data(IsolatedExtremum{Rational(-2), 2, 3, 1},
                        IsolatedExtremum{Rational(4), -4, -3, 1},
                        {InteriorFixedPoint{Rational(0), -1, 2, 2}});
  PLDensity f = build_dh(data);
  CHECK(f.breakpoints() == std::vector<Rational>{Rational(-2), Rational(0), Rational(4)});
  CHECK(f.values() == std::vector<Rational>{Rational(0), kThird, Rational(0)});
  CHECK(closure_check(data) == Rational(0));
}

TEST_CASE("build_dh groups interior points sharing a level into one breakpoint") {
  // square sliced along the diagonal: two walls at level 1
  S1FixedPointData data(IsolatedExtremum{Rational(0), 1, 1, 1},
                        IsolatedExtremum{Rational(2), -1, -1, 1},
                        {InteriorFixedPoint{Rational(1), -1, 1, 1},
                         InteriorFixedPoint{Rational(1), -1, 1, 1}});
  PLDensity f = build_dh(data);
  CHECK(f.breakpoints() == std::vector<Rational>{Rational(0), Rational(1), Rational(2)});
  CHECK(f.values() == std::vector<Rational>{Rational(0), Rational(1), Rational(0)});
  auto jumps = slope_jumps(f);
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0].jump == Rational(-2));
}

TEST_CASE("build_dh rejects data whose density would go negative") {
  S1FixedPointData data(IsolatedExtremum{Rational(0), 1, 1, 1},
                        IsolatedExtremum{Rational(3), -1, -1, 1},
                        {InteriorFixedPoint{Rational(1), -1, 1, 1},
                         InteriorFixedPoint{Rational(1), -1, 1, 1}});
  CHECK_THROWS_AS(build_dh(data), InconsistencyError);
}

TEST_CASE("closure_check: residual channel and slope channel") {
  CHECK(closure_check(hirzebruch()) == Rational(0));
  CHECK(closure_check(product_spheres()) == Rational(0));

  // interior weight2 corrupted 1 -> 2: jump shrinks to -1/2 and the
  // telescoped terminal value misses the declared 0 by 1/2.
  S1FixedPointData corrupt(SurfaceExtremum{Rational(0), Rational(1), Rational(0)},
                           IsolatedExtremum{Rational(2), -1, -1, 1},
                           {InteriorFixedPoint{Rational(1), -1, 2, 1}});
  CHECK(closure_check(corrupt) == Rational{Int(1), Int(2)});
  ClosureReport report = closure_report(corrupt);
  CHECK(report.residual == Rational{Int(1), Int(2)});
  CHECK_FALSE(report.slope_ok);  // computed -1/2, expected -1

  // residual zero but max weights inconsistent with the incoming slope
  S1FixedPointData bad_slope(SurfaceExtremum{Rational(0), Rational(1), Rational(0)},
                             IsolatedExtremum{Rational(2), -1, -2, 1},
                             {InteriorFixedPoint{Rational(1), -1, 1, 1}});
  CHECK_THROWS_WITH_AS(closure_check(bad_slope),
                       "localization closure violated: slope; expected -1/2, computed -1",
                       InconsistencyError);
  ClosureReport report2 = closure_report(bad_slope);
  CHECK(report2.residual == Rational(0));
  CHECK(report2.expected_slope == Rational{Int(-1), Int(2)});
  CHECK(report2.computed_slope == Rational(-1));
  CHECK_FALSE(report2.slope_ok);
}

TEST_CASE("theorem check returns true with the jump evidence") {
  TheoremCheckResult r = is_log_concave_theorem_check(hirzebruch());
  CHECK(r.verdict.is_log_concave);
  REQUIRE(r.jumps.size() == 1);
  CHECK(r.jumps[0].jump == Rational(-1));

  CHECK(is_log_concave_theorem_check(product_spheres()).verdict.is_log_concave);
  CHECK(is_log_concave_theorem_check(product_spheres()).jumps.empty());
}

TEST_CASE("theorem holds on random closure-consistent data") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    S1FixedPointData data = testgen::random_s1data(rng, /*include_toric=*/true);
    CHECK(closure_check(data) == Rational(0));
    TheoremCheckResult r = is_log_concave_theorem_check(data);
    CHECK(r.verdict.is_log_concave);
    for (const auto& j : r.jumps) CHECK(j.jump < Rational(0));
  }
}

TEST_CASE("reparametrizing the level axis preserves the verdict") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    PLDensity f = build_dh(testgen::random_s1data(rng));
    for (Rational lambda : {Rational(2), kThird}) {
      std::vector<Rational> scaled;
      for (const Rational& b : f.breakpoints()) scaled.push_back(lambda * b);
      PLDensity g(scaled, f.values());
      for (std::size_t i = 0; i < f.piece_count(); ++i)
        CHECK(g.slope(i) == f.slope(i) / lambda);
      auto fj = slope_jumps(f);
      auto gj = slope_jumps(g);
      REQUIRE(fj.size() == gj.size());
      for (std::size_t i = 0; i < fj.size(); ++i)
        CHECK(gj[i].jump.sign() == fj[i].jump.sign());
      CHECK(is_log_concave(g).is_log_concave == is_log_concave(f).is_log_concave);
    }
  }
}

TEST_CASE("doubling every order halves every jump") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    int k = 1 + static_cast<int>(rng() % 4);
    std::vector<InteriorFixedPoint> pts, doubled;
    for (int i = 0; i < k; ++i) {
      InteriorFixedPoint p{Rational(0), -(1 + static_cast<long long>(rng() % 9)),
                           1 + static_cast<long long>(rng() % 9),
                           1 + static_cast<long long>(rng() % 4)};
      pts.push_back(p);
      p.order *= 2;
      doubled.push_back(p);
    }
    CHECK(wall_crossing_jump(doubled) * Rational(2) == wall_crossing_jump(pts));
  }
}
