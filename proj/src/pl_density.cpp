#include "dhtk/pl_density.hpp"

#include <algorithm>
#include <numeric>

#include "dhtk/errors.hpp"
#include "dhtk/random_util.hpp"

namespace dhtk {

PLDensity::PLDensity(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2)
    throw InputError("density needs at least two breakpoints");
  if (values_.size() != breakpoints_.size())
    throw InputError("density needs one value per breakpoint");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw InputError("density breakpoints must be strictly increasing");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < Rational(0))
      throw InputError("density values must be nonnegative");
    if (i > 0 && i + 1 < values_.size() && values_[i] == Rational(0))
      throw InputError("density must be positive at interior breakpoints");
  }
}

Rational PLDensity::slope(std::size_t i) const {
  return (values_[i + 1] - values_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
}

Rational PLDensity::integral() const {
  Rational total(0);
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    total += (breakpoints_[i + 1] - breakpoints_[i]) * (values_[i] + values_[i + 1]) / Rational(2);
  return total;
}

PLDensity PLDensity::canonical() const {
  std::vector<Rational> bs{breakpoints_.front()};
  std::vector<Rational> vs{values_.front()};
  for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
    // Keep an interior breakpoint only where the slope actually changes.
    if (slope(i - 1) != slope(i)) {
      bs.push_back(breakpoints_[i]);
      vs.push_back(values_[i]);
    }
  }
  bs.push_back(breakpoints_.back());
  vs.push_back(values_.back());
  return PLDensity(std::move(bs), std::move(vs));
}

bool operator==(const PLDensity& a, const PLDensity& b) {
  PLDensity ca = a.canonical();
  PLDensity cb = b.canonical();
  return ca.breakpoints_ == cb.breakpoints_ && ca.values_ == cb.values_;
}

Rational evaluate(const PLDensity& f, const Rational& t) {
  const auto& bs = f.breakpoints();
  const auto& vs = f.values();
  if (t < bs.front() || t > bs.back()) return Rational(0);
  // First breakpoint strictly greater than t; t lies in piece (hi-1, hi).
  auto it = std::upper_bound(bs.begin(), bs.end(), t);
  if (it == bs.end()) return vs.back();
  std::size_t hi = static_cast<std::size_t>(it - bs.begin());
  if (hi == 0) return vs.front();
  std::size_t lo = hi - 1;
  return vs[lo] + (t - bs[lo]) * (vs[hi] - vs[lo]) / (bs[hi] - bs[lo]);
}

Rational integral_between(const PLDensity& f, const Rational& a, const Rational& b) {
  if (b < a) throw InputError("integral bounds out of order");
  const auto& bs = f.breakpoints();
  Rational lo = max(a, f.support_min());
  Rational hi = min(b, f.support_max());
  if (!(lo < hi)) return Rational(0);
  Rational total(0);
  for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
    Rational piece_lo = max(lo, bs[i]);
    Rational piece_hi = min(hi, bs[i + 1]);
    if (!(piece_lo < piece_hi)) continue;
    total += (piece_hi - piece_lo) * (evaluate(f, piece_lo) + evaluate(f, piece_hi)) / Rational(2);
  }
  return total;
}

std::vector<SlopeJump> slope_jumps(const PLDensity& f) {
  std::vector<SlopeJump> jumps;
  for (std::size_t i = 1; i + 1 < f.breakpoints().size(); ++i) {
    Rational left = f.slope(i - 1);
    Rational right = f.slope(i);
    jumps.push_back(SlopeJump{f.breakpoints()[i], left, right, right - left});
  }
  return jumps;
}

LogConcavityVerdict is_log_concave(const PLDensity& f) {
  for (const SlopeJump& j : slope_jumps(f))
    if (j.jump > Rational(0)) return LogConcavityVerdict{false, j};
  return LogConcavityVerdict{true, std::nullopt};
}

bool pointwise_midpoint_check(const PLDensity& f, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("midpoint check needs at least one trial");
  if (f.support_min() == f.support_max()) throw InputError("empty interior");

  std::mt19937_64 rng(seed);
  const Rational lo = f.support_min();
  const Rational width = f.support_max() - lo;
  // Support points on a dyadic grid, convexity parameters t = a/64.
  constexpr std::uint64_t kGrid = 1u << 20;
  constexpr std::uint64_t kTGrid = 64;

  for (int trial = 0; trial < trials; ++trial) {
    Rational x0 = lo + width * Rational(Int(draw_below(rng, kGrid + 1)), Int(kGrid));
    Rational x1 = lo + width * Rational(Int(draw_below(rng, kGrid + 1)), Int(kGrid));
    std::uint64_t a_raw = draw_below(rng, kTGrid + 1);
    // t = a/q in lowest terms so that q*t and q*(1-t) are integers.
    std::uint64_t g = std::gcd(a_raw, kTGrid);
    unsigned a = static_cast<unsigned>(a_raw / g);
    unsigned q = static_cast<unsigned>(kTGrid / g);

    Rational t{Int(a), Int(q)};
    Rational mid = t * x1 + (Rational(1) - t) * x0;
    Rational fm = evaluate(f, mid), f1 = evaluate(f, x1), f0 = evaluate(f, x0);
    // f(mid)^q >= f(x1)^a * f(x0)^(q-a), cross-multiplied so the comparison
    // stays on integers (all denominators positive, so the sense is kept)
    // and never pays rational re-normalization on the powered values.
    Int lhs = mp::pow(fm.num(), q) * mp::pow(f1.den(), a) * mp::pow(f0.den(), q - a);
    Int rhs = mp::pow(f1.num(), a) * mp::pow(f0.num(), q - a) * mp::pow(fm.den(), q);
    if (lhs < rhs) return false;
  }
  return true;
}

}  // namespace dhtk
