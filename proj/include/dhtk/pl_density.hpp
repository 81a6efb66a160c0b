#pragma once

#include <optional>
#include <vector>

#include "dhtk/rational.hpp"

namespace dhtk {

/// A continuous, piecewise-linear, nonnegative density on a closed interval,
/// stored as breakpoints t_0 < ... < t_k with the value at each breakpoint.
/// The function interpolates linearly on each piece and is 0 outside
/// [t_0, t_k]. Values are >= 0 everywhere and > 0 at interior breakpoints:
/// connected moment images have positive density on the interior of the
/// support, and the log-concavity criterion divides by the value there.
///
/// Redundant (collinear) interior breakpoints are legal on input; canonical()
/// removes them, and equality compares canonical forms.
class PLDensity {
 public:
  PLDensity(std::vector<Rational> breakpoints, std::vector<Rational> values);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& values() const { return values_; }

  Rational support_min() const { return breakpoints_.front(); }
  Rational support_max() const { return breakpoints_.back(); }

  /// Number of affine pieces (k).
  std::size_t piece_count() const { return breakpoints_.size() - 1; }

  /// Slope of piece i (between breakpoints i and i+1), exact.
  Rational slope(std::size_t i) const;

  /// Total mass: exact integral over the support (trapezoid per piece).
  Rational integral() const;

  /// Same function with collinear interior breakpoints removed.
  PLDensity canonical() const;

  /// Equality of canonical forms (two representations of the same function
  /// compare equal even if one carries redundant breakpoints).
  friend bool operator==(const PLDensity& a, const PLDensity& b);

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
};

/// Derivative discontinuity at an interior breakpoint.
struct SlopeJump {
  Rational location;
  Rational left_slope;
  Rational right_slope;
  Rational jump;  // = right_slope - left_slope
};

struct LogConcavityVerdict {
  bool is_log_concave = false;
  std::optional<SlopeJump> witness;  // a violating breakpoint when false
};

/// Piecewise-linear interpolant at t; 0 outside the support.
Rational evaluate(const PLDensity& f, const Rational& t);

/// Exact integral of f over [a, b] (a <= b), treating f as 0 outside its
/// support.
Rational integral_between(const PLDensity& f, const Rational& a, const Rational& b);

/// One SlopeJump per interior breakpoint, in increasing location order.
/// Empty when f has a single piece.
std::vector<SlopeJump> slope_jumps(const PLDensity& f);

/// Log-concavity verdict for a PL density.
///
/// Lemma (reduction to slope jumps): let f be continuous, piecewise linear,
/// and positive on the interior of its support. Within an affine piece,
/// (log f)'' = -(f')^2/f^2 <= 0 holds automatically because f'' = 0, so the
/// only way log f can fail to be concave is at a breakpoint; there the jump
/// of (log f)' equals (right_slope - left_slope)/f, whose sign is the sign
/// of the slope jump. Hence f is log-concave on its support iff every
/// interior slope jump is <= 0 — which for positive piecewise-linear f is
/// concavity of f itself. Endpoint zeros do not affect concavity of log f on
/// the (open) support.
LogConcavityVerdict is_log_concave(const PLDensity& f);

/// Definition-level randomized oracle for log-concavity: samples `trials`
/// rational triples (x0, x1, t) with x0, x1 in the support and t in [0, 1]
/// and checks the midpoint inequality
///     f(t*x1 + (1-t)*x0)^q  >=  f(x1)^(q*t) * f(x0)^(q*(1-t))
/// in multiplicative exact form, with q the denominator of t (so both
/// exponents are integers and no logarithm is ever evaluated). Returns true
/// iff all trials pass. Deterministic per seed.
bool pointwise_midpoint_check(const PLDensity& f, int trials, std::uint64_t seed);

}  // namespace dhtk
