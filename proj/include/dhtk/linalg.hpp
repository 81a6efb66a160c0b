#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "dhtk/errors.hpp"
#include "dhtk/rational.hpp"

namespace dhtk {

using RVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

inline RVec rvec(std::initializer_list<Rational> xs) {
  RVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline Rational dot(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
  Rational s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

/// Determinant by cofactor expansion (n <= 4). Division-free, so it is safe
/// on singular exact-rational matrices where LU pivoting is not.
inline Rational det(const RMat& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw InputError("det: matrix not square");
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Rational s(0);
  RMat minor(n - 1, n - 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    Rational term = m(0, j) * det(minor);
    s += (j % 2 == 0) ? term : -term;
  }
  return s;
}

inline Rational det2(const RVec& a, const RVec& b) {
  if (a.size() != 2 || b.size() != 2) throw InputError("det2: vectors not 2-dimensional");
  return a(0) * b(1) - a(1) * b(0);
}

/// Exact rank via full-pivot LU with zero threshold.
inline Eigen::Index rank(const RMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::FullPivLU<RMat> lu(m);
  lu.setThreshold(Rational(0));
  return lu.rank();
}

/// Kernel basis columns (exact).
inline RMat kernel(const RMat& m) {
  Eigen::FullPivLU<RMat> lu(m);
  lu.setThreshold(Rational(0));
  RMat k = lu.kernel();
  if (lu.dimensionOfKernel() == 0) return RMat(m.cols(), 0);
  return k;
}

/// Solves A x = b exactly; returns false when inconsistent.
inline bool solve(const RMat& a, const RVec& b, RVec& x) {
  Eigen::FullPivLU<RMat> lu(a);
  lu.setThreshold(Rational(0));
  RVec candidate = lu.solve(b);
  RVec residual = a * candidate - b;
  for (Eigen::Index i = 0; i < residual.size(); ++i)
    if (!residual(i).is_zero()) return false;
  x = candidate;
  return true;
}

inline bool is_integer_vector(const RVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_integer()) return false;
  return true;
}

inline bool is_zero_vector(const RVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

/// Content of an integer vector: gcd of the entries' absolute values.
inline Int gcd_of(const RVec& v) {
  Int g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_integer()) throw InputError("gcd_of: vector has non-integer entries");
    g = mp::gcd(g, mp::abs(v(i).num()));
  }
  return g;
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray (orientation preserved).
inline RVec primitive(const RVec& v) {
  if (is_zero_vector(v)) throw InputError("primitive: zero vector has no direction");
  Int l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = mp::lcm(l, v(i).den());
  RVec w = v * Rational(l);
  Int g = gcd_of(w);
  return w / Rational(g);
}

inline std::string to_string(const RVec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v(i));
  }
  return s + ")";
}

/// A primitive nonzero integer vector: circle subgroups of a torus, facet
/// normals, projection kernels.
class Direction {
 public:
  explicit Direction(RVec coords) : coords_(std::move(coords)) {
    if (is_zero_vector(coords_)) throw InputError("direction must be nonzero");
    if (!is_integer_vector(coords_)) throw InputError("direction must have integer coordinates");
    if (gcd_of(coords_) != 1) throw InputError("direction must be primitive");
  }

  const RVec& coords() const { return coords_; }
  Eigen::Index dim() const { return coords_.size(); }

  friend bool operator==(const Direction& a, const Direction& b) {
    return a.coords_ == b.coords_;
  }

 private:
  RVec coords_;
};

/// Extends a primitive integer vector v to an integer basis of Z^n:
/// returns M with first column v and |det M| = 1.
///
/// Standard construction: reduce v to e_1 by a product U of elementary
/// integer row operations (extended Euclid on pairs of entries), tracking
/// V = U^{-1} by the inverse column operations; then M = V.
inline RMat unimodular_completion(const RVec& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw InputError("unimodular_completion: empty vector");
  if (!is_integer_vector(v)) throw InputError("unimodular_completion: non-integer vector");
  if (gcd_of(v) != 1) throw InputError("unimodular_completion: vector not primitive");

  // Fast path: when some entry is +-1 the standard basis minus that slot
  // already completes v. This keeps axis directions natural (kernel e_j
  // yields the coordinate-dropping projection expected downstream).
  for (Eigen::Index j = 0; j < n; ++j) {
    if (abs(v(j)) == Rational(1)) {
      RMat m(n, n);
      m.col(0) = v;
      Eigen::Index c = 1;
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) m.col(c++) = RVec::Unit(n, i);
      return m;
    }
  }

  RVec w = v;
  RMat inv = RMat::Identity(n, n);  // V = U^{-1}, updated by column ops

  // xgcd(a, b) -> (g, s, t) with s*a + t*b = g, g >= 0.
  auto xgcd = [](Int a, Int b) {
    Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
      Int q = a / b;
      Int r = a - q * b;
      a = b; b = r;
      Int s2 = s0 - q * s1; s0 = s1; s1 = s2;
      Int t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    if (a < 0) { a = -a; s0 = -s0; t0 = -t0; }
    return std::tuple<Int, Int, Int>(a, s0, t0);
  };

  for (Eigen::Index i = 1; i < n; ++i) {
    Int a = w(0).num(), b = w(i).num();
    if (b == 0) continue;
    auto [g, s, t] = xgcd(a, b);
    // Row op on w:      [w0; wi] <- [s t; -b/g a/g] [w0; wi]   (det = 1)
    // Column op on inv: columns (0, i) <- (0, i) * [a/g -t; b/g s]
    Int ag = a / g, bg = b / g;
    w(0) = Rational(g);
    w(i) = Rational(0);
    for (Eigen::Index r = 0; r < n; ++r) {
      Rational c0 = inv(r, 0), ci = inv(r, i);
      inv(r, 0) = c0 * Rational(ag) + ci * Rational(bg);
      inv(r, i) = c0 * Rational(Int(-t)) + ci * Rational(s);
    }
  }
  // w(0) is the gcd of the original entries = 1; inv * e_1 = v by construction.
  if (w(0) != Rational(1)) throw InputError("unimodular_completion: internal gcd failure");
  return inv;
}

}  // namespace dhtk
