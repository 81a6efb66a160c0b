#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "dhtk/errors.hpp"

namespace dhtk {

namespace mp = boost::multiprecision;

/// Arbitrary-precision integer used for lattice data (weights, orders,
/// determinants, grid indices).
using Int = mp::cpp_int;

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator (the backing cpp_rational maintains that invariant).
///
/// This is a deliberate strong type rather than a bare cpp_rational: it pins
/// down the exact constructor set (cpp_rational's generic constructors
/// interact badly with Eigen's convertibility probing) and carries the
/// NumTraits specialization below that makes it usable as an Eigen scalar.
class Rational {
 public:
  Rational() = default;
  template <typename T>
    requires(std::integral<T> && !std::same_as<T, bool>)
  Rational(T n) : v_(n) {}                  // NOLINT: implicit by design
  Rational(const Int& n) : v_(n) {}         // NOLINT
  Rational(const Int& num, const Int& den) {
    // cpp_rational's two-integer constructor demands canonical input; divide
    // instead so any sign/gcd combination normalizes.
    if (den == 0) throw InputError("rational with zero denominator");
    v_ = mp::cpp_rational(num);
    v_ /= den;
  }
  explicit Rational(mp::cpp_rational v) : v_(std::move(v)) {}

  Int num() const { return mp::numerator(v_); }
  Int den() const { return mp::denominator(v_); }
  bool is_integer() const { return mp::denominator(v_) == 1; }
  bool is_zero() const { return v_.is_zero(); }
  int sign() const { return v_.sign(); }

  const mp::cpp_rational& backend() const { return v_; }

  Rational operator-() const { return Rational(mp::cpp_rational(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_.is_zero()) throw InputError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Rational abs(const Rational& a) { return a.v_ < 0 ? -a : a; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& a) {
    return os << to_string(a);
  }

  /// Canonical literal: "p/q" in lowest terms, "p" when q == 1.
  friend std::string to_string(const Rational& a) {
    std::string s = a.num().str();
    if (!a.is_integer()) s += "/" + a.den().str();
    return s;
  }

 private:
  mp::cpp_rational v_;
};

/// Parses the canonical literal form: optional sign, digits, optional
/// "/digits". Rejects anything else (whitespace, floats, empty fields).
inline Rational parse_rational(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw ParseError("bad rational literal: \"" + text + "\"");
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t num_begin = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == num_begin) return fail();
  Int num(text.substr(num_begin, pos - num_begin));
  if (negative) num = -num;
  if (pos == text.size()) return Rational(num);
  if (text[pos] != '/') return fail();
  std::size_t den_begin = ++pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == den_begin || pos != text.size()) return fail();
  Int den(text.substr(den_begin));
  if (den == 0) throw ParseError("bad rational literal (zero denominator): \"" + text + "\"");
  return Rational(num, den);
}

inline double to_double(const Rational& a) {
  return a.backend().convert_to<double>();
}

/// Exact conversion from a finite double (every finite double is dyadic).
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite double has no rational value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(x, &exp);          // x = m * 2^exp, |m| in [1/2, 1)
  auto mant = static_cast<long long>(std::ldexp(m, 53));  // 53-bit integer
  exp -= 53;
  Rational r(mant);
  if (exp >= 0) return r * Rational(Int(1) << exp);
  return r / Rational(Int(1) << -exp);
}

/// Largest integer <= a.
inline Int floor_int(const Rational& a) {
  Int q = a.num() / a.den();               // truncates toward zero
  if (a.num() < 0 && q * a.den() != a.num()) --q;
  return q;
}

/// a^e with e >= 0 (numerator and denominator powered separately).
inline Rational pow(const Rational& a, unsigned e) {
  return Rational(mp::pow(a.num(), e), mp::pow(a.den(), e));
}

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace dhtk

namespace Eigen {

/// Scalar traits so dhtk::Rational works inside Eigen dense types.
/// epsilon/dummy_precision are exact zero: comparisons and pivoting must
/// never treat a nonzero rational as negligible.
template <>
struct NumTraits<dhtk::Rational> {
  using Real = dhtk::Rational;
  using NonInteger = dhtk::Rational;
  using Nested = dhtk::Rational;
  using Literal = long long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  static inline Real epsilon() { return dhtk::Rational(0); }
  static inline Real dummy_precision() { return dhtk::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
