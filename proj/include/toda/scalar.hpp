#pragma once

#include <cmath>
#include <gmpxx.h>
#include <string>
#include <string_view>

namespace toda {

using Rational = mpq_class;

// Relative threshold below which a floating-point pivot counts as zero.
inline constexpr double kPivotTolerance = 1e-12;
// Relative tolerance for floating-point pattern/consistency comparisons.
inline constexpr double kFloatCompareTolerance = 1e-8;

// Parses "p", "p/q" or "-p/q" into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

// Per-scalar behaviour needed by the generic linear algebra. Exact scalars
// compare exactly; binary64 uses the documented relative thresholds.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_int(long k) { return Rational(k); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static bool pivot_vanishes(const Rational& p, double /*scale*/) { return sgn(p) == 0; }
  static bool near(const Rational& a, const Rational& b, double /*scale*/) { return a == b; }
  static Rational reciprocal(const Rational& x) { return Rational(1) / x; }
  static double to_double(const Rational& x) { return x.get_d(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double from_int(long k) { return static_cast<double>(k); }
  static bool is_zero(double x) { return x == 0.0; }
  static double magnitude(double x) { return std::fabs(x); }
  static bool pivot_vanishes(double p, double scale) {
    return std::fabs(p) < kPivotTolerance * scale;
  }
  static bool near(double a, double b, double scale) {
    return std::fabs(a - b) <= kFloatCompareTolerance * std::fmax(1.0, scale);
  }
  static double reciprocal(double x) { return 1.0 / x; }
  static double to_double(double x) { return x; }
};

template <class T>
concept Scalar = requires(const T& a, const T& b) {
  { ScalarTraits<T>::zero() };
  { ScalarTraits<T>::one() };
  { a + b };
  { a - b };
  { a * b };
  { ScalarTraits<T>::is_zero(a) } -> std::convertible_to<bool>;
};

}  // namespace toda
