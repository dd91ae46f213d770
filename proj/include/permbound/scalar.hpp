#ifndef PERMBOUND_SCALAR_HPP
#define PERMBOUND_SCALAR_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>

namespace permbound {

/// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

enum class Arithmetic { Float64, Rational };

std::string_view to_string(Arithmetic arithmetic);

/// The two scalar backends every algorithm is instantiated for.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

/// Relative tolerance for equality in float mode.
inline constexpr double kFloatEqualityTol = 1e-9;
/// Relative slack for inequalities in float mode.
inline constexpr double kFloatInequalitySlack = 1e-12;

template <Scalar T>
T from_int(long v) {
  return T(v);
}

/// p/q, exact for rationals.
template <Scalar T>
T ratio(long p, long q) {
  if constexpr (is_exact_v<T>) {
    Rational r(p, q);
    r.canonicalize();
    return r;
  } else {
    return static_cast<double>(p) / static_cast<double>(q);
  }
}

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

/// Decimal string; rationals print as "p/q" (or "p" when integral).
std::string to_string(double v);
std::string to_string(const Rational& v);

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const Rational& v) { return sgn(v) == 0; }

inline int sgn_of(double v) { return (v > 0) - (v < 0); }
inline int sgn_of(const Rational& v) { return sgn(v); }

inline double abs_value(double v) { return std::fabs(v); }
inline Rational abs_value(const Rational& v) { return abs(v); }

/// a <= b; exact for rationals, with a small scale-relative slack for doubles.
inline bool leq(const Rational& a, const Rational& b) { return a <= b; }
inline bool leq(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return a <= b + kFloatInequalitySlack * scale;
}

/// a == b; exact for rationals, relative tolerance for doubles.
inline bool approx_equal(const Rational& a, const Rational& b) { return a == b; }
inline bool approx_equal(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= kFloatEqualityTol * scale;
}

/// base^e for any integer exponent; base must be nonzero when e < 0.
template <Scalar T>
T pow_int(const T& base, long e) {
  T result(1);
  T b = e < 0 ? T(T(1) / base) : base;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (k > 0) {
    if (k & 1UL) result = T(result * b);
    b = T(b * b);
    k >>= 1;
  }
  return result;
}

/// max(bits(numerator), bits(denominator)); the representation size proxy.
std::size_t bit_length(const Rational& v);

/// Accepts integers, "p/q", and decimals with optional exponent ("-1.25e-3"),
/// converted exactly.
Rational parse_rational(std::string_view text);
/// Same grammar; decimals go through strtod, "p/q" through a division.
double parse_double(std::string_view text);

template <Scalar T>
T parse_scalar(std::string_view text) {
  if constexpr (is_exact_v<T>) {
    return parse_rational(text);
  } else {
    return parse_double(text);
  }
}

template <Scalar T>
constexpr Arithmetic arithmetic_of() {
  return is_exact_v<T> ? Arithmetic::Rational : Arithmetic::Float64;
}

}  // namespace permbound

#endif
