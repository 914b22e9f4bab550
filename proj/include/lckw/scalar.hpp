#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace lckw {

using Rational = boost::multiprecision::mpq_rational;

/// Scalar mode of a computation. Exact mode uses GMP rationals; float mode
/// uses doubles with an absolute tolerance.
enum class ScalarMode { Rational, Float };

/// Default absolute tolerance for float-mode identity checks.
inline constexpr double kFloatTolerance = 1e-9;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::Float;
  static double to_double(double x) { return x; }
  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
  static double abs(double x) { return std::fabs(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::Rational;
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational abs(const Rational& x) { return boost::multiprecision::abs(x); }
};

template <class S>
inline double to_double(const S& x) {
  return ScalarTraits<S>::to_double(x);
}

template <class S>
inline S from_rational(const Rational& q) {
  return ScalarTraits<S>::from_rational(q);
}

template <class S>
inline S from_fraction(long num, long den = 1) {
  return from_rational<S>(Rational(num, den));
}

/// Zero test: exact in rational mode, |x| < tol in float mode.
template <class S>
inline bool is_zero(const S& x, double tol) {
  if constexpr (ScalarTraits<S>::exact) {
    (void)tol;
    return x == 0;
  } else {
    return std::fabs(x) < tol;
  }
}

/// Parses "p", "p/q" or a decimal literal into an exact rational.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p" or "p/q" in lowest terms.
std::string format_rational(const Rational& q);

inline const char* to_string(ScalarMode mode) {
  return mode == ScalarMode::Rational ? "rational" : "float";
}

inline ScalarMode parse_mode(const std::string& text) {
  if (text == "rational") return ScalarMode::Rational;
  if (text == "float") return ScalarMode::Float;
  throw std::invalid_argument("unknown scalar mode '" + text + "'");
}

}  // namespace lckw
