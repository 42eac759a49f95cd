#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gospace {

using Rational = mpq_class;

template <class T>
using Vec = std::vector<T>;

/// Raised when an operation's precondition is violated (bad sizes, invalid
/// parameters, sign constraints on metrics and so on).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a mathematically valid result,
/// e.g. a matrix that is not in the span of an algebra basis.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScalarMode { rational, floating };

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static bool is_zero(const Rational& x, double /*scale*/ = 1.0) { return sgn(x) == 0; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational abs(const Rational& x) { return ::abs(x); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  // residuals below this count as zero in float mode
  static constexpr double tolerance = 1e-9;
  static bool is_zero(double x, double scale = 1.0) {
    return std::abs(x) <= tolerance * std::max(1.0, scale);
  }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::abs(x); }
};

inline bool is_zero(const Rational& x, double scale = 1.0) { return ScalarTraits<Rational>::is_zero(x, scale); }
inline bool is_zero(double x, double scale = 1.0) { return ScalarTraits<double>::is_zero(x, scale); }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, double>) {
    return to_double(x);
  } else {
    static_assert(std::is_same_v<To, Rational>, "unsupported scalar conversion");
    // exact binary value of the double
    return Rational(x);
  }
}

template <class To, class From>
Vec<To> vec_cast(const Vec<From>& v) {
  Vec<To> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(scalar_cast<To>(x));
  return out;
}

/// Best rational approximation with denominator bounded by max_den
/// (continued-fraction convergents and semiconvergents).
Rational rationalize(double x, std::int64_t max_den);

/// "p/q" or "p"; canonical form.
std::string to_string(const Rational& q);

/// Accepts "p/q", "p", or a decimal literal like "0.25" (decimal is read exactly).
Rational parse_rational(const std::string& text);

/// Rational from a finite double, exactly its binary value.
Rational rational_from_double(double x);

inline std::vector<std::string> to_strings(const Vec<Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

}  // namespace gospace
