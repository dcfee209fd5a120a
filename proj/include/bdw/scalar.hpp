#pragma once

// Scalar backends: exact rationals, doubles and complex doubles, plus the
// runtime-tagged QScalar used where the mode is chosen at run time.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <variant>

#include "bdw/errors.hpp"

namespace bdw {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Complex = std::complex<double>;

template <class T>
struct ScalarTraits {
  static constexpr bool exact = false;
  static constexpr bool complex = false;
};
template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr bool complex = false;
};
template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr bool complex = true;
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;
template <class T>
inline constexpr bool is_complex_v = ScalarTraits<T>::complex;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return std::abs(to_double(x)); }
inline double magnitude(const Complex& x) { return std::abs(x); }

inline double conj(double x) { return x; }
inline Rational conj(const Rational& x) { return x; }
inline Complex conj(const Complex& x) { return std::conj(x); }

template <class T>
bool is_zero(const T& x) {
  return x == T(0);
}

/// Value with the same scalar mode as `like`, equal to one.
template <class T>
T unit_like(const T&) {
  return T(1);
}
template <class T>
T zero_like(const T&) {
  return T(0);
}

/// Integer power, negative exponents allowed.
template <class T>
T ipow(T base, long long e) {
  T result = unit_like(base);
  if (e < 0) {
    base = unit_like(base) / base;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

namespace detail {
/// Optional sign then decimal digits. Leading zeros are dropped because
/// cpp_int would read them as an octal prefix.
inline boost::multiprecision::cpp_int parse_decimal_integer(std::string s, const std::string& context) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError("cannot parse '" + context + "'");
  s.erase(0, std::min(s.find_first_not_of('0'), s.size() - 1));
  boost::multiprecision::cpp_int v(s);
  return neg ? -v : v;
}
}  // namespace detail

/// Parses "a/b", an integer, or a finite decimal ("0.25", "1e-3") exactly.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational num(detail::parse_decimal_integer(text.substr(0, slash), text));
    Rational den(detail::parse_decimal_integer(text.substr(slash + 1), text));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return num / den;
  }
  std::string mant = text;
  long long exp10 = 0;
  auto epos = mant.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = static_cast<long long>(detail::parse_decimal_integer(mant.substr(epos + 1), text));
    mant = mant.substr(0, epos);
  }
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  Rational value(detail::parse_decimal_integer(mant, text));
  Rational ten(10);
  return exp10 >= 0 ? value * ipow(ten, exp10) : value / ipow(ten, -exp10);
}

enum class ScalarMode { exact, floating };

/// A scalar whose mode (exact rational or double) is fixed at construction.
/// Arithmetic between different modes throws ModeMismatch.
class QScalar {
 public:
  QScalar() : value_(Rational(0)) {}
  QScalar(Rational r) : value_(std::move(r)) {}  // NOLINT(implicit)
  explicit QScalar(double d) : value_(d) {
    if (!std::isfinite(d)) throw DomainError("floating QScalar must be finite");
  }
  static QScalar exact(const std::string& text) { return QScalar(parse_rational(text)); }

  ScalarMode mode() const {
    return std::holds_alternative<Rational>(value_) ? ScalarMode::exact : ScalarMode::floating;
  }
  bool is_exact() const { return mode() == ScalarMode::exact; }
  const Rational& rational() const {
    if (!is_exact()) throw ModeMismatch("rational() on a floating scalar");
    return std::get<Rational>(value_);
  }
  double to_double() const {
    return is_exact() ? bdw::to_double(std::get<Rational>(value_)) : std::get<double>(value_);
  }

  friend QScalar operator+(const QScalar& a, const QScalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
  }
  friend QScalar operator-(const QScalar& a, const QScalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
  }
  friend QScalar operator*(const QScalar& a, const QScalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
  }
  friend QScalar operator/(const QScalar& a, const QScalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
  }
  QScalar operator-() const {
    return is_exact() ? QScalar(Rational(-std::get<Rational>(value_)))
                      : QScalar(-std::get<double>(value_));
  }
  friend bool operator==(const QScalar& a, const QScalar& b) {
    if (a.mode() != b.mode()) throw ModeMismatch("comparison across scalar modes");
    return a.value_ == b.value_;
  }
  friend bool operator<(const QScalar& a, const QScalar& b) {
    if (a.mode() != b.mode()) throw ModeMismatch("comparison across scalar modes");
    return a.is_exact() ? std::get<Rational>(a.value_) < std::get<Rational>(b.value_)
                        : std::get<double>(a.value_) < std::get<double>(b.value_);
  }

 private:
  template <class Op>
  static QScalar combine(const QScalar& a, const QScalar& b, Op op) {
    if (a.mode() != b.mode()) throw ModeMismatch("mixed exact/floating arithmetic");
    if (a.is_exact()) return QScalar(Rational(op(std::get<Rational>(a.value_), std::get<Rational>(b.value_))));
    double r = op(std::get<double>(a.value_), std::get<double>(b.value_));
    if (!std::isfinite(r)) throw DomainError("floating QScalar result is not finite");
    return QScalar(r);
  }

  std::variant<Rational, double> value_;
};

inline QScalar unit_like(const QScalar& like) {
  return like.is_exact() ? QScalar(Rational(1)) : QScalar(1.0);
}
inline QScalar zero_like(const QScalar& like) {
  return like.is_exact() ? QScalar(Rational(0)) : QScalar(0.0);
}
inline bool is_zero(const QScalar& x) {
  return x == zero_like(x);
}
inline double to_double(const QScalar& x) { return x.to_double(); }
inline double magnitude(const QScalar& x) { return std::abs(x.to_double()); }

/// Lifts a double-valued parameter into the scalar type T.
template <class T>
T scalar_from(double x) {
  if constexpr (std::is_same_v<T, QScalar>) {
    return QScalar(x);
  } else {
    return T(x);
  }
}

}  // namespace bdw
