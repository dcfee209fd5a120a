#pragma once

// q-integers, q-factorials, Gaussian binomials and q-Pochhammer symbols.
//
// Every function is generic over the scalar type (Rational, double,
// Complex, QScalar). q-integers are evaluated as the polynomial
// 1 + t + ... + t^{n-1}, never as a ratio, so t = 1 is a legal input.

#include <cmath>
#include <cstddef>
#include <vector>

#include "bdw/errors.hpp"
#include "bdw/scalar.hpp"

namespace bdw {

inline constexpr int kDefaultSeriesTruncation = 200;

/// A truncated infinite product or series together with a bound on the
/// neglected tail.
template <class T>
struct Truncated {
  T value;
  double tail_bound = 0.0;
};

template <class T>
T q_int(int n, const T& t) {
  if (n < 0) throw DomainError("q_int requires n >= 0");
  T sum = zero_like(t);
  for (int j = 0; j < n; ++j) sum = sum * t + unit_like(t);
  return sum;
}

template <class T>
T q_factorial(int n, const T& t) {
  if (n < 0) throw DomainError("q_factorial requires n >= 0");
  T prod = unit_like(t);
  for (int k = 2; k <= n; ++k) prod = prod * q_int(k, t);
  return prod;
}

/// Gaussian binomial via the Pascal rule C(n,k) = C(n-1,k-1) + t^k C(n-1,k).
/// Zero outside 0 <= k <= n (including n < 0).
template <class T>
T q_binomial(int n, int k, const T& t) {
  if (k < 0 || n < 0 || k > n) return zero_like(t);
  if (k > n - k) k = n - k;
  // row[j] holds C(i, j) for the current i; powers[j] = t^j.
  std::vector<T> row(static_cast<std::size_t>(k) + 1, zero_like(t));
  std::vector<T> powers(static_cast<std::size_t>(k) + 1, unit_like(t));
  for (int j = 1; j <= k; ++j) powers[j] = powers[j - 1] * t;
  row[0] = unit_like(t);
  for (int i = 1; i <= n; ++i) {
    int top = i < k ? i : k;
    for (int j = top; j >= 1; --j) row[j] = row[j - 1] + powers[j] * row[j];
  }
  return row[k];
}

/// Finite q-Pochhammer (a; t)_k = prod_{j<k} (1 - a t^j).
template <class T>
T q_pochhammer(const T& a, const T& t, int k) {
  if (k < 0) throw DomainError("q_pochhammer requires k >= 0");
  T prod = unit_like(t);
  T term = a;
  for (int j = 0; j < k; ++j) {
    prod = prod * (unit_like(t) - term);
    term = term * t;
  }
  return prod;
}

/// (a; t)_infinity truncated after `truncation` factors. The reported bound
/// is |a| |t|^K / (1 - |t|) on the log of the neglected tail.
inline Truncated<double> q_pochhammer_inf(double a, double t,
                                          int truncation = kDefaultSeriesTruncation) {
  if (!(std::abs(t) < 1.0)) throw NonConvergent("(a;t)_inf needs |t| < 1");
  if (truncation < 1) throw DomainError("truncation index must be positive");
  Truncated<double> out{q_pochhammer(a, t, truncation), 0.0};
  out.tail_bound = std::abs(a) * std::pow(std::abs(t), truncation) / (1.0 - std::abs(t));
  return out;
}

inline Truncated<double> q_pochhammer_inf(const QScalar& a, const QScalar& t,
                                          int truncation = kDefaultSeriesTruncation) {
  if (a.is_exact() || t.is_exact()) throw ModeMismatch("infinite products need floating mode");
  return q_pochhammer_inf(a.to_double(), t.to_double(), truncation);
}

/// prod_{k=1}^{K} 1 / (1 - q^{2k}); the K -> infinity limit of
/// qbinom(2p, p; q^2) as p grows.
template <class T>
T euler_inverse_product(const T& q, int truncation) {
  if (!(zero_like(q) < q && q < unit_like(q))) throw DomainError("euler_inverse_product needs 0 < q < 1");
  if (truncation < 1) throw DomainError("truncation index must be positive");
  T q2 = q * q;
  return unit_like(q) / q_pochhammer(q2, q2, truncation);
}

inline long long binomial2(long long n) { return n * (n - 1) / 2; }

}  // namespace bdw
