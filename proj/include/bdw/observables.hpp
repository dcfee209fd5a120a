#pragma once

// Ground-state observables of the half-filled sector: magnetization
// profiles (finite p, infinite, scaled), the limit shape, and the laws of
// particle displacements.
//
// The ground state on the p-box weighs each partition d by q^{2|d|}.
// Particle l sits at d_l - l + 1/2; site s is down iff some particle is
// there.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bdw/errors.hpp"
#include "bdw/partitions.hpp"
#include "bdw/qseries.hpp"
#include "bdw/scalar.hpp"

namespace bdw {

// ---- magnetization -----------------------------------------------------------

/// 1 - 2 sum_{k=0}^{p} q^{2k(x+p)} (q^{-2p};q^2)_k / (q^{2+2p};q^2)_k at the
/// label x = x_twice / 2.
template <class T>
T magnetization_closed_form(int p, const T& q, int x_twice) {
  if (p < 1) throw DomainError("p must be positive");
  if (!(zero_like(q) < q && q < unit_like(q))) throw DomainError("need 0 < q < 1");
  const T one = unit_like(q);
  T sum = zero_like(q);
  T a = one;  // (q^{-2p}; q^2)_k / (q^{2+2p}; q^2)_k
  for (int k = 0; k <= p; ++k) {
    sum = sum + ipow(q, static_cast<long long>(k) * (x_twice + 2 * p)) * a;
    a = a * (one - ipow(q, -2 * p + 2 * k)) / (one - ipow(q, 2 + 2 * p + 2 * k));
  }
  return one - (one + one) * sum;
}

/// <sigma3 at site> over the p-box with weights q^{2|d|}.
template <class T>
T brute_force_magnetization(int p, const T& q, HalfInt site) {
  if (p < 1 || p > 8) throw DomainError("brute force limited to 1 <= p <= 8");
  T num = zero_like(q), den = zero_like(q);
  const T q2 = q * q;
  for (const Partition& d : enumerate_box(p)) {
    T w = ipow(q2, d.weight());
    den = den + w;
    num = is_down(d, site) ? num - w : num + w;
  }
  return num / den;
}

/// Relation between sites and the labels of the closed form:
///   m(s) = sign * closed(p, label), label = (mirror ? -s : s) + offset.
struct MagnetizationCalibration {
  int sign = -1;
  bool mirror = false;
  int offset_twice = 1;
  std::string str() const {
    return std::string("m(s) = ") + (sign < 0 ? "-" : "+") + "closed(p, " + (mirror ? "-s" : "s") + " + " +
           std::to_string(offset_twice) + "/2)";
  }
  friend bool operator==(const MagnetizationCalibration&, const MagnetizationCalibration&) = default;
};

inline int calibrated_label_twice(const MagnetizationCalibration& c, HalfInt s) {
  return (c.mirror ? -s.twice() : s.twice()) + c.offset_twice;
}

/// Every (sign, mirror, offset) with offset in {0, +-1/2, +-1} for which the
/// closed form reproduces the brute force exactly at all sites, for each p
/// in `ps`. Ordered so that the first entry is the canonical choice.
inline std::vector<MagnetizationCalibration> calibrate_magnetization_labels(const Rational& q,
                                                                            const std::vector<int>& ps = {2, 3}) {
  std::vector<MagnetizationCalibration> found;
  for (bool mirror : {false, true})
    for (int sign : {-1, 1})
      for (int off : {0, 1, -1, 2, -2}) {
        MagnetizationCalibration c{sign, mirror, off};
        bool ok = true;
        for (int p : ps) {
          for (int i = 0; i < 2 * p && ok; ++i) {
            HalfInt s = HalfInt::from_twice(2 * i - (2 * p - 1));
            Rational closed = magnetization_closed_form(p, q, calibrated_label_twice(c, s));
            ok = Rational(sign) * closed == brute_force_magnetization(p, q, s);
          }
          if (!ok) break;
        }
        if (ok) found.push_back(c);
      }
  return found;
}

/// The calibration in force: m(s) = -closed(p, s + 1/2).
inline constexpr MagnetizationCalibration kMagnetizationCalibration{-1, false, 1};

/// Closed-form magnetization at a half-integer site of the 2p-site window.
template <class T>
T magnetization_at_site(int p, const T& q, HalfInt s, const MagnetizationCalibration& c = kMagnetizationCalibration) {
  T v = magnetization_closed_form(p, q, calibrated_label_twice(c, s));
  return c.sign < 0 ? zero_like(q) - v : v;
}

/// log|theta| and its sign for theta = (q^2;q^2)_inf (w;q^2)_inf (q^2/w;q^2)_inf
/// at w = q^{2x}. Each factor 1 - q^{2y} is formed from the exponent y, so
/// theta is exactly zero at integer x.
struct SignedLog {
  double log_abs = 0;
  int sign = 1;  // 0 when theta vanishes
};

inline SignedLog log_theta(double q, double x, int K) {
  const double lq2 = 2 * std::log(q);
  SignedLog out;
  auto absorb = [&](double y) {
    const double f = -std::expm1(y * lq2);  // 1 - q^{2y}
    if (f == 0) {
      out.sign = 0;
      return;
    }
    if (f < 0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(f));
  };
  // enough factors that the neglected ones differ from 1 by < 1e-18
  int n = K;
  while (n < 1000000 && std::exp((n - std::abs(x)) * lq2) > 1e-18) n *= 2;
  for (int j = 0; j < n && out.sign != 0; ++j) {
    absorb(x + j);      // (w; q^2)
    absorb(j + 1.0);    // (q^2; q^2)
    absorb(1 - x + j);  // (q^2/w; q^2)
  }
  return out;
}

/// 1 - 2 sum_k (-1)^k q^{k(k-1) + 2kx}, the p -> infinity profile at label
/// x. For x < 1/2 it uses m(x) = -m(1-x) - 2 theta(q^{2x}), which avoids the
/// cancellations of the direct sum.
inline Truncated<double> magnetization_infinite(double q, double x, int K = 20) {
  if (!(q > 0 && q < 1)) throw DomainError("need 0 < q < 1");
  if (K < 20) throw DomainError("need K >= 20 terms");
  if (x < 0.5) {
    Truncated<double> r = magnetization_infinite(q, 1 - x, K);
    SignedLog th = log_theta(q, x, K);
    double theta = th.sign == 0 ? 0.0 : th.sign * std::exp(th.log_abs);
    return {-r.value - 2 * theta, r.tail_bound};
  }
  double s = 0;
  const double lq = std::log(q);
  for (int k = 0; k < K; ++k) s += (k % 2 ? -1.0 : 1.0) * std::exp((k * (k - 1.0) + 2.0 * k * x) * lq);
  // alternating with decreasing terms past the peak: bounded by the next one
  double bound = 2 * std::exp((K * (K - 1.0) + 2.0 * K * x) * lq);
  return {1 - 2 * s, bound};
}

struct ScaledProfile {
  double m = 0;   // (1 - e^u) / (1 + e^u)
  double mu = 0;  // 2 log(2 cosh(u/2))
};

inline ScaledProfile scaled_profile_and_limit_shape(double u) {
  ScaledProfile s;
  s.m = -std::tanh(u / 2);
  s.mu = std::abs(u) + 2 * std::log1p(std::exp(-std::abs(u)));
  return s;
}

/// max |m_inf(x) - m(u)| over integer labels x with u = -2 x log q in
/// [u_min, u_max].
inline double scaled_profile_error(double q, double u_min = -5, double u_max = 5, int K = 40) {
  const double scale = -2 * std::log(q);
  double worst = 0;
  for (long x = static_cast<long>(std::ceil(u_min / scale)); x * scale <= u_max; ++x) {
    double u = x * scale;
    worst = std::max(worst, std::abs(magnetization_infinite(q, static_cast<double>(x), K).value -
                                     scaled_profile_and_limit_shape(u).m));
  }
  return worst;
}

/// max |mu'(u) + m(u)| with a central difference of step h at the given u.
inline double limit_shape_derivative_error(const std::vector<double>& us, double h = 1e-5) {
  double worst = 0;
  for (double u : us) {
    double d = (scaled_profile_and_limit_shape(u + h).mu - scaled_profile_and_limit_shape(u - h).mu) / (2 * h);
    worst = std::max(worst, std::abs(d + scaled_profile_and_limit_shape(u).m));
  }
  return worst;
}

/// sum_{a+1 <= y_m < ... < y_1 <= b} q^{2 sum y_i} = q^{2C(m+1,2) + 2am} qbinom(b-a, m; q^2).
template <class T>
T weighted_chain_sum(int a, int b, int m, const T& q) {
  if (b < a || m < 0 || m > b - a) throw RangeError("need 0 <= m <= b - a");
  const T q2 = q * q;
  return ipow(q, 2 * binomial2(m + 1) + 2LL * a * m) * q_binomial(b - a, m, q2);
}

// ---- displacement probabilities -----------------------------------------------

/// P(d_l = d) on the p-box: q^{2ld} [p+d-l, d] [p-d+l-1, l-1] / [2p, p],
/// Gaussian binomials in base q^2. Zero when l > p or d > p.
template <class T>
T prob_single(int p, const T& q, int l, int d) {
  if (p < 1) throw DomainError("p must be positive");
  if (l < 1 || d < 0) throw DomainError("need l >= 1 and d >= 0");
  const T q2 = q * q;
  return ipow(q2, static_cast<long long>(l) * d) * q_binomial(p + d - l, d, q2) *
         q_binomial(p - d + l - 1, l - 1, q2) / q_binomial(2 * p, p, q2);
}

inline void check_joint_arguments(const std::vector<int>& ls, const std::vector<int>& ds) {
  if (ls.empty() || ls.size() != ds.size()) throw DomainError("need equal nonempty lists of rows and parts");
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i] < 1 || ds[i] < 0) throw DomainError("rows start at 1 and parts are nonnegative");
    if (i > 0 && ls[i] <= ls[i - 1]) throw DomainError("rows must increase");
    if (i > 0 && ds[i] > ds[i - 1]) throw DomainError("parts must not increase");
  }
}

namespace detail {
/// q^{2 d_1 l_1 + 2 sum d_{i+1}(l_{i+1} - l_i)} prod [d_i - d_{i+1} + l_{i+1} - l_i - 1, d_i - d_{i+1}].
template <class T>
T joint_common(const T& q2, const std::vector<int>& ls, const std::vector<int>& ds) {
  long long e = static_cast<long long>(ds[0]) * ls[0];
  T prod = unit_like(q2);
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    e += static_cast<long long>(ds[i + 1]) * (ls[i + 1] - ls[i]);
    prod = prod * q_binomial(ds[i] - ds[i + 1] + ls[i + 1] - ls[i] - 1, ds[i] - ds[i + 1], q2);
  }
  return ipow(q2, e) * prod;
}
}  // namespace detail

/// P(d_{l_i} = d_i for all i) on the p-box.
template <class T>
T prob_joint(int p, const T& q, const std::vector<int>& ls, const std::vector<int>& ds) {
  if (p < 1) throw DomainError("p must be positive");
  check_joint_arguments(ls, ds);
  const T q2 = q * q;
  const int n = static_cast<int>(ls.size());
  return detail::joint_common(q2, ls, ds) * q_binomial(p + ds[n - 1] - ls[n - 1], ds[n - 1], q2) *
         q_binomial(p - ds[0] + ls[0] - 1, ls[0] - 1, q2) / q_binomial(2 * p, p, q2);
}

/// p -> infinity: q^{2ld} (q^2;q^2)_inf / ((q^2;q^2)_{l-1} (q^2;q^2)_d).
inline double prob_single_infinite(double q, int l, int d, int K = kDefaultSeriesTruncation) {
  if (l < 1 || d < 0) throw DomainError("need l >= 1 and d >= 0");
  const double q2 = q * q;
  return std::pow(q2, static_cast<double>(l) * d) * q_pochhammer_inf(q2, q2, K).value /
         (q_pochhammer(q2, q2, l - 1) * q_pochhammer(q2, q2, d));
}

inline double prob_joint_infinite(double q, const std::vector<int>& ls, const std::vector<int>& ds,
                                  int K = kDefaultSeriesTruncation) {
  check_joint_arguments(ls, ds);
  const double q2 = q * q;
  return detail::joint_common(q2, ls, ds) * q_pochhammer_inf(q2, q2, K).value /
         (q_pochhammer(q2, q2, ls[0] - 1) * q_pochhammer(q2, q2, ds.back()));
}

/// Reference value by summing q^{2|d|} over the p-box.
template <class T>
T enumerate_prob_joint(int p, const T& q, const std::vector<int>& ls, const std::vector<int>& ds) {
  check_joint_arguments(ls, ds);
  const T q2 = q * q;
  T num = zero_like(q), den = zero_like(q);
  for (const Partition& d : enumerate_box(p)) {
    T w = ipow(q2, d.weight());
    den = den + w;
    bool hit = true;
    for (std::size_t i = 0; i < ls.size() && hit; ++i) hit = d.row(ls[i]) == ds[i];
    if (hit) num = num + w;
  }
  return num / den;
}

/// 1 - 2 P(site s occupied), with P from prob_single summed over particles.
template <class T>
T magnetization_from_probabilities(int p, const T& q, HalfInt s) {
  T down = zero_like(q);
  for (int l = 1; l <= p; ++l) {
    // particle l sits at d_l - l + 1/2
    int d = (s.twice() - 1) / 2 + l;
    if (d >= 0 && d <= p) down = down + prob_single(p, q, l, d);
  }
  return unit_like(q) - (unit_like(q) + unit_like(q)) * down;
}

}  // namespace bdw
