#pragma once

// Reference computations for the tests. Nothing here calls into the library
// apart from the scalar types; each oracle is a direct, slow construction.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "bdw/scalar.hpp"

namespace oracle {

using bdw::Rational;

// ---- spin chain from Pauli matrices ----------------------------------------
// Basis index bit i is site i, bit set = spin down; local basis (up, down).

inline Eigen::MatrixXd local(char which, double q = 0) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  switch (which) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case 'm': m << 0, 0, 1, 0; break;          // sigma^-: up -> down
    case 'p': m << 0, 1, 0, 0; break;          // sigma^+
    case 'K': m << q, 0, 0, 1 / q; break;      // q^{sigma^z}
    case 'k': m << 1 / q, 0, 0, q; break;      // q^{-sigma^z}
  }
  return m;
}

/// Kronecker product with factors[i] acting on site i.
inline Eigen::MatrixXd kron_sites(const std::vector<Eigen::MatrixXd>& factors) {
  Eigen::MatrixXd out = factors.back();
  for (int i = static_cast<int>(factors.size()) - 2; i >= 0; --i) {
    Eigen::MatrixXd next = Eigen::kroneckerProduct(out, factors[i]).eval();
    out = next;
  }
  return out;
}

inline Eigen::MatrixXd two_site(int N, int i, char a, char b) {
  std::vector<Eigen::MatrixXd> f(N, local('I'));
  f[i] = local(a);
  f[i + 1] = local(b);
  return kron_sites(f);
}

/// -(XX + YY)/2 + Delta (1 - ZZ)/2 + (q - 1/q)/4 (Z_{i+1} - Z_i) on each bond.
inline Eigen::MatrixXd pauli_hamiltonian(int N, double q) {
  const int dim = 1 << N;
  const double delta = (q + 1 / q) / 2, h = (q - 1 / q) / 4;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd one = Eigen::MatrixXd::Identity(dim, dim);
  for (int i = 0; i + 1 < N; ++i) {
    H -= two_site(N, i, 'p', 'm') + two_site(N, i, 'm', 'p');
    H += delta / 2 * (one - two_site(N, i, 'Z', 'Z'));
    H += h * (two_site(N, i, 'I', 'Z') - two_site(N, i, 'Z', 'I'));
  }
  return H;
}

/// F = sum_y q^{sigma^z} (sites < y) x sigma^- (site y).
inline Eigen::MatrixXd pauli_F(int N, double q) {
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(1 << N, 1 << N);
  for (int y = 0; y < N; ++y) {
    std::vector<Eigen::MatrixXd> f(N, local('I'));
    for (int i = 0; i < y; ++i) f[i] = local('K', q);
    f[y] = local('m');
    F += kron_sites(f);
  }
  return F;
}

/// E = sum_y sigma^+ (site y) x q^{-sigma^z} (sites > y).
inline Eigen::MatrixXd pauli_E(int N, double q) {
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(1 << N, 1 << N);
  for (int y = 0; y < N; ++y) {
    std::vector<Eigen::MatrixXd> f(N, local('I'));
    for (int i = y + 1; i < N; ++i) f[i] = local('k', q);
    f[y] = local('p');
    E += kron_sites(f);
  }
  return E;
}

inline Eigen::MatrixXd pauli_K(int N, double q) { return kron_sites(std::vector<Eigen::MatrixXd>(N, local('K', q))); }

// ---- counting ----------------------------------------------------------------

/// p(0..n) by Euler's pentagonal recurrence.
inline std::vector<long long> partition_numbers(int n) {
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      const long long s = k % 2 ? 1 : -1;
      p[m] += s * p[m - g1];
      if (g2 <= m) p[m] += s * p[m - g2];
    }
  return p;
}

/// Number of partitions of w with at most k parts, each at most j.
inline long long box_count(int k, int j, int w) {
  // dp over parts in decreasing order: choose the multiplicity of each size
  std::map<std::pair<int, int>, long long> dp{{{0, 0}, 1}};  // (weight, parts) -> ways
  for (int size = 1; size <= j; ++size) {
    std::map<std::pair<int, int>, long long> next;
    for (auto [key, ways] : dp)
      for (int c = 0; key.first + c * size <= w && key.second + c <= k; ++c) next[{key.first + c * size, key.second + c}] += ways;
    dp = std::move(next);
  }
  long long total = 0;
  for (auto [key, ways] : dp)
    if (key.first == w) total += ways;
  return total;
}

/// sum over partitions in a k x (n-k) box of t^{|lambda|}.
inline Rational box_generating_function(int n, int k, const Rational& t) {
  if (k < 0 || k > n) return 0;
  Rational s = 0, tw = 1;
  for (int w = 0; w <= k * (n - k); ++w, tw *= t) s += Rational(box_count(k, n - k, w)) * tw;
  return s;
}

// ---- domain-wall configurations of 2p sites ---------------------------------

/// |d| of the configuration: pairs (i < j) with i up and j down.
inline int inversions(std::uint64_t mask, int sites) {
  int inv = 0;
  for (int i = 0; i < sites; ++i)
    for (int j = i + 1; j < sites; ++j)
      if (!(mask >> i & 1) && (mask >> j & 1)) ++inv;
  return inv;
}

/// Part l (1-based, largest first) of the partition of a configuration
/// with p down spins.
inline int part(std::uint64_t mask, int sites, int l) {
  std::vector<int> downs;
  for (int i = 0; i < sites; ++i)
    if (mask >> i & 1) downs.push_back(i);
  const int p = static_cast<int>(downs.size());
  if (l > p) return 0;
  return downs[p - l] - (p - l);
}

template <class F>
void for_each_configuration(int p, F&& f) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * p)); ++mask)
    if (std::popcount(mask) == p) f(mask);
}

/// <sigma^z at site index i> with weights q^{2|d|}.
inline Rational magnetization(int p, const Rational& q, int i) {
  Rational num = 0, den = 0;
  for_each_configuration(p, [&](std::uint64_t mask) {
    Rational w = bdw::ipow(q * q, inversions(mask, 2 * p));
    den += w;
    num += (mask >> i & 1) ? -w : w;
  });
  return num / den;
}

/// P(part l = d, and part l2 = d2 when l2 > 0).
inline Rational displacement(int p, const Rational& q, int l, int d, int l2 = 0, int d2 = 0) {
  Rational num = 0, den = 0;
  for_each_configuration(p, [&](std::uint64_t mask) {
    Rational w = bdw::ipow(q * q, inversions(mask, 2 * p));
    den += w;
    if (part(mask, 2 * p, l) == d && (l2 == 0 || part(mask, 2 * p, l2) == d2)) num += w;
  });
  return num / den;
}

/// Exclusion-process generator on the 2p-site window: a down spin hops right
/// at rate A q, left at rate A / q. Columns sum to zero.
inline Eigen::MatrixXd window_generator(int p, double q, double A, std::vector<std::uint64_t>& states) {
  states.clear();
  for_each_configuration(p, [&](std::uint64_t m) { states.push_back(m); });
  std::map<std::uint64_t, int> at;
  for (std::size_t k = 0; k < states.size(); ++k) at[states[k]] = static_cast<int>(k);
  const int n = static_cast<int>(states.size());
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    const std::uint64_t m = states[c];
    for (int i = 0; i + 1 < 2 * p; ++i) {
      const bool a = m >> i & 1, b = m >> (i + 1) & 1;
      if (a == b) continue;
      const double rate = a ? A * q : A / q;
      const std::uint64_t to = m ^ (std::uint64_t{3} << i);
      W(at[to], c) += rate;
      W(c, c) -= rate;
    }
  }
  return W;
}

/// e^{M} by scaling and squaring of a Taylor polynomial.
inline Eigen::MatrixXd taylor_expm(const Eigen::MatrixXd& M) {
  int s = 0;
  double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) norm /= 2, ++s;
  Eigen::MatrixXd A = M / std::ldexp(1.0, s);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(M.rows(), M.cols()), sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * A / k;
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

}  // namespace oracle
