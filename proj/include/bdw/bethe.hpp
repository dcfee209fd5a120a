#pragma once

// Bethe amplitudes and eigenvectors.
//
// Infinite chain over the ferromagnetic vacuum: plane-wave magnons and
// bound states. Finite open chain: the signed sum over permutations and
// reflections, roots for one magnon, Newton refinement and multistart search
// for more. Domain-wall sector: the half-filled coefficient formula and the
// eigenstates B_inf(z) with regularized geometric tails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bdw/chain.hpp"
#include "bdw/errors.hpp"
#include "bdw/linalg.hpp"
#include "bdw/partitions.hpp"
#include "bdw/qseries.hpp"
#include "bdw/scalar.hpp"
#include "bdw/uqsl2.hpp"

namespace bdw {

inline constexpr double kPi = 3.14159265358979323846;

inline double anisotropy(double q) { return (q + 1.0 / q) / 2.0; }

enum class RootContext { infinite, finite };

struct BetheRoots {
  std::vector<Complex> z;
  RootContext context = RootContext::finite;
  int N = 0;               // chain length for finite roots
  bool on_shell = false;   // Bethe equations verified
  double residual = 0.0;   // relative Bethe-equation residual when on_shell
  int m() const { return static_cast<int>(z.size()); }
};

/// sum_a (2 Delta - z_a - 1/z_a).
inline Complex bethe_energy(const std::vector<Complex>& z, double delta) {
  Complex e = 0;
  for (Complex w : z) e += 2.0 * delta - w - 1.0 / w;
  return e;
}

// ---- permutations -------------------------------------------------------

namespace detail {
inline int permutation_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

template <class F>
void for_each_permutation(int m, F&& f) {
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  do {
    f(p, permutation_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

inline Complex cpow_int(Complex z, long long e) { return ipow(z, e); }
}  // namespace detail

// ---- infinite chain over the ferromagnetic vacuum -------------------------

/// Scattering factor A(z_1..z_m) for an ordered tuple of roots.
using ScatteringFn = std::function<Complex(const std::vector<Complex>&)>;

inline ScatteringFn xxz_scattering(double delta) {
  return [delta](const std::vector<Complex>& w) {
    Complex a = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) a *= 1.0 - 2.0 * delta * w[i] + w[i] * w[j];
    return a;
  };
}

/// lambda(x|z) = sum_pi eps_pi A(z_pi) prod_i z_{pi(i)}^{x_i}, x increasing.
inline Complex magnon_amplitude(const std::vector<int>& x, const std::vector<Complex>& z, double delta,
                                const ScatteringFn& A = {}) {
  if (x.size() != z.size()) throw DomainError("need one coordinate per root");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (x[i] <= x[i - 1]) throw DomainError("coordinates must increase");
  const ScatteringFn& scat = A ? A : xxz_scattering(delta);
  const int m = static_cast<int>(z.size());
  Complex total = 0;
  std::vector<Complex> w(z.size());
  detail::for_each_permutation(m, [&](const std::vector<int>& p, int sign) {
    Complex t = 1;
    for (int i = 0; i < m; ++i) {
      w[i] = z[p[i]];
      t *= detail::cpow_int(w[i], x[i]);
    }
    total += static_cast<double>(sign) * scat(w) * t;
  });
  return total;
}

/// Max over m-magnon configurations on sites 1..L-2 of a window of L sites of
/// |(H lambda)(x) - E lambda(x)| / max |lambda|, with H = Delta per
/// antiparallel bond minus one per hop.
inline double ferro_eigen_residual(const std::vector<Complex>& z, double delta, int L, const ScatteringFn& A = {}) {
  const int m = static_cast<int>(z.size());
  if (m == 0) return 0.0;
  if (L < m + 2 + 2) throw WindowTooSmall("window must leave two free sites beyond the magnons");
  const Complex E = bethe_energy(z, delta);
  std::vector<std::vector<int>> configs;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == m) {
      configs.push_back(cur);
      return;
    }
    for (int s = start; s < L; ++s) {
      cur.push_back(s);
      rec(s + 1);
      cur.pop_back();
    }
  };
  rec(0);
  auto amp = [&](const std::vector<int>& x) { return magnon_amplitude(x, z, delta, A); };
  double scale = 0, worst = 0;
  for (const auto& x : configs) scale = std::max(scale, std::abs(amp(x)));
  for (const auto& x : configs) {
    if (x.front() == 0 || x.back() == L - 1) continue;
    auto occupied = [&](int s) { return std::binary_search(x.begin(), x.end(), s); };
    Complex hx = 0;
    int walls = 0;
    for (int s = 0; s + 1 < L; ++s)
      if (occupied(s) != occupied(s + 1)) ++walls;
    hx += delta * walls * amp(x);
    for (int a = 0; a < m; ++a)
      for (int step : {-1, 1}) {
        int t = x[a] + step;
        if (occupied(t)) continue;
        std::vector<int> y = x;
        y[a] = t;
        std::sort(y.begin(), y.end());
        hx -= amp(y);
      }
    worst = std::max(worst, std::abs(hx - E * amp(x)));
  }
  return scale > 0 ? worst / scale : worst;
}

struct BoundState {
  int n = 1;
  double beta = 0.0;
  double eta = 1.0;
  double delta() const { return std::cosh(eta); }
};

/// z_j = sh(i beta + (n/2 - j + 1) eta) / sh(i beta + (n/2 - j) eta), j = 1..n.
inline BetheRoots bound_state_roots(const BoundState& bs) {
  if (bs.n < 1) throw DomainError("bound state needs n >= 1");
  if (!(bs.eta > 0)) throw DomainError("eta must be positive");
  BetheRoots r;
  r.context = RootContext::infinite;
  const Complex ib(0.0, bs.beta);
  for (int j = 1; j <= bs.n; ++j) {
    Complex num = std::sinh(ib + (bs.n / 2.0 - j + 1) * bs.eta);
    Complex den = std::sinh(ib + (bs.n / 2.0 - j) * bs.eta);
    if (std::abs(den) < 1e-13) throw SingularRapidity("vanishing denominator at j = " + std::to_string(j));
    r.z.push_back(num / den);
  }
  return r;
}

/// 2 sh(eta) sh(n eta) / (ch(n eta) - cos(2 beta)).
inline double bound_state_energy(const BoundState& bs) {
  double den = std::cosh(bs.n * bs.eta) - std::cos(2 * bs.beta);
  if (std::abs(den) < 1e-13) throw SingularRapidity("energy denominator vanishes");
  // Denominators of the roots must be nonzero as well.
  (void)bound_state_roots(bs);
  return 2 * std::sinh(bs.eta) * std::sinh(bs.n * bs.eta) / den;
}

/// max_i |z_i - h(z_{i+1})| with h(z) = 2 Delta - 1/z.
inline double h_orbit_residual(const std::vector<Complex>& z, double delta) {
  double r = 0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) r = std::max(r, std::abs(z[i] - (2 * delta - 1.0 / z[i + 1])));
  return r;
}

/// |z_1...z_n - sh(i beta + n eta/2)/sh(i beta - n eta/2)|.
inline double product_formula_residual(const BoundState& bs, const std::vector<Complex>& z) {
  Complex prod = 1;
  for (Complex w : z) prod *= w;
  const Complex ib(0.0, bs.beta);
  Complex expected = std::sinh(ib + bs.n * bs.eta / 2) / std::sinh(ib - bs.n * bs.eta / 2);
  return std::abs(prod - expected);
}

// ---- finite open chain ----------------------------------------------------

/// The sign of a group element: sign(pi) times (-1)^{#reflections}, or
/// sign(pi) alone.
enum class ReflectionSign { alternating, plain };

/// B(a, b) = (1 - 2 Delta b + a b)(1 - 2 Delta / a + b / a).
inline Complex scattering_B(Complex a, Complex b, double delta) {
  return (1.0 - 2.0 * delta * b + a * b) * (1.0 - 2.0 * delta / a + b / a);
}

struct AmplitudeSum {
  Complex value;
  double absolute = 0;  // sum of |terms|: the size without cancellation
};

/// lambda^{(N)}(x|z) summed over the 2^m m! permutations with reflections;
/// x given as increasing site coordinates.
inline AmplitudeSum finite_amplitude_detail(const std::vector<HalfInt>& x, const std::vector<Complex>& z, int N,
                                            double q, ReflectionSign convention = ReflectionSign::alternating) {
  const int m = static_cast<int>(z.size());
  if (static_cast<int>(x.size()) != m) throw DomainError("need one coordinate per root");
  const double delta = anisotropy(q);
  std::vector<long long> expo(x.size());
  for (int j = 0; j < m; ++j) expo[j] = (x[j].twice() - (N + 1)) / 2;
  AmplitudeSum out{0, 0};
  std::vector<Complex> w(z.size());
  detail::for_each_permutation(m, [&](const std::vector<int>& p, int sign) {
    for (unsigned refl = 0; refl < (1u << m); ++refl) {
      int eps = sign;
      for (int j = 0; j < m; ++j) {
        bool r = refl >> j & 1u;
        w[j] = r ? 1.0 / z[p[j]] : z[p[j]];
        if (r && convention == ReflectionSign::alternating) eps = -eps;
      }
      Complex t = static_cast<double>(eps);
      for (int j = 0; j < m; ++j) t *= (1.0 - q * w[j]) * detail::cpow_int(w[j], expo[j]);
      for (int j = 0; j < m; ++j)
        for (int l = j + 1; l < m; ++l) t *= scattering_B(1.0 / w[j], w[l], delta) / w[l];
      out.value += t;
      out.absolute += std::abs(t);
    }
  });
  return out;
}

inline Complex finite_amplitude(const std::vector<HalfInt>& x, const std::vector<Complex>& z, int N, double q,
                                ReflectionSign convention = ReflectionSign::alternating) {
  return finite_amplitude_detail(x, z, N, q, convention).value;
}

/// Bethe vector on the full 2^N space. Throws ZeroVector when the
/// amplitudes cancel to below 1e-9 of their no-cancellation size.
inline StateVector<Complex> build_bethe_vector(int N, const std::vector<Complex>& z, double q,
                                               ReflectionSign convention = ReflectionSign::alternating) {
  const int m = static_cast<int>(z.size());
  if (m > N) throw SectorOverflow("more magnons than sites");
  SpinBasis basis(N);
  StateVector<Complex> v(basis.tag(), basis.size());
  double scale = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (std::popcount(basis[i]) != m) continue;
    auto a = finite_amplitude_detail(SpinBasisState::from_mask(N, basis[i]).down(), z, N, q, convention);
    v[i] = a.value;
    scale = std::max(scale, a.absolute);
  }
  if (v.max_abs() <= 1e-9 * scale || v.max_abs() == 0) throw ZeroVector("Bethe vector vanishes for these roots");
  return v;
}

/// Relative residual of z_j^{2N} prod B(z_j, z_l) = prod B(1/z_j, z_l).
inline std::vector<Complex> bethe_equations(int N, double q, const std::vector<Complex>& z) {
  const double delta = anisotropy(q);
  std::vector<Complex> f(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    Complex lhs = detail::cpow_int(z[j], 2LL * N), rhs = 1;
    for (std::size_t l = 0; l < z.size(); ++l) {
      if (l == j) continue;
      lhs *= scattering_B(z[j], z[l], delta);
      rhs *= scattering_B(1.0 / z[j], z[l], delta);
    }
    f[j] = lhs - rhs;
  }
  return f;
}

inline double bethe_equation_residual(int N, double q, const std::vector<Complex>& z) {
  const double delta = anisotropy(q);
  double r = 0;
  auto f = bethe_equations(N, q, z);
  for (std::size_t j = 0; j < z.size(); ++j) {
    Complex lhs = detail::cpow_int(z[j], 2LL * N), rhs = 1;
    for (std::size_t l = 0; l < z.size(); ++l) {
      if (l == j) continue;
      lhs *= scattering_B(z[j], z[l], delta);
      rhs *= scattering_B(1.0 / z[j], z[l], delta);
    }
    r = std::max(r, std::abs(f[j]) / std::max(std::abs(lhs) + std::abs(rhs), 1e-300));
  }
  return r;
}

/// Damped complex Newton iteration on the Bethe equations.
inline BetheRoots refine_bethe_roots(int N, double q, std::vector<Complex> z, int max_iter = 100, double tol = 1e-13) {
  const int m = static_cast<int>(z.size());
  auto norm_of = [](const std::vector<Complex>& f) {
    double s = 0;
    for (Complex c : f) s += std::norm(c);
    return std::sqrt(s);
  };
  for (int it = 0; it < max_iter; ++it) {
    if (bethe_equation_residual(N, q, z) < tol) break;
    auto f = bethe_equations(N, q, z);
    Eigen::MatrixXcd J(m, m);
    Eigen::VectorXcd rhs(m);
    for (int k = 0; k < m; ++k) {
      std::vector<Complex> zh = z;
      Complex h = 1e-7 * std::max(1.0, std::abs(z[k]));
      zh[k] += h;
      auto fh = bethe_equations(N, q, zh);
      for (int j = 0; j < m; ++j) J(j, k) = (fh[j] - f[j]) / h;
      rhs(k) = -f[k];
    }
    Eigen::VectorXcd step = J.fullPivLu().solve(rhs);
    if (!step.allFinite()) break;
    const double f0 = norm_of(f);
    double lam = 1.0;
    bool moved = false;
    for (int tries = 0; tries < 40; ++tries, lam /= 2) {
      std::vector<Complex> zn = z;
      for (int k = 0; k < m; ++k) zn[k] += lam * step(k);
      if (std::any_of(zn.begin(), zn.end(), [](Complex c) { return std::abs(c) < 1e-8 || !std::isfinite(c.real()) || !std::isfinite(c.imag()); }))
        continue;
      if (norm_of(bethe_equations(N, q, zn)) < f0) {
        z = zn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  BetheRoots r;
  r.z = z;
  r.N = N;
  r.context = RootContext::finite;
  r.residual = bethe_equation_residual(N, q, z);
  r.on_shell = r.residual < 1e-10;
  return r;
}

/// Representative of the class {z, 1/z} with argument in (0, pi].
inline Complex canonical_root(Complex z) {
  double a = std::arg(z);
  return (a > 0 || a == kPi) ? z : 1.0 / z;
}

/// One-magnon roots z = exp(i pi k / N): those giving nonzero vectors, one
/// per class {z, 1/z}. There are N - 1 of them.
inline std::vector<BetheRoots> solve_bethe_m1(int N, double q) {
  if (N < 2) throw DomainError("need N >= 2");
  std::vector<BetheRoots> out;
  for (int k = 1; k < 2 * N; ++k) {
    Complex z = std::polar(1.0, kPi * k / N);
    if (std::abs(z - canonical_root(z)) > 1e-14) continue;
    try {
      (void)build_bethe_vector(N, {z}, q);
    } catch (const ZeroVector&) {
      continue;
    }
    BetheRoots r;
    r.z = {z};
    r.N = N;
    r.residual = bethe_equation_residual(N, q, r.z);
    r.on_shell = r.residual < 1e-10;
    out.push_back(r);
  }
  return out;
}

struct EigenCheck {
  double eigen_residual = 0;   // ||H B - E B|| / ||B||
  double highest_weight = 0;   // ||E B|| / ||B||
  double k_weight = 0;         // ||K B - q^{N-2m} B|| / ||B||
};

/// Checks a Bethe vector against the invariant Hamiltonian and E, K.
/// Operators are passed in so that callers can reuse them.
inline EigenCheck check_bethe_vector(const StateVector<Complex>& v, const std::vector<Complex>& z, double q,
                                     const LinearOperator<Complex>& H, const LinearOperator<Complex>& E,
                                     const LinearOperator<Complex>& K, int N) {
  EigenCheck c;
  const double nv = v.norm();
  const Complex en = bethe_energy(z, anisotropy(q));
  c.eigen_residual = (H * v - en * v).norm() / nv;
  c.highest_weight = (E * v).norm() / nv;
  c.k_weight = (K * v - Complex(ipow(q, N - 2 * static_cast<int>(z.size()))) * v).norm() / nv;
  return c;
}

/// Multistart search for m-magnon roots giving distinct nonzero
/// highest-weight eigenvectors. Starts are drawn from a seeded generator:
/// uniform arguments in (0, pi), with log-normal moduli on every other start.
inline std::vector<BetheRoots> search_bethe_roots(int N, int m, double q, int starts = 400,
                                                  std::uint64_t seed = 1) {
  if (m < 1 || 2 * m > N) throw DomainError("search needs 1 <= m <= N/2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::normal_distribution<double> logr(0.0, 0.5);
  auto Hd = build_invariant_hamiltonian<double>(N, q);
  auto H = to_complex(Hd);
  auto g = build_generators<Complex>(N, Complex(q));
  const auto& E = g.E;
  const auto& K = g.K;

  std::vector<BetheRoots> found;
  std::vector<StateVector<Complex>> vectors;
  for (int t = 0; t < starts; ++t) {
    std::vector<Complex> z0(static_cast<std::size_t>(m));
    for (auto& w : z0) w = std::polar(t % 2 ? std::exp(logr(rng)) : 1.0, angle(rng));
    BetheRoots r = refine_bethe_roots(N, q, z0);
    if (!r.on_shell) continue;
    StateVector<Complex> v;
    try {
      v = build_bethe_vector(N, r.z, q);
    } catch (const ZeroVector&) {
      continue;
    }
    EigenCheck c = check_bethe_vector(v, r.z, q, H, E, K, N);
    if (c.eigen_residual > 1e-8 || c.highest_weight > 1e-8) continue;
    const double nv = v.norm();
    bool dup = false;
    for (const auto& u : vectors)
      if (std::abs(inner(u, v)) / (u.norm() * nv) > 1 - 1e-6) dup = true;
    if (dup) continue;
    vectors.push_back(v);
    found.push_back(r);
  }
  std::sort(found.begin(), found.end(), [&](const BetheRoots& a, const BetheRoots& b) {
    return bethe_energy(a.z, anisotropy(q)).real() < bethe_energy(b.z, anisotropy(q)).real();
  });
  return found;
}

// ---- domain-wall sector -----------------------------------------------------

/// Coefficients of the top descendant B_{N/2-m} on the (N/2)-box:
///   q^{C(m+1,2) + |d|} sum_{l_1<...<l_m<=N/2} lambda^{(N)}(d_l - l + 1/2 | z) / q^{sum (d_{l_a} + l_a)}
/// with the coordinates fed to lambda in increasing order.
inline StateVector<Complex> half_filled_coefficients(int N, const std::vector<Complex>& z, double q) {
  const int m = static_cast<int>(z.size()), half = N / 2;
  if (N % 2 != 0) throw DomainError("N must be even");
  if (m > half) throw SectorOverflow("m exceeds N/2");
  PartitionBasis box(Truncation::box(half));
  StateVector<Complex> out(PartitionSpace{box.truncation()}, box.size());
  std::vector<int> rows(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < box.size(); ++k) {
    const Partition& d = box[k];
    Complex sum = 0;
    // increasing row choices l_1 < ... < l_m in 1..half
    std::function<void(int, int)> rec = [&](int a, int start) {
      if (a == m) {
        std::vector<HalfInt> xs;
        int shift = 0;
        for (int l : rows) {
          xs.push_back(HalfInt::above(d.row(l) - l));
          shift += d.row(l) + l;
        }
        std::sort(xs.begin(), xs.end());
        sum += finite_amplitude(xs, z, N, q) * ipow(q, -shift);
        return;
      }
      for (int l = start; l <= half; ++l) {
        rows[a] = l;
        rec(a + 1, l + 1);
      }
    };
    rec(0, 1);
    out[k] = sum * ipow(q, binomial2(m + 1) + d.weight());
  }
  return out;
}

/// -(z q)^{-r} / (1 - q z): the continued value of sum_{l>r} (q z)^{-l}.
inline Complex regularized_tail_m1(int r, Complex z, double q) {
  if (r < 0) throw DomainError("r must be nonnegative");
  if (std::abs(1.0 - q * z) < 1e-12) throw PoleError("q z = 1");
  return -ipow(z * q, -r) / (1.0 - q * z);
}

/// [q^{-1} lambda(-r) - lambda(-r-1)] / [q^r (z + 1/z - q - 1/q)] with
/// lambda(x) = z^x on integer labels.
inline Complex telescoped_tail_m1(int r, Complex z, double q) {
  Complex den = ipow(Complex(q), r) * (z + 1.0 / z - q - 1.0 / q);
  if (std::abs(den) < 1e-14) throw PoleError("z + 1/z = q + 1/q");
  return (ipow(z, -r) / q - ipow(z, -r - 1)) / den;
}

/// Partial sum of sum_{l>r} (q z)^{-l}, convergent for |q z| > 1.
inline Complex direct_tail_m1(int r, Complex z, double q, int terms) {
  Complex s = 0, t = ipow(q * z, -r);
  const Complex ratio = 1.0 / (q * z);
  for (int l = 1; l <= terms; ++l) s += (t *= ratio);
  return s;
}

/// Coefficient of |d> in B_inf(z). Rows beyond the length of d contribute
/// nested geometric series that are summed in closed form, continued past
/// their radius of convergence.
inline Complex binf_coefficient(const Partition& d, const std::vector<Complex>& z, double q) {
  const int m = static_cast<int>(z.size()), r = d.length();
  if (m == 0) return ipow(Complex(q), d.weight());
  const double delta = anisotropy(q);
  const ScatteringFn A = xxz_scattering(delta);
  Complex total = 0;
  std::vector<Complex> zp(z.size()), zeta(z.size());
  detail::for_each_permutation(m, [&](const std::vector<int>& p, int sign) {
    for (int i = 0; i < m; ++i) zp[i] = z[p[i]];
    // zeta_a sits on the a-th smallest row
    for (int a = 0; a < m; ++a) zeta[a] = zp[m - 1 - a];
    // head[j]: sum over rows l_1 < ... < l_j <= r of prod_a zeta_a^{d_l - l} q^{-(d_l + l)}
    std::vector<Complex> head(static_cast<std::size_t>(m) + 1, 0);
    head[0] = 1;
    for (int l = 1; l <= r; ++l)
      for (int k = std::min(m, l); k >= 1; --k)
        head[k] += head[k - 1] * ipow(zeta[k - 1], d.row(l) - l) * ipow(Complex(q), -(d.row(l) + l));
    // suffix products P_k = prod_{a>=k} 1/(q zeta_a), 0-based k
    std::vector<Complex> P(static_cast<std::size_t>(m) + 1, 1);
    for (int k = m - 1; k >= 0; --k) P[k] = P[k + 1] / (q * zeta[k]);
    Complex sum = 0;
    for (int j = 0; j <= m; ++j) {
      Complex tail = ipow(P[j], r);
      for (int k = j; k < m; ++k) {
        if (std::abs(1.0 - P[k]) < 1e-12) throw PoleError("geometric tail hits its pole");
        tail *= P[k] / (1.0 - P[k]);
      }
      sum += head[j] * tail;
    }
    total += static_cast<double>(sign) * A(zp) * sum;
  });
  return total * ipow(Complex(q), binomial2(m + 1) + d.weight());
}

inline StateVector<Complex> binf_vector(const PartitionBasis& basis, const std::vector<Complex>& z, double q) {
  StateVector<Complex> v(PartitionSpace{basis.truncation()}, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) v[i] = binf_coefficient(basis[i], z, q);
  return v;
}

/// Max over interior rows of |(H v)_d - E v_d| for the domain-wall
/// Hamiltonian, relative to max |v|.
inline double dw_interior_residual(const PartitionBasis& basis, const StateVector<Complex>& v, Complex energy,
                                   double q) {
  auto H = to_complex(build_dw_hamiltonian<double>(basis, q));
  StateVector<Complex> hv = H * v;
  double worst = 0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis.is_interior(i)) worst = std::max(worst, std::abs(hv[i] - energy * v[i]));
  const double scale = v.max_abs();
  return scale > 0 ? worst / scale : worst;
}

}  // namespace bdw

namespace bdw {

struct ReflectionCalibration {
  ReflectionSign chosen = ReflectionSign::alternating;
  double residual_alternating = 0;  // worst eigen-residual over the m = 1 roots
  double residual_plain = 0;
};

/// Builds the one-magnon vectors at chain length N under both sign
/// conventions and keeps the one whose vectors are eigenvectors.
inline ReflectionCalibration calibrate_reflection_sign(int N, double q) {
  auto H = to_complex(build_invariant_hamiltonian<double>(N, q));
  ReflectionCalibration c;
  for (ReflectionSign s : {ReflectionSign::alternating, ReflectionSign::plain}) {
    double worst = 0;
    for (int k = 1; k < N; ++k) {
      Complex z = std::polar(1.0, kPi * k / N);
      StateVector<Complex> v;
      try {
        v = build_bethe_vector(N, {z}, q, s);
      } catch (const ZeroVector&) {
        worst = std::max(worst, 1.0);
        continue;
      }
      worst = std::max(worst, (H * v - bethe_energy({z}, anisotropy(q)) * v).norm() / v.norm());
    }
    (s == ReflectionSign::alternating ? c.residual_alternating : c.residual_plain) = worst;
  }
  c.chosen = c.residual_alternating <= c.residual_plain ? ReflectionSign::alternating : ReflectionSign::plain;
  return c;
}

}  // namespace bdw
