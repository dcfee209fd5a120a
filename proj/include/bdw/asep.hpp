#pragma once

// The corner-growth ASEP on partitions: boxes are added at rate A q and
// removed at rate A/q. Rate matrix, its similarity to the domain-wall
// Hamiltonian, the stationary law q^{2|d|}, exact trajectory sampling and
// time evolution.
//
// Moves that would leave the truncation are dropped, but the diagonal keeps
// the full escape rate, so probability leaks out of boundary columns.

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bdw/chain.hpp"
#include "bdw/errors.hpp"
#include "bdw/linalg.hpp"
#include "bdw/partitions.hpp"
#include "bdw/report.hpp"
#include "bdw/scalar.hpp"
#include "bdw/spectrum.hpp"

namespace bdw {

template <class T>
struct RateMatrix {
  LinearOperator<T> W;
  PartitionBasis basis;
  T q;
  T A;
};

template <class T>
RateMatrix<T> build_rate_matrix(const T& q, const T& A, const Truncation& trunc, std::size_t max_dim = 1u << 16) {
  if (!(T(0) < q && q < T(1))) throw DomainError("need 0 < q < 1");
  if (!(T(0) < A)) throw DomainError("need A > 0");
  PartitionBasis basis(trunc);
  if (basis.size() > max_dim) throw DimensionError("partition space too large");
  const T up = A * q, down = A / q;
  std::vector<Triplet<T>> e;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Partition& d = basis[col];
    Corners c = corners(d);
    e.push_back({col, col, -(up * T(static_cast<int>(c.addable.size())) + down * T(static_cast<int>(c.removable.size())))});
    for (int row : c.addable)
      if (auto j = basis.find(d.add_box(row))) e.push_back({*j, col, up});
    for (int row : c.removable) e.push_back({*basis.find(d.remove_box(row)), col, down});
  }
  LinearOperator<T> W(PartitionSpace{trunc}, basis.size(), std::move(e), Symmetry::rate_matrix);
  return RateMatrix<T>{std::move(W), std::move(basis), q, A};
}

/// Diagonal U|d> = q^{|d|}|d>.
template <class T>
LinearOperator<T> u_conjugation(const T& q, const PartitionBasis& basis) {
  std::vector<T> d(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) d[i] = ipow(q, basis[i].weight());
  return LinearOperator<T>::diagonal(PartitionSpace{basis.truncation()}, d);
}

template <class T>
LinearOperator<T> diagonal_inverse(const LinearOperator<T>& D) {
  std::vector<T> d(D.dim());
  for (std::size_t i = 0; i < D.dim(); ++i) d[i] = T(1) / D.entry(i, i);
  return LinearOperator<T>::diagonal(D.basis(), d);
}

struct RateViolation {
  std::string kind;  // "positivity" or "column-sum"
  std::size_t row = 0, col = 0;
  double value = 0;
};

struct BoundaryDefect {
  std::size_t col = 0;
  double defect = 0;           // -(column sum): rate of leaking out
  int suppressed_additions = 0;
};

struct RateValidation {
  std::vector<RateViolation> violations;
  std::vector<BoundaryDefect> boundary;
  bool ok() const { return violations.empty(); }
};

/// Off-diagonal entries must be nonnegative and interior columns must sum to
/// zero (exactly in exact mode, to 1e-12 relative otherwise). Boundary
/// columns are reported with their defect.
template <class T>
RateValidation validate_rate_matrix(const RateMatrix<T>& R) {
  RateValidation out;
  R.W.for_each([&](std::size_t r, std::size_t c, const T& v) {
    if (r != c && v < T(0)) out.violations.push_back({"positivity", r, c, to_double(v)});
  });
  const std::vector<T> sums = R.W.column_sums();
  const double scale = std::max(1.0, R.W.max_abs());
  for (std::size_t c = 0; c < sums.size(); ++c) {
    if (R.basis.is_interior(c)) {
      bool bad;
      if constexpr (is_exact_v<T>) {
        bad = !(sums[c] == T(0));
      } else {
        bad = std::abs(to_double(sums[c])) > 1e-12 * scale;
      }
      if (bad) out.violations.push_back({"column-sum", c, c, to_double(sums[c])});
    } else {
      out.boundary.push_back({c, -to_double(sums[c]), R.basis.suppressed_additions(c)});
    }
  }
  return out;
}

/// Copy of R with entry (row, col) negated. Used as a negative control.
template <class T>
RateMatrix<T> mutate_negate_entry(const RateMatrix<T>& R, std::size_t row, std::size_t col) {
  auto e = R.W.triplets();
  for (auto& t : e)
    if (t.row == row && t.col == col) t.value = -t.value;
  RateMatrix<T> out = R;
  out.W = LinearOperator<T>(R.W.basis(), R.W.dim(), std::move(e), Symmetry::rate_matrix);
  return out;
}

/// Max-abs residuals of W + A U H U^{-1} and of W U^2 - (W U^2)^T.
template <class T>
ResidualReport verify_similarity_and_db(const LinearOperator<T>& W, const LinearOperator<T>& H,
                                        const LinearOperator<T>& U, const T& A) {
  ResidualReport r;
  LinearOperator<T> Uinv = diagonal_inverse(U);
  r.add("W + A U H U^-1", max_abs_difference(W, (U * H * Uinv).scaled(-A)));
  LinearOperator<T> WU2 = W * U * U;
  r.add("W U^2 - (W U^2)^T", max_abs_difference(WU2, WU2.transpose()));
  return r;
}

/// pi(d) = q^{2|d|} / Z over the truncation.
template <class T>
StateVector<T> stationary_vector(const T& q, const PartitionBasis& basis) {
  StateVector<T> v(PartitionSpace{basis.truncation()}, basis.size());
  T z(0);
  const T q2 = q * q;
  for (std::size_t i = 0; i < basis.size(); ++i) z += (v[i] = ipow(q2, basis[i].weight()));
  v *= T(1) / z;
  return v;
}

/// Max |(W pi)_d| over interior rows.
template <class T>
double stationary_interior_residual(const RateMatrix<T>& R, const StateVector<T>& pi) {
  StateVector<T> w = R.W * pi;
  double worst = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (R.basis.is_interior(i) && !(w[i] == T(0))) worst = std::max(worst, magnitude(w[i]));
  return worst;
}

// ---- trajectories -----------------------------------------------------------

enum class Move { add, remove };

struct TrajectoryEvent {
  double t = 0;
  Move move = Move::add;
  int row = 0;     // 0-based row that gained or lost a box
  int weight = 0;  // |d| after the move
};

struct Trajectory {
  Partition initial;
  std::vector<TrajectoryEvent> events;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  double t_max = 0;

  /// Replays the events on the initial partition.
  Partition state_at(double t) const {
    Partition d = initial;
    for (const auto& e : events) {
      if (e.t > t) break;
      d = e.move == Move::add ? d.add_box(e.row) : d.remove_box(e.row);
    }
    return d;
  }
};

/// Exact continuous-time simulation. The stream is seeded with
/// (seed, index) so that trajectories are reproducible one by one.
inline Trajectory gillespie_sample(double q, double A, const Truncation& trunc, double t_max, std::uint64_t seed,
                                   std::uint64_t index = 0, Partition initial = {}) {
  if (!(q > 0 && q < 1)) throw DomainError("need 0 < q < 1");
  if (!(A > 0)) throw DomainError("need A > 0");
  if (!(t_max > 0)) throw DomainError("need t_max > 0");
  if (!trunc.contains(initial)) throw DomainError("initial partition outside the truncation");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Trajectory tr;
  tr.initial = initial;
  tr.seed = seed;
  tr.index = index;
  tr.t_max = t_max;
  Partition d = initial;
  double t = 0;
  const double up = A * q, down = A / q;
  std::vector<std::pair<Move, int>> moves;
  std::vector<double> rates;
  while (true) {
    moves.clear();
    rates.clear();
    Corners c = corners(d);
    for (int row : c.addable)
      if (trunc.contains(d.add_box(row))) {
        moves.emplace_back(Move::add, row);
        rates.push_back(up);
      }
    for (int row : c.removable) {
      moves.emplace_back(Move::remove, row);
      rates.push_back(down);
    }
    double total = 0;
    for (double r : rates) total += r;
    if (total <= 0) break;
    // 1 - u lies in (0, 1], so the logarithm is finite.
    t += -std::log(1.0 - unif(rng)) / total;
    if (t >= t_max) break;
    double pick = unif(rng) * total;
    std::size_t k = 0;
    while (k + 1 < rates.size() && pick >= rates[k]) pick -= rates[k++];
    auto [mv, row] = moves[k];
    d = mv == Move::add ? d.add_box(row) : d.remove_box(row);
    tr.events.push_back({t, mv, row, d.weight()});
  }
  return tr;
}

/// Fraction of [0, t_max] spent at each weight 0..max_weight.
inline std::vector<double> time_averaged_weight_histogram(const Trajectory& tr, int max_weight) {
  std::vector<double> h(static_cast<std::size_t>(max_weight) + 1, 0.0);
  double last = 0;
  int w = tr.initial.weight();
  for (const auto& e : tr.events) {
    h.at(static_cast<std::size_t>(w)) += e.t - last;
    last = e.t;
    w = e.weight;
  }
  h.at(static_cast<std::size_t>(w)) += tr.t_max - last;
  for (double& x : h) x /= tr.t_max;
  return h;
}

/// Law of |d| under pi: the sum of pi over partitions of each weight.
template <class T>
std::vector<double> stationary_weight_distribution(const T& q, const PartitionBasis& basis) {
  StateVector<T> pi = stationary_vector(q, basis);
  std::vector<double> h(static_cast<std::size_t>(basis.truncation().effective_weight()) + 1, 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) h[static_cast<std::size_t>(basis[i].weight())] += to_double(pi[i]);
  return h;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionError("distributions of different length");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / 2;
}

// ---- evolution --------------------------------------------------------------

/// e^{tW} p0 through the dense matrix exponential.
inline StateVector<double> evolve_dense(const RateMatrix<double>& R, const StateVector<double>& p0, double t,
                                        std::size_t limit = kDenseLimit) {
  if (t < 0) throw DomainError("t must be nonnegative");
  if (!(p0.basis() == R.W.basis())) throw BasisMismatch("initial vector on another basis");
  if (t == 0) return p0;
  Eigen::MatrixXd M = to_dense(R.W, limit);
  Eigen::MatrixXd expm = (t * M).exp();
  Eigen::Map<const Eigen::VectorXd> x(p0.amplitudes().data(), static_cast<Eigen::Index>(p0.size()));
  Eigen::VectorXd y = expm * x;
  return StateVector<double>(p0.basis(), std::vector<double>(y.data(), y.data() + y.size()));
}

/// e^{tW} p0 by uniformization: with L = max |W_dd| and P = 1 + W/L,
/// e^{tW} = sum_k Poisson(k; L t) P^k. Stops once the Poisson mass left is
/// below tol.
inline StateVector<double> evolve_uniformized(const RateMatrix<double>& R, const StateVector<double>& p0, double t,
                                              double tol = 1e-14) {
  if (t < 0) throw DomainError("t must be nonnegative");
  if (!(p0.basis() == R.W.basis())) throw BasisMismatch("initial vector on another basis");
  double L = 0;
  for (std::size_t i = 0; i < R.W.dim(); ++i) L = std::max(L, -R.W.entry(i, i));
  if (t == 0 || L == 0) return p0;
  const double lt = L * t;
  StateVector<double> term = p0, acc(p0.basis(), p0.size());
  double mass = 0;
  const long long kmax = static_cast<long long>(lt + 20 * std::sqrt(lt) + 50);
  for (long long k = 0; k <= kmax; ++k) {
    const double w = std::exp(-lt + k * std::log(lt) - std::lgamma(static_cast<double>(k) + 1));
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * term[i];
    mass += w;
    if (k > lt && 1 - mass < tol) break;
    StateVector<double> next = R.W * term;
    for (std::size_t i = 0; i < next.size(); ++i) term[i] += next[i] / L;
  }
  return acc;
}

/// TV distance between two vectors over the same basis (half the l1 norm).
inline double total_variation(const StateVector<double>& a, const StateVector<double>& b) {
  return total_variation(a.amplitudes(), b.amplitudes());
}

struct SpectralEvolution {
  double deviation = 0;             // max |dense expm - spectral sum|
  std::vector<double> eigenvalues;  // of H
  std::vector<std::string> labels;  // "m=1 p=0 z=..." where a Bethe state matches
};

/// e^{-t A H} for the invariant chain two ways: dense exponential and the
/// spectral sum over the eigenpairs of the dense oracle. Eigenvalues are
/// labelled by the Bethe/descendant state of matching energy when one
/// exists (m <= 1, plus m = 2 for N <= 4).
inline SpectralEvolution spectral_evolution_demo(int N, double q, double t, double A = 1.0) {
  if (N > 10) throw DimensionError("spectral demo limited to N <= 10");
  auto H = build_invariant_hamiltonian<double>(N, q);
  Eigen::MatrixXd Hd = to_dense(H);
  Eigen::MatrixXd direct = (-t * A * Hd).exp();
  EigenDecomposition ed = dense_eigensolve(H);
  Eigen::MatrixXcd spectral = Eigen::MatrixXcd::Zero(Hd.rows(), Hd.cols());
  for (std::size_t k = 0; k < ed.eigenvalues.size(); ++k) {
    Eigen::Map<const Eigen::VectorXcd> v(ed.eigenvectors[k].amplitudes().data(), Hd.rows());
    spectral += std::exp(-t * A * ed.eigenvalues[k]) * v * v.adjoint();
  }
  SpectralEvolution out;
  out.deviation = (spectral - direct.cast<Complex>()).cwiseAbs().maxCoeff();
  for (Complex ev : ed.eigenvalues) out.eigenvalues.push_back(ev.real());
  out.labels.assign(out.eigenvalues.size(), "");
  SpectrumAccounting acc = spectrum_accounting(N, q, N <= 4 ? 2 : 1);
  for (std::size_t i = 0; i < acc.entries.size(); ++i) {
    if (acc.match[i] < 0) continue;
    const auto& e = acc.entries[i];
    std::string lab = "m=" + std::to_string(e.m) + " p=" + std::to_string(e.p);
    out.labels[static_cast<std::size_t>(acc.match[i])] = lab;
  }
  return out;
}

}  // namespace bdw
