#pragma once

// Finite spin windows, the U_q(sl2)-invariant open XXZ Hamiltonian, the
// domain-wall Hamiltonian on partitions, and magnetization expectations.
//
// Site i = 0..N-1 (left to right) has coordinate x = i - (N-1)/2. Bit i of a
// basis mask is set when the spin at site i is down.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "bdw/errors.hpp"
#include "bdw/linalg.hpp"
#include "bdw/partitions.hpp"
#include "bdw/scalar.hpp"

namespace bdw {

using SpinMask = std::uint32_t;

inline HalfInt site_coordinate(int N, int i) { return HalfInt::from_twice(2 * i - (N - 1)); }
inline int site_index(int N, HalfInt x) { return (x.twice() + N - 1) / 2; }

/// Ordered set of down-spin coordinates on an N-site window.
class SpinBasisState {
 public:
  SpinBasisState(int N, std::vector<HalfInt> down) : N_(N), down_(std::move(down)) {
    std::sort(down_.begin(), down_.end());
    for (std::size_t a = 0; a < down_.size(); ++a) {
      int i = site_index(N_, down_[a]);
      if (i < 0 || i >= N_) throw DomainError("site " + down_[a].str() + " outside the window");
      if (a > 0 && down_[a] == down_[a - 1]) throw DomainError("repeated site " + down_[a].str());
    }
  }
  static SpinBasisState from_mask(int N, SpinMask mask) {
    std::vector<HalfInt> d;
    for (int i = 0; i < N; ++i)
      if (mask >> i & 1u) d.push_back(site_coordinate(N, i));
    return SpinBasisState(N, std::move(d));
  }

  int N() const { return N_; }
  int magnons() const { return static_cast<int>(down_.size()); }
  const std::vector<HalfInt>& down() const { return down_; }
  SpinMask mask() const {
    SpinMask m = 0;
    for (HalfInt x : down_) m |= SpinMask{1} << site_index(N_, x);
    return m;
  }

 private:
  int N_;
  std::vector<HalfInt> down_;
};

/// The 2^N spin configurations (or one magnon-number sector), in increasing
/// mask order.
class SpinBasis {
 public:
  explicit SpinBasis(int N, std::optional<int> sector = std::nullopt, std::size_t max_dim = 1u << 20)
      : N_(N), sector_(sector) {
    if (N < 1 || N > 24) throw DimensionError("chain length out of range");
    const SpinMask full = SpinMask{1} << N;
    index_.assign(full, kAbsent);
    for (SpinMask s = 0; s < full; ++s) {
      if (sector && std::popcount(s) != *sector) continue;
      index_[s] = masks_.size();
      masks_.push_back(s);
    }
    if (masks_.size() > max_dim) throw DimensionError("sector dimension " + std::to_string(masks_.size()));
  }

  int N() const { return N_; }
  std::optional<int> sector() const { return sector_; }
  BasisTag tag() const { return SpinWindow{N_, sector_}; }
  std::size_t size() const { return masks_.size(); }
  SpinMask operator[](std::size_t i) const { return masks_[i]; }
  std::optional<std::size_t> find(SpinMask s) const {
    if (s >= index_.size() || index_[s] == kAbsent) return std::nullopt;
    return index_[s];
  }
  std::size_t index_of(SpinMask s) const {
    auto i = find(s);
    if (!i) throw DomainError("configuration outside the basis");
    return *i;
  }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  int N_;
  std::optional<int> sector_;
  std::vector<SpinMask> masks_;
  std::vector<std::size_t> index_;
};

/// Open XXZ chain with the boundary term (q - 1/q)/2 (s3_k - s3_{k+1}):
/// each bond with a down spin left of an up spin contributes q, the reverse
/// contributes 1/q, and antiparallel neighbours hop with amplitude -1.
/// The result is real symmetric and commutes with E, F, K.
template <class T>
LinearOperator<T> build_invariant_hamiltonian(int N, const T& q, std::optional<int> sector = std::nullopt,
                                              std::size_t max_dim = kDenseLimit) {
  if (N < 2 || N % 2 != 0) throw DomainError("chain length must be even and >= 2");
  if (!(T(0) < q && q <= T(1))) throw DomainError("need 0 < q <= 1");
  SpinBasis basis(N, sector, max_dim);
  const T qinv = T(1) / q;
  std::vector<Triplet<T>> e;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    SpinMask s = basis[col];
    T diag(0);
    for (int k = 0; k + 1 < N; ++k) {
      bool left_down = s >> k & 1u, right_down = s >> (k + 1) & 1u;
      if (left_down == right_down) continue;
      diag += left_down ? q : qinv;
      SpinMask t = s ^ (SpinMask{1} << k) ^ (SpinMask{1} << (k + 1));
      e.push_back({basis.index_of(t), col, T(-1)});
    }
    e.push_back({col, col, diag});
  }
  return LinearOperator<T>(basis.tag(), basis.size(), std::move(e), Symmetry::hermitian);
}

/// Total s3 on an N-site space; diagonal with entries N - 2m.
template <class T>
LinearOperator<T> total_sz(const SpinBasis& basis) {
  std::vector<T> d(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) d[i] = T(basis.N() - 2 * std::popcount(basis[i]));
  auto op = LinearOperator<T>::diagonal(basis.tag(), d);
  op.set_symmetry(Symmetry::hermitian);
  return op;
}

/// Domain-wall Hamiltonian on a truncated partition space:
/// <d|H|d> = q a(d) + r(d)/q with (a, r) the addable/removable corner counts
/// of the untruncated diagram, and -1 between partitions one box apart.
/// Moves that leave the truncation are dropped but still counted on the
/// diagonal.
template <class T>
LinearOperator<T> build_dw_hamiltonian(const PartitionBasis& basis, const T& q, std::size_t max_dim = 1u << 16) {
  if (basis.size() > max_dim) throw DimensionError("partition space too large");
  const T qinv = T(1) / q;
  std::vector<Triplet<T>> e;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Partition& d = basis[col];
    Corners c = corners(d);
    e.push_back({col, col, T(static_cast<int>(c.addable.size())) * q + T(static_cast<int>(c.removable.size())) * qinv});
    for (int row : c.addable)
      if (auto j = basis.find(d.add_box(row))) e.push_back({*j, col, T(-1)});
    for (int row : c.removable) e.push_back({*basis.find(d.remove_box(row)), col, T(-1)});
  }
  return LinearOperator<T>(PartitionSpace{basis.truncation()}, basis.size(), std::move(e), Symmetry::hermitian);
}

/// Number of antiparallel nearest-neighbour bonds in the domain-wall spin
/// configuration of d, read off the Maya diagram.
inline int domain_wall_count(const Partition& d) {
  const int lo = -d.length() - 2, hi = d.row(1) + 1;
  int walls = 0;
  for (int n = lo; n < hi; ++n)
    if (is_down(d, HalfInt::above(n)) != is_down(d, HalfInt::above(n + 1))) ++walls;
  return walls;
}

/// The plain XXZ form -1/2 sum (s1 s1 + s2 s2 + Delta (s3 s3 - 1)) on the
/// domain-wall sector: Delta per antiparallel bond, -1 per hop.
template <class T>
LinearOperator<T> build_dw_xxz_form(const PartitionBasis& basis, const T& q) {
  const T delta = (q + T(1) / q) / T(2);
  std::vector<Triplet<T>> e;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Partition& d = basis[col];
    e.push_back({col, col, delta * T(domain_wall_count(d))});
    Corners c = corners(d);
    for (int row : c.addable)
      if (auto j = basis.find(d.add_box(row))) e.push_back({*j, col, T(-1)});
    for (int row : c.removable) e.push_back({*basis.find(d.remove_box(row)), col, T(-1)});
  }
  return LinearOperator<T>(PartitionSpace{basis.truncation()}, basis.size(), std::move(e), Symmetry::hermitian);
}

/// sum_d q^{|d|} |d>, the ground state of the domain-wall Hamiltonian.
template <class T>
StateVector<T> dw_ground_state(const PartitionBasis& basis, const T& q) {
  StateVector<T> v(PartitionSpace{basis.truncation()}, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) v[i] = ipow(q, basis[i].weight());
  return v;
}

/// <v| s3_x |v> / <v|v> for a vector on a spin window.
template <class T>
double magnetization(const SpinBasis& basis, const StateVector<T>& v, HalfInt x) {
  if (!(v.basis() == basis.tag())) throw BasisMismatch("vector is not on this spin basis");
  const int i = site_index(basis.N(), x);
  if (i < 0 || i >= basis.N()) throw DomainError("site outside the window");
  double num = 0, den = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    double w = magnitude(v[k]) * magnitude(v[k]);
    den += w;
    num += (basis[k] >> i & 1u) ? -w : w;
  }
  if (den == 0) throw ZeroVector("magnetization of the zero vector");
  return num / den;
}

/// Same on a partition space, using the domain-wall orientation: site x is
/// down in |d> iff x is one of d_i - i + 1/2.
template <class T>
double magnetization(const PartitionBasis& basis, const StateVector<T>& v, HalfInt x) {
  double num = 0, den = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    double w = magnitude(v[k]) * magnitude(v[k]);
    den += w;
    num += is_down(basis[k], x) ? -w : w;
  }
  if (den == 0) throw ZeroVector("magnetization of the zero vector");
  return num / den;
}

/// Mask of the half-filled N-site configuration Omega_DW(d), d in the
/// (N/2)-box: down spins at d_i - i + 1/2, i = 1..N/2.
inline SpinMask dw_mask(int N, const Partition& d) {
  SpinMask m = 0;
  for (HalfInt x : down_spin_coords(d, N / 2)) {
    int i = site_index(N, x);
    if (i < 0 || i >= N) throw DomainError("partition " + d.str() + " does not fit the window");
    m |= SpinMask{1} << i;
  }
  return m;
}

/// Embeds a vector over the (N/2)-box into the full 2^N spin space.
template <class T>
StateVector<T> box_to_spin(int N, const PartitionBasis& box, const StateVector<T>& v) {
  SpinBasis full(N);
  StateVector<T> out(full.tag(), full.size());
  for (std::size_t k = 0; k < box.size(); ++k) out[full.index_of(dw_mask(N, box[k]))] = v[k];
  return out;
}

/// Restriction of a full spin vector to the half-filled sector, indexed by
/// partitions of the (N/2)-box.
template <class T>
StateVector<T> spin_to_box(int N, const PartitionBasis& box, const StateVector<T>& v) {
  SpinBasis full(N);
  StateVector<T> out(PartitionSpace{box.truncation()}, box.size());
  for (std::size_t k = 0; k < box.size(); ++k) out[k] = v[full.index_of(dw_mask(N, box[k]))];
  return out;
}

}  // namespace bdw
