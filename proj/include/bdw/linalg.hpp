#pragma once

// Vectors and sparse operators over an enumerated basis (spin window or
// truncated partition space), plus the dense eigen-solver oracle.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "bdw/errors.hpp"
#include "bdw/partitions.hpp"
#include "bdw/scalar.hpp"

namespace bdw {

inline constexpr std::size_t kDenseLimit = 4096;

/// Spin chain of N sites; `sector` restricts to states with that many down
/// spins.
struct SpinWindow {
  int N = 0;
  std::optional<int> sector;
  friend bool operator==(const SpinWindow&, const SpinWindow&) = default;
};

struct PartitionSpace {
  Truncation trunc;
  friend bool operator==(const PartitionSpace&, const PartitionSpace&) = default;
};

using BasisTag = std::variant<SpinWindow, PartitionSpace>;

inline std::string describe(const BasisTag& tag) {
  if (auto* s = std::get_if<SpinWindow>(&tag))
    return "spin N=" + std::to_string(s->N) + (s->sector ? " m=" + std::to_string(*s->sector) : "");
  const auto& t = std::get<PartitionSpace>(tag).trunc;
  return "partitions w<=" + std::to_string(t.max_weight) + " part<=" + std::to_string(t.max_part) +
         " len<=" + std::to_string(t.max_length);
}

template <class T>
class StateVector {
 public:
  StateVector() = default;
  StateVector(BasisTag basis, std::vector<T> amplitudes) : basis_(std::move(basis)), amp_(std::move(amplitudes)) {}
  StateVector(BasisTag basis, std::size_t dim) : basis_(std::move(basis)), amp_(dim, T(0)) {}

  const BasisTag& basis() const { return basis_; }
  std::size_t size() const { return amp_.size(); }
  T& operator[](std::size_t i) { return amp_[i]; }
  const T& operator[](std::size_t i) const { return amp_[i]; }
  const std::vector<T>& amplitudes() const { return amp_; }
  std::vector<T>& amplitudes() { return amp_; }

  double norm() const {
    double s = 0;
    for (const T& a : amp_) s += magnitude(a) * magnitude(a);
    return std::sqrt(s);
  }
  double max_abs() const {
    double m = 0;
    for (const T& a : amp_) m = std::max(m, magnitude(a));
    return m;
  }
  bool is_exact_zero() const {
    return std::all_of(amp_.begin(), amp_.end(), [](const T& a) { return a == T(0); });
  }

  StateVector& operator+=(const StateVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += o.amp_[i];
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= o.amp_[i];
    return *this;
  }
  StateVector& operator*=(const T& s) {
    for (T& a : amp_) a *= s;
    return *this;
  }
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(const T& s, StateVector a) { return a *= s; }

  void check_same(const StateVector& o) const {
    if (!(basis_ == o.basis_) || amp_.size() != o.amp_.size())
      throw BasisMismatch(describe(basis_) + " vs " + describe(o.basis_));
  }

 private:
  BasisTag basis_;
  std::vector<T> amp_;
};

/// Inner product, antilinear in the first argument.
template <class T>
T inner(const StateVector<T>& u, const StateVector<T>& v) {
  u.check_same(v);
  T s(0);
  for (std::size_t i = 0; i < u.size(); ++i) s += conj(u[i]) * v[i];
  return s;
}

/// Relative 2-norm distance ||u - v|| / ||ref||; exactly zero when u == v.
template <class T>
double relative_distance(const StateVector<T>& u, const StateVector<T>& v, double ref) {
  StateVector<T> d = u - v;
  if (d.is_exact_zero()) return 0.0;
  return d.norm() / (ref > 0 ? ref : 1.0);
}

enum class Symmetry { none, hermitian, rate_matrix };

template <class T>
struct Triplet {
  std::size_t row;
  std::size_t col;
  T value;
};

/// Compressed-row sparse matrix tagged with its basis.
template <class T>
class LinearOperator {
 public:
  LinearOperator() = default;
  LinearOperator(BasisTag basis, std::size_t dim, std::vector<Triplet<T>> entries,
                 Symmetry symmetry = Symmetry::none)
      : basis_(std::move(basis)), dim_(dim), symmetry_(symmetry) {
    std::sort(entries.begin(), entries.end(), [](const Triplet<T>& a, const Triplet<T>& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    row_start_.assign(dim + 1, 0);
    for (std::size_t k = 0; k < entries.size();) {
      const std::size_t r = entries[k].row, c = entries[k].col;
      if (r >= dim || c >= dim) throw DimensionError("entry outside the basis");
      T sum = entries[k].value;
      std::size_t j = k + 1;
      for (; j < entries.size() && entries[j].row == r && entries[j].col == c; ++j) sum += entries[j].value;
      if (!(sum == T(0))) {
        cols_.push_back(c);
        vals_.push_back(sum);
        ++row_start_[r + 1];
      }
      k = j;
    }
    for (std::size_t r = 0; r < dim; ++r) row_start_[r + 1] += row_start_[r];
  }

  static LinearOperator identity(BasisTag basis, std::size_t dim) {
    std::vector<Triplet<T>> e;
    for (std::size_t i = 0; i < dim; ++i) e.push_back({i, i, T(1)});
    return LinearOperator(std::move(basis), dim, std::move(e), Symmetry::hermitian);
  }
  static LinearOperator diagonal(BasisTag basis, const std::vector<T>& diag) {
    std::vector<Triplet<T>> e;
    for (std::size_t i = 0; i < diag.size(); ++i) e.push_back({i, i, diag[i]});
    return LinearOperator(std::move(basis), diag.size(), std::move(e));
  }

  const BasisTag& basis() const { return basis_; }
  std::size_t dim() const { return dim_; }
  std::size_t nonzeros() const { return vals_.size(); }
  Symmetry symmetry() const { return symmetry_; }
  void set_symmetry(Symmetry s) { symmetry_ = s; }

  T entry(std::size_t r, std::size_t c) const {
    auto b = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[r]);
    auto e = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[r + 1]);
    auto it = std::lower_bound(b, e, c);
    if (it == e || *it != c) return T(0);
    return vals_[static_cast<std::size_t>(it - cols_.begin())];
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) f(r, cols_[k], vals_[k]);
  }
  std::vector<Triplet<T>> triplets() const {
    std::vector<Triplet<T>> out;
    for_each([&](std::size_t r, std::size_t c, const T& v) { out.push_back({r, c, v}); });
    return out;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (x.size() != dim_) throw DimensionError("vector length does not match operator");
    std::vector<T> y(dim_, T(0));
    for (std::size_t r = 0; r < dim_; ++r) {
      T s(0);
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) s += vals_[k] * x[cols_[k]];
      y[r] = s;
    }
    return y;
  }
  StateVector<T> operator*(const StateVector<T>& v) const {
    if (!(v.basis() == basis_)) throw BasisMismatch(describe(basis_) + " vs " + describe(v.basis()));
    return StateVector<T>(basis_, apply(v.amplitudes()));
  }

  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) {
    a.check_same(b);
    std::vector<Triplet<T>> e;
    for (std::size_t r = 0; r < a.dim_; ++r)
      for (std::size_t k = a.row_start_[r]; k < a.row_start_[r + 1]; ++k) {
        std::size_t mid = a.cols_[k];
        for (std::size_t j = b.row_start_[mid]; j < b.row_start_[mid + 1]; ++j)
          e.push_back({r, b.cols_[j], a.vals_[k] * b.vals_[j]});
      }
    return LinearOperator(a.basis_, a.dim_, std::move(e));
  }
  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
    a.check_same(b);
    auto e = a.triplets();
    for (auto& t : b.triplets()) e.push_back(t);
    return LinearOperator(a.basis_, a.dim_, std::move(e));
  }
  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
    return a + b.scaled(T(-1));
  }
  LinearOperator scaled(const T& s) const {
    auto e = triplets();
    for (auto& t : e) t.value *= s;
    return LinearOperator(basis_, dim_, std::move(e), symmetry_);
  }
  LinearOperator transpose() const {
    auto e = triplets();
    for (auto& t : e) std::swap(t.row, t.col);
    return LinearOperator(basis_, dim_, std::move(e), symmetry_);
  }
  LinearOperator adjoint() const {
    auto e = triplets();
    for (auto& t : e) {
      std::swap(t.row, t.col);
      t.value = conj(t.value);
    }
    return LinearOperator(basis_, dim_, std::move(e), symmetry_);
  }
  LinearOperator power(int n) const {
    LinearOperator out = identity(basis_, dim_);
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
  }

  double max_abs() const {
    double m = 0;
    for (const T& v : vals_) m = std::max(m, magnitude(v));
    return m;
  }
  bool is_exact_zero() const { return vals_.empty(); }

  /// Max-abs deviation from the conjugate transpose.
  double hermiticity_defect() const { return max_abs_difference(*this, adjoint()); }

  std::vector<T> column_sums() const {
    std::vector<T> s(dim_, T(0));
    for_each([&](std::size_t, std::size_t c, const T& v) { s[c] += v; });
    return s;
  }

  void check_same(const LinearOperator& o) const {
    if (!(basis_ == o.basis_) || dim_ != o.dim_) throw BasisMismatch(describe(basis_) + " vs " + describe(o.basis_));
  }

  friend double max_abs_difference(const LinearOperator& a, const LinearOperator& b) {
    LinearOperator d = a - b;
    return d.is_exact_zero() ? 0.0 : d.max_abs();
  }

 private:
  BasisTag basis_;
  std::size_t dim_ = 0;
  Symmetry symmetry_ = Symmetry::none;
  std::vector<std::size_t> row_start_{0};
  std::vector<std::size_t> cols_;
  std::vector<T> vals_;
};

template <class T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
DenseMatrix<T> to_dense(const LinearOperator<T>& op, std::size_t limit = kDenseLimit) {
  static_assert(!is_exact_v<T>, "dense matrices are floating only");
  if (op.dim() > limit) throw DimensionError("dimension " + std::to_string(op.dim()) + " exceeds dense limit");
  DenseMatrix<T> m = DenseMatrix<T>::Zero(static_cast<Eigen::Index>(op.dim()), static_cast<Eigen::Index>(op.dim()));
  op.for_each([&](std::size_t r, std::size_t c, const T& v) { m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v; });
  return m;
}

/// Converts an exact operator to doubles.
inline LinearOperator<double> to_floating(const LinearOperator<Rational>& op) {
  std::vector<Triplet<double>> e;
  op.for_each([&](std::size_t r, std::size_t c, const Rational& v) { e.push_back({r, c, to_double(v)}); });
  return LinearOperator<double>(op.basis(), op.dim(), std::move(e), op.symmetry());
}

template <class T>
LinearOperator<Complex> to_complex(const LinearOperator<T>& op) {
  std::vector<Triplet<Complex>> e;
  op.for_each([&](std::size_t r, std::size_t c, const T& v) {
    if constexpr (std::is_same_v<T, Complex>) {
      e.push_back({r, c, v});
    } else {
      e.push_back({r, c, Complex(to_double(v), 0.0)});
    }
  });
  return LinearOperator<Complex>(op.basis(), op.dim(), std::move(e), op.symmetry());
}

struct EigenDecomposition {
  std::vector<Complex> eigenvalues;              // sorted by real part
  std::vector<StateVector<Complex>> eigenvectors;  // unit 2-norm
  double max_residual = 0.0;                     // max ||Hv - lambda v|| / (||H|| ||v||)
};

/// Full dense spectral decomposition. Hermitian-flagged operators go through
/// the self-adjoint solver; everything else through the general one.
template <class T>
EigenDecomposition dense_eigensolve(const LinearOperator<T>& op, std::size_t limit = kDenseLimit) {
  using CMat = DenseMatrix<Complex>;
  CMat values_as_cols;
  Eigen::VectorXcd evals;
  DenseMatrix<Complex> h;
  if constexpr (is_exact_v<T>) {
    return dense_eigensolve(to_floating(op), limit);
  } else {
    h = to_dense(to_complex(op), limit);
    if (op.symmetry() == Symmetry::hermitian) {
      Eigen::SelfAdjointEigenSolver<CMat> es(h);
      if (es.info() != Eigen::Success) throw ConvergenceFailure("self-adjoint eigensolver failed");
      evals = es.eigenvalues().template cast<Complex>();
      values_as_cols = es.eigenvectors();
    } else {
      Eigen::ComplexEigenSolver<CMat> es(h);
      if (es.info() != Eigen::Success) throw ConvergenceFailure("complex eigensolver failed");
      evals = es.eigenvalues();
      values_as_cols = es.eigenvectors();
    }
  }
  const auto n = evals.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return evals(a).real() < evals(b).real();
  });
  EigenDecomposition out;
  const double hnorm = std::max(h.norm(), 1e-300);
  for (Eigen::Index i : order) {
    Eigen::VectorXcd v = values_as_cols.col(i);
    v.normalize();
    out.max_residual = std::max(out.max_residual, (h * v - evals(i) * v).norm() / hnorm);
    out.eigenvalues.push_back(evals(i));
    out.eigenvectors.emplace_back(op.basis(), std::vector<Complex>(v.data(), v.data() + v.size()));
  }
  if (out.max_residual > 1e-10) throw ConvergenceFailure("eigen-residual " + std::to_string(out.max_residual));
  return out;
}

}  // namespace bdw
