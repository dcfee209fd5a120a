#pragma once

// Integer partitions, their Maya-diagram (down-spin) coordinates, and the
// truncated partition bases used by the domain-wall operators.
//
// Orientation: the partition delta corresponds to the spin configuration
// whose down spins sit at delta_i - i + 1/2 (i = 1, 2, ...). The empty
// partition has every negative site down and every positive site up. The
// opposite orientation (negative sites up) is the mirror image x -> -x
// combined with a global spin flip.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bdw/errors.hpp"

namespace bdw {

/// A half-integer site label stored as twice its value (always odd).
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static HalfInt from_twice(int twice) {
    if (twice % 2 == 0) throw DomainError("half-integer site must have odd doubled value");
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  /// The site n + 1/2.
  static HalfInt above(int n) { return from_twice(2 * n + 1); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  HalfInt shifted(int by) const { return from_twice(twice_ + 2 * by); }
  HalfInt mirrored() const { return from_twice(-twice_); }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string str() const { return std::to_string(twice_) + "/2"; }

 private:
  int twice_ = 1;
};

class Partition {
 public:
  Partition() = default;
  /// Trailing zeros are dropped; the remaining parts must be weakly
  /// decreasing and positive.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw InvalidPartition("parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidPartition("parts must be weakly decreasing");
    }
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int weight() const {
    int w = 0;
    for (int p : parts_) w += p;
    return w;
  }
  /// delta_i with 1-based i; zero past the last part.
  int row(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }

  Partition transpose() const {
    std::vector<int> t;
    if (!parts_.empty()) {
      t.resize(static_cast<std::size_t>(parts_.front()), 0);
      for (int p : parts_)
        for (int j = 0; j < p; ++j) ++t[j];
    }
    return Partition(std::move(t));
  }

  /// Add a box at the end of row `row0` (0-based); the row must be addable.
  Partition add_box(int row0) const {
    std::vector<int> p = parts_;
    if (row0 == length()) {
      p.push_back(1);
    } else if (row0 >= 0 && row0 < length()) {
      ++p[row0];
    } else {
      throw InvalidPartition("add_box row out of range");
    }
    return Partition(std::move(p));
  }
  Partition remove_box(int row0) const {
    if (row0 < 0 || row0 >= length()) throw InvalidPartition("remove_box row out of range");
    std::vector<int> p = parts_;
    --p[row0];
    return Partition(std::move(p));
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ']';
    return os.str();
  }

 private:
  std::vector<int> parts_;
};

/// Modified Frobenius coordinates, doubled: v_i = delta_i - i + 1/2 and
/// u_i = -(delta^t_i - i + 1/2) for i up to the diagonal length m.
struct FrobeniusCoords {
  std::vector<int> u_twice;
  std::vector<int> v_twice;
  int m = 0;
};

inline FrobeniusCoords frobenius_coords(const Partition& delta) {
  FrobeniusCoords fc;
  Partition t = delta.transpose();
  for (int i = 1; delta.row(i) >= i; ++i) {
    fc.v_twice.push_back(2 * (delta.row(i) - i) + 1);
    fc.u_twice.push_back(-(2 * (t.row(i) - i) + 1));
    ++fc.m;
  }
  return fc;
}

/// Down-spin coordinates delta_i - i + 1/2 for i = 1..count.
inline std::vector<HalfInt> down_spin_coords(const Partition& delta, int count) {
  if (count < delta.length()) throw CountTooSmall("count " + std::to_string(count) + " < length " + std::to_string(delta.length()));
  std::vector<HalfInt> xs;
  xs.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) xs.push_back(HalfInt::above(delta.row(i) - i));
  return xs;
}

/// Whether the (infinite) domain-wall configuration of delta has a down spin
/// at `site`.
inline bool is_down(const Partition& delta, HalfInt site) {
  int r = delta.length();
  if (site.twice() < -2 * r) return true;  // below -r + 1/2 every site is filled
  for (int i = 1; i <= r + 1; ++i)
    if (2 * (delta.row(i) - i) + 1 == site.twice()) return true;
  return false;
}

/// Addable and removable corners, as 0-based row indices.
struct Corners {
  std::vector<int> addable;
  std::vector<int> removable;
};

inline Corners corners(const Partition& delta) {
  Corners c;
  int r = delta.length();
  for (int i = 0; i <= r; ++i) {
    bool prev_longer = i == 0 || delta.row(i) > delta.row(i + 1);
    if (prev_longer) c.addable.push_back(i);
  }
  for (int i = 0; i < r; ++i)
    if (delta.row(i + 1) > delta.row(i + 2)) c.removable.push_back(i);
  return c;
}

/// Bounds on weight, largest part and number of parts.
struct Truncation {
  static constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;
  int max_weight = kUnbounded;
  int max_part = kUnbounded;
  int max_length = kUnbounded;

  static Truncation weight(int w) { return Truncation{w, kUnbounded, kUnbounded}; }
  static Truncation box(int p) { return Truncation{p * p, p, p}; }

  bool contains(const Partition& d) const {
    return d.weight() <= max_weight && d.length() <= max_length && (d.empty() || d.row(1) <= max_part);
  }
  /// Largest weight that can actually occur.
  int effective_weight() const {
    long long by_box = static_cast<long long>(max_part) * max_length;
    return static_cast<int>(std::min<long long>(max_weight, by_box));
  }
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

namespace detail {
inline void partitions_of(int remaining, int max_part, int max_length, std::vector<int>& prefix,
                          std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (static_cast<int>(prefix.size()) >= max_length) return;
  for (int v = std::min(remaining, max_part); v >= 1; --v) {
    prefix.push_back(v);
    partitions_of(remaining - v, v, max_length, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace detail

/// All partitions inside the truncation, graded by weight and, within one
/// weight, in decreasing lexicographic order: 0, [1], [2], [1,1], [3], ...
inline std::vector<Partition> enumerate_partitions(const Truncation& trunc) {
  int top = trunc.effective_weight();
  if (top >= Truncation::kUnbounded / 2) throw DimensionError("unbounded truncation");
  std::vector<Partition> out;
  std::vector<int> prefix;
  for (int w = 0; w <= top; ++w) detail::partitions_of(w, std::min(w, trunc.max_part), trunc.max_length, prefix, out);
  return out;
}

/// Partitions fitting in a p x p box, optionally capped in weight.
inline std::vector<Partition> enumerate_box(int p, std::optional<int> max_weight = std::nullopt) {
  if (p < 0) throw DomainError("box side must be nonnegative");
  Truncation t = Truncation::box(p);
  if (max_weight) t.max_weight = std::min(t.max_weight, *max_weight);
  return enumerate_partitions(t);
}

/// An enumerated truncated partition space with index lookup.
class PartitionBasis {
 public:
  explicit PartitionBasis(const Truncation& trunc) : trunc_(trunc), elems_(enumerate_partitions(trunc)) {
    for (std::size_t i = 0; i < elems_.size(); ++i) index_.emplace(elems_[i], i);
  }

  const Truncation& truncation() const { return trunc_; }
  std::size_t size() const { return elems_.size(); }
  const Partition& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Partition>& elements() const { return elems_; }
  std::optional<std::size_t> find(const Partition& d) const {
    auto it = index_.find(d);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  /// Every neighbour delta +- box is inside the truncation. Removing a box
  /// never leaves it, so only addable corners can fail.
  bool is_interior(std::size_t i) const {
    const Partition& d = elems_[i];
    for (int row : corners(d).addable)
      if (!trunc_.contains(d.add_box(row))) return false;
    return true;
  }
  /// Number of addable corners whose result falls outside the truncation.
  int suppressed_additions(std::size_t i) const {
    const Partition& d = elems_[i];
    int n = 0;
    for (int row : corners(d).addable)
      if (!trunc_.contains(d.add_box(row))) ++n;
    return n;
  }

 private:
  Truncation trunc_;
  std::vector<Partition> elems_;
  std::map<Partition, std::size_t> index_;
};

}  // namespace bdw
