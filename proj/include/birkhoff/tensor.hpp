#pragma once

// Dense d-dimensional tensors of order n over exact rationals.
//
// Storage is row-major with axis 0 most significant. Axes are numbered from 0
// in code and in every file format; prose that counts axes from 1 maps axis k
// to code axis k-1.

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "birkhoff/rational.hpp"

namespace birkhoff {

/// n^k for small non-negative exponents.
std::size_t ipow(std::size_t base, int exp);

/// A point of I_n^d: d coordinates, each in 0..n-1.
class Index {
 public:
  Index() = default;
  explicit Index(std::vector<int> coords) : coords_(std::move(coords)) {}
  Index(std::initializer_list<int> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  int operator[](std::size_t axis) const { return coords_[axis]; }
  int& operator[](std::size_t axis) { return coords_[axis]; }
  const std::vector<int>& coords() const noexcept { return coords_; }

  /// Number of coordinates equal to `value` (|α|_v).
  int count(int value) const;

  friend auto operator<=>(const Index&, const Index&) = default;
  friend bool operator==(const Index&, const Index&) = default;

 private:
  std::vector<int> coords_;
};

std::ostream& operator<<(std::ostream& os, const Index& a);

/// Hamming distance: number of positions where the indices differ.
int hamming(const Index& a, const Index& b);

/// Index arithmetic for I_n^d without any payload.
class Grid {
 public:
  Grid(int dim, int order);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t volume() const noexcept { return volume_; }
  /// d * n^(d-1)
  std::size_t line_count() const noexcept { return line_count_; }

  std::size_t flat(const Index& a) const;
  Index unflat(std::size_t flat) const;
  int coord(std::size_t flat, int axis) const { return static_cast<int>((flat / strides_[axis]) % order_); }
  std::size_t stride(int axis) const { return strides_[axis]; }

  /// Line numbering: axis-major, then the base index (coordinate `axis`
  /// removed) in row-major order.
  std::size_t line_id(int axis, std::size_t flat) const;
  /// Flat indices of line `id`, free coordinate ascending.
  std::vector<std::size_t> line_members(std::size_t id) const;
  /// Every line, in line_id order.
  std::vector<std::vector<std::size_t>> all_lines() const;

  bool contains(const Index& a) const;

 private:
  int dim_;
  int order_;
  std::size_t volume_;
  std::size_t line_count_;
  std::vector<std::size_t> strides_;
};

class Tensor {
 public:
  /// Throws ShapeError unless entries.size() == order^dim.
  Tensor(int dim, int order, std::vector<Rational> entries);

  static Tensor zeros(int dim, int order);
  static Tensor filled(int dim, int order, const Rational& value);
  /// entries = values / denominator
  static Tensor from_integers(int dim, int order, std::span<const long> values, long denominator = 1);
  static Tensor generate(int dim, int order, const std::function<Rational(const Index&)>& f);

  int dim() const noexcept { return grid_.dim(); }
  int order() const noexcept { return grid_.order(); }
  std::size_t volume() const noexcept { return grid_.volume(); }
  const Grid& grid() const noexcept { return grid_; }

  const Rational& operator[](const Index& a) const { return entries_[grid_.flat(a)]; }
  const Rational& at(std::size_t flat) const { return entries_[flat]; }
  const std::vector<Rational>& entries() const noexcept { return entries_; }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.dim() == b.dim() && a.order() == b.order() && a.entries_ == b.entries_;
  }

 private:
  Grid grid_;
  std::vector<Rational> entries_;
};

/// The n indices agreeing with `base` off `free_axis`, free coordinate 0..n-1.
std::vector<Index> line_indices(const Tensor& t, int free_axis, const Index& base);

/// A plane: the fixed axes and their values; the remaining axes vary.
struct PlaneSpec {
  std::map<int, int> fixed;
};

/// The k-dimensional plane, free axes kept in ascending original order.
Tensor plane_extract(const Tensor& t, const PlaneSpec& spec);

/// The hyperplane orthogonal to `axis` at coordinate `value`.
Tensor hyperplane(const Tensor& t, int axis, int value);

/// Order n-1 tensor of the indices differing from `a` in every coordinate
/// (A_α). Surviving coordinates keep their relative order.
Tensor delete_hyperplanes(const Tensor& t, const Index& a);

/// Invariant under every permutation of the axes.
bool is_symmetric(const Tensor& t);

}  // namespace birkhoff
