#include "birkhoff/tensor.hpp"

#include <algorithm>
#include <string>

#include "birkhoff/error.hpp"

namespace birkhoff {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int Index::count(int value) const {
  return static_cast<int>(std::count(coords_.begin(), coords_.end(), value));
}

std::ostream& operator<<(std::ostream& os, const Index& a) {
  os << '(';
  for (std::size_t i = 0; i < a.dim(); ++i) os << (i ? "," : "") << a[i];
  return os << ')';
}

int hamming(const Index& a, const Index& b) {
  if (a.dim() != b.dim()) throw ShapeError("hamming: dimension mismatch");
  int out = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) out += a[i] != b[i];
  return out;
}

Grid::Grid(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1) throw ShapeError("dimension must be at least 1");
  if (order < 1) throw ShapeError("order must be at least 1");
  volume_ = ipow(order, dim);
  line_count_ = static_cast<std::size_t>(dim) * ipow(order, dim - 1);
  strides_.resize(dim);
  std::size_t s = 1;
  for (int axis = dim - 1; axis >= 0; --axis) {
    strides_[axis] = s;
    s *= order;
  }
}

bool Grid::contains(const Index& a) const {
  if (static_cast<int>(a.dim()) != dim_) return false;
  return std::all_of(a.coords().begin(), a.coords().end(), [&](int c) { return c >= 0 && c < order_; });
}

std::size_t Grid::flat(const Index& a) const {
  if (!contains(a)) throw ShapeError("index outside I_n^d");
  std::size_t out = 0;
  for (int axis = 0; axis < dim_; ++axis) out += a[axis] * strides_[axis];
  return out;
}

Index Grid::unflat(std::size_t flat) const {
  std::vector<int> coords(dim_);
  for (int axis = 0; axis < dim_; ++axis) coords[axis] = coord(flat, axis);
  return Index(std::move(coords));
}

std::size_t Grid::line_id(int axis, std::size_t flat) const {
  // drop coordinate `axis` and renumber the rest row-major
  const std::size_t high = flat / (strides_[axis] * order_);
  const std::size_t low = flat % strides_[axis];
  return axis * ipow(order_, dim_ - 1) + high * strides_[axis] + low;
}

std::vector<std::size_t> Grid::line_members(std::size_t id) const {
  const std::size_t per_axis = ipow(order_, dim_ - 1);
  const int axis = static_cast<int>(id / per_axis);
  const std::size_t base = id % per_axis;
  const std::size_t high = base / strides_[axis];
  const std::size_t low = base % strides_[axis];
  const std::size_t first = high * strides_[axis] * order_ + low;
  std::vector<std::size_t> out(order_);
  for (int i = 0; i < order_; ++i) out[i] = first + i * strides_[axis];
  return out;
}

std::vector<std::vector<std::size_t>> Grid::all_lines() const {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(line_count_);
  for (std::size_t id = 0; id < line_count_; ++id) out.push_back(line_members(id));
  return out;
}

Tensor::Tensor(int dim, int order, std::vector<Rational> entries) : grid_(dim, order), entries_(std::move(entries)) {
  if (entries_.size() != grid_.volume()) {
    throw ShapeError("tensor of dimension " + std::to_string(dim) + " and order " + std::to_string(order) +
                     " needs " + std::to_string(grid_.volume()) + " entries, got " + std::to_string(entries_.size()));
  }
}

Tensor Tensor::zeros(int dim, int order) { return filled(dim, order, Rational(0)); }

Tensor Tensor::filled(int dim, int order, const Rational& value) {
  const Grid g(dim, order);
  return Tensor(dim, order, std::vector<Rational>(g.volume(), value));
}

Tensor Tensor::from_integers(int dim, int order, std::span<const long> values, long denominator) {
  std::vector<Rational> entries;
  entries.reserve(values.size());
  for (long v : values) entries.emplace_back(v, denominator);
  return Tensor(dim, order, std::move(entries));
}

Tensor Tensor::generate(int dim, int order, const std::function<Rational(const Index&)>& f) {
  const Grid g(dim, order);
  std::vector<Rational> entries;
  entries.reserve(g.volume());
  for (std::size_t i = 0; i < g.volume(); ++i) entries.push_back(f(g.unflat(i)));
  return Tensor(dim, order, std::move(entries));
}

std::vector<Index> line_indices(const Tensor& t, int free_axis, const Index& base) {
  if (free_axis < 0 || free_axis >= t.dim()) throw ShapeError("line axis out of range");
  if (!t.grid().contains(base)) throw ShapeError("line base outside I_n^d");
  std::vector<Index> out;
  out.reserve(t.order());
  for (int i = 0; i < t.order(); ++i) {
    Index a = base;
    a[free_axis] = i;
    out.push_back(std::move(a));
  }
  return out;
}

Tensor plane_extract(const Tensor& t, const PlaneSpec& spec) {
  for (const auto& [axis, value] : spec.fixed) {
    if (axis < 0 || axis >= t.dim()) throw ShapeError("plane axis out of range");
    if (value < 0 || value >= t.order()) throw ShapeError("plane coordinate out of range");
  }
  std::vector<int> free_axes;
  for (int axis = 0; axis < t.dim(); ++axis) {
    if (!spec.fixed.contains(axis)) free_axes.push_back(axis);
  }
  std::vector<int> coords(t.dim());
  for (const auto& [axis, value] : spec.fixed) coords[axis] = value;
  const int k = static_cast<int>(free_axes.size());
  // a fully fixed plane is a single entry, returned as an order-1 vector
  if (k == 0) return Tensor(1, 1, {t[Index(coords)]});
  const Grid sub(k, t.order());
  std::vector<Rational> entries;
  entries.reserve(sub.volume());
  for (std::size_t i = 0; i < sub.volume(); ++i) {
    for (int j = 0; j < k; ++j) coords[free_axes[j]] = sub.coord(i, j);
    entries.push_back(t[Index(coords)]);
  }
  return Tensor(k, t.order(), std::move(entries));
}

Tensor hyperplane(const Tensor& t, int axis, int value) { return plane_extract(t, PlaneSpec{{{axis, value}}}); }

Tensor delete_hyperplanes(const Tensor& t, const Index& a) {
  if (t.order() < 2) throw ShapeError("cannot delete hyperplanes of an order-1 tensor");
  if (!t.grid().contains(a)) throw ShapeError("anchor index outside I_n^d");
  const Grid sub(t.dim(), t.order() - 1);
  std::vector<Rational> entries;
  entries.reserve(sub.volume());
  std::vector<int> coords(t.dim());
  for (std::size_t i = 0; i < sub.volume(); ++i) {
    for (int axis = 0; axis < t.dim(); ++axis) {
      const int c = sub.coord(i, axis);
      coords[axis] = c < a[axis] ? c : c + 1;
    }
    entries.push_back(t[Index(coords)]);
  }
  return Tensor(t.dim(), t.order() - 1, std::move(entries));
}

bool is_symmetric(const Tensor& t) {
  const Grid& g = t.grid();
  // adjacent transpositions generate S_d
  for (int axis = 0; axis + 1 < t.dim(); ++axis) {
    for (std::size_t i = 0; i < g.volume(); ++i) {
      const int x = g.coord(i, axis);
      const int y = g.coord(i, axis + 1);
      if (x >= y) continue;
      const std::size_t j = i + (y - x) * g.stride(axis) - (y - x) * g.stride(axis + 1);
      if (t.at(i) != t.at(j)) return false;
    }
  }
  return true;
}

}  // namespace birkhoff
