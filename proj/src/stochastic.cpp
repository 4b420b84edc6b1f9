#include "birkhoff/stochastic.hpp"

#include <algorithm>
#include <cstdint>

#include "birkhoff/error.hpp"

namespace birkhoff {

SupportSet::SupportSet(int dim, int order) : grid_(dim, order) {}

SupportSet::SupportSet(int dim, int order, std::vector<std::size_t> flat_members)
    : grid_(dim, order), members_(std::move(flat_members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= grid_.volume()) throw ShapeError("support member outside I_n^d");
}

SupportSet SupportSet::from_indices(int dim, int order, const std::vector<Index>& members) {
  const Grid g(dim, order);
  std::vector<std::size_t> flat;
  flat.reserve(members.size());
  for (const auto& a : members) flat.push_back(g.flat(a));
  return SupportSet(dim, order, std::move(flat));
}

SupportSet SupportSet::full(int dim, int order) {
  const Grid g(dim, order);
  std::vector<std::size_t> all(g.volume());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return SupportSet(dim, order, std::move(all));
}

std::vector<Index> SupportSet::indices() const {
  std::vector<Index> out;
  out.reserve(members_.size());
  for (auto f : members_) out.push_back(grid_.unflat(f));
  return out;
}

bool SupportSet::contains(std::size_t flat) const { return std::binary_search(members_.begin(), members_.end(), flat); }

std::size_t SupportSet::position(std::size_t flat) const {
  const auto it = std::lower_bound(members_.begin(), members_.end(), flat);
  return (it != members_.end() && *it == flat) ? static_cast<std::size_t>(it - members_.begin()) : members_.size();
}

Tensor SupportSet::indicator() const {
  std::vector<Rational> entries(grid_.volume(), Rational(0));
  for (auto f : members_) entries[f] = 1;
  return Tensor(dim(), order(), std::move(entries));
}

bool is_diagonal(const Diagonal& diag, int dim, int order) {
  if (static_cast<int>(diag.indices.size()) != order) return false;
  const Grid g(dim, order);
  for (int axis = 0; axis < dim; ++axis) {
    std::vector<bool> seen(order, false);
    for (const auto& a : diag.indices) {
      if (!g.contains(a) || seen[a[axis]]) return false;
      seen[a[axis]] = true;
    }
  }
  return true;
}

namespace {

// Depth-first walk over diagonals. Row i fixes coordinate 0 = i; the other
// coordinates are picked axis by axis among the values not yet used on that
// axis. `accept(flat)` may veto a branch.
class DiagonalWalker {
 public:
  DiagonalWalker(const Grid& g) : g_(g), used_(g.dim(), 0), chosen_(g.order()) {}

  template <class Enter, class Leaf>
  void run(Enter&& enter, Leaf&& leaf) {
    row(0, enter, leaf);
  }

  const std::vector<std::size_t>& chosen() const { return chosen_; }

 private:
  template <class Enter, class Leaf>
  void row(int i, Enter& enter, Leaf& leaf) {
    if (i == g_.order()) {
      leaf();
      return;
    }
    pick(i, 1, i * g_.stride(0), enter, leaf);
  }

  template <class Enter, class Leaf>
  void pick(int i, int axis, std::size_t flat, Enter& enter, Leaf& leaf) {
    if (axis == g_.dim()) {
      if (!enter(i, flat)) return;
      chosen_[i] = flat;
      row(i + 1, enter, leaf);
      return;
    }
    for (int c = 0; c < g_.order(); ++c) {
      const std::uint32_t bit = 1u << c;
      if (used_[axis] & bit) continue;
      used_[axis] |= bit;
      pick(i, axis + 1, flat + c * g_.stride(axis), enter, leaf);
      used_[axis] &= ~bit;
    }
  }

  const Grid& g_;
  std::vector<std::uint32_t> used_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

void for_each_diagonal(int dim, int order, const std::function<void(const Diagonal&)>& visit) {
  const Grid g(dim, order);
  DiagonalWalker walker(g);
  walker.run([](int, std::size_t) { return true; },
             [&] {
               Diagonal diag;
               for (auto f : walker.chosen()) diag.indices.push_back(g.unflat(f));
               visit(diag);
             });
}

namespace {

bool lines_sum_to(const Tensor& t, const Rational& target) {
  const Grid& g = t.grid();
  for (std::size_t id = 0; id < g.line_count(); ++id) {
    mpq_class sum = 0;
    for (auto f : g.line_members(id)) sum += t.at(f).value();
    if (sum != target.value()) return false;
  }
  return true;
}

}  // namespace

bool is_polystochastic(const Tensor& t) {
  for (const auto& x : t.entries()) {
    if (x.sign() < 0) return false;
  }
  return lines_sum_to(t, Rational(1));
}

bool is_permutation_tensor(const Tensor& t) {
  for (const auto& x : t.entries()) {
    if (!(x.is_zero() || x == Rational(1))) return false;
  }
  return lines_sum_to(t, Rational(1));
}

bool is_zero_sum(const Tensor& t) { return lines_sum_to(t, Rational(0)); }

SupportSet support(const Tensor& t) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < t.volume(); ++i) {
    if (!t.at(i).is_zero()) members.push_back(i);
  }
  return SupportSet(t.dim(), t.order(), std::move(members));
}

Rational permanent(const Tensor& t) {
  if (t.order() > 32) throw ContractViolation("permanent: order too large");
  const Grid& g = t.grid();
  DiagonalWalker walker(g);
  std::vector<mpq_class> partial(t.order() + 1);
  partial[0] = 1;
  mpq_class total = 0;
  walker.run(
      [&](int i, std::size_t flat) {
        const auto& x = t.at(flat).value();
        if (sgn(x) == 0) return false;
        partial[i + 1] = partial[i] * x;
        return true;
      },
      [&] { total += partial[t.order()]; });
  return Rational(std::move(total));
}

bool total_support_2d(const Tensor& t) {
  if (t.dim() != 2) throw ContractViolation("total_support_2d needs a 2-dimensional matrix");
  for (const auto& x : t.entries()) {
    if (!(x.is_zero() || x == Rational(1))) throw ContractViolation("total_support_2d needs a (0,1) matrix");
  }
  if (t.order() == 1) return t.at(0) == Rational(1);
  for (std::size_t f = 0; f < t.volume(); ++f) {
    if (t.at(f).is_zero()) continue;
    if (permanent(delete_hyperplanes(t, t.grid().unflat(f))).is_zero()) return false;
  }
  // an all-zero matrix carries no doubly stochastic matrix
  return !support(t).empty();
}

Integer denominator_lcm(const Tensor& t) {
  Integer out = 1;
  for (const auto& x : t.entries()) out = lcm(out, x.denominator());
  return out;
}

bool check_c0_c1(const SupportSet& s) {
  const Grid& g = s.grid();
  std::vector<std::uint8_t> in(g.volume(), 0);
  for (auto f : s.members()) in[f] = 1;
  std::vector<int> count(g.line_count(), 0);
  for (auto f : s.members()) {
    for (int axis = 0; axis < g.dim(); ++axis) ++count[g.line_id(axis, f)];
  }
  for (std::size_t id = 0; id < g.line_count(); ++id) {
    if (count[id] == 0) return false;
  }
  for (auto f : s.members()) {
    bool alone_somewhere = false;
    bool shared_somewhere = false;
    for (int axis = 0; axis < g.dim(); ++axis) {
      const int c = count[g.line_id(axis, f)];
      alone_somewhere |= c == 1;
      shared_somewhere |= c > 1;
    }
    if (alone_somewhere && shared_somewhere) return false;
  }
  return true;
}

}  // namespace birkhoff
