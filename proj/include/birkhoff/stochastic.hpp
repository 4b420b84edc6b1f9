#pragma once

// Polystochastic predicates, supports, diagonals and permanents.

#include <cstddef>
#include <functional>
#include <vector>

#include "birkhoff/rational.hpp"
#include "birkhoff/tensor.hpp"

namespace birkhoff {

/// Indices of I_n^d in strictly increasing row-major (flat) order; member j
/// is the j-th column of the incidence matrix.
class SupportSet {
 public:
  SupportSet(int dim, int order);
  /// Sorts and deduplicates; throws ShapeError for out-of-range members.
  SupportSet(int dim, int order, std::vector<std::size_t> flat_members);

  static SupportSet from_indices(int dim, int order, const std::vector<Index>& members);
  /// Every index of I_n^d.
  static SupportSet full(int dim, int order);

  int dim() const noexcept { return grid_.dim(); }
  int order() const noexcept { return grid_.order(); }
  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  std::vector<Index> indices() const;
  bool contains(std::size_t flat) const;
  /// Position of `flat` in the member list, or size() when absent.
  std::size_t position(std::size_t flat) const;

  /// The (0,1) tensor with this support.
  Tensor indicator() const;

  friend bool operator==(const SupportSet& a, const SupportSet& b) {
    return a.dim() == b.dim() && a.order() == b.order() && a.members_ == b.members_;
  }

 private:
  Grid grid_;
  std::vector<std::size_t> members_;
};

/// n indices pairwise sharing no hyperplane.
struct Diagonal {
  std::vector<Index> indices;
};

bool is_diagonal(const Diagonal& diag, int dim, int order);

/// Visits every diagonal: index i has first coordinate i and its remaining
/// coordinates given by one permutation of S_n per axis.
void for_each_diagonal(int dim, int order, const std::function<void(const Diagonal&)>& visit);

bool is_polystochastic(const Tensor& t);
/// Polystochastic with all entries in {0,1}.
bool is_permutation_tensor(const Tensor& t);
/// Every line sums to exactly 0.
bool is_zero_sum(const Tensor& t);

SupportSet support(const Tensor& t);

/// Sum over all diagonals of the entry products, skipping branches whose
/// partial product is already zero.
Rational permanent(const Tensor& t);

/// A 2-dimensional (0,1) matrix carries a doubly stochastic matrix with the
/// same support iff every 1 has a positive-permanent complementary minor.
/// Throws ContractViolation for other inputs.
bool total_support_2d(const Tensor& t);

/// LCM of the reduced denominators of all entries.
Integer denominator_lcm(const Tensor& t);

/// (C0): every line meets s. (C1): a line meeting s in exactly one index α
/// forces every other line through α to meet s only in α.
bool check_c0_c1(const SupportSet& s);

}  // namespace birkhoff
