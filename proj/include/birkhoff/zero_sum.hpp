#pragma once

// Zero-sum tensors of order n are determined by their values on the order
// n-1 submatrix left after deleting the hyperplanes through an anchor β:
//
//   b_α = (-1)^k · Σ_{γ ∈ Γ(α,β)} b_γ,   k = #{i : α_i = β_i},
//
// where Γ(α,β) holds the submatrix indices agreeing with α wherever α
// differs from β. The space of zero-sum tensors thus has dimension (n-1)^d.

#include <cstddef>
#include <utility>
#include <vector>

#include "birkhoff/tensor.hpp"

namespace birkhoff {

/// Signed terms (flat index into the order n-1 submatrix, ±1) expressing
/// entry `alpha` of a zero-sum tensor through its submatrix at `anchor`.
std::vector<std::pair<std::size_t, int>> zero_sum_terms(const Index& alpha, const Index& anchor, int order);

/// The unique zero-sum tensor of order n whose restriction to the
/// complement of the anchor's hyperplanes is `sub` (dimension d, order n-1).
Tensor zero_sum_extend(const Tensor& sub, const Index& anchor, int dim, int order);

}  // namespace birkhoff
