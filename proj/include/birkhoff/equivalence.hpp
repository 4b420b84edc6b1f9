#pragma once

// The group S_n^d ⋊ S_d acting on d-dimensional tensors of order n.
//
// Convention. A transform g = (σ, π) sends index α to g(α) = π(σ(α)) where
//   σ(α)_{σ(j)} = α_j          (coordinate j moves to axis σ(j))
//   π(β)_i      = π_i(β_i)     (then axis i is relabelled by π_i)
// and apply(g, t)[g(α)] = t[α]. compose(g, h) is "h first, then g", so
// apply(compose(g, h), t) = apply(g, apply(h, t)).

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "birkhoff/rational.hpp"
#include "birkhoff/tensor.hpp"

namespace birkhoff {

struct EquivalenceTransform {
  std::vector<int> axis_perm;
  std::vector<std::vector<int>> hyperplane_perms;

  static EquivalenceTransform identity(int dim, int order);
  static EquivalenceTransform random(int dim, int order, std::mt19937_64& rng);

  int dim() const noexcept { return static_cast<int>(axis_perm.size()); }
  int order() const noexcept { return hyperplane_perms.empty() ? 0 : static_cast<int>(hyperplane_perms[0].size()); }

  Index map(const Index& a) const;

  friend bool operator==(const EquivalenceTransform&, const EquivalenceTransform&) = default;
};

EquivalenceTransform compose(const EquivalenceTransform& g, const EquivalenceTransform& h);
EquivalenceTransform inverse(const EquivalenceTransform& g);

/// Throws ShapeError when g and t disagree on d or n.
Tensor apply(const EquivalenceTransform& g, const Tensor& t);

/// Lexicographically smallest image (row-major, rational value order) over
/// the whole group. For each axis permutation and relabelling of axes 1..d-1
/// the best relabelling of axis 0 is obtained by sorting the axis-0
/// hyperplanes, so only (d!)·(n!)^(d-1) images are materialised.
Tensor canonical_form(const Tensor& t);

/// Throws ShapeError on a shape mismatch.
bool are_equivalent(const Tensor& a, const Tensor& b);

/// Number of group elements fixing t.
std::uint64_t automorphism_order(const Tensor& t);

/// Whether some tensor equivalent to t is symmetric.
bool has_symmetric_representative(const Tensor& t);

/// (n!)^d · d!
std::uint64_t group_order(int dim, int order);

/// Calls visit(map) for every transform whose axis-0 relabelling is the
/// identity; map[flat α] = flat g(α). (d!)·(n!)^(d-1) calls, fixed order.
void for_each_partial_transform(int dim, int order, const std::function<void(const std::vector<std::uint32_t>&)>& visit);

}  // namespace birkhoff
