#pragma once

// Constructions of vertices from smaller ones. Every *_vertex function
// re-certifies its output; the report keeps the prediction next to the
// verdict so a wrong prediction is visible rather than assumed away.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "birkhoff/tensor.hpp"
#include "birkhoff/vertexcert.hpp"
#include "birkhoff/zero_sum.hpp"

namespace birkhoff {

struct ConstructionReport {
  /// e.g. "kronecker", "dot", "blocks", "construction1"
  std::string construction;
  std::map<std::string, std::string> parameters;
  Tensor tensor;
  /// support size predicted by the construction's counting argument
  std::optional<std::size_t> claimed_support;
  /// Vertex / non-vertex as predicted; empty when nothing is predicted
  std::optional<bool> predicted_vertex;
  VertexCertificate certified;
  /// disagreements between prediction and the constructed tensor
  std::vector<std::string> notes;

  std::size_t support_size() const;
  /// The certified verdict and the support size agree with whatever was
  /// predicted.
  bool prediction_holds() const;
};

/// c_γ = a_α b_β with γ_i = α_i n₂ + β_i. Throws ShapeError unless both have
/// the same dimension.
Tensor kronecker(const Tensor& a, const Tensor& b);

/// a ⊗ b for a vertex b. With a a permutation the result is predicted to be
/// a vertex with n₁^(d-1)·N(b) nonzeros; for any other polystochastic a
/// nothing is predicted and the certificate alone decides. Throws
/// ContractViolation if b is not a vertex or a is not polystochastic.
ConstructionReport kronecker_vertex(const Tensor& a, const Tensor& b);

/// Replaces the block of a ⊗ b at each α ∈ supp(a) by blocks[α]. Map keys
/// iterate in row-major order, which fixes the archive layout. Throws
/// ContractViolation for a non-permutation a, a key set different from
/// supp(a), or a block that is not a vertex; ShapeError for mixed shapes.
ConstructionReport block_substitution(const Tensor& a, const std::map<Index, Tensor>& blocks);

/// c_{αβ} = Σ_i a_{α,i} b_{i,β}: dimension d₁ + d₂ - 2. Throws ShapeError on
/// an order mismatch or when the result would have dimension 0.
Tensor dot_product(const Tensor& a, const Tensor& b);

/// a · b for a vertex b. With a a permutation the result is predicted to be
/// a vertex with n^(d₁-2)·N(b) nonzeros; otherwise nothing is predicted.
/// Throws ContractViolation if b is not a vertex or a is not polystochastic.
ConstructionReport dot_vertex(const Tensor& a, const Tensor& b);

/// The symmetric order-3 tensor defined by the parity of (|α|₀, |α|₁, |α|₂).
/// Throws ContractViolation for d < 2.
Tensor construction1_tensor(int dim);

/// Predicted: vertex iff d >= 4, with 3^d - 3·2^(d-1) + 2 (d even) or + 3
/// (d odd) nonzeros.
ConstructionReport construction1(int dim);

}  // namespace birkhoff
