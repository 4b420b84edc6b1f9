#pragma once

// Vertex certification for supports in I_n^d.
//
// A support S with |S| = N <= n^d - (n-1)^d is the support of a vertex of
// Ω_n^d iff the line/support incidence matrix L has rank N and L·x = 1 has a
// strictly positive solution; that solution is then the vertex.

#include <optional>
#include <string>
#include <string_view>

#include "birkhoff/linalg.hpp"
#include "birkhoff/stochastic.hpp"
#include "birkhoff/tensor.hpp"

namespace birkhoff {

enum class Verdict { Vertex, RankDeficient, Infeasible, NotStrictlyPositive };

std::string_view to_string(Verdict v);

struct IncidenceMatrix {
  std::size_t lines = 0;
  SupportSet support;
  RationalMatrix matrix;
};

/// Rows follow Grid::line_id order; columns follow the support order.
/// Throws ContractViolation for an empty support.
IncidenceMatrix build_incidence(const SupportSet& s);

struct VertexCertificate {
  Verdict verdict = Verdict::Infeasible;
  /// present iff verdict == Vertex
  std::optional<Tensor> tensor;
  /// kernel vector over the support (RankDeficient) or the solved values
  /// (NotStrictlyPositive)
  std::optional<RationalVector> witness;
  /// why the support was refuted before elimination, if it was
  std::string note;

  bool is_vertex() const noexcept { return verdict == Verdict::Vertex; }
};

/// A nonzero tensor with every line sum 0.
struct ZeroSumWitness {
  Tensor tensor;
};

/// Which exact system decides the support. Incidence eliminates L itself
/// (lines x N). ZeroSumBasis parametrises zero-sum tensors by their order
/// n-1 submatrix and eliminates the (n^d - N) x (n-1)^d system forcing the
/// entries off the support to vanish, which is far smaller for large d.
/// Auto picks the cheaper one.
enum class CertifyRoute { Auto, Incidence, ZeroSumBasis };

VertexCertificate certify(const SupportSet& s, CertifyRoute route = CertifyRoute::Auto);

/// Certification against an arbitrary incidence structure: rows are the
/// constraints (hyperedges), columns the candidate support. Verdict Vertex
/// means rank = cols and L·x = 1 has a strictly positive solution.
struct IncidenceVerdict {
  Verdict verdict = Verdict::Infeasible;
  std::optional<RationalVector> solution;
  std::optional<RationalVector> witness;
};

IncidenceVerdict certify_incidence(const RationalMatrix& incidence);

/// A nonzero zero-sum tensor supported inside s, if one exists.
std::optional<ZeroSumWitness> find_zero_sum(const SupportSet& s);

/// Sufficient condition only: some direction has n-1 hyperplanes that are
/// vertices of Ω_n^{d-1}. False means inconclusive. Throws
/// ContractViolation unless t is polystochastic of dimension >= 2.
bool vertex_by_hyperplanes(const Tensor& t);

/// n^d - (n-1)^d
std::size_t support_bound(int dim, int order);

}  // namespace birkhoff
