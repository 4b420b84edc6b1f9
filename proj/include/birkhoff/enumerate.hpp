#pragma once

// Vertex enumeration: the generic candidate-support loop (bound, C0/C1,
// incidence rank, positive solution, dedupe by canonical form) and the two
// plane-by-plane searches for Ω_3^4 and Ω_4^3.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "birkhoff/rational.hpp"
#include "birkhoff/stochastic.hpp"
#include "birkhoff/tensor.hpp"

namespace birkhoff {

/// Every support of an n x n doubly stochastic matrix, as a bit mask with bit
/// i·n + j for entry (i, j). Classes are taken under row and column
/// permutations and transposition.
struct PlaneCatalog {
  int order = 0;
  std::vector<std::uint32_t> patterns;
  /// class id of each pattern, ids ordered by (N, canonical mask)
  std::vector<int> class_of;
  /// canonical (smallest) mask of each class
  std::vector<std::uint32_t> class_reps;
  std::vector<std::size_t> class_sizes;

  std::size_t size() const noexcept { return patterns.size(); }
  /// Smallest mask in the class of `mask`; mask need not be in the catalog.
  std::uint32_t canonical(std::uint32_t mask) const;
  /// Class id of an arbitrary pattern, or -1 if it is not a catalog member.
  int class_id(std::uint32_t mask) const;
};

/// Built by testing all 2^(n²) (0,1) matrices with total_support_2d.
/// Throws ContractViolation outside 1 <= n <= 4.
const PlaneCatalog& plane_catalog(int order);

/// Mask <-> 2-dimensional (0,1) tensor.
Tensor plane_tensor(std::uint32_t mask, int order);
std::uint32_t plane_mask(const Tensor& t);

struct ClassifiedVertex {
  Tensor canonical;
  std::size_t support_size = 0;
  Rational permanent;
  Integer denominator;
  bool symmetric = false;
  std::uint64_t automorphisms = 0;

  friend bool operator==(const ClassifiedVertex&, const ClassifiedVertex&) = default;
};

/// Computes every field from `vertex` (which need not be canonical).
ClassifiedVertex classify(const Tensor& vertex);

/// Archive order: support size, then canonical entries lexicographically.
bool archive_less(const ClassifiedVertex& a, const ClassifiedVertex& b);

enum class DistributionKey { SupportSize, DenominatorLcm };
std::map<long, std::size_t> distribution(const std::vector<ClassifiedVertex>& vs, DistributionKey key);

struct EnumerationStats {
  std::uint64_t search_nodes = 0;
  std::uint64_t candidates = 0;
  std::uint64_t out_of_bound = 0;
  std::uint64_t c0_c1_failures = 0;
  std::uint64_t rank_deficient = 0;
  std::uint64_t not_positive = 0;
  std::uint64_t claims_rejected = 0;
  /// candidates equivalent to one already certified
  std::uint64_t duplicates = 0;
  std::uint64_t vertices = 0;

  EnumerationStats& operator+=(const EnumerationStats& o);
};

struct EnumerationResult {
  /// sorted by archive_less, one entry per class
  std::vector<ClassifiedVertex> classes;
  EnumerationStats stats;
};

/// Calls emit once per candidate support.
using SupportSource = std::function<void(const std::function<void(const SupportSet&)>& emit)>;

/// Runs the certification steps on every candidate and dedupes the vertices.
/// Candidates outside n^(d-1) <= N <= n^d - (n-1)^d are counted in
/// stats.out_of_bound and skipped.
EnumerationResult algorithm1(int order, int dim, const SupportSource& source);

/// Depth-first over the indices of I_n^d in row-major order, deciding each
/// index in or out. Prunes on the support bound, on C0/C1 as soon as a line
/// is fully decided, and on linear dependence of the incidence columns chosen
/// so far. Intended for tiny grids (n^d <= 32 or (n, d) = (3, 3)).
SupportSource exhaustive_supports(int order, int dim, EnumerationStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Ω_3^4

/// Claims about a vertex A of Ω_3^4 other than the permutation class and
/// vertex #2, read as conditions on supports. A 1 of A is an index that is
/// the only support member of its lines.
enum Claim : unsigned {
  /// no hyperplane whose nonzeros are all 1s
  kClaimNoUnitHyperplane = 1u << 0,
  /// no two 1s at Hamming distance 3
  kClaimNoDistanceThree = 1u << 1,
  /// no hyperplane containing unit 2-dimensional planes of two different
  /// directions
  kClaimNoCrossingUnitPlanes = 1u << 2,
  /// a 2-dimensional plane with two 1s is a unit plane
  kClaimTwoOnesUnitPlane = 1u << 3,
  /// two unit 2-dimensional planes meeting in exactly one index do not meet
  /// in a zero
  kClaimUnitPlanesMeetInOne = 1u << 4,
  kAllClaims = (1u << 5) - 1,
};

/// Applies the enabled claims to a support of I_3^4. With complete = false
/// only the Hamming-distance claim is checked and the 1s are the indices
/// alone in both of their lines along axes 2 and 3 (the searched planes are
/// complete in those directions). Throws ShapeError unless (n, d) = (3, 4).
bool claims_filter_3_4(const SupportSet& s, bool complete, unsigned claims = kAllClaims);

struct Omega34Options {
  unsigned claims = kAllClaims;
  /// the 𝒫1/𝒫2 restrictions on planes P2..P9
  bool exclusions = true;
  /// largest admissible Σ N(P_i)
  std::size_t max_support = 65;
  /// visit only the lex-least configuration among relabellings that keep
  /// P1 in place
  bool orbit_pruning = true;
};

/// Nine planes P_(a1,a2) over axes 2, 3, placed in row-major block order with
/// P_(0,0) of least support; every plane is a doubly stochastic support. The
/// permutation class and vertex #2 are added unconditionally.
EnumerationResult enumerate_omega_3_4(const Omega34Options& options = {});

// ---------------------------------------------------------------------------
// Ω_4^3

/// The nine P1 candidates (planes of least support), as masks.
const std::vector<std::uint32_t>& omega_4_3_first_planes();

struct Omega43Options {
  std::size_t max_support = 37;
  /// 0: BIRKHOFF_JOBS from the environment, else 1
  unsigned jobs = 0;
  /// one file per finished (P1, P2) unit; empty disables checkpointing
  std::filesystem::path checkpoint_dir;
  /// called after each finished unit with (done, total)
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Planes P1..P4 along axis 0 with N(P1) <= ... <= N(P4).
EnumerationResult enumerate_omega_4_3(const Omega43Options& options = {});

/// Worker count: explicit value if nonzero, else BIRKHOFF_JOBS, else 1.
unsigned resolve_jobs(unsigned requested);

// ---------------------------------------------------------------------------

/// Necessary condition on supports of polystochastic tensors: every index of
/// s lies in supp(B) ⊆ s for some B equivalent to a listed vertex. Returns
/// the index of the first uncovered member, or nullopt.
std::optional<std::size_t> uncovered_support_index(const SupportSet& s, const std::vector<Tensor>& vertex_classes);

}  // namespace birkhoff
