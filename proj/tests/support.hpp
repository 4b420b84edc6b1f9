#pragma once

// Shared fixtures for the unit tests: appendix tensors, the vertex V, small
// generators and brute-force oracles.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "birkhoff/rational.hpp"
#include "birkhoff/tensor.hpp"

namespace fixtures {

std::string data_path(const std::string& relative);

/// A_k of the appendix (1-based k), 4-dimensional of order 3.
birkhoff::Tensor appendix(int k);
/// The 3-dimensional non-permutation vertex of order 3.
birkhoff::Tensor vertex_v();

struct AppendixFacts {
  int support;
  birkhoff::Rational permanent;
  long denominator;
  bool symmetric;
};
/// Printed N, per, Δ and symmetry of A_k.
AppendixFacts appendix_facts(int k);

/// a_α = 1 iff Σ α_i ≡ 0 (mod n).
birkhoff::Tensor sum_permutation(int dim, int order);

/// Permanent by summing over all (n!)^(d-1) diagonals without pruning.
birkhoff::Rational brute_permanent(const birkhoff::Tensor& t);

/// Convex combination of `terms` random sum-type permutation tensors
/// relabelled by random hyperplane permutations.
birkhoff::Tensor random_polystochastic(int dim, int order, int terms, std::mt19937_64& rng);

}  // namespace fixtures
