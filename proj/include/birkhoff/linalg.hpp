#pragma once

// Exact rational linear algebra: rank, kernel, and unique solutions of
// overdetermined systems, plus an incremental rank tracker for search.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "birkhoff/rational.hpp"

namespace birkhoff {

using RationalVector = std::vector<Rational>;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws ShapeError on a length mismatch.
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const std::vector<Rational>& entries() const noexcept { return entries_; }

  RationalVector multiply(std::span<const Rational> x) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Exact rank over Q.
std::size_t rank(const RationalMatrix& m);

/// The unique x with m·x = b, or nullopt when the system is inconsistent.
/// Throws ContractViolation when rank(m) < cols (solution not unique).
std::optional<RationalVector> solve_consistent(const RationalMatrix& m, std::span<const Rational> b);

/// Basis of {x : m·x = 0}; empty iff m has full column rank.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);

/// Column-incremental rank over Q with rollback.
///
/// Columns are (0,1) vectors given by the rows holding a 1. A column is
/// accepted only when it is independent of the accepted ones, so the tracked
/// column set always has full column rank. Rollback to any earlier rank()
/// restores that exact state, which is what a backtracking search needs.
///
/// Arithmetic is fraction-free on primitive integer columns; 64-bit storage
/// switches to GMP integers on the first overflow.
class IncrementalRank {
 public:
  explicit IncrementalRank(std::size_t rows);
  IncrementalRank(const IncrementalRank& other);
  IncrementalRank& operator=(const IncrementalRank& other);
  IncrementalRank(IncrementalRank&&) noexcept;
  IncrementalRank& operator=(IncrementalRank&&) noexcept;
  ~IncrementalRank();

  /// Adds the column if it is independent; returns false and leaves the
  /// state untouched otherwise.
  bool try_add(std::span<const std::size_t> one_rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t rank() const noexcept { return raw_.size(); }
  void rollback(std::size_t mark);
  bool promoted() const noexcept;

 private:
  struct Small;
  struct Big;
  void promote();

  std::size_t rows_;
  std::vector<std::vector<std::size_t>> raw_;
  std::unique_ptr<Small> small_;
  std::unique_ptr<Big> big_;
};

}  // namespace birkhoff
