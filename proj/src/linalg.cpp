#include "birkhoff/linalg.hpp"

#include <cstdlib>
#include <numeric>

#include "birkhoff/error.hpp"

namespace birkhoff {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw ShapeError("matrix entry count does not match rows*cols");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalVector RationalMatrix::multiply(std::span<const Rational> x) const {
  if (x.size() != cols_) throw ShapeError("matrix-vector size mismatch");
  RationalVector out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r) {
    mpq_class acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& a = entries_[r * cols_ + c].value();
      if (sgn(a) != 0) acc += a * x[c].value();
    }
    out[r] = Rational(std::move(acc));
  }
  return out;
}

namespace {

// Reduced row echelon form over Q, pivoting on the first nonzero entry in
// column order. Only the first `pivot_limit` columns may hold pivots.
struct Echelon {
  std::size_t rows;
  std::size_t cols;
  std::vector<mpq_class> a;
  std::vector<std::size_t> pivot_cols;

  mpq_class& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

Echelon reduce(std::size_t rows, std::size_t cols, std::vector<mpq_class> a, std::size_t pivot_limit) {
  Echelon e{rows, cols, std::move(a), {}};
  mpq_class factor;
  mpq_class tmp;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(e.at(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t k = c; k < cols; ++k) swap(e.at(p, k), e.at(r, k));
    }
    factor = e.at(r, c);
    for (std::size_t k = c; k < cols; ++k) {
      if (sgn(e.at(r, k)) != 0) e.at(r, k) /= factor;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(e.at(i, c)) == 0) continue;
      factor = e.at(i, c);
      for (std::size_t k = c; k < cols; ++k) {
        const mpq_class& pivot_row = e.at(r, k);
        if (sgn(pivot_row) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), pivot_row.get_mpq_t());
        mpq_sub(e.at(i, k).get_mpq_t(), e.at(i, k).get_mpq_t(), tmp.get_mpq_t());
      }
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  return e;
}

std::vector<mpq_class> raw(const RationalMatrix& m) {
  std::vector<mpq_class> out;
  out.reserve(m.entries().size());
  for (const auto& x : m.entries()) out.push_back(x.value());
  return out;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
  return reduce(m.rows(), m.cols(), raw(m), m.cols()).pivot_cols.size();
}

std::optional<RationalVector> solve_consistent(const RationalMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw ShapeError("right-hand side length differs from row count");
  const std::size_t cols = m.cols() + 1;
  std::vector<mpq_class> aug;
  aug.reserve(m.rows() * cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.push_back(m(r, c).value());
    aug.push_back(b[r].value());
  }
  Echelon e = reduce(m.rows(), cols, std::move(aug), m.cols());
  if (e.pivot_cols.size() < m.cols()) {
    throw ContractViolation("solve_consistent: rank " + std::to_string(e.pivot_cols.size()) + " < " +
                            std::to_string(m.cols()) + " columns");
  }
  for (std::size_t r = e.pivot_cols.size(); r < m.rows(); ++r) {
    if (sgn(e.at(r, m.cols())) != 0) return std::nullopt;
  }
  RationalVector x(m.cols());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) x[e.pivot_cols[i]] = Rational(e.at(i, m.cols()));
  return x;
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
  Echelon e = reduce(m.rows(), m.cols(), raw(m), m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<RationalVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) v[e.pivot_cols[i]] = Rational(mpq_class(-e.at(i, f)));
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// IncrementalRank

namespace {

struct Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Overflow{};
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw Overflow{};
  return out;
}

inline std::int64_t gcd_of(std::int64_t g, std::int64_t x) { return std::gcd(g, x); }
inline Integer gcd_of(const Integer& g, const Integer& x) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return out;
}

template <class Int>
inline Int combine(const Int& pivot, const Int& v, const Int& coeff, const Int& b) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    return checked_sub(checked_mul(pivot, v), checked_mul(coeff, b));
  } else {
    return pivot * v - coeff * b;
  }
}

// Basis of primitive integer columns; basis column j has zeros at the pivot
// rows of all columns before it, so reducing in insertion order is exact.
// Pivots of magnitude 1 are preferred: reducing by such a column touches only
// its nonzero rows.
template <class Int>
struct Basis {
  std::size_t rows;
  std::vector<std::vector<Int>> cols;
  std::vector<std::vector<std::uint32_t>> nonzero;
  std::vector<std::size_t> pivots;
  std::vector<Int> work;

  // Returns false if dependent.
  bool add(std::span<const std::size_t> one_rows) {
    auto& v = work;
    v.assign(rows, Int(0));
    for (auto r : one_rows) v[r] = Int(1);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const std::size_t p = pivots[j];
      if (v[p] == 0) continue;
      const auto& b = cols[j];
      const Int& pivot = b[p];
      if (pivot == 1 || pivot == -1) {
        // v - (v[p] / pivot) b
        const Int coeff = pivot == 1 ? Int(v[p]) : combine<Int>(Int(0), Int(0), Int(1), v[p]);
        for (auto r : nonzero[j]) v[r] = combine<Int>(Int(1), v[r], coeff, b[r]);
      } else {
        const Int g = gcd_of(pivot, v[p]);
        const Int scale = pivot / g;
        const Int coeff = v[p] / g;
        for (std::size_t r = 0; r < rows; ++r) {
          if (v[r] == 0 && b[r] == 0) continue;
          v[r] = combine<Int>(scale, v[r], coeff, b[r]);
        }
      }
    }
    Int g(0);
    std::size_t p = rows;
    for (std::size_t r = 0; r < rows; ++r) {
      if (v[r] == 0) continue;
      g = gcd_of(g, v[r]);
      if (p == rows || ((v[r] == 1 || v[r] == -1) && !(v[p] == 1 || v[p] == -1))) p = r;
    }
    if (p == rows) return false;
    std::vector<std::uint32_t> nz;
    for (std::size_t r = 0; r < rows; ++r) {
      if (v[r] == 0) continue;
      if (g != 1) v[r] /= g;
      nz.push_back(static_cast<std::uint32_t>(r));
    }
    if (g != 1) {
      // a unit entry may have appeared after dividing
      for (auto r : nz)
        if (v[r] == 1 || v[r] == -1) {
          p = r;
          break;
        }
    }
    cols.push_back(v);
    nonzero.push_back(std::move(nz));
    pivots.push_back(p);
    return true;
  }

  void truncate(std::size_t n) {
    cols.resize(n);
    nonzero.resize(n);
    pivots.resize(n);
  }
};

}  // namespace

struct IncrementalRank::Small : Basis<std::int64_t> {};
struct IncrementalRank::Big : Basis<Integer> {};

IncrementalRank::IncrementalRank(std::size_t rows) : rows_(rows), small_(std::make_unique<Small>()) {
  small_->rows = rows;
}

IncrementalRank::IncrementalRank(const IncrementalRank& other)
    : rows_(other.rows_),
      raw_(other.raw_),
      small_(other.small_ ? std::make_unique<Small>(*other.small_) : nullptr),
      big_(other.big_ ? std::make_unique<Big>(*other.big_) : nullptr) {}

IncrementalRank& IncrementalRank::operator=(const IncrementalRank& other) {
  if (this != &other) *this = IncrementalRank(other);
  return *this;
}

IncrementalRank::IncrementalRank(IncrementalRank&&) noexcept = default;
IncrementalRank& IncrementalRank::operator=(IncrementalRank&&) noexcept = default;
IncrementalRank::~IncrementalRank() = default;

bool IncrementalRank::promoted() const noexcept { return big_ != nullptr; }

void IncrementalRank::promote() {
  big_ = std::make_unique<Big>();
  big_->rows = rows_;
  for (const auto& col : raw_) big_->add(col);
  small_.reset();
}

bool IncrementalRank::try_add(std::span<const std::size_t> one_rows) {
  for (auto r : one_rows) {
    if (r >= rows_) throw ShapeError("IncrementalRank: row out of range");
  }
  if (small_) {
    try {
      if (!small_->add(one_rows)) return false;
      raw_.emplace_back(one_rows.begin(), one_rows.end());
      return true;
    } catch (const Overflow&) {
      promote();
    }
  }
  if (!big_->add(one_rows)) return false;
  raw_.emplace_back(one_rows.begin(), one_rows.end());
  return true;
}

void IncrementalRank::rollback(std::size_t mark) {
  if (mark > raw_.size()) throw ContractViolation("IncrementalRank: rollback beyond current rank");
  raw_.resize(mark);
  if (small_) small_->truncate(mark);
  if (big_) big_->truncate(mark);
}

}  // namespace birkhoff
