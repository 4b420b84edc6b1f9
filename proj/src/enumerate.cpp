#include "birkhoff/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "birkhoff/equivalence.hpp"
#include "birkhoff/error.hpp"
#include "birkhoff/linalg.hpp"
#include "birkhoff/vertexcert.hpp"

namespace birkhoff {

namespace {

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::uint32_t relabel_mask(std::uint32_t m, int n, const std::vector<int>& rows, const std::vector<int>& cols,
                           bool transpose) {
  std::uint32_t out = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!(m >> (i * n + j) & 1u)) continue;
      const int r = rows[i];
      const int c = cols[j];
      out |= 1u << (transpose ? c * n + r : r * n + c);
    }
  return out;
}

// Cells that are alone in both their row and their column.
std::uint32_t isolated_cells(std::uint32_t m, int n) {
  const std::uint32_t row_mask = (1u << n) - 1;
  std::uint32_t out = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int cell = i * n + j;
      if (!(m >> cell & 1u)) continue;
      const bool row_alone = std::popcount((m >> (i * n)) & row_mask) == 1;
      bool col_alone = true;
      for (int k = 0; k < n; ++k) col_alone = col_alone && (k == i || !(m >> (k * n + j) & 1u));
      if (row_alone && col_alone) out |= 1u << cell;
    }
  return out;
}

PlaneCatalog build_catalog(int n) {
  PlaneCatalog cat;
  cat.order = n;
  const std::uint32_t cells = static_cast<std::uint32_t>(n * n);
  for (std::uint32_t m = 1; m < (1u << cells); ++m) {
    if (total_support_2d(plane_tensor(m, n))) cat.patterns.push_back(m);
  }
  std::vector<std::uint32_t> canon(cat.patterns.size());
  for (std::size_t i = 0; i < cat.patterns.size(); ++i) canon[i] = cat.canonical(cat.patterns[i]);
  std::vector<std::uint32_t> reps(canon);
  std::sort(reps.begin(), reps.end(), [](std::uint32_t a, std::uint32_t b) {
    const int na = std::popcount(a);
    const int nb = std::popcount(b);
    return na != nb ? na < nb : a < b;
  });
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  cat.class_reps = reps;
  cat.class_sizes.assign(reps.size(), 0);
  for (std::size_t i = 0; i < cat.patterns.size(); ++i) {
    const int id = static_cast<int>(std::find(reps.begin(), reps.end(), canon[i]) - reps.begin());
    cat.class_of.push_back(id);
    ++cat.class_sizes[id];
  }
  return cat;
}

// ---------------------------------------------------------------------------
// Canonical keys of supports. Equivalent supports carry equivalent vertices,
// so deduplicating by support is the same as deduplicating by tensor.
//
// Every hyperplane gets a signature computed from the support alone (sizes,
// then repeated refinement by the signatures its members see on the other
// axes). Axes are ordered by their sorted signatures, trying every order
// among ties. Within an axis order, tied values are split by
// individualization: one tied value at a time gets a fresh signature, the
// rest are refined again, and each fully split labelling yields an image.
// Every step depends only on signatures, so the set of images is the same
// for all supports in an orbit and the least one is a canonical form.

using SupportKey = std::vector<std::uint64_t>;
using Signatures = std::vector<std::vector<std::uint64_t>>;

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class KeyBuilder {
 public:
  KeyBuilder(int dim, int order, const std::vector<std::size_t>& members)
      : g_(dim, order), dim_(dim), order_(order), n_(members.size()), coords_(members.size() * dim) {
    for (std::size_t i = 0; i < n_; ++i)
      for (int a = 0; a < dim; ++a) coords_[i * dim + a] = g_.coord(members[i], a);
  }

  SupportKey build() {
    Signatures sig(dim_, std::vector<std::uint64_t>(order_, 0));
    for (std::size_t i = 0; i < n_; ++i)
      for (int a = 0; a < dim_; ++a) ++sig[a][at(i, a)];
    refine(sig);
    std::vector<std::vector<std::uint64_t>> profile(dim_);
    for (int a = 0; a < dim_; ++a) {
      profile[a] = sig[a];
      std::sort(profile[a].begin(), profile[a].end());
    }
    std::vector<int> sigma(dim_);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<int> sorted = sigma;
    std::stable_sort(sorted.begin(), sorted.end(), [&](int x, int y) { return profile[x] < profile[y]; });
    do {
      bool ok = true;
      for (int i = 0; i < dim_ && ok; ++i) ok = profile[sigma[i]] == profile[sorted[i]];
      if (!ok) continue;
      // sigma[i]: source axis placed at image axis i
      for (int i = 0; i < dim_; ++i) stride_[sigma[i]] = g_.stride(i);
      split(sig, sigma, 0);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return best_;
  }

 private:
  int at(std::size_t i, int a) const { return coords_[i * dim_ + a]; }

  static std::size_t distinct(const Signatures& sig) {
    std::size_t out = 0;
    for (const auto& row : sig) {
      auto r = row;
      std::sort(r.begin(), r.end());
      out += static_cast<std::size_t>(std::unique(r.begin(), r.end()) - r.begin());
    }
    return out;
  }

  // A hyperplane absorbs, per member, its own signature combined with the
  // multiset of signatures on the member's other axes.
  void refine(Signatures& sig) const {
    for (std::size_t classes = distinct(sig); classes < static_cast<std::size_t>(dim_ * order_);) {
      Signatures next(dim_, std::vector<std::uint64_t>(order_, 0));
      for (std::size_t i = 0; i < n_; ++i) {
        std::uint64_t all = 0;
        for (int a = 0; a < dim_; ++a) all += mix(sig[a][at(i, a)]);
        for (int a = 0; a < dim_; ++a) {
          const std::uint64_t own = mix(sig[a][at(i, a)]);
          next[a][at(i, a)] += mix(own * 0x9E3779B97F4A7C15ull + (all - own));
        }
      }
      for (int a = 0; a < dim_; ++a)
        for (int v = 0; v < order_; ++v) next[a][v] = mix(next[a][v] ^ mix(sig[a][v] + 1));
      const std::size_t refined = distinct(next);
      if (refined == classes) break;
      // keep the refined signatures only when they split something
      sig = std::move(next);
      classes = refined;
    }
  }

  void split(Signatures sig, const std::vector<int>& sigma, int depth) {
    refine(sig);
    for (int i = 0; i < dim_; ++i) {
      const int a = sigma[i];
      auto row = sig[a];
      std::sort(row.begin(), row.end());
      // least signature shared by several values
      std::optional<std::uint64_t> tied;
      for (int v = 1; v < order_ && !tied; ++v)
        if (row[v] == row[v - 1]) tied = row[v];
      if (!tied) continue;
      for (int v = 0; v < order_; ++v) {
        if (sig[a][v] != *tied) continue;
        Signatures child = sig;
        child[a][v] = mix(*tied ^ mix(static_cast<std::uint64_t>(depth) + 0x5555));
        split(std::move(child), sigma, depth + 1);
      }
      return;
    }
    leaf(sig);
  }

  void leaf(const Signatures& sig) {
    std::vector<std::vector<int>> label(dim_, std::vector<int>(order_));
    for (int a = 0; a < dim_; ++a)
      for (int v = 0; v < order_; ++v) {
        int rank = 0;
        for (int w = 0; w < order_; ++w) rank += sig[a][w] < sig[a][v];
        label[a][v] = rank;
      }
    image_.assign((g_.volume() + 63) / 64, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      std::size_t f = 0;
      for (int a = 0; a < dim_; ++a) f += stride_[a] * static_cast<std::size_t>(label[a][at(i, a)]);
      // bit order makes vector comparison follow flat index order
      image_[f / 64] |= std::uint64_t{1} << (63 - f % 64);
    }
    if (best_.empty() || image_ < best_) best_ = image_;
  }

  Grid g_;
  int dim_;
  int order_;
  std::size_t n_;
  std::vector<int> coords_;
  std::array<std::size_t, 16> stride_{};
  SupportKey image_;
  SupportKey best_;
};

SupportKey support_key(int dim, int order, const std::vector<std::size_t>& members) {
  if (dim > 16) throw ContractViolation("support_key: dimension too large");
  return KeyBuilder(dim, order, members).build();
}

// Keys already taken by some collector, shared between workers so that each
// class is certified once per run.
class SharedKeys {
 public:
  bool insert(const SupportKey& key) {
    std::lock_guard lock(mu_);
    return keys_.insert(key).second;
  }

 private:
  std::mutex mu_;
  std::set<SupportKey> keys_;
};

// Certifies candidates and keeps one vertex per class.
class Collector {
 public:
  Collector(int dim, int order, SharedKeys* shared = nullptr) : dim_(dim), order_(order), shared_(shared) {}

  void offer(const SupportSet& s, EnumerationStats& st) {
    ++st.candidates;
    if (s.size() < ipow(order_, dim_ - 1) || s.size() > support_bound(dim_, order_)) {
      ++st.out_of_bound;
      return;
    }
    if (!check_c0_c1(s)) {
      ++st.c0_c1_failures;
      return;
    }
    auto key = support_key(dim_, order_, s.members());
    if (!(shared_ ? shared_->insert(key) : seen_.insert(key).second)) {
      ++st.duplicates;
      return;
    }
    auto cert = certify(s);
    switch (cert.verdict) {
      case Verdict::Vertex:
        break;
      case Verdict::RankDeficient:
        ++st.rank_deficient;
        return;
      case Verdict::Infeasible:
        ++st.c0_c1_failures;
        return;
      case Verdict::NotStrictlyPositive:
        ++st.not_positive;
        return;
    }
    ++st.vertices;
    found_.try_emplace(std::move(key), std::move(*cert.tensor));
  }

  void merge(Collector&& other) {
    found_.merge(other.found_);
    seen_.merge(other.seen_);
  }

  std::vector<ClassifiedVertex> classify_all() const {
    std::vector<ClassifiedVertex> out;
    out.reserve(found_.size());
    for (const auto& [key, t] : found_) out.push_back(classify(t));
    std::sort(out.begin(), out.end(), archive_less);
    return out;
  }

  const std::map<SupportKey, Tensor>& found() const { return found_; }

 private:
  int dim_;
  int order_;
  SharedKeys* shared_;
  std::map<SupportKey, Tensor> found_;
  // keys of every certified candidate, vertex or not, when not shared
  std::set<SupportKey> seen_;
};

SupportSet support_from_mask(int dim, int order, std::span<const std::uint64_t> words) {
  std::vector<std::size_t> members;
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t x = words[w];
    while (x) {
      members.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return SupportSet(dim, order, std::move(members));
}

}  // namespace

// ---------------------------------------------------------------------------
// Plane catalog

std::uint32_t PlaneCatalog::canonical(std::uint32_t mask) const {
  const auto perms = all_perms(order);
  std::uint32_t best = mask;
  for (const auto& r : perms)
    for (const auto& c : perms)
      for (bool tr : {false, true}) best = std::min(best, relabel_mask(mask, order, r, c, tr));
  return best;
}

int PlaneCatalog::class_id(std::uint32_t mask) const {
  const auto it = std::lower_bound(patterns.begin(), patterns.end(), mask);
  if (it == patterns.end() || *it != mask) return -1;
  return class_of[it - patterns.begin()];
}

const PlaneCatalog& plane_catalog(int order) {
  if (order < 1 || order > 4) throw ContractViolation("plane_catalog supports orders 1..4");
  static std::mutex mu;
  static std::array<std::unique_ptr<PlaneCatalog>, 5> cache;
  std::lock_guard lock(mu);
  if (!cache[order]) cache[order] = std::make_unique<PlaneCatalog>(build_catalog(order));
  return *cache[order];
}

Tensor plane_tensor(std::uint32_t mask, int order) {
  std::vector<long> v(static_cast<std::size_t>(order * order));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (mask >> i) & 1u;
  return Tensor::from_integers(2, order, v);
}

std::uint32_t plane_mask(const Tensor& t) {
  if (t.dim() != 2 || t.volume() > 32) throw ShapeError("plane_mask needs a matrix with at most 32 entries");
  std::uint32_t m = 0;
  for (std::size_t f = 0; f < t.volume(); ++f) {
    if (!t.at(f).is_zero()) m |= 1u << f;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Classification

ClassifiedVertex classify(const Tensor& vertex) {
  return ClassifiedVertex{canonical_form(vertex),          support(vertex).size(),
                          permanent(vertex),               denominator_lcm(vertex),
                          has_symmetric_representative(vertex), automorphism_order(vertex)};
}

bool archive_less(const ClassifiedVertex& a, const ClassifiedVertex& b) {
  if (a.support_size != b.support_size) return a.support_size < b.support_size;
  return std::lexicographical_compare(a.canonical.entries().begin(), a.canonical.entries().end(),
                                      b.canonical.entries().begin(), b.canonical.entries().end());
}

std::map<long, std::size_t> distribution(const std::vector<ClassifiedVertex>& vs, DistributionKey key) {
  std::map<long, std::size_t> out;
  for (const auto& v : vs) {
    const long k = key == DistributionKey::SupportSize ? static_cast<long>(v.support_size) : v.denominator.get_si();
    ++out[k];
  }
  return out;
}

EnumerationStats& EnumerationStats::operator+=(const EnumerationStats& o) {
  search_nodes += o.search_nodes;
  candidates += o.candidates;
  out_of_bound += o.out_of_bound;
  c0_c1_failures += o.c0_c1_failures;
  rank_deficient += o.rank_deficient;
  not_positive += o.not_positive;
  claims_rejected += o.claims_rejected;
  duplicates += o.duplicates;
  vertices += o.vertices;
  return *this;
}

// ---------------------------------------------------------------------------
// Generic search

EnumerationResult algorithm1(int order, int dim, const SupportSource& source) {
  Collector collector(dim, order);
  EnumerationResult result;
  source([&](const SupportSet& s) {
    if (s.dim() != dim || s.order() != order) throw ShapeError("algorithm1: candidate of the wrong shape");
    collector.offer(s, result.stats);
  });
  result.classes = collector.classify_all();
  return result;
}

namespace {

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(int order, int dim, EnumerationStats* stats)
      : grid_(dim, order),
        lo_(ipow(order, dim - 1)),
        hi_(support_bound(dim, order)),
        rank_(grid_.line_count()),
        count_(grid_.line_count(), 0),
        pending_(grid_.line_count(), order),
        alone_(grid_.volume(), 0),
        in_(grid_.volume(), 0),
        stats_(stats) {
    for (std::size_t f = 0; f < grid_.volume(); ++f) {
      std::vector<std::size_t> ids;
      for (int axis = 0; axis < dim; ++axis) ids.push_back(grid_.line_id(axis, f));
      lines_.push_back(std::move(ids));
    }
  }

  void run(const std::function<void(const SupportSet&)>& emit) {
    emit_ = &emit;
    descend(0);
  }

 private:
  // Lines through f whose last undecided index is f.
  void close_lines(std::size_t f, std::vector<std::size_t>& closed) {
    for (auto id : lines_[f]) {
      if (--pending_[id] == 0) closed.push_back(id);
    }
  }

  void reopen(std::size_t f) {
    for (auto id : lines_[f]) ++pending_[id];
  }

  // C0/C1 for a line that has just been fully decided. Marks its only
  // member, if any, as forced alone; returns false on a violation.
  bool check_closed(std::size_t id, std::vector<std::size_t>& marked) {
    if (count_[id] == 0) return false;
    if (count_[id] != 1) return true;
    for (auto f : grid_.line_members(id)) {
      if (!in_[f]) continue;
      for (auto other : lines_[f]) {
        if (count_[other] != 1) return false;
      }
      if (!alone_[f]) {
        alone_[f] = 1;
        marked.push_back(f);
      }
    }
    return true;
  }

  bool blocked(std::size_t f) const {
    for (auto id : lines_[f]) {
      for (auto g : grid_.line_members(id)) {
        if (in_[g] && alone_[g]) return true;
      }
    }
    return false;
  }

  void descend(std::size_t f) {
    if (stats_) ++stats_->search_nodes;
    if (f == grid_.volume()) {
      std::vector<std::size_t> members;
      for (std::size_t g = 0; g < in_.size(); ++g) {
        if (in_[g]) members.push_back(g);
      }
      if (members.size() >= lo_) (*emit_)(SupportSet(grid_.dim(), grid_.order(), std::move(members)));
      return;
    }
    // remaining indices cannot lift the size to the lower bound
    if (size_ + (grid_.volume() - f) < lo_) return;
    for (int take = 1; take >= 0; --take) {
      if (take) {
        if (size_ == hi_ || blocked(f)) continue;
        const std::size_t mark = rank_.rank();
        if (!rank_.try_add(lines_[f])) continue;
        in_[f] = 1;
        ++size_;
        for (auto id : lines_[f]) ++count_[id];
        branch(f);
        for (auto id : lines_[f]) --count_[id];
        --size_;
        in_[f] = 0;
        rank_.rollback(mark);
      } else {
        branch(f);
      }
    }
  }

  void branch(std::size_t f) {
    std::vector<std::size_t> closed;
    std::vector<std::size_t> marked;
    close_lines(f, closed);
    bool ok = true;
    for (auto id : closed) {
      if (!(ok = check_closed(id, marked))) break;
    }
    if (ok) descend(f + 1);
    for (auto g : marked) alone_[g] = 0;
    reopen(f);
  }

  Grid grid_;
  std::size_t lo_;
  std::size_t hi_;
  IncrementalRank rank_;
  std::vector<std::vector<std::size_t>> lines_;
  std::vector<int> count_;
  std::vector<int> pending_;
  std::vector<std::uint8_t> alone_;
  std::vector<std::uint8_t> in_;
  std::size_t size_ = 0;
  EnumerationStats* stats_;
  const std::function<void(const SupportSet&)>* emit_ = nullptr;
};

}  // namespace

SupportSource exhaustive_supports(int order, int dim, EnumerationStats* stats) {
  if (order < 1 || dim < 1 || ipow(order, dim) > 64) throw ContractViolation("exhaustive_supports: grid too large");
  return [order, dim, stats](const std::function<void(const SupportSet&)>& emit) {
    ExhaustiveSearch search(order, dim, stats);
    search.run(emit);
  };
}

// ---------------------------------------------------------------------------
// Claims for Ω_3^4

bool claims_filter_3_4(const SupportSet& s, bool complete, unsigned claims) {
  if (s.dim() != 4 || s.order() != 3) throw ShapeError("claims_filter_3_4 needs a support in I_3^4");
  const Grid& g = s.grid();
  std::array<std::array<int, 4>, 81> coord{};
  std::array<std::uint8_t, 81> in{};
  std::vector<int> count(g.line_count(), 0);
  for (auto f : s.members()) {
    in[f] = 1;
    for (int axis = 0; axis < 4; ++axis) {
      coord[f][axis] = g.coord(f, axis);
      ++count[g.line_id(axis, f)];
    }
  }
  std::vector<std::size_t> ones;
  std::array<std::uint8_t, 81> one{};
  for (auto f : s.members()) {
    bool alone = true;
    for (int axis = complete ? 0 : 2; axis < 4; ++axis) alone = alone && count[g.line_id(axis, f)] == 1;
    if (alone) {
      one[f] = 1;
      ones.push_back(f);
    }
  }
  if (claims & kClaimNoDistanceThree) {
    for (std::size_t x = 0; x < ones.size(); ++x)
      for (std::size_t y = x + 1; y < ones.size(); ++y) {
        int d = 0;
        for (int axis = 0; axis < 4; ++axis) d += coord[ones[x]][axis] != coord[ones[y]][axis];
        if (d == 3) return false;
      }
  }
  if (!complete) return true;

  if (claims & kClaimNoUnitHyperplane) {
    // hyperplane (axis, v) is unit when none of its members is a non-1
    std::array<std::array<bool, 3>, 4> unit{};
    for (auto& row : unit) row.fill(true);
    for (auto f : s.members())
      if (!one[f])
        for (int axis = 0; axis < 4; ++axis) unit[axis][coord[f][axis]] = false;
    for (const auto& row : unit)
      for (bool u : row)
        if (u) return false;
  }

  // 2-dimensional planes: direction = pair of fixed axes (k, l), position
  // = their values (u, v)
  constexpr std::array<std::array<int, 2>, 6> fixed = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  std::array<std::array<int, 9>, 6> plane_ones{};
  std::array<std::array<bool, 9>, 6> plane_unit{};
  for (auto& row : plane_unit) row.fill(true);
  for (auto f : s.members())
    for (int dir = 0; dir < 6; ++dir) {
      const int pos = 3 * coord[f][fixed[dir][0]] + coord[f][fixed[dir][1]];
      plane_ones[dir][pos] += one[f];
      plane_unit[dir][pos] = plane_unit[dir][pos] && one[f];
    }
  if (claims & kClaimTwoOnesUnitPlane) {
    for (int dir = 0; dir < 6; ++dir)
      for (int pos = 0; pos < 9; ++pos)
        if (plane_ones[dir][pos] >= 2 && !plane_unit[dir][pos]) return false;
  }
  if (claims & kClaimNoCrossingUnitPlanes) {
    // two unit planes of different directions sharing a fixed axis and its
    // value lie in one hyperplane
    for (int d1 = 0; d1 < 6; ++d1)
      for (int d2 = d1 + 1; d2 < 6; ++d2)
        for (int p1 = 0; p1 < 9; ++p1) {
          if (!plane_unit[d1][p1]) continue;
          for (int p2 = 0; p2 < 9; ++p2) {
            if (!plane_unit[d2][p2]) continue;
            const int v1[2] = {p1 / 3, p1 % 3};
            const int v2[2] = {p2 / 3, p2 % 3};
            for (int i = 0; i < 2; ++i)
              for (int j = 0; j < 2; ++j)
                if (fixed[d1][i] == fixed[d2][j] && v1[i] == v2[j]) return false;
          }
        }
  }
  if (claims & kClaimUnitPlanesMeetInOne) {
    // complementary directions meet in exactly one index
    for (int d1 = 0; d1 < 3; ++d1) {
      const int d2 = 5 - d1;
      for (int p1 = 0; p1 < 9; ++p1) {
        if (!plane_unit[d1][p1]) continue;
        for (int p2 = 0; p2 < 9; ++p2) {
          if (!plane_unit[d2][p2]) continue;
          std::array<int, 4> alpha{};
          alpha[fixed[d1][0]] = p1 / 3;
          alpha[fixed[d1][1]] = p1 % 3;
          alpha[fixed[d2][0]] = p2 / 3;
          alpha[fixed[d2][1]] = p2 % 3;
          if (!in[27 * alpha[0] + 9 * alpha[1] + 3 * alpha[2] + alpha[3]]) return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ω_3^4

namespace {

// Vertex #2 of the appendix, row-major, scaled by 2.
constexpr std::array<long, 81> kVertexTwo = {
    2, 0, 0, 0, 1, 1, 0, 1, 1, 0, 2, 0, 1, 0, 1, 1, 0, 1, 0, 0, 2, 1, 1, 0, 1, 1, 0,
    0, 1, 1, 2, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1,
    0, 1, 1, 0, 1, 1, 2, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 1,
};

Tensor vertex_two() { return Tensor::from_integers(4, 3, kVertexTwo, 2); }

Tensor permutation_3_4() {
  return Tensor::generate(4, 3, [](const Index& a) { return Rational((a[0] + a[1] + a[2] + a[3]) % 3 == 0 ? 1 : 0); });
}

// Masks of the four printed candidates for the least plane, 𝒫1..𝒫4.
constexpr std::array<std::uint32_t, 4> kFirstPlanes34 = {
    0b100'010'001,  // rows 100 / 010 / 001 (bit 3·row + col)
    0b110'110'001,  // 100 / 011 / 011
    0b101'110'011,  // 110 / 011 / 101
    0b111'101'110,  // 011 / 101 / 111
};

class Search34 {
 public:
  Search34(const Omega34Options& opt, EnumerationStats& stats, const std::function<void(const SupportSet&)>& emit)
      : opt_(opt), cat_(plane_catalog(3)), rank_(108), stats_(stats), emit_(emit) {
    const Grid g(4, 3);
    for (std::size_t f = 0; f < 81; ++f)
      for (int axis = 0; axis < 4; ++axis) lines_[f][axis] = g.line_id(axis, f);
    for (std::uint32_t m = 0; m < 512; ++m) isolated_[m] = static_cast<std::uint16_t>(isolated_cells(m, 3));
    for (int c = 0; c < 9; ++c)
      for (int e = 0; e < 9; ++e) {
        const int dist = (c / 3 != e / 3) + (c % 3 != e % 3);
        if (dist == 1) at_distance_[1][c] |= 1u << e;
        if (dist == 2) at_distance_[2][c] |= 1u << e;
      }
  }

  void run() {
    for (auto first : kFirstPlanes34) {
      first_class_ = cat_.class_id(first);
      first_size_ = std::popcount(first);
      build_symmetries(first);
      place(0, first);
    }
  }

 private:
  bool admissible(int k, std::uint32_t m) const {
    const int cls = cat_.class_id(m);
    if (std::popcount(m) < first_size_) return false;
    if (!opt_.exclusions) return true;
    // class ids follow support size: 0 ↔ 𝒫1, 1 ↔ 𝒫2
    if (cls == 0) return false;
    if (first_class_ == 0 && cls == 1) return false;
    if (first_class_ == 1 && cls == 1 && (k == 1 || k == 2 || k == 3 || k == 6)) return false;
    return true;
  }

  static int block_distance(int k, int j) { return (k / 3 != j / 3) + (k % 3 != j % 3); }

  // Relabellings that keep the least plane in place: block moves by row
  // swap, column swap and transposition of (a1, a2), combined with the
  // relabellings of (a3, a4) that fix P1. Every constraint of the search is
  // invariant under them.
  void build_symmetries(std::uint32_t first) {
    symmetries_.clear();
    if (!opt_.orbit_pruning) return;
    const auto perms = all_perms(3);
    std::vector<std::array<std::uint16_t, 512>> cell_maps;
    for (const auto& r : perms)
      for (const auto& c : perms)
        for (bool tr : {false, true}) {
          if (relabel_mask(first, 3, r, c, tr) != first) continue;
          std::array<std::uint16_t, 512> table{};
          for (std::uint32_t m = 0; m < 512; ++m) table[m] = static_cast<std::uint16_t>(relabel_mask(m, 3, r, c, tr));
          cell_maps.push_back(table);
        }
    for (int rs = 0; rs < 2; ++rs)
      for (int cs = 0; cs < 2; ++cs)
        for (int tr = 0; tr < 2; ++tr) {
          std::array<int, 9> source{};
          for (int b = 0; b < 9; ++b) {
            int r = b / 3, c = b % 3;
            if (tr) std::swap(r, c);
            if (rs && r) r = 3 - r;
            if (cs && c) c = 3 - c;
            source[b] = 3 * r + c;
          }
          for (std::size_t h = 0; h < cell_maps.size(); ++h) {
            if (rs == 0 && cs == 0 && tr == 0 && h == 0) continue;  // identity comes first
            symmetries_.push_back({source, cell_maps[h]});
          }
        }
  }

  // Lex-leader test: the configuration, read P2..P9 by mask, may not exceed
  // its image under any symmetry. Decided as soon as a differing position
  // has both planes placed.
  bool lex_leader(int k) const {
    for (const auto& g : symmetries_) {
      for (int i = 1; i < 9; ++i) {
        const int j = g.source[i];
        if (i > k || j > k) break;
        const std::uint32_t image = g.cells[planes_[j]];
        if (planes_[i] < image) break;
        if (planes_[i] > image) return false;
      }
    }
    return true;
  }

  bool compatible(int k, std::uint32_t m) const {
    const std::uint32_t ones = isolated_[m];
    for (int j = 0; j < k; ++j) {
      const int bd = block_distance(k, j);
      const std::uint32_t other = planes_[j];
      if (bd == 1 && ((ones & other) || (isolated_[other] & m))) return false;
      if ((opt_.claims & kClaimNoDistanceThree) && bd >= 1) {
        const auto& near = at_distance_[3 - bd];
        for (std::uint32_t x = ones; x; x &= x - 1) {
          if (near[std::countr_zero(x)] & isolated_[other]) return false;
        }
      }
    }
    return true;
  }

  // C0/C1 along the lines through three planes: every cell covered, and a
  // cell covered once is isolated in its plane.
  bool closes(int a, int b, int c) const {
    const std::uint32_t x = planes_[a], y = planes_[b], z = planes_[c];
    if ((x | y | z) != 0x1FF) return false;
    const std::uint32_t once = (x ^ y ^ z) & ~((x & y) | (x & z) | (y & z));
    return (x & once & ~isolated_[x]) == 0 && (y & once & ~isolated_[y]) == 0 && (z & once & ~isolated_[z]) == 0;
  }

  // With orbit pruning P1 is a least 2-dimensional plane in every
  // direction, not only among its parallels. Three planes filling a block
  // row or column complete the planes that fix a3 or a4 there.
  bool least_plane_holds(int a, int b, int c) const {
    if (!opt_.orbit_pruning) return true;
    for (int x = 0; x < 3; ++x) {
      int row = 0;
      int col = 0;
      for (int k : {a, b, c}) {
        row += std::popcount(planes_[k] >> (3 * x) & 0b111u);
        col += std::popcount(planes_[k] & (0b001001001u << x));
      }
      if (row < first_size_ || col < first_size_) return false;
    }
    return true;
  }

  // planes fixing (a3, a4): one cell of every block
  bool least_plane_holds_across() const {
    if (!opt_.orbit_pruning) return true;
    for (int cell = 0; cell < 9; ++cell) {
      int n = 0;
      for (int k = 0; k < 9; ++k) n += planes_[k] >> cell & 1u;
      if (n < first_size_) return false;
    }
    return true;
  }

  void place(int k, std::uint32_t m) {
    ++stats_.search_nodes;
    planes_[k] = m;
    if (!compatible(k, m)) return;
    if (!lex_leader(k)) return;
    if (k % 3 == 2 && (!closes(k - 2, k - 1, k) || !least_plane_holds(k - 2, k - 1, k))) return;
    if (k >= 6 && (!closes(k - 6, k - 3, k) || !least_plane_holds(k - 6, k - 3, k))) return;
    if (k == 8 && !least_plane_holds_across()) return;
    const std::size_t mark = rank_.rank();
    for (std::uint32_t x = m; x; x &= x - 1) {
      const std::size_t f = 9 * static_cast<std::size_t>(k) + static_cast<std::size_t>(std::countr_zero(x));
      if (!rank_.try_add(lines_[f])) {
        rank_.rollback(mark);
        return;
      }
    }
    total_ += std::popcount(m);
    if (k == 8) {
      leaf();
    } else {
      for (auto next : cat_.patterns) {
        if (total_ + std::popcount(next) + (7 - k) * first_size_ > static_cast<int>(opt_.max_support)) continue;
        if (admissible(k + 1, next)) place(k + 1, next);
      }
    }
    total_ -= std::popcount(m);
    rank_.rollback(mark);
  }

  void leaf() {
    std::vector<std::size_t> members;
    for (int k = 0; k < 9; ++k)
      for (std::uint32_t x = planes_[k]; x; x &= x - 1)
        members.push_back(9 * static_cast<std::size_t>(k) + static_cast<std::size_t>(std::countr_zero(x)));
    SupportSet s(4, 3, std::move(members));
    if (opt_.claims && !claims_filter_3_4(s, true, opt_.claims)) {
      ++stats_.claims_rejected;
      return;
    }
    emit_(s);
  }

  const Omega34Options& opt_;
  const PlaneCatalog& cat_;
  IncrementalRank rank_;
  EnumerationStats& stats_;
  const std::function<void(const SupportSet&)>& emit_;
  std::array<std::array<std::size_t, 4>, 81> lines_{};
  std::array<std::uint16_t, 512> isolated_{};
  std::array<std::array<std::uint32_t, 9>, 3> at_distance_{};
  std::array<std::uint32_t, 9> planes_{};
  struct Symmetry {
    std::array<int, 9> source;
    std::array<std::uint16_t, 512> cells;
  };
  std::vector<Symmetry> symmetries_;
  int first_class_ = 0;
  int first_size_ = 0;
  int total_ = 0;
};

}  // namespace

EnumerationResult enumerate_omega_3_4(const Omega34Options& options) {
  EnumerationStats search_stats;
  auto result = algorithm1(3, 4, [&](const std::function<void(const SupportSet&)>& emit) {
    emit(support(permutation_3_4()));
    emit(support(vertex_two()));
    Search34 search(options, search_stats, emit);
    search.run();
  });
  result.stats.search_nodes += search_stats.search_nodes;
  result.stats.claims_rejected += search_stats.claims_rejected;
  return result;
}

// ---------------------------------------------------------------------------
// Ω_4^3

const std::vector<std::uint32_t>& omega_4_3_first_planes() {
  static const std::vector<std::uint32_t> planes = [] {
    const std::vector<std::array<const char*, 4>> printed = {
        {"1000", "0100", "0010", "0001"}, {"1000", "0100", "0011", "0011"}, {"1000", "0110", "0011", "0101"},
        {"1000", "0110", "0011", "0111"}, {"1100", "1100", "0011", "0011"}, {"1100", "0110", "0011", "1001"},
        {"1000", "0110", "0111", "0111"}, {"0111", "1100", "1010", "1001"}, {"1110", "0011", "1001", "1100"},
    };
    std::vector<std::uint32_t> out;
    for (const auto& rows : printed) {
      std::uint32_t m = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (rows[i][j] == '1') m |= 1u << (4 * i + j);
      out.push_back(m);
    }
    return out;
  }();
  return planes;
}

unsigned resolve_jobs(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("BIRKHOFF_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace {

class Search43 {
 public:
  explicit Search43(std::size_t max_support) : cat_(plane_catalog(4)), max_(static_cast<int>(max_support)) {
    const Grid g(3, 4);
    for (std::size_t f = 0; f < 64; ++f)
      for (int axis = 0; axis < 3; ++axis) lines_[f][axis] = g.line_id(axis, f);
    isolated_.assign(1u << 16, 0);
    for (auto m : cat_.patterns) isolated_[m] = static_cast<std::uint16_t>(isolated_cells(m, 4));
    member_.assign(1u << 16, 0);
    for (auto m : cat_.patterns) member_[m] = 1;
    by_size_.resize(17);
    for (auto m : cat_.patterns) by_size_[std::popcount(m)].push_back(m);
  }

  // Second planes worth a work unit for the given first plane.
  std::vector<std::uint32_t> seconds(std::uint32_t first) const {
    std::vector<std::uint32_t> out;
    const int n1 = std::popcount(first);
    for (int n2 = n1; n1 + 3 * n2 <= max_; ++n2)
      for (auto m : by_size_[n2])
        if (pair_ok(first, m)) out.push_back(m);
    return out;
  }

  // All vertex supports with planes (first, second, ...), as 64-bit masks.
  void run_unit(std::uint32_t first, std::uint32_t second, Collector& out, EnumerationStats& st) {
    collector_ = &out;
    stats_ = &st;
    IncrementalRank rank(48);
    rank_ = &rank;
    planes_[0] = first;
    planes_[1] = second;
    if (!add_columns(0, first) || !add_columns(1, second)) return;
    const int n2 = std::popcount(second);
    const int used = std::popcount(first) + n2;
    for (int n3 = n2; used + 2 * n3 <= max_; ++n3)
      for (auto m : by_size_[n3]) {
        ++st.search_nodes;
        if (!pair_ok(first, m) || !pair_ok(second, m)) continue;
        const std::size_t mark = rank.rank();
        planes_[2] = m;
        if (add_columns(2, m)) last_plane(used + n3, n3);
        rank.rollback(mark);
      }
  }

 private:
  bool pair_ok(std::uint32_t a, std::uint32_t b) const { return !(isolated_[a] & b) && !(isolated_[b] & a); }

  bool add_columns(int k, std::uint32_t m) {
    for (std::uint32_t x = m; x; x &= x - 1) {
      const std::size_t f = 16 * static_cast<std::size_t>(k) + static_cast<std::size_t>(std::countr_zero(x));
      if (!rank_->try_add(lines_[f])) return false;
    }
    return true;
  }

  // P4 must cover every cell the others miss and every cell they cover once
  // without isolating it, and must avoid isolated cells of the others.
  void last_plane(int used, int min_size) {
    const std::uint32_t a = planes_[0], b = planes_[1], c = planes_[2];
    const std::uint32_t any = a | b | c;
    const std::uint32_t once = (a ^ b ^ c) & ~((a & b) | (a & c) | (b & c));
    const std::uint32_t iso = isolated_[a] | isolated_[b] | isolated_[c];
    const std::uint32_t required = (~any & 0xFFFF) | (once & ~iso);
    const std::uint32_t free = any & ~once & 0xFFFF;
    const int room = max_ - used;
    const int need = std::popcount(required);
    if (need > room) return;
    // subsets of the free cells, sized so that min_size <= N(P4) <= room
    std::array<std::uint32_t, 16> bit{};
    const int nfree = std::popcount(free);
    {
      int i = 0;
      for (std::uint32_t x = free; x; x &= x - 1) bit[i++] = x & -x;
    }
    const int lo = std::max(0, min_size - need);
    const int hi = std::min(nfree, room - need);
    for (int k = lo; k <= hi; ++k) {
      // combinations of k free cells, as k-bit patterns over the free list
      for (std::uint32_t c = (1u << k) - 1; c < (1u << nfree); ) {
        std::uint32_t m = required;
        for (std::uint32_t x = c; x; x &= x - 1) m |= bit[std::countr_zero(x)];
        if (member_[m]) {
          ++stats_->search_nodes;
          if (!(isolated_[m] & any) && !(m & ~any & ~isolated_[m])) finish(m);
        }
        if (c == 0) break;
        const std::uint32_t t = c | (c - 1);
        c = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(c) + 1));
      }
    }
  }

  void finish(std::uint32_t last) {
    planes_[3] = last;
    // every 2-dimensional plane along the other directions must be a
    // doubly stochastic support
    for (int axis = 1; axis <= 2; ++axis)
      for (int v = 0; v < 4; ++v) {
        std::uint32_t m = 0;
        for (int k = 0; k < 4; ++k)
          for (int w = 0; w < 4; ++w) {
            const int cell = axis == 1 ? 4 * v + w : 4 * w + v;
            if (planes_[k] >> cell & 1u) m |= 1u << (4 * k + w);
          }
        if (!member_[m]) return;
      }
    const std::size_t mark = rank_->rank();
    if (add_columns(3, last)) {
      std::uint64_t word = 0;
      for (int k = 0; k < 4; ++k) word |= std::uint64_t{planes_[k]} << (16 * k);
      collector_->offer(support_from_mask(3, 4, std::span<const std::uint64_t>(&word, 1)), *stats_);
    }
    rank_->rollback(mark);
  }

  const PlaneCatalog& cat_;
  int max_;
  std::array<std::array<std::size_t, 3>, 64> lines_{};
  std::vector<std::uint16_t> isolated_;
  std::vector<std::uint8_t> member_;
  std::vector<std::vector<std::uint32_t>> by_size_;
  std::array<std::uint32_t, 4> planes_{};
  IncrementalRank* rank_ = nullptr;
  Collector* collector_ = nullptr;
  EnumerationStats* stats_ = nullptr;
};

struct Unit {
  std::size_t first;
  std::uint32_t first_mask;
  std::uint32_t second_mask;
};

std::filesystem::path unit_path(const std::filesystem::path& dir, const Unit& u) {
  std::ostringstream name;
  name << "unit-" << u.first << "-" << std::hex << u.second_mask << ".txt";
  return dir / name.str();
}

// Checkpoint file: "stats" line with the counters, then one hex support mask
// per class representative found in the unit.
void save_unit(const std::filesystem::path& path, const Collector& c, const EnumerationStats& st) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write checkpoint " + tmp);
    out << "stats " << st.search_nodes << ' ' << st.candidates << ' ' << st.out_of_bound << ' ' << st.c0_c1_failures
        << ' ' << st.rank_deficient << ' ' << st.not_positive << ' ' << st.claims_rejected << ' ' << st.duplicates << ' '
        << st.vertices
        << '\n';
    for (const auto& [key, t] : c.found()) {
      std::uint64_t word = 0;
      const auto s = support(t);
      for (auto f : s.members()) word |= std::uint64_t{1} << f;
      out << std::hex << word << std::dec << '\n';
    }
  }
  std::filesystem::rename(tmp, path);
}

bool load_unit(const std::filesystem::path& path, Collector& c, EnumerationStats& st) {
  std::ifstream in(path);
  if (!in) return false;
  std::string tag;
  EnumerationStats loaded;
  if (!(in >> tag >> loaded.search_nodes >> loaded.candidates >> loaded.out_of_bound >> loaded.c0_c1_failures >>
        loaded.rank_deficient >> loaded.not_positive >> loaded.claims_rejected >> loaded.duplicates >>
        loaded.vertices) ||
      tag != "stats")
    return false;
  std::vector<std::uint64_t> words;
  std::uint64_t w = 0;
  while (in >> std::hex >> w) words.push_back(w);
  if (!in.eof()) return false;
  // re-certify rather than trust the file
  EnumerationStats scratch;
  for (auto word : words) c.offer(support_from_mask(3, 4, std::span<const std::uint64_t>(&word, 1)), scratch);
  st += loaded;
  return true;
}

}  // namespace

EnumerationResult enumerate_omega_4_3(const Omega43Options& options) {
  Search43 planner(options.max_support);
  const auto& firsts = omega_4_3_first_planes();
  std::vector<Unit> units;
  for (std::size_t i = 0; i < firsts.size(); ++i) {
    if (4 * std::popcount(firsts[i]) > static_cast<int>(options.max_support)) continue;
    for (auto second : planner.seconds(firsts[i])) units.push_back({i, firsts[i], second});
  }
  if (!options.checkpoint_dir.empty()) std::filesystem::create_directories(options.checkpoint_dir);

  const unsigned jobs = std::max(1u, std::min<unsigned>(resolve_jobs(options.jobs), 64));
  std::vector<Collector> collectors;
  std::vector<EnumerationStats> stats(jobs);
  SharedKeys keys;
  for (unsigned j = 0; j < jobs; ++j) collectors.emplace_back(3, 4, &keys);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mu;
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&](unsigned id) {
    try {
      Search43 search(options.max_support);
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= units.size()) break;
        const Unit& u = units[i];
        const bool checkpointing = !options.checkpoint_dir.empty();
        const auto path = checkpointing ? unit_path(options.checkpoint_dir, u) : std::filesystem::path();
        if (!checkpointing || !load_unit(path, collectors[id], stats[id])) {
          Collector local(3, 4, &keys);
          EnumerationStats st;
          search.run_unit(u.first_mask, u.second_mask, local, st);
          if (checkpointing) save_unit(path, local, st);
          collectors[id].merge(std::move(local));
          stats[id] += st;
        }
        const std::size_t finished = ++done;
        if (options.progress) {
          std::lock_guard lock(progress_mu);
          options.progress(finished, units.size());
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = units.size();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  EnumerationResult result;
  for (unsigned j = 0; j < jobs; ++j) {
    if (j) collectors[0].merge(std::move(collectors[j]));
    result.stats += stats[j];
  }
  result.classes = collectors[0].classify_all();
  return result;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> uncovered_support_index(const SupportSet& s, const std::vector<Tensor>& vertex_classes) {
  const Grid& g = s.grid();
  std::vector<std::uint8_t> in(g.volume(), 0);
  std::vector<std::uint8_t> covered(g.volume(), 0);
  for (auto f : s.members()) in[f] = 1;
  const std::size_t block = g.volume() / static_cast<std::size_t>(g.order());
  const auto axis0 = all_perms(g.order());
  for (const auto& t : vertex_classes) {
    if (t.dim() != s.dim() || t.order() != s.order()) throw ShapeError("uncovered_support_index: shape mismatch");
    const auto members = support(t).members();
    std::vector<std::size_t> image(members.size());
    for_each_partial_transform(g.dim(), g.order(), [&](const std::vector<std::uint32_t>& map) {
      for (const auto& p : axis0) {
        bool inside = true;
        for (std::size_t i = 0; i < members.size() && inside; ++i) {
          const std::size_t m = map[members[i]];
          image[i] = p[m / block] * block + m % block;
          inside = in[image[i]];
        }
        if (inside)
          for (auto f : image) covered[f] = 1;
      }
    });
  }
  for (auto f : s.members()) {
    if (!covered[f]) return f;
  }
  return std::nullopt;
}

}  // namespace birkhoff
