#include "birkhoff/equivalence.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "birkhoff/error.hpp"

namespace birkhoff {

namespace {

std::vector<int> iota_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<int> invert(const std::vector<int>& p) {
  std::vector<int> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
  return out;
}

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<std::vector<int>> out;
  auto p = iota_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void check_shape(const EquivalenceTransform& g, int dim, int order) {
  if (g.dim() != dim || static_cast<int>(g.hyperplane_perms.size()) != dim || g.order() != order)
    throw ShapeError("transform does not match the tensor shape");
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Visits the maps of all transforms with π_0 = id. With `axes_fixed`, only
// σ = id is visited.
void walk(int dim, int order, bool axes_fixed, const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  const Grid g(dim, order);
  const auto perms = all_perms(order);
  std::vector<std::uint32_t> map(g.volume());
  auto sigma = iota_perm(dim);
  std::vector<std::size_t> pick(dim, 0);
  // contribution[j][v]: offset of coordinate value v of source axis j
  std::vector<std::vector<std::uint32_t>> contribution(dim, std::vector<std::uint32_t>(order));
  do {
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      for (int j = 0; j < dim; ++j) {
        const int target = sigma[j];
        const auto& pi = perms[pick[target]];
        for (int v = 0; v < order; ++v) contribution[j][v] = static_cast<std::uint32_t>(g.stride(target) * pi[v]);
      }
      for (std::size_t f = 0; f < g.volume(); ++f) {
        std::uint32_t m = 0;
        std::size_t rest = f;
        for (int j = dim - 1; j >= 0; --j) {
          m += contribution[j][rest % order];
          rest /= order;
        }
        map[f] = m;
      }
      visit(map);
      // odometer over the relabellings of target axes 1..d-1
      int k = dim - 1;
      while (k >= 1 && ++pick[k] == perms.size()) pick[k--] = 0;
      if (k < 1) break;
    }
  } while (!axes_fixed && std::next_permutation(sigma.begin(), sigma.end()));
}

// Entries replaced by their rank among the distinct values.
std::vector<std::uint32_t> value_codes(const Tensor& t, std::vector<Rational>& values) {
  values = t.entries();
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::uint32_t> codes(t.volume());
  for (std::size_t f = 0; f < t.volume(); ++f) {
    codes[f] = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), t.at(f)) - values.begin());
  }
  return codes;
}

// Sorts the n consecutive blocks of length `block` in place.
void sort_blocks(std::vector<std::uint32_t>& v, int n, std::size_t block) {
  std::vector<std::vector<std::uint32_t>> parts(n);
  for (int i = 0; i < n; ++i) parts[i].assign(v.begin() + i * block, v.begin() + (i + 1) * block);
  std::sort(parts.begin(), parts.end());
  for (int i = 0; i < n; ++i) std::copy(parts[i].begin(), parts[i].end(), v.begin() + i * block);
}

}  // namespace

EquivalenceTransform EquivalenceTransform::identity(int dim, int order) {
  return {iota_perm(dim), std::vector<std::vector<int>>(dim, iota_perm(order))};
}

EquivalenceTransform EquivalenceTransform::random(int dim, int order, std::mt19937_64& rng) {
  auto g = identity(dim, order);
  std::shuffle(g.axis_perm.begin(), g.axis_perm.end(), rng);
  for (auto& p : g.hyperplane_perms) std::shuffle(p.begin(), p.end(), rng);
  return g;
}

Index EquivalenceTransform::map(const Index& a) const {
  if (a.dim() != axis_perm.size()) throw ShapeError("transform dimension mismatch");
  std::vector<int> out(a.dim());
  for (int j = 0; j < dim(); ++j) {
    const int i = axis_perm[j];
    out[i] = hyperplane_perms[i][a[j]];
  }
  return Index(std::move(out));
}

EquivalenceTransform compose(const EquivalenceTransform& g, const EquivalenceTransform& h) {
  if (g.dim() != h.dim() || g.order() != h.order()) throw ShapeError("compose: shape mismatch");
  const int d = g.dim();
  EquivalenceTransform out;
  out.axis_perm.resize(d);
  for (int j = 0; j < d; ++j) out.axis_perm[j] = g.axis_perm[h.axis_perm[j]];
  const auto g_inv = invert(g.axis_perm);
  out.hyperplane_perms.resize(d);
  for (int k = 0; k < d; ++k) {
    const auto& pg = g.hyperplane_perms[k];
    const auto& ph = h.hyperplane_perms[g_inv[k]];
    out.hyperplane_perms[k].resize(ph.size());
    for (std::size_t v = 0; v < ph.size(); ++v) out.hyperplane_perms[k][v] = pg[ph[v]];
  }
  return out;
}

EquivalenceTransform inverse(const EquivalenceTransform& g) {
  EquivalenceTransform out;
  out.axis_perm = invert(g.axis_perm);
  out.hyperplane_perms.resize(g.dim());
  for (int j = 0; j < g.dim(); ++j) out.hyperplane_perms[j] = invert(g.hyperplane_perms[g.axis_perm[j]]);
  return out;
}

Tensor apply(const EquivalenceTransform& g, const Tensor& t) {
  check_shape(g, t.dim(), t.order());
  std::vector<Rational> out(t.volume());
  const Grid& grid = t.grid();
  for (std::size_t f = 0; f < t.volume(); ++f) out[grid.flat(g.map(grid.unflat(f)))] = t.at(f);
  return Tensor(t.dim(), t.order(), std::move(out));
}

void for_each_partial_transform(int dim, int order, const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  walk(dim, order, false, visit);
}

Tensor canonical_form(const Tensor& t) {
  std::vector<Rational> values;
  const auto codes = value_codes(t, values);
  const std::size_t block = t.volume() / t.order();
  std::vector<std::uint32_t> image(t.volume());
  std::vector<std::uint32_t> best;
  walk(t.dim(), t.order(), false, [&](const std::vector<std::uint32_t>& map) {
    for (std::size_t f = 0; f < codes.size(); ++f) image[map[f]] = codes[f];
    sort_blocks(image, t.order(), block);
    if (best.empty() || image < best) best = image;
  });
  std::vector<Rational> entries;
  entries.reserve(best.size());
  for (auto c : best) entries.push_back(values[c]);
  return Tensor(t.dim(), t.order(), std::move(entries));
}

bool are_equivalent(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim() || a.order() != b.order()) throw ShapeError("are_equivalent: shape mismatch");
  return canonical_form(a) == canonical_form(b);
}

std::uint64_t automorphism_order(const Tensor& t) {
  std::vector<Rational> values;
  const auto codes = value_codes(t, values);
  const std::size_t block = t.volume() / t.order();
  auto target = codes;
  sort_blocks(target, t.order(), block);
  // each matching image is fixed by Π (multiplicity!) relabellings of axis 0
  std::uint64_t axis0 = 1;
  for (int i = 0; i < t.order();) {
    int j = i + 1;
    while (j < t.order() && std::equal(target.begin() + i * block, target.begin() + (i + 1) * block,
                                       target.begin() + j * block))
      ++j;
    axis0 *= factorial(j - i);
    i = j;
  }
  std::uint64_t matches = 0;
  std::vector<std::uint32_t> image(t.volume());
  walk(t.dim(), t.order(), false, [&](const std::vector<std::uint32_t>& map) {
    for (std::size_t f = 0; f < codes.size(); ++f) image[map[f]] = codes[f];
    sort_blocks(image, t.order(), block);
    matches += image == target;
  });
  return matches * axis0;
}

bool has_symmetric_representative(const Tensor& t) {
  // a symmetric image under (σ, π) gives one under π' alone, and relabelling
  // every axis by the same permutation keeps it symmetric, so π'_0 = id
  bool found = false;
  std::vector<Rational> image(t.volume());
  walk(t.dim(), t.order(), true, [&](const std::vector<std::uint32_t>& map) {
    if (found) return;
    for (std::size_t f = 0; f < t.volume(); ++f) image[map[f]] = t.at(f);
    found = is_symmetric(Tensor(t.dim(), t.order(), image));
  });
  return found;
}

std::uint64_t group_order(int dim, int order) {
  std::uint64_t out = factorial(dim);
  for (int i = 0; i < dim; ++i) out *= factorial(order);
  return out;
}

}  // namespace birkhoff
