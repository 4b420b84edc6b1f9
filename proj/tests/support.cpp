#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "birkhoff/io.hpp"

namespace fixtures {

using birkhoff::Index;
using birkhoff::Rational;
using birkhoff::Tensor;

std::string data_path(const std::string& relative) { return std::string(BIRKHOFF_TEST_DATA) + "/" + relative; }

Tensor appendix(int k) {
  const std::string name = std::string(k < 10 ? "A0" : "A") + std::to_string(k) + ".txt";
  return birkhoff::read_tensor_file(data_path("appendix/" + name));
}

Tensor vertex_v() { return birkhoff::read_tensor_file(data_path("v3.txt")); }

AppendixFacts appendix_facts(int k) {
  // N, per, Δ as printed next to each matrix
  static const std::map<int, AppendixFacts> facts = {
      {1, {27, Rational(27), 1, true}},          {2, {49, Rational(21, 2), 2, false}},
      {3, {51, Rational(9), 2, false}},          {4, {52, Rational(33, 4), 2, true}},
      {5, {58, Rational(256, 27), 3, false}},    {6, {59, Rational(85, 9), 3, false}},
      {7, {59, Rational(85, 9), 3, true}},       {8, {60, Rational(77, 8), 4, false}},
      {9, {60, Rational(39, 4), 4, true}},       {10, {61, Rational(236, 27), 3, false}},
      {11, {61, Rational(236, 27), 3, false}},   {12, {62, Rational(75, 8), 4, false}},
      {13, {62, Rational(1194, 125), 5, true}},  {14, {62, Rational(73, 8), 4, false}},
      {15, {63, Rational(26, 3), 3, false}},     {16, {63, Rational(9), 4, false}},
      {17, {63, Rational(1074, 125), 5, false}}, {18, {63, Rational(1141, 125), 5, false}},
      {19, {63, Rational(85, 9), 6, true}},      {20, {64, Rational(145, 16), 4, false}},
      {21, {65, Rational(223, 25), 5, false}},
  };
  return facts.at(k);
}

Tensor sum_permutation(int dim, int order) {
  return Tensor::generate(dim, order, [&](const Index& a) {
    int s = 0;
    for (int c : a.coords()) s += c;
    return Rational(s % order == 0 ? 1 : 0);
  });
}

Rational brute_permanent(const Tensor& t) {
  const int n = t.order();
  const int d = t.dim();
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  mpq_class total = 0;
  std::vector<std::size_t> pick(d - 1, 0);
  while (true) {
    mpq_class prod = 1;
    for (int i = 0; i < n; ++i) {
      std::vector<int> c{i};
      for (int j = 0; j < d - 1; ++j) c.push_back(perms[pick[j]][i]);
      prod *= t[Index(c)].value();
    }
    total += prod;
    int j = 0;
    while (j < d - 1 && ++pick[j] == perms.size()) pick[j++] = 0;
    if (j == d - 1) break;
  }
  return Rational(total);
}

Tensor random_polystochastic(int dim, int order, int terms, std::mt19937_64& rng) {
  std::vector<mpq_class> acc(birkhoff::ipow(order, dim), 0);
  std::uniform_int_distribution<int> weight(1, 9);
  mpq_class total = 0;
  const Tensor base = sum_permutation(dim, order);
  for (int k = 0; k < terms; ++k) {
    std::vector<std::vector<int>> relabel(dim, std::vector<int>(order));
    for (auto& r : relabel) {
      std::iota(r.begin(), r.end(), 0);
      std::shuffle(r.begin(), r.end(), rng);
    }
    const int w = weight(rng);
    total += w;
    for (std::size_t f = 0; f < base.volume(); ++f) {
      if (base.at(f).is_zero()) continue;
      Index a = base.grid().unflat(f);
      for (int i = 0; i < dim; ++i) a[i] = relabel[i][a[i]];
      acc[base.grid().flat(a)] += w;
    }
  }
  std::vector<Rational> entries;
  for (auto& x : acc) entries.emplace_back(mpq_class(x / total));
  return Tensor(dim, order, std::move(entries));
}

}  // namespace fixtures
