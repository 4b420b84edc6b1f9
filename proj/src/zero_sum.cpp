#include "birkhoff/zero_sum.hpp"

#include "birkhoff/error.hpp"

namespace birkhoff {

std::vector<std::pair<std::size_t, int>> zero_sum_terms(const Index& alpha, const Index& anchor, int order) {
  const int d = static_cast<int>(alpha.dim());
  if (anchor.dim() != alpha.dim()) throw ShapeError("zero_sum_terms: dimension mismatch");
  std::vector<std::pair<std::size_t, int>> out;
  if (order < 2) return out;
  const Grid sub(d, order - 1);
  std::vector<int> free_axes;
  std::size_t base = 0;
  for (int i = 0; i < d; ++i) {
    if (alpha[i] == anchor[i]) {
      free_axes.push_back(i);
    } else {
      const int c = alpha[i] < anchor[i] ? alpha[i] : alpha[i] - 1;
      base += c * sub.stride(i);
    }
  }
  const int k = static_cast<int>(free_axes.size());
  const int sign = (k % 2 == 0) ? 1 : -1;
  const std::size_t count = ipow(order - 1, k);
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    std::size_t flat = base;
    std::size_t rest = m;
    for (int j = 0; j < k; ++j) {
      flat += (rest % (order - 1)) * sub.stride(free_axes[j]);
      rest /= (order - 1);
    }
    out.emplace_back(flat, sign);
  }
  return out;
}

Tensor zero_sum_extend(const Tensor& sub, const Index& anchor, int dim, int order) {
  if (order < 2) throw ShapeError("zero_sum_extend needs order at least 2");
  if (sub.dim() != dim || sub.order() != order - 1) throw ShapeError("zero_sum_extend: submatrix shape mismatch");
  const Grid g(dim, order);
  if (!g.contains(anchor)) throw ShapeError("zero_sum_extend: anchor outside I_n^d");
  std::vector<Rational> entries;
  entries.reserve(g.volume());
  for (std::size_t f = 0; f < g.volume(); ++f) {
    mpq_class acc = 0;
    for (const auto& [s, sign] : zero_sum_terms(g.unflat(f), anchor, order)) {
      if (sign > 0) {
        acc += sub.at(s).value();
      } else {
        acc -= sub.at(s).value();
      }
    }
    entries.emplace_back(std::move(acc));
  }
  return Tensor(dim, order, std::move(entries));
}

}  // namespace birkhoff
