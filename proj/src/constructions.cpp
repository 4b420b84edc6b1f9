#include "birkhoff/constructions.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/stochastic.hpp"

namespace birkhoff {

std::size_t ConstructionReport::support_size() const { return support(tensor).size(); }

bool ConstructionReport::prediction_holds() const {
  if (!notes.empty()) return false;
  if (predicted_vertex && *predicted_vertex != certified.is_vertex()) return false;
  if (claimed_support && *claimed_support != support_size()) return false;
  return true;
}

namespace {

void require_vertex(const Tensor& b, const char* what) {
  if (!is_polystochastic(b) || !certify(support(b)).is_vertex())
    throw ContractViolation(std::string(what) + ": second factor is not a vertex");
}

ConstructionReport make_report(std::string kind, Tensor t) {
  ConstructionReport r{std::move(kind), {}, std::move(t), std::nullopt, std::nullopt, {}, {}};
  r.certified = certify(support(r.tensor));
  return r;
}

void note_support(ConstructionReport& r) {
  if (r.claimed_support && *r.claimed_support != r.support_size()) {
    r.notes.push_back("predicted " + std::to_string(*r.claimed_support) + " nonzeros, constructed tensor has " +
                      std::to_string(r.support_size()));
  }
  if (r.predicted_vertex && *r.predicted_vertex != r.certified.is_vertex()) {
    r.notes.push_back(std::string("predicted ") + (*r.predicted_vertex ? "a vertex" : "a non-vertex") +
                      ", certified " + std::string(to_string(r.certified.verdict)));
  }
}

}  // namespace

Tensor kronecker(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim()) throw ShapeError("kronecker: dimension mismatch");
  const int d = a.dim();
  const int n2 = b.order();
  const Grid g(d, a.order() * n2);
  std::vector<Rational> out(g.volume(), Rational(0));
  for (std::size_t fa = 0; fa < a.volume(); ++fa) {
    if (a.at(fa).is_zero()) continue;
    const Index alpha = a.grid().unflat(fa);
    for (std::size_t fb = 0; fb < b.volume(); ++fb) {
      if (b.at(fb).is_zero()) continue;
      const Index beta = b.grid().unflat(fb);
      std::vector<int> gamma(d);
      for (int i = 0; i < d; ++i) gamma[i] = alpha[i] * n2 + beta[i];
      out[g.flat(Index(gamma))] = a.at(fa) * b.at(fb);
    }
  }
  return Tensor(d, a.order() * n2, std::move(out));
}

ConstructionReport kronecker_vertex(const Tensor& a, const Tensor& b) {
  if (!is_polystochastic(a)) throw ContractViolation("kronecker_vertex: first factor is not polystochastic");
  require_vertex(b, "kronecker_vertex");
  auto r = make_report("kronecker", kronecker(a, b));
  r.parameters = {{"d", std::to_string(a.dim())}, {"n1", std::to_string(a.order())}, {"n2", std::to_string(b.order())}};
  if (is_permutation_tensor(a)) {
    // one copy of supp(b) per 1 of a, and a has n1^(d-1) ones
    r.claimed_support = ipow(a.order(), a.dim() - 1) * support(b).size();
    r.predicted_vertex = true;
  }
  note_support(r);
  return r;
}

ConstructionReport block_substitution(const Tensor& a, const std::map<Index, Tensor>& blocks) {
  if (!is_permutation_tensor(a)) throw ContractViolation("block_substitution: outer tensor is not a permutation");
  const auto s = support(a);
  if (blocks.size() != s.size()) throw ContractViolation("block_substitution: block keys must equal supp(a)");
  for (const auto& alpha : s.indices()) {
    if (!blocks.count(alpha)) throw ContractViolation("block_substitution: no block for a support index");
  }
  const Tensor& first = blocks.begin()->second;
  for (const auto& [alpha, block] : blocks) {
    if (block.dim() != a.dim() || block.order() != first.order())
      throw ShapeError("block_substitution: blocks must share dimension and order");
    require_vertex(block, "block_substitution");
  }
  const int d = a.dim();
  const int n2 = first.order();
  const Grid g(d, a.order() * n2);
  std::vector<Rational> out(g.volume(), Rational(0));
  for (const auto& [alpha, block] : blocks) {
    for (std::size_t fb = 0; fb < block.volume(); ++fb) {
      const Index beta = block.grid().unflat(fb);
      std::vector<int> gamma(d);
      for (int i = 0; i < d; ++i) gamma[i] = alpha[i] * n2 + beta[i];
      out[g.flat(Index(gamma))] = block.at(fb);
    }
  }
  auto r = make_report("blocks", Tensor(d, a.order() * n2, std::move(out)));
  r.parameters = {{"d", std::to_string(d)}, {"n1", std::to_string(a.order())}, {"n2", std::to_string(n2)}};
  std::size_t claimed = 0;
  for (const auto& [alpha, block] : blocks) claimed += support(block).size();
  r.claimed_support = claimed;
  r.predicted_vertex = true;
  note_support(r);
  return r;
}

Tensor dot_product(const Tensor& a, const Tensor& b) {
  if (a.order() != b.order()) throw ShapeError("dot_product: order mismatch");
  const int n = a.order();
  const int d = a.dim() + b.dim() - 2;
  if (d < 1) throw ShapeError("dot_product: result would have dimension 0");
  const std::size_t left = ipow(n, a.dim() - 1);
  const std::size_t right = ipow(n, b.dim() - 1);
  std::vector<Rational> out(left * right, Rational(0));
  // flat(αβ) = flat(α)·n^(d2-1) + flat(β); flat(α,i) = flat(α)·n + i
  for (std::size_t al = 0; al < left; ++al) {
    for (int i = 0; i < n; ++i) {
      const Rational& x = a.at(al * n + i);
      if (x.is_zero()) continue;
      for (std::size_t be = 0; be < right; ++be) {
        const Rational& y = b.at(i * right + be);
        if (!y.is_zero()) out[al * right + be] += x * y;
      }
    }
  }
  return Tensor(d, n, std::move(out));
}

ConstructionReport dot_vertex(const Tensor& a, const Tensor& b) {
  if (!is_polystochastic(a)) throw ContractViolation("dot_vertex: first factor is not polystochastic");
  require_vertex(b, "dot_vertex");
  auto r = make_report("dot", dot_product(a, b));
  r.parameters = {{"d1", std::to_string(a.dim())}, {"d2", std::to_string(b.dim())}, {"n", std::to_string(a.order())}};
  if (is_permutation_tensor(a) && a.dim() >= 2) {
    r.claimed_support = ipow(a.order(), a.dim() - 2) * support(b).size();
    r.predicted_vertex = true;
  }
  note_support(r);
  return r;
}

namespace {

// Every case of the definition as (predicate, value). The index counts are
// c0 = |α|₀, c1 = |α|₁, c2 = |α|₂.
struct Case {
  bool (*matches)(int c0, int c1, int c2, int d);
  Rational value;
};

bool even(int x) { return x % 2 == 0; }
bool odd(int x) { return x % 2 != 0; }

const std::vector<Case>& even_cases() {
  static const std::vector<Case> cases = {
      {[](int c0, int c1, int c2, int) { return c0 != 0 && c1 != 0 && c2 != 0; }, Rational(1, 3)},
      {[](int c0, int c1, int c2, int d) { return c0 == 0 && even(c1) && even(c2) && c1 != d && c2 != d; }, Rational(0)},
      {[](int c0, int c1, int c2, int) { return c0 == 0 && odd(c1) && odd(c2); }, Rational(2, 3)},
      {[](int c0, int c1, int c2, int d) { return c1 == 0 && even(c0) && even(c2) && c0 != d && c2 != d; }, Rational(2, 3)},
      {[](int c0, int c1, int c2, int) { return c1 == 0 && odd(c0) && odd(c2); }, Rational(0)},
      {[](int c0, int c1, int c2, int d) { return c2 == 0 && even(c0) && even(c1) && c0 != d && c1 != d; }, Rational(2, 3)},
      {[](int c0, int c1, int c2, int) { return c2 == 0 && odd(c0) && odd(c1); }, Rational(0)},
      {[](int, int c1, int c2, int d) { return c1 == d || c2 == d; }, Rational(1, 3)},
      {[](int c0, int, int, int d) { return c0 == d; }, Rational(1)},
  };
  return cases;
}

const std::vector<Case>& odd_cases() {
  static const std::vector<Case> cases = {
      {[](int c0, int c1, int c2, int) { return c0 != 0 && c1 != 0 && c2 != 0; }, Rational(1, 3)},
      {[](int c0, int c1, int c2, int d) { return c0 == 0 && c1 != d && odd(c1) && even(c2); }, Rational(0)},
      {[](int c0, int c1, int c2, int d) { return c0 == 0 && even(c1) && c2 != d && odd(c2); }, Rational(2, 3)},
      {[](int c0, int c1, int c2, int d) { return c1 == 0 && c0 != d && odd(c0) && even(c2); }, Rational(2, 3)},
      {[](int c0, int c1, int c2, int d) { return c1 == 0 && even(c0) && c2 != d && odd(c2); }, Rational(0)},
      {[](int c0, int c1, int c2, int d) { return c2 == 0 && c0 != d && odd(c0) && even(c1); }, Rational(0)},
      {[](int c0, int c1, int c2, int d) { return c2 == 0 && even(c0) && c1 != d && odd(c1); }, Rational(2, 3)},
      {[](int c0, int c1, int c2, int d) { return c0 == d || c1 == d || c2 == d; }, Rational(1, 3)},
  };
  return cases;
}

}  // namespace

Tensor construction1_tensor(int dim) {
  if (dim < 2) throw ContractViolation("construction1 needs dimension at least 2");
  const auto& cases = even(dim) ? even_cases() : odd_cases();
  return Tensor::generate(dim, 3, [&](const Index& a) {
    const int c0 = a.count(0);
    const int c1 = a.count(1);
    const int c2 = a.count(2);
    const Case* hit = nullptr;
    for (const auto& c : cases) {
      if (!c.matches(c0, c1, c2, dim)) continue;
      if (hit) throw ContractViolation("construction1: overlapping cases");
      hit = &c;
    }
    if (!hit) throw ContractViolation("construction1: index matches no case");
    return hit->value;
  });
}

ConstructionReport construction1(int dim) {
  auto r = make_report("construction1", construction1_tensor(dim));
  r.parameters = {{"d", std::to_string(dim)}};
  const std::size_t base = ipow(3, dim) - 3 * ipow(2, dim - 1);
  r.claimed_support = base + (even(dim) ? 2 : 3);
  r.predicted_vertex = dim >= 4;
  if (!is_symmetric(r.tensor)) r.notes.push_back("constructed tensor is not symmetric");
  if (!is_polystochastic(r.tensor)) r.notes.push_back("constructed tensor is not polystochastic");
  note_support(r);
  return r;
}

}  // namespace birkhoff
