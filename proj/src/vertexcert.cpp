#include "birkhoff/vertexcert.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/zero_sum.hpp"

namespace birkhoff {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Vertex:
      return "vertex";
    case Verdict::RankDeficient:
      return "rank-deficient";
    case Verdict::Infeasible:
      return "infeasible";
    case Verdict::NotStrictlyPositive:
      return "not-strictly-positive";
  }
  return "unknown";
}

std::size_t support_bound(int dim, int order) { return ipow(order, dim) - ipow(order - 1, dim); }

IncidenceMatrix build_incidence(const SupportSet& s) {
  if (s.empty()) throw ContractViolation("build_incidence: empty support");
  const Grid& g = s.grid();
  RationalMatrix m(g.line_count(), s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    for (int axis = 0; axis < g.dim(); ++axis) m(g.line_id(axis, s.members()[j]), j) = 1;
  }
  return IncidenceMatrix{g.line_count(), s, std::move(m)};
}

IncidenceVerdict certify_incidence(const RationalMatrix& incidence) {
  IncidenceVerdict out;
  auto kernel = kernel_basis(incidence);
  if (!kernel.empty()) {
    out.verdict = Verdict::RankDeficient;
    out.witness = std::move(kernel.front());
    return out;
  }
  const RationalVector ones(incidence.rows(), Rational(1));
  auto x = solve_consistent(incidence, ones);
  if (!x) {
    out.verdict = Verdict::Infeasible;
    return out;
  }
  bool positive = true;
  for (const auto& v : *x) positive &= v.sign() > 0;
  if (positive) {
    out.verdict = Verdict::Vertex;
    out.solution = std::move(x);
  } else {
    out.verdict = Verdict::NotStrictlyPositive;
    out.witness = std::move(x);
  }
  return out;
}

namespace {

Index anchor_of(const Grid& g) { return Index(std::vector<int>(g.dim(), g.order() - 1)); }

// Rows: indices outside s. Columns: the (n-1)^d submatrix entries. Row α
// is the linear form giving b_α of a zero-sum tensor b.
RationalMatrix off_support_forms(const SupportSet& s) {
  const Grid& g = s.grid();
  const Index anchor = anchor_of(g);
  const std::size_t params = ipow(g.order() - 1, g.dim());
  const std::size_t rows = g.volume() - s.size();
  RationalMatrix m(rows, params);
  std::size_t r = 0;
  for (std::size_t f = 0; f < g.volume(); ++f) {
    if (s.contains(f)) continue;
    for (const auto& [col, sign] : zero_sum_terms(g.unflat(f), anchor, g.order())) m(r, col) = sign;
    ++r;
  }
  return m;
}

Tensor zero_sum_from_params(const Grid& g, const RationalVector& z) {
  const Tensor sub(g.dim(), g.order() - 1, z);
  return zero_sum_extend(sub, anchor_of(g), g.dim(), g.order());
}

RationalVector restrict_to(const Tensor& t, const SupportSet& s) {
  RationalVector out;
  out.reserve(s.size());
  for (auto f : s.members()) out.push_back(t.at(f));
  return out;
}

Tensor place_on(const SupportSet& s, const RationalVector& values) {
  std::vector<Rational> entries(s.grid().volume(), Rational(0));
  for (std::size_t j = 0; j < s.size(); ++j) entries[s.members()[j]] = values[j];
  return Tensor(s.dim(), s.order(), std::move(entries));
}

// Kernel of L(s), expressed as a zero-sum tensor, via either route.
std::optional<Tensor> zero_sum_inside(const SupportSet& s, CertifyRoute route) {
  if (s.empty()) return std::nullopt;
  if (route == CertifyRoute::Incidence) {
    auto kernel = kernel_basis(build_incidence(s).matrix);
    if (kernel.empty()) return std::nullopt;
    return place_on(s, kernel.front());
  }
  if (s.order() < 2) return std::nullopt;
  auto kernel = kernel_basis(off_support_forms(s));
  if (kernel.empty()) return std::nullopt;
  return zero_sum_from_params(s.grid(), kernel.front());
}

CertifyRoute resolve(const SupportSet& s, CertifyRoute route) {
  if (route != CertifyRoute::Auto) return route;
  if (s.order() < 2) return CertifyRoute::Incidence;
  const double n = static_cast<double>(s.size());
  const double incidence_cost = static_cast<double>(s.grid().line_count()) * n * n;
  const double params = static_cast<double>(ipow(s.order() - 1, s.dim()));
  const double basis_cost = static_cast<double>(s.grid().volume() - s.size()) * params * params;
  return basis_cost < incidence_cost ? CertifyRoute::ZeroSumBasis : CertifyRoute::Incidence;
}

VertexCertificate from_values(const SupportSet& s, std::optional<RationalVector> x) {
  VertexCertificate cert;
  if (!x) {
    cert.verdict = Verdict::Infeasible;
    return cert;
  }
  bool positive = true;
  for (const auto& v : *x) positive &= v.sign() > 0;
  if (positive) {
    cert.verdict = Verdict::Vertex;
    cert.tensor = place_on(s, *x);
  } else {
    cert.verdict = Verdict::NotStrictlyPositive;
    cert.witness = std::move(x);
  }
  return cert;
}

}  // namespace

VertexCertificate certify(const SupportSet& s, CertifyRoute route) {
  route = resolve(s, route);
  VertexCertificate cert;
  if (s.size() > support_bound(s.dim(), s.order())) {
    cert.verdict = Verdict::RankDeficient;
    cert.note = "support size " + std::to_string(s.size()) + " exceeds n^d - (n-1)^d = " +
                std::to_string(support_bound(s.dim(), s.order()));
    if (auto z = zero_sum_inside(s, route)) cert.witness = restrict_to(*z, s);
    return cert;
  }
  if (!check_c0_c1(s)) {
    cert.verdict = Verdict::Infeasible;
    cert.note = "support violates (C0)/(C1)";
    return cert;
  }
  if (auto z = zero_sum_inside(s, route)) {
    cert.verdict = Verdict::RankDeficient;
    cert.witness = restrict_to(*z, s);
    return cert;
  }
  if (route == CertifyRoute::Incidence) {
    const RationalMatrix L = build_incidence(s).matrix;
    return from_values(s, solve_consistent(L, RationalVector(L.rows(), Rational(1))));
  }
  // x = J/n + b with b zero-sum; the entries of x off the support must vanish
  const Grid& g = s.grid();
  const RationalMatrix forms = off_support_forms(s);
  const Rational shift = -Rational(1, g.order());
  auto z = solve_consistent(forms, RationalVector(forms.rows(), shift));
  if (!z) return from_values(s, std::nullopt);
  const Tensor b = zero_sum_from_params(g, *z);
  RationalVector x;
  x.reserve(s.size());
  for (auto f : s.members()) x.push_back(b.at(f) - shift);
  return from_values(s, std::move(x));
}

std::optional<ZeroSumWitness> find_zero_sum(const SupportSet& s) {
  if (auto z = zero_sum_inside(s, resolve(s, CertifyRoute::Auto))) return ZeroSumWitness{std::move(*z)};
  return std::nullopt;
}

bool vertex_by_hyperplanes(const Tensor& t) {
  if (t.dim() < 2) throw ContractViolation("vertex_by_hyperplanes needs dimension at least 2");
  if (!is_polystochastic(t)) throw ContractViolation("vertex_by_hyperplanes needs a polystochastic tensor");
  for (int axis = 0; axis < t.dim(); ++axis) {
    int vertices = 0;
    for (int v = 0; v < t.order(); ++v) {
      if (certify(support(hyperplane(t, axis, v))).is_vertex()) ++vertices;
    }
    if (vertices >= t.order() - 1) return true;
  }
  return false;
}

}  // namespace birkhoff
