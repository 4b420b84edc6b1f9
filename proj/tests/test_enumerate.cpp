#include <algorithm>
#include <bit>
#include <filesystem>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>

#include "birkhoff/enumerate.hpp"
#include "birkhoff/equivalence.hpp"
#include "birkhoff/error.hpp"
#include "birkhoff/stochastic.hpp"
#include "birkhoff/vertexcert.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace birkhoff;

namespace {

// A (0,1) matrix has total support iff it is the union of the permutation
// matrices it contains.
bool union_of_permutations(std::uint32_t mask, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::uint32_t covered = 0;
  do {
    std::uint32_t perm = 0;
    for (int i = 0; i < n; ++i) perm |= 1u << (i * n + p[i]);
    if ((perm & mask) == perm) covered |= perm;
  } while (std::next_permutation(p.begin(), p.end()));
  return mask != 0 && covered == mask;
}

std::uint32_t rows_to_mask(std::initializer_list<const char*> rows) {
  std::uint32_t m = 0;
  int i = 0;
  const int n = static_cast<int>(rows.size());
  for (const char* r : rows) {
    for (int j = 0; j < n; ++j)
      if (r[j] == '1') m |= 1u << (i * n + j);
    ++i;
  }
  return m;
}

std::map<long, std::size_t> table(std::initializer_list<std::pair<const long, std::size_t>> l) { return {l}; }

}  // namespace

TEST_CASE("3 x 3 plane catalog") {
  const auto& cat = plane_catalog(3);
  CHECK(cat.size() == 49);
  for (auto m : cat.patterns) CHECK(union_of_permutations(m, 3));
  std::size_t total = 0;
  for (std::uint32_t m = 1; m < 512; ++m) total += union_of_permutations(m, 3);
  CHECK(total == 49);
  REQUIRE(cat.class_sizes.size() == 6);
  CHECK(cat.class_sizes == std::vector<std::size_t>{6, 9, 6, 18, 9, 1});
  // the printed representatives, one per class, in support-size order
  const std::vector<std::uint32_t> printed = {
      rows_to_mask({"100", "010", "001"}), rows_to_mask({"100", "011", "011"}), rows_to_mask({"110", "011", "101"}),
      rows_to_mask({"011", "101", "111"}), rows_to_mask({"011", "111", "111"}), rows_to_mask({"111", "111", "111"}),
  };
  for (int k = 0; k < 6; ++k) CHECK(cat.class_id(printed[k]) == k);
  CHECK(cat.class_id(rows_to_mask({"110", "110", "001"})) == 1);
  CHECK(cat.class_id(rows_to_mask({"110", "100", "001"})) == -1);
}

TEST_CASE("4 x 4 plane catalog") {
  const auto& cat = plane_catalog(4);
  CHECK(cat.size() == 7443);
  std::size_t total = 0;
  for (std::uint32_t m = 1; m < (1u << 16); ++m) total += union_of_permutations(m, 4);
  CHECK(total == 7443);
  std::size_t sum = 0;
  for (auto c : cat.class_sizes) sum += c;
  CHECK(sum == 7443);
  // the classes with at most 9 ones are exactly those of the nine printed
  // candidates for the least plane
  std::set<int> small;
  for (std::size_t id = 0; id < cat.class_reps.size(); ++id)
    if (std::popcount(cat.class_reps[id]) <= 9) small.insert(static_cast<int>(id));
  std::set<int> printed;
  for (auto m : omega_4_3_first_planes()) printed.insert(cat.class_id(m));
  CHECK(omega_4_3_first_planes().size() == 9);
  CHECK(printed.size() == 9);
  CHECK(small == printed);
  CHECK_THROWS_AS(plane_catalog(5), ContractViolation);
}

TEST_CASE("plane masks round-trip") {
  const auto m = rows_to_mask({"100", "011", "011"});
  CHECK(plane_mask(plane_tensor(m, 3)) == m);
  CHECK(plane_tensor(m, 3)[Index{1, 2}] == Rational(1));
  CHECK(plane_tensor(m, 3)[Index{0, 1}] == Rational(0));
}

TEST_CASE("classification and distributions") {
  const Tensor a5 = fixtures::appendix(5);
  const auto c = classify(a5);
  CHECK(c.support_size == fixtures::appendix_facts(5).support);
  CHECK(c.permanent == Rational(256, 27));
  CHECK(c.canonical == canonical_form(a5));
  CHECK(c.automorphisms == automorphism_order(a5));
  std::mt19937_64 rng(1);
  CHECK(classify(apply(EquivalenceTransform::random(4, 3, rng), a5)) == c);

  CHECK(distribution({}, DistributionKey::SupportSize).empty());
  std::vector<ClassifiedVertex> all;
  for (int k = 1; k <= 21; ++k) all.push_back(classify(fixtures::appendix(k)));
  std::sort(all.begin(), all.end(), archive_less);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].support_size <= all[i].support_size);
  // the appendix is one representative per class, so it reproduces both
  // tables on its own
  CHECK(distribution(all, DistributionKey::SupportSize) ==
        table({{27, 1}, {49, 1}, {51, 1}, {52, 1}, {58, 1}, {59, 2}, {60, 2}, {61, 2}, {62, 3}, {63, 5}, {64, 1}, {65, 1}}));
  CHECK(distribution(all, DistributionKey::DenominatorLcm) == table({{1, 1}, {2, 3}, {3, 6}, {4, 6}, {5, 4}, {6, 1}}));
}

TEST_CASE("exhaustive search over small grids") {
  for (int d = 3; d <= 5; ++d) {
    CAPTURE(d);
    const auto r = algorithm1(2, d, exhaustive_supports(2, d));
    CHECK(r.classes.size() == 1);
    for (const auto& v : r.classes) CHECK(is_permutation_tensor(v.canonical));
    CHECK(r.stats.vertices >= 1);
  }
  const auto m = algorithm1(3, 2, exhaustive_supports(3, 2));
  REQUIRE(m.classes.size() == 1);
  CHECK(is_permutation_tensor(m.classes[0].canonical));
  // every permutation matrix is found
  CHECK(m.stats.vertices == 1);
  CHECK(m.stats.candidates == 6);

  EnumerationStats st;
  const auto t = algorithm1(3, 3, exhaustive_supports(3, 3, &st));
  REQUIRE(t.classes.size() == 2);
  CHECK(is_permutation_tensor(t.classes[0].canonical));
  CHECK(are_equivalent(t.classes[1].canonical, fixtures::vertex_v()));
  CHECK(t.classes[1].support_size == 17);
  CHECK(st.search_nodes > 0);
  // 12 Latin squares plus the orbit of V
  CHECK(t.stats.candidates == 12 + 54);
  CHECK(t.stats.duplicates == t.stats.candidates - 2);
  CHECK_THROWS_AS(exhaustive_supports(3, 4), ContractViolation);
}

TEST_CASE("algorithm1 counts out-of-bound candidates") {
  const Tensor v = fixtures::vertex_v();
  const auto r = algorithm1(3, 3, [&](const std::function<void(const SupportSet&)>& emit) {
    emit(SupportSet(3, 3, {0, 1, 2}));
    emit(SupportSet::full(3, 3));
    emit(support(v));
    emit(support(fixtures::sum_permutation(3, 3)));
    emit(SupportSet(3, 3, {0, 1, 2, 3, 4, 5, 6, 7, 8}));
  });
  CHECK(r.stats.candidates == 5);
  CHECK(r.stats.out_of_bound == 2);
  CHECK(r.stats.c0_c1_failures == 1);
  CHECK(r.classes.size() == 2);
  CHECK_THROWS_AS(algorithm1(3, 3, [](const std::function<void(const SupportSet&)>& emit) {
                    emit(SupportSet::full(2, 3));
                  }),
                  ShapeError);
}

TEST_CASE("claims about vertices of the order-3 4-dimensional polytope") {
  const SupportSet a7 = support(fixtures::appendix(7));
  CHECK(claims_filter_3_4(a7, true));
  CHECK(claims_filter_3_4(a7, false));
  // the claims exclude only the permutation
  CHECK_FALSE(claims_filter_3_4(support(fixtures::appendix(1)), true));
  for (int k = 2; k <= 21; ++k) {
    CAPTURE(k);
    CHECK(claims_filter_3_4(support(fixtures::appendix(k)), true));
  }

  // two isolated indices at Hamming distance 3: (0,0,0,0) and (0,1,1,1)
  // are each alone in their (a3, a4) plane
  const SupportSet apart = SupportSet::from_indices(4, 3, {Index{0, 0, 0, 0}, Index{0, 1, 1, 1}});
  CHECK_FALSE(claims_filter_3_4(apart, false));
  CHECK(claims_filter_3_4(apart, false, kAllClaims & ~kClaimNoDistanceThree));
  const SupportSet far = SupportSet::from_indices(4, 3, {Index{0, 0, 0, 0}, Index{1, 1, 1, 1}});
  CHECK(claims_filter_3_4(far, false));

  // the average of the permutation and its copy with hyperplanes a1 = 1, 2
  // swapped: hyperplane a1 = 0 stays a (0,1) matrix
  std::vector<Index> members;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int e = 0; e < 3; ++e) {
          const bool zero_sum = (b + c + e) % 3 == 0;
          if (a == 0 ? zero_sum : !zero_sum) members.push_back(Index{a, b, c, e});
        }
  const SupportSet mixed = SupportSet::from_indices(4, 3, members);
  REQUIRE(check_c0_c1(mixed));
  CHECK_FALSE(claims_filter_3_4(mixed, true, kClaimNoUnitHyperplane));
  CHECK_FALSE(certify(mixed).is_vertex());

  CHECK_THROWS_AS(claims_filter_3_4(support(fixtures::vertex_v()), true), ShapeError);
}

TEST_CASE("relabelled supports collapse to one class each") {
  std::mt19937_64 rng(11);
  const auto source = [&](const std::function<void(const SupportSet&)>& emit) {
    for (int k = 1; k <= 21; ++k)
      for (int i = 0; i < 10; ++i)
        emit(support(apply(EquivalenceTransform::random(4, 3, rng), fixtures::appendix(k))));
  };
  const auto r = algorithm1(3, 4, source);
  CHECK(r.classes.size() == 21);
  CHECK(r.stats.vertices == 21);
  CHECK(r.stats.duplicates == 21 * 9);

  // highly regular supports: permutations of order 4, and unions of two
  const Tensor p = fixtures::sum_permutation(3, 4);
  const auto regular = [&](const std::function<void(const SupportSet&)>& emit) {
    for (int i = 0; i < 20; ++i) emit(support(apply(EquivalenceTransform::random(3, 4, rng), p)));
  };
  const auto rp = algorithm1(4, 3, regular);
  CHECK(rp.classes.size() == 1);
  CHECK(rp.stats.duplicates == 19);
}

TEST_CASE("order-3 4-dimensional search: reduced scope agrees across pruning options") {
  Omega34Options base;
  base.max_support = 56;
  const auto full = enumerate_omega_3_4(base);
  auto classes = [](const EnumerationResult& r) {
    std::set<std::vector<Rational>> out;
    for (const auto& v : r.classes) out.insert(v.canonical.entries());
    return out;
  };
  // support sizes up to 52 are all present below this budget
  CHECK(distribution(full.classes, DistributionKey::SupportSize) == table({{27, 1}, {49, 1}, {51, 1}, {52, 1}}));

  Omega34Options no_claims = base;
  no_claims.claims = 0;
  CHECK(classes(enumerate_omega_3_4(no_claims)) == classes(full));

  Omega34Options no_orbits = base;
  no_orbits.orbit_pruning = false;
  CHECK(classes(enumerate_omega_3_4(no_orbits)) == classes(full));

  Omega34Options loose = base;
  loose.max_support = 52;
  loose.exclusions = false;
  loose.claims = 0;
  Omega34Options tight = base;
  tight.max_support = 52;
  CHECK(classes(enumerate_omega_3_4(loose)) == classes(enumerate_omega_3_4(tight)));
}

TEST_CASE("order-4 3-dimensional search below 30 nonzeros") {
  Omega43Options opt;
  opt.max_support = 29;
  opt.jobs = 1;
  const auto r = enumerate_omega_4_3(opt);
  CHECK(distribution(r.classes, DistributionKey::SupportSize) == table({{16, 2}, {25, 1}, {27, 2}, {28, 1}, {29, 2}}));
  for (const auto& v : r.classes) {
    CHECK(certify(support(v.canonical)).is_vertex());
    CHECK(canonical_form(v.canonical) == v.canonical);
  }

  // worker count and checkpoints do not change the result
  Omega43Options threaded = opt;
  threaded.jobs = 3;
  CHECK(enumerate_omega_4_3(threaded).classes == r.classes);

  const auto dir = std::filesystem::temp_directory_path() / "birkhoff-checkpoint-test";
  std::filesystem::remove_all(dir);
  Omega43Options saved = opt;
  saved.checkpoint_dir = dir;
  std::size_t calls = 0;
  std::size_t units = 0;
  saved.progress = [&](std::size_t done, std::size_t total) {
    ++calls;
    units = total;
    CHECK(done <= total);
  };
  CHECK(enumerate_omega_4_3(saved).classes == r.classes);
  CHECK(calls == units);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files += e.path().extension() == ".txt";
  CHECK(files == units);
  // a second run resumes from the files
  const auto resumed = enumerate_omega_4_3(saved);
  CHECK(resumed.classes == r.classes);
  std::filesystem::remove_all(dir);
}

TEST_CASE("worker count resolution") {
  CHECK(resolve_jobs(3) == 3);
  setenv("BIRKHOFF_JOBS", "5", 1);
  CHECK(resolve_jobs(0) == 5);
  CHECK(resolve_jobs(2) == 2);
  setenv("BIRKHOFF_JOBS", "junk", 1);
  CHECK(resolve_jobs(0) == 1);
  unsetenv("BIRKHOFF_JOBS");
  CHECK(resolve_jobs(0) == 1);
}

TEST_CASE("supports covered by vertex supports") {
  const std::vector<Tensor> classes33 = {fixtures::sum_permutation(3, 3), fixtures::vertex_v()};
  CHECK_FALSE(uncovered_support_index(SupportSet::full(3, 3), classes33).has_value());
  CHECK_FALSE(uncovered_support_index(support(fixtures::vertex_v()), classes33).has_value());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    const Tensor t = fixtures::random_polystochastic(3, 3, 3, rng);
    CHECK_FALSE(uncovered_support_index(support(t), classes33).has_value());
  }
  // a permutation plus one stray index: the stray index lies in no vertex
  // support inside the set
  auto members = support(fixtures::sum_permutation(3, 3)).members();
  std::size_t stray = 0;
  while (std::find(members.begin(), members.end(), stray) != members.end()) ++stray;
  members.push_back(stray);
  const auto hit = uncovered_support_index(SupportSet(3, 3, members), classes33);
  REQUIRE(hit.has_value());
  CHECK(*hit == stray);
}
