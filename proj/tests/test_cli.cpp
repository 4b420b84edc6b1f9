#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>

#include "birkhoff/archive.hpp"
#include "birkhoff/equivalence.hpp"
#include "birkhoff/io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace birkhoff;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the command line tool with stderr folded into the output.
Run cli(const std::string& args) {
  const std::string cmd = std::string(BIRKHOFF_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string appendix_file(int k) {
  return fixtures::data_path("appendix/A" + std::string(k < 10 ? "0" : "") + std::to_string(k) + ".txt");
}

struct Scratch {
  fs::path dir = fs::temp_directory_path() / "birkhoff-cli-test";
  Scratch() {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = dir / name;
    if (!content.empty()) write_text(p, content);
    return p.string();
  }
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("certify") {
  const auto a1 = cli("certify " + appendix_file(1));
  CHECK(a1.code == 0);
  CHECK(contains(a1.out, "verdict: vertex\n"));
  CHECK(contains(a1.out, "N: 27\n"));
  CHECK(contains(a1.out, "permanent: 27\n"));
  CHECK(contains(a1.out, "symmetric: yes\n"));

  const auto a20 = cli("certify " + appendix_file(20));
  CHECK(a20.code == 0);
  CHECK(contains(a20.out, "permanent: 145/16 (≈ 9.0625)\n"));
  CHECK(contains(a20.out, "denominator: 4\n"));

  Scratch s;
  const auto uniform = s.file("uniform.txt", emit_tensor(Tensor::filled(4, 3, Rational(1, 3))));
  const auto u = cli("certify " + uniform);
  CHECK(u.code == 1);
  CHECK(contains(u.out, "not a vertex"));

  const auto sub = cli("certify " + s.file("sub.txt", "2 2 1\n1 0\n0 0\n"));
  CHECK(sub.code == 1);
  CHECK(contains(sub.out, "not polystochastic"));

  const auto bad = cli("certify " + s.file("bad.txt", "2 2 1\n1 0\n0 z\n"));
  CHECK(bad.code == 3);
  CHECK(contains(bad.out, "line 3, column 3"));
  CHECK(cli("certify " + (s.dir / "missing.txt").string()).code == 3);
}

TEST_CASE("usage errors") {
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("certify").code == 2);
  CHECK(cli("enumerate -n 5 -d 5").code == 2);
  CHECK(cli("enumerate -n 3 -d 4 --method generic").code == 2);
  CHECK(cli("construct dot " + appendix_file(1)).code == 2);
  CHECK(cli("construct construction1 --dim 1").code == 2);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("enumerate writes sorted archives") {
  Scratch s;
  const auto out = s.file("omega33.tsv");
  const auto r = cli("enumerate -n 3 -d 3 -o " + out);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "classes\t2\n"));
  CHECK(read_text(out) == read_text(fixtures::data_path("archives/omega33.tsv")));

  // the worker count does not change the archive
  const auto one = s.file("one.tsv");
  const auto three = s.file("three.tsv");
  CHECK(cli("enumerate -n 4 -d 3 --max-support 30 --jobs 1 -o " + one).code == 0);
  CHECK(cli("enumerate -n 4 -d 3 --max-support 30 --jobs 3 -o " + three).code == 0);
  CHECK(read_text(one) == read_text(three));
  CHECK(read_archive(one).size() == 15);

  // checkpointed runs resume to the same archive
  const auto ck = (s.dir / "ck").string();
  const auto first = s.file("first.tsv");
  const auto second = s.file("second.tsv");
  CHECK(cli("enumerate -n 4 -d 3 --max-support 30 --checkpoint " + ck + " -o " + first).code == 0);
  CHECK(cli("enumerate -n 4 -d 3 --max-support 30 --checkpoint " + ck + " -o " + second).code == 0);
  CHECK(read_text(first) == read_text(one));
  CHECK(read_text(second) == read_text(one));
}

TEST_CASE("construct") {
  Scratch s;
  const auto c4 = s.file("c4.txt");
  const auto r = cli("construct construction1 --dim 4 -o " + c4);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "certified: vertex\n"));
  CHECK(contains(r.out, "N: 59\n"));
  CHECK(cli("canon " + c4).out == cli("canon " + appendix_file(7)).out);

  const auto v = fixtures::data_path("v3.txt");
  const auto perm = s.file("perm.txt", emit_tensor(fixtures::sum_permutation(3, 3)));
  const auto dot = cli("construct dot " + perm + " " + v + " -o " + s.file("dot.txt"));
  CHECK(dot.code == 0);
  CHECK(contains(dot.out, "N: 51\n"));

  const auto vv = cli("construct kronecker " + v + " " + v);
  CHECK(vv.code == 1);
  CHECK(contains(vv.out, "certified: not a vertex"));

  const auto p2 = s.file("p2.txt", emit_tensor(fixtures::sum_permutation(3, 2)));
  const auto blocks = cli("construct blocks " + p2 + " " + v + " " + v + " " + v + " " + v);
  CHECK(blocks.code == 0);
  CHECK(contains(blocks.out, "N: 68\n"));
  CHECK(cli("construct blocks " + p2 + " " + v).code == 2);
}

TEST_CASE("canon and permanent") {
  Scratch s;
  std::mt19937_64 rng(3);
  const auto moved = s.file("moved.txt", emit_tensor(apply(EquivalenceTransform::random(4, 3, rng), fixtures::appendix(7))));
  const auto a7 = cli("canon " + appendix_file(7));
  CHECK(a7.code == 0);
  CHECK(cli("canon " + moved).out == a7.out);
  CHECK(cli("canon " + appendix_file(7)).out == a7.out);
  CHECK(cli("canon " + appendix_file(6)).out != a7.out);
  CHECK(parse_tensor(a7.out) == canonical_form(fixtures::appendix(7)));
  const auto out = s.file("canon.txt");
  CHECK(cli("canon " + appendix_file(7) + " -o " + out).code == 0);
  CHECK(read_text(out) == a7.out);

  const auto p = cli("permanent " + appendix_file(5));
  CHECK(p.code == 0);
  CHECK(p.out == "256/27 (≈ 9.48148)\n");
}

TEST_CASE("report") {
  const auto r34 = cli("report " + fixtures::data_path("archives/omega34.tsv"));
  CHECK(r34.code == 0);
  CHECK(r34.out == read_text(fixtures::data_path("tables/omega34.txt")));
  const auto r43 = cli("report " + fixtures::data_path("archives/omega43.tsv"));
  CHECK(r43.out == read_text(fixtures::data_path("tables/omega43.txt")));

  Scratch s;
  const auto empty = cli("report " + s.file("empty.tsv", "# nothing\n"));
  CHECK(empty.code == 0);
  CHECK(contains(empty.out, "classes\t0\n"));

  std::string text = read_text(fixtures::data_path("archives/omega34.tsv"));
  // corrupt the permanent of the second record (line 3)
  std::size_t line3 = text.find('\n', text.find('\n') + 1) + 1;
  std::size_t tab = text.find('\t', line3);
  text.replace(tab + 1, text.find('\t', tab + 1) - tab - 1, "1/3");
  const auto bad = cli("report " + s.file("bad.tsv", text));
  CHECK(bad.code == 3);
  CHECK(contains(bad.out, "line 3"));

  CHECK(cli("report --recertify " + fixtures::data_path("archives/omega33.tsv")).code == 0);
}

TEST_CASE("support cover query") {
  Scratch s;
  const auto archive = fixtures::data_path("archives/omega33.tsv");
  const auto v = fixtures::data_path("v3.txt");
  const auto ok = cli("cover " + v + " " + archive);
  CHECK(ok.code == 0);
  CHECK(ok.out == "covered\n");

  // a permutation support plus one stray index
  std::vector<long> entries(27, 0);
  const Tensor p = fixtures::sum_permutation(3, 3);
  for (std::size_t f = 0; f < 27; ++f) entries[f] = p.at(f).is_zero() ? 0 : 1;
  entries[1] = 1;
  const auto stray = s.file("stray.txt", emit_tensor(Tensor::from_integers(3, 3, entries)));
  const auto r = cli("cover " + stray + " " + archive);
  CHECK(r.code == 1);
  CHECK(contains(r.out, "uncovered index (0,0,1)"));
}
