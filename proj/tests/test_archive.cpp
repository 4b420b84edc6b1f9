#include <algorithm>
#include <random>

#include "birkhoff/archive.hpp"
#include "birkhoff/equivalence.hpp"
#include "birkhoff/error.hpp"
#include "birkhoff/io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace birkhoff;

namespace {

std::vector<ClassifiedVertex> appendix_records() {
  std::vector<ClassifiedVertex> out;
  for (int k = 1; k <= 21; ++k) out.push_back(classify(fixtures::appendix(k)));
  std::sort(out.begin(), out.end(), archive_less);
  return out;
}

const std::vector<ClassifiedVertex>& records() {
  static const auto r = appendix_records();
  return r;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == '\t')
      out.emplace_back();
    else
      out.back() += c;
  }
  return out;
}

std::string join(const std::vector<std::string>& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "\t" : "") + f[i];
  return out;
}

// ParseError line and column of parsing `line` as record 7
std::pair<std::size_t, std::size_t> error_at(const std::string& line) {
  try {
    parse_record(line, 7);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST_CASE("record layout") {
  const auto v = classify(fixtures::appendix(5));
  const auto f = fields_of(format_record(v));
  REQUIRE(f.size() == 6);
  CHECK(f[0] == "58");
  CHECK(f[1] == "256/27");
  CHECK(f[2] == "3");
  CHECK(f[3] == "0");
  CHECK(f[5].rfind("4 3 3 ", 0) == 0);
  CHECK(parse_tensor(f[5]) == v.canonical);
}

TEST_CASE("archive round trip is byte-identical") {
  const std::string text = emit_archive(records());
  CHECK(text.rfind("# N\tpermanent\tdenominator\tsymmetric\tautomorphisms\ttensor\n", 0) == 0);
  const auto parsed = parse_archive(text);
  CHECK(parsed == records());
  CHECK(emit_archive(parsed) == text);
  CHECK(parse_archive(text, true) == records());
  CHECK(parse_archive("").empty());
  CHECK(parse_archive("# nothing here\n\n").empty());
}

TEST_CASE("records that do not re-derive are rejected with their position") {
  const std::string line = format_record(records()[3]);
  auto f = fields_of(line);
  const std::size_t tensor_column = line.size() - f[5].size() + 1;

  auto g = f;
  g[0] = std::to_string(std::stoul(f[0]) + 1);
  CHECK(error_at(join(g)) == std::pair<std::size_t, std::size_t>{7, 1});

  g = f;
  g[1] = "1/7";
  CHECK(error_at(join(g)) == std::pair<std::size_t, std::size_t>{7, f[0].size() + 2});

  g = f;
  g[2] = "97";
  CHECK(error_at(join(g)).first == 7);

  g = f;
  g[3] = g[3] == "1" ? "0" : "1";
  CHECK(error_at(join(g)).first == 7);

  g = f;
  g[3] = "yes";
  CHECK(error_at(join(g)).first == 7);

  g = f;
  g[4] = "0";
  CHECK(error_at(join(g)).first == 7);

  g = f;
  g[1] = "x/y";
  CHECK(error_at(join(g)).first == 7);

  // an equivalent but non-canonical representative
  std::mt19937_64 rng(5);
  Tensor moved = records()[3].canonical;
  while (moved == records()[3].canonical)
    moved = apply(EquivalenceTransform::random(4, 3, rng), records()[3].canonical);
  g = f;
  g[5] = emit_tensor_inline(moved);
  CHECK(error_at(join(g)) == std::pair<std::size_t, std::size_t>{7, tensor_column});

  // a bad tensor token points into the tensor field
  g = f;
  const std::size_t last = f[5].rfind(' ') + 1;
  g[5] = f[5].substr(0, last) + "x";
  CHECK(error_at(join(g)) == std::pair<std::size_t, std::size_t>{7, tensor_column + last});
  g[5] = "4 3 3 1";
  CHECK(error_at(join(g)) == std::pair<std::size_t, std::size_t>{7, tensor_column});

  CHECK(error_at(line + "\textra").first == 7);
  CHECK(error_at("58\t1").first == 7);
  CHECK(error_at(line + " ").first == 7);
}

TEST_CASE("archive order and uniqueness are enforced") {
  const auto& r = records();
  std::vector<ClassifiedVertex> swapped = r;
  std::swap(swapped[0], swapped[1]);
  try {
    parse_archive(emit_archive(swapped));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::vector<ClassifiedVertex> repeated = {r[0], r[0]};
  CHECK_THROWS_AS(parse_archive(emit_archive(repeated)), ParseError);
}

TEST_CASE("recertification catches non-vertices") {
  const Tensor uniform = Tensor::filled(3, 3, Rational(1, 3));
  const std::string line = format_record(classify(uniform));
  CHECK(parse_record(line).support_size == 27);
  CHECK_THROWS_AS(parse_record(line, 1, true), ParseError);
  CHECK_THROWS_AS(parse_record(format_record(classify(Tensor::filled(3, 3, Rational(1, 2))))), ParseError);
}

TEST_CASE("report tables") {
  CHECK(report_tables(records()) == read_text(fixtures::data_path("tables/omega34.txt")));
  CHECK(report_tables({}) == "classes\t0\nsymmetric\t0\n\nsupport sizes\nN\n#\n\ndenominators\nDelta\n#\n");
}

TEST_CASE("archive files") {
  const auto path = std::filesystem::temp_directory_path() / "birkhoff-archive-test.tsv";
  write_archive(path, records());
  CHECK(read_archive(path) == records());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_archive(path), IoError);
}
