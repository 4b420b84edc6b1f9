#include "birkhoff/archive.hpp"

#include <sstream>

#include "birkhoff/equivalence.hpp"
#include "birkhoff/error.hpp"
#include "birkhoff/io.hpp"
#include "birkhoff/stochastic.hpp"
#include "birkhoff/vertexcert.hpp"

namespace birkhoff {

namespace {

constexpr const char* kHeader = "# N\tpermanent\tdenominator\tsymmetric\tautomorphisms\ttensor\n";

struct Field {
  std::string_view text;
  std::size_t column;
};

std::vector<Field> split_tabs(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back({line.substr(start, tab == std::string_view::npos ? line.size() - start : tab - start), start + 1});
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::uint64_t unsigned_field(const Field& f, const char* name, std::size_t line) {
  if (f.text.empty() || f.text.size() > 19 || f.text.find_first_not_of("0123456789") != std::string_view::npos)
    throw ParseError(std::string(name) + ": expected a nonnegative integer", line, f.column);
  return std::stoull(std::string(f.text));
}

}  // namespace

std::string format_record(const ClassifiedVertex& v) {
  std::ostringstream out;
  out << v.support_size << '\t' << v.permanent.str() << '\t' << v.denominator.get_str() << '\t'
      << (v.symmetric ? 1 : 0) << '\t' << v.automorphisms << '\t' << emit_tensor_inline(v.canonical);
  return out.str();
}

ClassifiedVertex parse_record(std::string_view line, std::size_t line_number, bool recertify) {
  const auto fields = split_tabs(line);
  if (fields.size() != 6)
    throw ParseError("expected 6 tab-separated fields, found " + std::to_string(fields.size()), line_number);
  const std::size_t n = unsigned_field(fields[0], "N", line_number);
  Rational per;
  try {
    per = Rational::parse(fields[1].text);
  } catch (const Error& e) {
    throw ParseError(std::string("permanent: ") + e.what(), line_number, fields[1].column);
  }
  const std::uint64_t den = unsigned_field(fields[2], "denominator", line_number);
  if (fields[3].text != "0" && fields[3].text != "1")
    throw ParseError("symmetric: expected 0 or 1", line_number, fields[3].column);
  const std::uint64_t aut = unsigned_field(fields[4], "automorphisms", line_number);
  Tensor t = [&] {
    try {
      return parse_tensor(fields[5].text);
    } catch (const ParseError& e) {
      const std::size_t column = e.column() ? fields[5].column + e.column() - 1 : fields[5].column;
      throw ParseError(std::string("tensor: ") + e.what(), line_number, column);
    }
  }();

  if (!is_polystochastic(t)) throw ParseError("tensor is not polystochastic", line_number, fields[5].column);
  ClassifiedVertex v = classify(t);
  auto mismatch = [&](const char* what, std::size_t column) {
    throw ParseError(std::string(what) + " does not match the tensor", line_number, column);
  };
  if (!(v.canonical == t)) mismatch("canonical form", fields[5].column);
  if (v.support_size != n) mismatch("N", fields[0].column);
  if (v.permanent != per) mismatch("permanent", fields[1].column);
  if (v.denominator != Integer(static_cast<unsigned long>(den))) mismatch("denominator", fields[2].column);
  if (v.symmetric != (fields[3].text == "1")) mismatch("symmetric flag", fields[3].column);
  if (v.automorphisms != aut) mismatch("automorphism count", fields[4].column);
  if (format_record(v) != line) throw ParseError("record is not in normal form", line_number);
  if (recertify) {
    const auto cert = certify(support(t));
    if (!cert.is_vertex() || !(*cert.tensor == t))
      throw ParseError("tensor does not certify as a vertex", line_number, fields[5].column);
  }
  return v;
}

std::string emit_archive(const std::vector<ClassifiedVertex>& records) {
  std::string out = kHeader;
  for (const auto& v : records) out += format_record(v) + '\n';
  return out;
}

std::vector<ClassifiedVertex> parse_archive(std::string_view text, bool recertify) {
  std::vector<ClassifiedVertex> out;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.empty() || line.front() == '#') continue;
    auto v = parse_record(line, line_number, recertify);
    if (!out.empty() && !archive_less(out.back(), v))
      throw ParseError("records must be strictly sorted by N, then canonical entries", line_number);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<ClassifiedVertex> read_archive(const std::filesystem::path& path, bool recertify) {
  return parse_archive(read_text(path), recertify);
}

void write_archive(const std::filesystem::path& path, const std::vector<ClassifiedVertex>& records) {
  write_text(path, emit_archive(records));
}

std::string report_tables(const std::vector<ClassifiedVertex>& records) {
  std::size_t symmetric = 0;
  for (const auto& v : records) symmetric += v.symmetric ? 1 : 0;
  std::ostringstream out;
  out << "classes\t" << records.size() << '\n' << "symmetric\t" << symmetric << '\n';
  auto table = [&](const char* title, const char* label, DistributionKey key) {
    const auto dist = distribution(records, key);
    out << '\n' << title << '\n' << label;
    for (const auto& [k, count] : dist) out << '\t' << k;
    out << "\n#";
    for (const auto& [k, count] : dist) out << '\t' << count;
    out << '\n';
  };
  table("support sizes", "N", DistributionKey::SupportSize);
  table("denominators", "Delta", DistributionKey::DenominatorLcm);
  return out.str();
}

}  // namespace birkhoff
