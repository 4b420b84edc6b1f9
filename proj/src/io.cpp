#include "birkhoff/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "birkhoff/error.hpp"
#include "birkhoff/stochastic.hpp"

namespace birkhoff {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    if (const auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    std::size_t i = 0;
    while (i < row.size()) {
      while (i < row.size() && std::isspace(static_cast<unsigned char>(row[i]))) ++i;
      if (i == row.size()) break;
      const std::size_t start = i;
      while (i < row.size() && !std::isspace(static_cast<unsigned char>(row[i]))) ++i;
      out.push_back({std::string(row.substr(start, i - start)), line, start + 1});
    }
    pos = end + 1;
    ++line;
  }
  return out;
}

Integer integer_token(const Token& tok) {
  const std::string& s = tok.text;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("expected an integer, got '" + s + "'", tok.line, tok.column);
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw ParseError("expected an integer, got '" + s + "'", tok.line, tok.column);
  }
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

long header_value(const Token& tok, const char* name, long lo, long hi) {
  const Integer v = integer_token(tok);
  if (v < lo || v > hi) {
    throw ParseError(std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                     tok.line, tok.column);
  }
  return v.get_si();
}

}  // namespace

Tensor parse_tensor(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.size() < 3) {
    const std::size_t line = tokens.empty() ? 1 : tokens.back().line;
    throw ParseError("missing header 'd n D'", line);
  }
  const int d = static_cast<int>(header_value(tokens[0], "dimension", 1, 16));
  const int n = static_cast<int>(header_value(tokens[1], "order", 1, 64));
  const Integer den = integer_token(tokens[2]);
  if (den < 1) throw ParseError("denominator must be positive", tokens[2].line, tokens[2].column);
  const std::size_t volume = ipow(n, d);
  if (volume > (std::size_t{1} << 24)) throw ParseError("tensor too large", tokens[0].line, tokens[0].column);
  if (tokens.size() - 3 < volume) {
    throw ParseError("expected " + std::to_string(volume) + " entries, found " + std::to_string(tokens.size() - 3),
                     tokens.back().line);
  }
  if (tokens.size() - 3 > volume) {
    const Token& extra = tokens[3 + volume];
    throw ParseError("unexpected trailing token '" + extra.text + "'", extra.line, extra.column);
  }
  std::vector<Rational> entries;
  entries.reserve(volume);
  for (std::size_t i = 0; i < volume; ++i) entries.emplace_back(integer_token(tokens[3 + i]), den);
  return Tensor(d, n, std::move(entries));
}

namespace {

std::vector<std::string> scaled(const Tensor& t, Integer& den) {
  den = denominator_lcm(t);
  std::vector<std::string> out;
  out.reserve(t.volume());
  for (const auto& x : t.entries()) {
    const Integer v = x.numerator() * (den / x.denominator());
    out.push_back(v.get_str());
  }
  return out;
}

}  // namespace

std::string emit_tensor(const Tensor& t) {
  Integer den;
  const auto values = scaled(t, den);
  std::ostringstream os;
  os << t.dim() << ' ' << t.order() << ' ' << den.get_str() << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << values[i] << ((i + 1) % t.order() == 0 ? '\n' : ' ');
  }
  return os.str();
}

std::string emit_tensor_inline(const Tensor& t) {
  Integer den;
  const auto values = scaled(t, den);
  std::string out = std::to_string(t.dim()) + ' ' + std::to_string(t.order()) + ' ' + den.get_str();
  for (const auto& v : values) out += ' ' + v;
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing " + path.string());
}

Tensor read_tensor_file(const std::filesystem::path& path) { return parse_tensor(read_text(path)); }

void write_tensor_file(const std::filesystem::path& path, const Tensor& t) { write_text(path, emit_tensor(t)); }

}  // namespace birkhoff
