#pragma once

// Integer-scaled text form of a tensor.
//
//   # comments and blank lines are ignored
//   d n D
//   n integers per line, n^(d-1) lines, row-major: D times the entries
//
// The reader accepts any whitespace layout for the body, so the same parser
// handles the single-line inline form used inside archives ("d n D e0 e1 ...").
// Writers always use D = LCM of the entry denominators.

#include <filesystem>
#include <string>
#include <string_view>

#include "birkhoff/tensor.hpp"

namespace birkhoff {

/// Throws ParseError with 1-based line/column of the offending token.
Tensor parse_tensor(std::string_view text);
std::string emit_tensor(const Tensor& t);

/// Header and body on one line, single spaces.
std::string emit_tensor_inline(const Tensor& t);

/// Throws IoError when the file cannot be read, ParseError on bad content.
Tensor read_tensor_file(const std::filesystem::path& path);
void write_tensor_file(const std::filesystem::path& path, const Tensor& t);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace birkhoff
