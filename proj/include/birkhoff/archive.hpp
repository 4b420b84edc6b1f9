#pragma once

// Vertex archives: one classified vertex per line, tab-separated,
//
//   N  permanent  denominator  symmetric  automorphisms  tensor
//
// where permanent is an exact fraction, symmetric is 0 or 1 and tensor is the
// inline TensorFile form of the canonical representative. Lines starting with
// '#' are comments. Records are sorted by archive_less.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "birkhoff/enumerate.hpp"

namespace birkhoff {

std::string format_record(const ClassifiedVertex& v);

/// Parses one record and re-derives every field from the tensor; a record
/// that would not be written back byte-for-byte is a ParseError. With
/// recertify, the support is also certified again and must give back the
/// same tensor.
ClassifiedVertex parse_record(std::string_view line, std::size_t line_number = 1, bool recertify = false);

/// Header comment plus one line per record, in the given order.
std::string emit_archive(const std::vector<ClassifiedVertex>& records);

/// Also rejects unsorted or repeated records.
std::vector<ClassifiedVertex> parse_archive(std::string_view text, bool recertify = false);

std::vector<ClassifiedVertex> read_archive(const std::filesystem::path& path, bool recertify = false);
void write_archive(const std::filesystem::path& path, const std::vector<ClassifiedVertex>& records);

/// Class count, symmetric count and the two distributions (support size and
/// denominator LCM) in a fixed text layout.
std::string report_tables(const std::vector<ClassifiedVertex>& records);

}  // namespace birkhoff
