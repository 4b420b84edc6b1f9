// birkhoff: certify, enumerate, construct, canonicalize and tabulate vertices
// of polytopes of polystochastic tensors.
//
// Exit codes: 0 success or vertex, 1 non-vertex or refuted, 2 usage,
// 3 I/O or parse error.

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "birkhoff/archive.hpp"
#include "birkhoff/constructions.hpp"
#include "birkhoff/enumerate.hpp"
#include "birkhoff/equivalence.hpp"
#include "birkhoff/error.hpp"
#include "birkhoff/io.hpp"
#include "birkhoff/stochastic.hpp"
#include "birkhoff/vertexcert.hpp"

using namespace birkhoff;

namespace {

enum Exit { kOk = 0, kNotVertex = 1, kUsage = 2, kIo = 3 };

struct UsageError : Error {
  using Error::Error;
};

std::string with_decimal(const Rational& r) {
  if (r.is_integer()) return r.str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", r.to_double());
  return r.str() + " (≈ " + buf + ")";
}

void put(const std::filesystem::path& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
}

int cmd_certify(const std::string& path) {
  const Tensor t = read_tensor_file(path);
  if (!is_polystochastic(t)) {
    std::cout << "verdict: not polystochastic\n";
    return kNotVertex;
  }
  const auto cert = certify(support(t));
  std::cout << "verdict: " << (cert.is_vertex() ? "vertex" : "not a vertex (" + std::string(to_string(cert.verdict)) + ")")
            << '\n'
            << "N: " << support(t).size() << '\n'
            << "permanent: " << with_decimal(permanent(t)) << '\n'
            << "denominator: " << denominator_lcm(t).get_str() << '\n'
            << "symmetric: " << (has_symmetric_representative(t) ? "yes" : "no") << '\n';
  if (!cert.note.empty()) std::cout << "note: " << cert.note << '\n';
  return cert.is_vertex() ? kOk : kNotVertex;
}

struct EnumerateArgs {
  int order = 0;
  int dim = 0;
  std::string method = "auto";
  std::size_t max_support = 0;
  std::string checkpoint;
  unsigned jobs = 0;
  std::string output;
};

int cmd_enumerate(const EnumerateArgs& a) {
  const bool specialized_34 = a.order == 3 && a.dim == 4;
  const bool specialized_43 = a.order == 4 && a.dim == 3;
  const bool small = a.order >= 1 && a.dim >= 1 && a.order <= 64 && a.dim <= 64 &&
                     std::pow(static_cast<double>(a.order), a.dim) <= 64.0;
  std::string method = a.method;
  if (method == "auto") method = (specialized_34 || specialized_43) ? "specialized" : "generic";
  EnumerationResult r;
  if (method == "generic") {
    if (!small) throw UsageError("generic enumeration needs n^d <= 64");
    r = algorithm1(a.order, a.dim, exhaustive_supports(a.order, a.dim));
  } else if (specialized_34) {
    Omega34Options opt;
    if (a.max_support) opt.max_support = a.max_support;
    r = enumerate_omega_3_4(opt);
  } else if (specialized_43) {
    Omega43Options opt;
    if (a.max_support) opt.max_support = a.max_support;
    opt.jobs = a.jobs;
    opt.checkpoint_dir = a.checkpoint;
    opt.progress = [](std::size_t done, std::size_t total) {
      if (done % 250 == 0 || done == total) std::cerr << "units " << done << "/" << total << '\n';
    };
    r = enumerate_omega_4_3(opt);
  } else {
    throw UsageError("the specialized search exists for (n, d) = (3, 4) and (4, 3) only");
  }
  if (!a.output.empty()) write_archive(a.output, r.classes);
  std::cout << report_tables(r.classes);
  return kOk;
}

int report_construction(const ConstructionReport& r, const std::string& output) {
  if (!output.empty()) write_tensor_file(output, r.tensor);
  std::cout << "construction: " << r.construction << '\n';
  for (const auto& [k, v] : r.parameters) std::cout << "  " << k << " = " << v << '\n';
  std::cout << "N: " << r.support_size() << '\n';
  if (r.claimed_support) std::cout << "predicted N: " << *r.claimed_support << '\n';
  if (r.predicted_vertex) std::cout << "predicted: " << (*r.predicted_vertex ? "vertex" : "not a vertex") << '\n';
  std::cout << "certified: " << (r.certified.is_vertex() ? "vertex" : "not a vertex (" + std::string(to_string(r.certified.verdict)) + ")")
            << '\n';
  for (const auto& n : r.notes) std::cout << "note: " << n << '\n';
  if (output.empty()) std::cout << emit_tensor(r.tensor);
  return r.certified.is_vertex() ? kOk : kNotVertex;
}

int cmd_construct(const std::string& kind, const std::vector<std::string>& inputs, int dim,
                  const std::string& output) {
  auto need = [&](std::size_t count) {
    if (inputs.size() != count)
      throw UsageError(kind + " takes " + std::to_string(count) + " tensor files, got " + std::to_string(inputs.size()));
  };
  if (kind == "construction1") {
    need(0);
    if (dim < 2) throw UsageError("construction1 needs --dim >= 2");
    return report_construction(construction1(dim), output);
  }
  if (kind == "kronecker") {
    need(2);
    return report_construction(kronecker_vertex(read_tensor_file(inputs[0]), read_tensor_file(inputs[1])), output);
  }
  if (kind == "dot") {
    need(2);
    return report_construction(dot_vertex(read_tensor_file(inputs[0]), read_tensor_file(inputs[1])), output);
  }
  if (kind == "blocks") {
    // outer permutation, then one block per support index in row-major order
    if (inputs.empty()) throw UsageError("blocks needs the outer permutation file");
    const Tensor outer = read_tensor_file(inputs[0]);
    const auto keys = support(outer).indices();
    if (inputs.size() != keys.size() + 1)
      throw UsageError("blocks needs " + std::to_string(keys.size()) + " block files after the outer tensor");
    std::map<Index, Tensor> blocks;
    for (std::size_t i = 0; i < keys.size(); ++i) blocks.emplace(keys[i], read_tensor_file(inputs[i + 1]));
    return report_construction(block_substitution(outer, blocks), output);
  }
  throw UsageError("unknown construction '" + kind + "'");
}

int cmd_cover(const std::string& support_file, const std::string& archive) {
  const Tensor t = read_tensor_file(support_file);
  std::vector<Tensor> classes;
  for (auto& v : read_archive(archive)) classes.push_back(std::move(v.canonical));
  const auto s = support(t);
  if (const auto miss = uncovered_support_index(s, classes)) {
    std::ostringstream idx;
    const Index alpha = s.grid().unflat(*miss);
    for (int a = 0; a < alpha.dim(); ++a) idx << (a ? "," : "") << alpha[a];
    std::cout << "uncovered index (" << idx.str() << "): no polystochastic tensor has this support\n";
    return kNotVertex;
  }
  std::cout << "covered\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certification, enumeration and construction of polytope vertices"};
  app.require_subcommand(1);

  std::string input;
  std::string output;

  auto* certify_cmd = app.add_subcommand("certify", "certify a tensor file as a vertex");
  certify_cmd->add_option("file", input, "tensor file")->required();

  EnumerateArgs en;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "enumerate vertex classes");
  enumerate_cmd->add_option("-n,--order", en.order, "order n")->required();
  enumerate_cmd->add_option("-d,--dim", en.dim, "dimension d")->required();
  enumerate_cmd->add_option("--method", en.method, "generic, specialized or auto")
      ->check(CLI::IsMember({"auto", "generic", "specialized"}));
  enumerate_cmd->add_option("--max-support", en.max_support, "largest support size searched (specialized only)");
  enumerate_cmd->add_option("--checkpoint", en.checkpoint, "checkpoint directory (order 4, dimension 3)");
  enumerate_cmd->add_option("-j,--jobs", en.jobs, "worker threads; default BIRKHOFF_JOBS or 1");
  enumerate_cmd->add_option("-o,--output", en.output, "archive file");

  std::string kind;
  std::vector<std::string> inputs;
  int dim = 0;
  auto* construct_cmd = app.add_subcommand("construct", "build a vertex from smaller ones and certify it");
  construct_cmd->add_option("kind", kind, "kronecker, dot, blocks or construction1")
      ->required()
      ->check(CLI::IsMember({"kronecker", "dot", "blocks", "construction1"}));
  construct_cmd->add_option("inputs", inputs, "tensor files");
  construct_cmd->add_option("--dim", dim, "dimension for construction1");
  construct_cmd->add_option("-o,--output", output, "write the tensor here");

  auto* canon_cmd = app.add_subcommand("canon", "canonical representative of the equivalence class");
  canon_cmd->add_option("file", input, "tensor file")->required();
  canon_cmd->add_option("-o,--output", output, "output file");

  auto* permanent_cmd = app.add_subcommand("permanent", "exact permanent");
  permanent_cmd->add_option("file", input, "tensor file")->required();

  bool recertify = false;
  auto* report_cmd = app.add_subcommand("report", "distribution tables of an archive");
  report_cmd->add_option("archive", input, "archive file")->required();
  report_cmd->add_flag("--recertify", recertify, "certify every record again");

  std::string archive;
  auto* cover_cmd = app.add_subcommand("cover", "check that vertex supports cover a support");
  cover_cmd->add_option("file", input, "tensor file whose support is tested")->required();
  cover_cmd->add_option("archive", archive, "archive of vertex classes")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*certify_cmd) return cmd_certify(input);
    if (*enumerate_cmd) return cmd_enumerate(en);
    if (*construct_cmd) return cmd_construct(kind, inputs, dim, output);
    if (*canon_cmd) {
      put(output, emit_tensor(canonical_form(read_tensor_file(input))));
      return kOk;
    }
    if (*permanent_cmd) {
      std::cout << with_decimal(permanent(read_tensor_file(input))) << '\n';
      return kOk;
    }
    if (*report_cmd) {
      std::cout << report_tables(read_archive(input, recertify));
      return kOk;
    }
    if (*cover_cmd) return cmd_cover(input, archive);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
