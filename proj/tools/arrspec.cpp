#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "arrspec/cli.hpp"
#include "arrspec/error.hpp"

using namespace arrspec;

namespace {

// errors caused by the input or the flags; everything else is a failed run
bool input_error(const std::string& kind) {
  for (const char* k : {"BadToken", "Shape", "ZeroForm", "DuplicateForm", "EmptyArrangement", "NotEssential",
                        "UnknownBuiltin", "NoSuchFile", "BadFlag", "BadWindow"})
    if (kind == k) return true;
  return false;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("BadFlag", "cannot write '" + out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arrspec: pole order spectral sequences of hyperplane arrangements"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text", out;
  int kmax = -1, jobs = 0;
  uint64_t seed = 1;
  app.add_option("--format", format, "text, csv or structured")->check(CLI::IsMember({"text", "csv", "structured"}));
  app.add_option("--out", out, "write the output (the report, for verify) to this path");
  app.add_option("--kmax", kmax, "last k index");
  app.add_option("--seed", seed, "seed for randomized lifts and sampling");
  app.add_option("--jobs", jobs, "worker threads (default: $ARRSPEC_JOBS, else all cores)");

  std::string file;
  auto* lattice = app.add_subcommand("lattice", "intersection lattice invariants");
  lattice->add_option("file", file, "arrangement file or builtin name")->required();
  auto* e1 = app.add_subcommand("e1", "the first page");
  e1->add_option("file", file)->required();
  int r = 2;
  auto* pages = app.add_subcommand("pages", "pages E1..Er with the higher differentials");
  pages->add_option("file", file)->required();
  pages->add_option("--r", r, "last page to print")->check(CLI::PositiveNumber);
  std::string which = "chain";
  auto* reg = app.add_subcommand("reg", "Betti tables and regularity");
  reg->add_option("file", file)->required();
  reg->add_option("which", which, "M, B, Z, derlog, derlog0 or chain");
  auto* sat = app.add_subcommand("saturate", "saturation of the Jacobian ideal");
  sat->add_option("file", file)->required();
  auto* ver = app.add_subcommand("verify", "run every check; exit 1 if any fails");
  ver->add_option("file", file)->required();
  std::string bname;
  std::vector<long> bparams;
  auto* bi = app.add_subcommand("builtin", "print a generated arrangement");
  bi->add_option("name", bname, "boolean, generic, nearpencil, braid, product or a shortcut")->required();
  bi->add_option("params", bparams, "integer parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (jobs <= 0)
    if (const char* env = std::getenv("ARRSPEC_JOBS")) jobs = std::atoi(env);
  if (jobs > 0) omp_set_num_threads(jobs);

  try {
    const Format fmt = parse_format(format);
    if (*bi) {
      Arrangement A = bparams.empty() && is_shortcut(bname) ? shortcut(bname) : builtin(bname, bparams);
      emit(to_text(A), out);
      return 0;
    }
    Arrangement A = load_arrangement(file);
    const int d = A.d();
    const int km = kmax < 0 ? default_kmax(d) : kmax;
    if (*lattice) emit(render(lattice_tables(A), fmt, "lattice"), out);
    // everything past the lattice works with the Koszul complex of an essential arrangement
    if (!*lattice && !*ver && !is_essential(A))
      throw Error("NotEssential", "normals have rank " + std::to_string(rank(normal_matrix(A))) + " < n = " +
                                      std::to_string(A.n));
    if (*e1) emit(render(e1_tables(A, km), fmt, "e1"), out);
    if (*pages) emit(render(pages_tables(A, r, km, seed), fmt, "pages"), out);
    if (*reg) emit(render(reg_tables(A, which), fmt, "reg"), out);
    if (*sat) emit(render(saturate_tables(A, kmax < 0 ? 2 * d - 2 : kmax), fmt, "saturate"), out);
    if (*ver) {
      VerifyOptions o;
      o.kmax = kmax;
      o.seed = seed;
      auto rep = run_verify(A, file, o);
      for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
      if (!out.empty()) emit(rep.doc.dump(2) + "\n", out);
      if (fmt == Format::Structured) {
        std::cout << rep.doc.dump(2) << "\n";
      } else {
        Table t{"verify " + file, {"check", "result"}, {}};
        const auto& f = rep.doc["failures"];
        t.rows.push_back({"failed checks", f.empty() ? "none" : f.dump()});
        t.rows.push_back({"primes agree", rep.doc["certification"]["agree"].get<bool>() ? "yes" : "no"});
        t.rows.push_back({"overall", rep.pass ? "PASS" : "FAIL"});
        std::cout << render({t}, fmt, "verify");
      }
      return rep.pass ? 0 : 1;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
