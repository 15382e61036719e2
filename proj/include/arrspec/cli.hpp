#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "arrspec/arrangement.hpp"

namespace arrspec {

// ---- corpus generators
Arrangement builtin_boolean(int n);
// e_1..e_n, then (1,..,1), then random integer forms; every n of them independent
Arrangement builtin_generic(int n, int d, uint64_t seed);
// d-1 lines through one point plus a line off it (n = 3)
Arrangement builtin_nearpencil(int d);
// x_i - x_j for i < j <= m, in the coordinates y_i = x_i - x_m
Arrangement builtin_braid(int m);
// a pencil of a lines in (x1,x2) times a pencil of b lines in (x3,x4)
Arrangement builtin_product(int a, int b);
// name + integer parameters; UnknownBuiltin on anything else
Arrangement builtin(const std::string& name, const std::vector<long>& params);
// shortcut names such as boolean4, generic5, nearpencil5, braid4, product3x3
bool is_shortcut(const std::string& s);
Arrangement shortcut(const std::string& s);
// a path, or a shortcut if no such file exists
Arrangement load_arrangement(const std::string& pathOrName);

// ---- tables
struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
enum class Format { Text, Csv, Structured };
Format parse_format(const std::string& s);  // BadFlag
std::string render(const std::vector<Table>& tables, Format f, const std::string& command);

std::vector<Table> lattice_tables(const Arrangement& A);
std::vector<Table> e1_tables(const Arrangement& A, int kmax);
std::vector<Table> pages_tables(const Arrangement& A, int r, int kmax, uint64_t seed);
// which: M, B, Z, derlog, derlog0, chain
std::vector<Table> reg_tables(const Arrangement& A, const std::string& which);
std::vector<Table> saturate_tables(const Arrangement& A, int kmax);

// ---- verify
struct VerifyOptions {
  int kmax = -1;  // default 4d+2
  uint64_t seed = 1;
  std::vector<uint32_t> primes;  // default: two fixed primes
};
struct VerifyReport {
  nlohmann::json doc;  // full report; doc["volatile"] holds timings
  bool pass = false;
  std::vector<std::string> warnings;
};
int default_kmax(int d);
// kmax after defaulting and flooring at 4d-1 (a warning is appended when raised)
int effective_kmax(int requested, int d, std::vector<std::string>* warnings);
VerifyReport run_verify(const Arrangement& A, const std::string& id, const VerifyOptions& opt);
// the report without its volatile section
nlohmann::json stable_part(const nlohmann::json& doc);

}  // namespace arrspec
