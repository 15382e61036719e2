#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "arrspec/cli.hpp"
#include "arrspec/error.hpp"
#include "arrspec/monomial.hpp"

namespace arrspec {

namespace {

Arrangement from_ints(int n, const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return make_arrangement(n, r);
}

bool all_subsets_independent(const std::vector<std::vector<long>>& rows, int n) {
  const int d = static_cast<int>(rows.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    QMatrix M(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) M(a, b) = rows[idx[a]][b];
    if (rank(M) < n) return false;
    int i = n - 1;
    while (i >= 0 && idx[i] == d - n + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<std::vector<long>> pencil(int a, int n, int u, int v) {
  // lines through the codimension-2 space x_u = x_v = 0
  std::vector<std::vector<long>> out;
  auto form = [&](long cu, long cv) {
    std::vector<long> r(n, 0);
    r[u] = cu;
    r[v] = cv;
    return r;
  };
  out.push_back(form(1, 0));
  if (a >= 2) out.push_back(form(0, 1));
  for (int c = 1; c <= a - 2; ++c) out.push_back(form(1, c));
  return out;
}

}  // namespace

Arrangement builtin_boolean(int n) {
  if (n < 1 || n > kMaxVars) throw Error("UnknownBuiltin", "boolean needs 1 <= n <= 4");
  std::vector<std::vector<long>> rows;
  for (int i = 0; i < n; ++i) {
    rows.emplace_back(n, 0);
    rows.back()[i] = 1;
  }
  return from_ints(n, rows);
}

Arrangement builtin_generic(int n, int d, uint64_t seed) {
  if (n < 2 || n > kMaxVars || d < n) throw Error("UnknownBuiltin", "generic needs 2 <= n <= 4 and d >= n");
  std::mt19937_64 rng(seed);
  const long B = 5;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::vector<long>> rows;
    for (int i = 0; i < n; ++i) {
      rows.emplace_back(n, 0);
      rows.back()[i] = 1;
    }
    if (d > n) rows.emplace_back(n, 1);
    while (static_cast<int>(rows.size()) < d) {
      std::vector<long> r(n);
      for (auto& x : r) x = static_cast<long>(rng() % (2 * B + 1)) - B;
      rows.push_back(r);
    }
    if (all_subsets_independent(rows, n)) return from_ints(n, rows);
  }
  throw Error("GenericityFailed", "no generic arrangement found");
}

Arrangement builtin_nearpencil(int d) {
  if (d < 3) throw Error("UnknownBuiltin", "nearpencil needs d >= 3");
  auto rows = pencil(d - 1, 3, 0, 1);
  rows.push_back({0, 0, 1});
  return from_ints(3, rows);
}

Arrangement builtin_braid(int m) {
  const int n = m - 1;
  if (n < 2 || n > kMaxVars) throw Error("UnknownBuiltin", "braid needs 3 <= m <= 5");
  std::vector<std::vector<long>> rows;
  for (int i = 0; i < n; ++i) {
    rows.emplace_back(n, 0);
    rows.back()[i] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      rows.emplace_back(n, 0);
      rows.back()[i] = 1;
      rows.back()[j] = -1;
    }
  return from_ints(n, rows);
}

Arrangement builtin_product(int a, int b) {
  if (a < 2 || b < 2) throw Error("UnknownBuiltin", "product needs pencils of at least 2 lines");
  auto rows = pencil(a, 4, 0, 1);
  auto more = pencil(b, 4, 2, 3);
  rows.insert(rows.end(), more.begin(), more.end());
  return from_ints(4, rows);
}

Arrangement builtin(const std::string& name, const std::vector<long>& p) {
  auto need = [&](size_t k) {
    if (p.size() != k)
      throw Error("UnknownBuiltin", name + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (name == "boolean") return need(1), builtin_boolean(static_cast<int>(p[0]));
  if (name == "generic") {
    if (p.size() == 2) return builtin_generic(static_cast<int>(p[0]), static_cast<int>(p[1]), 1);
    need(3);
    return builtin_generic(static_cast<int>(p[0]), static_cast<int>(p[1]), static_cast<uint64_t>(p[2]));
  }
  if (name == "nearpencil") return need(1), builtin_nearpencil(static_cast<int>(p[0]));
  if (name == "braid") return need(1), builtin_braid(static_cast<int>(p[0]));
  if (name == "product") return need(2), builtin_product(static_cast<int>(p[0]), static_cast<int>(p[1]));
  throw Error("UnknownBuiltin", "no builtin named '" + name + "'");
}

namespace {
const std::regex kShortcut(R"(^(boolean|generic|nearpencil|braid)(\d+)$|^product(\d+)x(\d+)$)");
}

bool is_shortcut(const std::string& s) { return std::regex_match(s, kShortcut); }

Arrangement shortcut(const std::string& s) {
  std::smatch m;
  if (!std::regex_match(s, m, kShortcut)) throw Error("UnknownBuiltin", "no builtin named '" + s + "'");
  if (m[3].matched) return builtin_product(std::stoi(m[3]), std::stoi(m[4]));
  const std::string name = m[1];
  const int v = std::stoi(m[2]);
  if (name == "generic") return builtin_generic(4, v, 1);  // generic<d> in 4 variables
  return builtin(name, {v});
}

Arrangement load_arrangement(const std::string& s) {
  if (std::filesystem::exists(s)) {
    std::ifstream in(s);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_arrangement(ss.str());
  }
  if (is_shortcut(s)) return shortcut(s);
  throw Error("NoSuchFile", "'" + s + "' is neither a file nor a builtin name");
}

}  // namespace arrspec
