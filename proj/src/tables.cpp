#include <iomanip>
#include <sstream>

#include "arrspec/cli.hpp"
#include "arrspec/error.hpp"
#include "arrspec/resolution.hpp"
#include "arrspec/saturation.hpp"
#include "arrspec/specseq.hpp"

namespace arrspec {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "structured") return Format::Structured;
  throw Error("BadFlag", "unknown format '" + s + "'");
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

std::string text_table(const Table& t) {
  std::vector<size_t> w(t.header.size(), 0);
  auto fit = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  };
  fit(t.header);
  for (const auto& r : t.rows) fit(r);
  std::ostringstream o;
  o << "# " << t.title << "\n";
  auto line = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) o << "  ";
      o << (i ? std::right : std::left) << std::setw(static_cast<int>(w[i])) << r[i];
    }
    o << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return o.str();
}

std::string str(long v) { return std::to_string(v); }

}  // namespace

std::string render(const std::vector<Table>& tables, Format f, const std::string& command) {
  std::ostringstream o;
  if (f == Format::Structured) {
    json doc;
    doc["command"] = command;
    doc["tables"] = json::array();
    for (const auto& t : tables) {
      json jt;
      jt["title"] = t.title;
      jt["header"] = t.header;
      jt["rows"] = t.rows;
      doc["tables"].push_back(jt);
    }
    return doc.dump(2) + "\n";
  }
  for (size_t i = 0; i < tables.size(); ++i) {
    if (f == Format::Text) {
      if (i) o << "\n";
      o << text_table(tables[i]);
    } else {
      o << "# " << tables[i].title << "\n";
      for (const auto* r : {&tables[i].header}) {
        for (size_t c = 0; c < r->size(); ++c) o << (c ? "," : "") << csv_cell((*r)[c]);
        o << "\n";
      }
      for (const auto& r : tables[i].rows) {
        for (size_t c = 0; c < r.size(); ++c) o << (c ? "," : "") << csv_cell(r[c]);
        o << "\n";
      }
    }
  }
  return o.str();
}

std::vector<Table> lattice_tables(const Arrangement& A) {
  auto L = intersection_lattice(A);
  Table flats{"flats", {"rank", "count", "sum |mobius|"}, {}};
  for (const auto& [r, fl] : L.flatsByRank) {
    long s = 0;
    for (long m : L.moebius.at(r)) s += m < 0 ? -m : m;
    flats.rows.push_back({str(r), str(static_cast<long>(fl.size())), str(s)});
  }
  Table inv{"invariants", {"quantity", "value"}, {}};
  inv.rows.push_back({"n", str(A.n)});
  inv.rows.push_back({"d", str(A.d())});
  inv.rows.push_back({"chi(U)", str(L.chiU)});
  inv.rows.push_back({"tau", str(L.tjurinaSection)});
  std::string pc;
  for (size_t i = 0; i < L.poincareCoefficients.size(); ++i)
    pc += (i ? " " : "") + str(L.poincareCoefficients[i]);
  inv.rows.push_back({"poincare", pc});
  return {flats, inv};
}

namespace {

const char* row_name(int n, int j) {
  if (j == n) return "mu";
  if (j == n - 1) return "nu";
  if (j == n - 2) return "rho";
  return "h";
}

std::vector<std::string> k_header(int kmax) {
  std::vector<std::string> h{"k"};
  for (int k = 0; k <= kmax; ++k) h.push_back(str(k));
  return h;
}

}  // namespace

std::vector<Table> e1_tables(const Arrangement& A, int kmax) {
  Koszul K(A, modp::kPrimes[0]);
  const int n = A.n, d = A.d();
  Table t{"E1 (k = form degree + (n-j)d)", k_header(kmax), {}};
  for (int j = n; j >= 2; --j) {
    std::vector<std::string> r{row_name(n, j)};
    for (int k = 0; k <= kmax; ++k) r.push_back(str(K.h(j, k - (n - j) * d)));
    t.rows.push_back(r);
  }
  return {t};
}

std::vector<Table> pages_tables(const Arrangement& A, int r, int kmax, uint64_t seed) {
  Koszul K(A, modp::kPrimes[0]);
  const int n = A.n, d = A.d();
  PagesOptions o;
  o.kmax = kmax;
  o.seed = seed;
  Pages P = compute_pages(K, o);
  std::vector<Table> out;
  for (int page = 1; page <= r; ++page) {
    Table t{"E" + str(page), k_header(kmax), {}};
    for (int j = n; j >= 2; --j) {
      std::vector<std::string> row{std::string(row_name(n, j)) + (page > 1 ? "(" + str(page) + ")" : "")};
      for (int k = 0; k <= kmax; ++k) {
        int q = k - (n - j) * d;
        row.push_back(q < 0 ? "0" : str(P.e(page, j, q)));
      }
      t.rows.push_back(row);
    }
    out.push_back(t);
  }
  Table dr{"differentials d_r, r >= 2 (nonzero pages only)", {"r", "column", "k source", "k target", "rank", "lifts agree"}, {}};
  for (const auto& rec : P.higher)
    dr.rows.push_back({str(rec.r), str(rec.jSource), str(k_index(n, d, rec.jSource, rec.qSource)),
                       str(k_index(n, d, rec.jSource + 1, rec.qTarget)), str(rec.rank),
                       rec.liftsAgree ? "yes" : "no"});
  out.push_back(dr);
  return out;
}

std::vector<Table> reg_tables(const Arrangement& A, const std::string& which) {
  Koszul K(A, modp::kPrimes[0]);
  const int d = A.d();
  auto betti = [](const std::string& title, const BettiTable& B) {
    int kmin = 1 << 30, kmax = -(1 << 30);
    for (const auto& [jk, v] : B.entries) kmin = std::min(kmin, jk.second), kmax = std::max(kmax, jk.second);
    Table t{title + " (reg " + std::to_string(B.regularity) + ", cutoff " + std::to_string(B.cutoffUsed) + ")",
            {"j \\ k"}, {}};
    if (B.entries.empty()) return t;
    for (int k = kmin; k <= kmax; ++k) t.header.push_back(std::to_string(k));
    int jmax = 0;
    for (const auto& [jk, v] : B.entries) jmax = std::max(jmax, jk.first);
    for (int j = 0; j <= jmax; ++j) {
      std::vector<std::string> r{std::to_string(j)};
      for (int k = kmin; k <= kmax; ++k) {
        auto it = B.entries.find({j, k});
        r.push_back(it == B.entries.end() ? "." : std::to_string(it->second));
      }
      t.rows.push_back(r);
    }
    return t;
  };
  if (which == "M") {
    auto M = milnor_module(K);
    return {betti("Betti table of M", betti_table_auto(M, 2 * d - 2))};
  }
  if (which == "B") {
    auto B = boundary_module(K);
    return {betti("Betti table of df^Omega^{n-1}", betti_table_auto(B, 2 * d - 1))};
  }
  if (which == "Z") {
    auto Z = cycle_module(K);
    return {betti("Betti table of A_f^{n-1}(-d)", betti_table_auto(Z, 2 * d))};
  }
  if (which == "derlog" || which == "derlog0") {
    auto D = derlog_module(K.f(), K.field(), which == "derlog0");
    return {betti(which == "derlog" ? "Betti table of Der(-log D)" : "Betti table of Der(-log D)^0",
                  betti_table_auto(D, d - A.n))};
  }
  if (which == "chain") {
    auto r = verify_reg_chain(K);
    auto D = regularity_derlog(K.f(), K.field());
    Table t{"regularity", {"quantity", "value", "bound", "ok"}, {}};
    t.rows.push_back({"reg M", str(r.regM), str(r.bound), r.boundOk ? "yes" : "no"});
    t.rows.push_back({"reg df^Omega^{n-1} - 1", str(r.regB - 1), "", r.regB - 1 == r.regM ? "yes" : "no"});
    t.rows.push_back({"reg A_f^{n-1}(-d) - 2", str(r.regZ - 2), "", r.regZ - 2 == r.regM ? "yes" : "no"});
    t.rows.push_back({"reg Der(-log D)", str(D.reg), str(D.bound), D.verdict ? "yes" : "no"});
    return {t};
  }
  throw Error("BadFlag", "unknown module '" + which + "' (M, B, Z, derlog, derlog0, chain)");
}

std::vector<Table> saturate_tables(const Arrangement& A, int kmax) {
  if (A.n != 4) throw Error("Shape", "saturation is defined for n = 4");
  Koszul K(A, modp::kPrimes[0]);
  auto S = jacobian_saturation(K, kmax);
  Table t{"saturation of the Jacobian ideal (points ideal in degree " + str(S.pointDegree) + ")",
          {"k", "dim (df)_k", "dim J_k", "witness N", "M'''_{k+4}"}, {}};
  for (int k = 0; k <= kmax; ++k)
    t.rows.push_back({str(k), str(S.jacobianDims[k]), str(S.slices[k].dim()),
                      str(S.slices[k].stabilizationWitness), str(mprime_hilbert(S, 4, k + 4))});
  Table v{"checks", {"check", "value"}, {}};
  v.rows.push_back({"J_k = 0 for k < d-1", jacobian_vanishes_low(S, A.d()) ? "yes" : "no"});
  v.rows.push_back({"(df)_k = J_k from k", str(S.k0)});
  v.rows.push_back({"J_k - (df)_k at the top", str(S.embeddedLength)});
  v.rows.push_back({"gap constant at the top", S.gapStableAtTop ? "yes" : "no"});
  v.rows.push_back({"ideal", S.idealClosed ? "yes" : "no"});
  return {t, v};
}

}  // namespace arrspec
