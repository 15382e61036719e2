#include "arrspec/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "arrspec/error.hpp"

namespace arrspec {

namespace {

std::vector<Rational> normalized(std::vector<Rational> c) {
  for (const auto& x : c)
    if (x != 0) {
      Rational lead = x;
      for (auto& y : c) y /= lead;
      return c;
    }
  return c;
}

bool is_zero(const std::vector<Rational>& c) {
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
}

QMatrix rows_of(const Arrangement& A, const std::vector<int>& idx) {
  QMatrix M(static_cast<int>(idx.size()), A.n);
  for (size_t r = 0; r < idx.size(); ++r)
    for (int j = 0; j < A.n; ++j) M(static_cast<int>(r), j) = A.forms[idx[r]].c[j];
  return M;
}

// multiset of rank-2 flat multiplicities, sorted
std::vector<int> rank2_multiplicities(const LatticeInvariants& L) {
  std::vector<int> m;
  auto it = L.flatsByRank.find(2);
  if (it != L.flatsByRank.end())
    for (const auto& X : it->second) m.push_back(X.multiplicity);
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

Arrangement make_arrangement(int n, const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) throw Error("EmptyArrangement", "no forms");
  if (n < 1) throw Error("Shape", "need at least one variable");
  Arrangement A;
  A.n = n;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw Error("Shape", "form " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                               " coefficients, expected " + std::to_string(n));
    if (is_zero(rows[i])) throw Error("ZeroForm", "form " + std::to_string(i) + " is zero");
    auto c = normalized(rows[i]);
    for (size_t j = 0; j < A.forms.size(); ++j)
      if (A.forms[j].c == c)
        throw Error("DuplicateForm",
                    "forms " + std::to_string(j) + " and " + std::to_string(i) + " are proportional");
    A.forms.push_back({std::move(c)});
  }
  return A;
}

Arrangement parse_arrangement(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<Rational>> rows;
  int n = -1;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<Rational> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.push_back(parse_rational(tok));
      } catch (const Error& e) {
        throw Error("BadToken", "line " + std::to_string(lineNo) + ": '" + tok + "'");
      }
    }
    if (row.empty()) continue;
    if (n < 0) n = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != n)
      throw Error("Shape", "line " + std::to_string(lineNo) + " has " + std::to_string(row.size()) +
                               " coefficients, expected " + std::to_string(n));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("EmptyArrangement", "no forms in input");
  return make_arrangement(n, rows);
}

std::string to_text(const Arrangement& A) {
  std::ostringstream o;
  for (const auto& f : A.forms) {
    for (int j = 0; j < A.n; ++j) o << (j ? " " : "") << f.c[j].get_str();
    o << '\n';
  }
  return o.str();
}

QMatrix normal_matrix(const Arrangement& A) {
  std::vector<int> all(A.d());
  std::iota(all.begin(), all.end(), 0);
  return rows_of(A, all);
}

bool is_essential(const Arrangement& A) { return rank(normal_matrix(A)) == A.n; }

LatticeInvariants intersection_lattice(const Arrangement& A) {
  const int d = A.d();
  LatticeInvariants L;
  // A flat is determined by the set of forms vanishing on it, i.e. the forms in
  // the span of its equations; the canonical key is the RREF of that span.
  std::map<std::vector<int>, int> seen;  // members -> index within its rank
  Flat top;
  top.rank = 0;
  top.equations = QMatrix(0, A.n);
  L.flatsByRank[0].push_back(top);
  for (int r = 0; r < A.n; ++r) {
    auto it = L.flatsByRank.find(r);
    if (it == L.flatsByRank.end()) break;
    std::vector<Flat> next;
    std::set<std::vector<Rational>> keys;
    for (const Flat& X : it->second) {
      std::vector<char> in(d, 0);
      for (int m : X.members) in[m] = 1;
      for (int i = 0; i < d; ++i) {
        if (in[i]) continue;
        QMatrix eq(X.equations.rows + 1, A.n);
        for (int a = 0; a < X.equations.rows; ++a)
          for (int b = 0; b < A.n; ++b) eq(a, b) = X.equations(a, b);
        for (int b = 0; b < A.n; ++b) eq(X.equations.rows, b) = A.forms[i].c[b];
        QMatrix R = rref(eq);
        if (!keys.insert(R.a).second) continue;
        Flat Y;
        Y.rank = r + 1;
        Y.equations = R;
        for (int k = 0; k < d; ++k) {
          QMatrix t(R.rows + 1, A.n);
          std::copy(R.a.begin(), R.a.end(), t.a.begin());
          for (int b = 0; b < A.n; ++b) t(R.rows, b) = A.forms[k].c[b];
          if (rank(t) == R.rows) Y.members.push_back(k);
        }
        Y.multiplicity = static_cast<int>(Y.members.size());
        next.push_back(std::move(Y));
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end(),
              [](const Flat& a, const Flat& b) { return a.members < b.members; });
    L.flatsByRank[r + 1] = std::move(next);
  }
  // Moebius: mu(X) = -sum over flats strictly above X (member set strictly contained)
  L.moebius[0] = {1};
  for (auto& [r, flats] : L.flatsByRank) {
    if (r == 0) continue;
    auto& mu = L.moebius[r];
    mu.resize(flats.size());
    for (size_t x = 0; x < flats.size(); ++x) {
      const auto& mx = flats[x].members;
      long s = 0;
      for (int rr = 0; rr < r; ++rr) {
        const auto& lower = L.flatsByRank[rr];
        for (size_t y = 0; y < lower.size(); ++y)
          if (std::includes(mx.begin(), mx.end(), lower[y].members.begin(), lower[y].members.end()))
            s += L.moebius[rr][y];
      }
      mu[x] = -s;
    }
  }
  int top_rank = L.flatsByRank.rbegin()->first;
  L.poincareCoefficients.assign(top_rank + 1, 0);
  for (const auto& [r, mu] : L.moebius)
    for (long m : mu) L.poincareCoefficients[r] += std::labs(m);
  // pi(A,t)/(1+t) by synthetic division, then evaluate at t = -1
  const auto& p = L.poincareCoefficients;
  std::vector<long> q(p.size() > 1 ? p.size() - 1 : 0);
  // q_{k-1} = p_k - q_k
  for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k)
    q[k] = p[k + 1] - (k + 1 < static_cast<int>(q.size()) ? q[k + 1] : 0);
  long rem = p[0] - (q.empty() ? 0 : q[0]);
  if (rem != 0) throw Error("Internal", "Poincare polynomial not divisible by 1+t");
  long chi = 0, sign = 1;
  for (long c : q) {
    chi += sign * c;
    sign = -sign;
  }
  L.chiU = chi;
  if (auto it = L.flatsByRank.find(2); it != L.flatsByRank.end())
    for (const auto& X : it->second)
      L.tjurinaSection += static_cast<long>(X.multiplicity - 1) * (X.multiplicity - 1);
  return L;
}

Arrangement delete_form(const Arrangement& A, int i) {
  if (i < 0 || i >= A.d())
    throw Error("IndexOutOfRange", "index " + std::to_string(i) + " with d = " + std::to_string(A.d()));
  if (A.d() == 1) throw Error("EmptyResult", "deleting the only form");
  Arrangement B = A;
  B.forms.erase(B.forms.begin() + i);
  return B;
}

std::vector<std::vector<int>> circuits(const Arrangement& A, int maxSize) {
  const int d = A.d();
  std::vector<std::vector<int>> out;
  std::vector<int> S;
  // a subset is a circuit iff it is dependent and every one-smaller subset is independent
  auto visit = [&](auto&& self, int start) -> void {
    if (!S.empty() && static_cast<int>(S.size()) >= 2) {
      int k = static_cast<int>(S.size());
      if (rank(rows_of(A, S)) == k - 1) {
        bool minimal = true;
        for (int drop = 0; drop < k && minimal; ++drop) {
          std::vector<int> T;
          for (int t = 0; t < k; ++t)
            if (t != drop) T.push_back(S[t]);
          minimal = rank(rows_of(A, T)) == k - 1;
        }
        if (minimal) out.push_back(S);
      }
    }
    if (static_cast<int>(S.size()) == maxSize) return;
    for (int i = start; i < d; ++i) {
      S.push_back(i);
      self(self, i + 1);
      S.pop_back();
    }
  };
  visit(visit, 0);
  return out;
}

std::optional<std::vector<Factor>> product_decomposition(const Arrangement& A) {
  if (!is_essential(A)) throw Error("NotEssential", "product decomposition needs an essential arrangement");
  const int d = A.d();
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& C : circuits(A, A.n + 1))
    for (size_t t = 1; t < C.size(); ++t) parent[find(C[t])] = find(C[0]);
  std::map<int, std::vector<int>> comp;
  for (int i = 0; i < d; ++i) comp[find(i)].push_back(i);
  if (comp.size() == 1) return std::nullopt;
  std::vector<Factor> out;
  for (auto& [root, idx] : comp) {
    Factor F;
    F.formIndices = idx;
    F.variableSubspace = rref(rows_of(A, idx));
    const int r = F.variableSubspace.rows;
    // coordinates of each normal in the echelon basis: read off at pivot columns
    std::vector<int> piv;
    for (int t = 0; t < r; ++t)
      for (int j = 0; j < A.n; ++j)
        if (F.variableSubspace(t, j) != 0) {
          piv.push_back(j);
          break;
        }
    std::vector<std::vector<Rational>> rows;
    for (int i : idx) {
      std::vector<Rational> c(r);
      for (int t = 0; t < r; ++t) c[t] = A.forms[i].c[piv[t]];
      rows.push_back(c);
    }
    F.sub = make_arrangement(r, rows);
    out.push_back(std::move(F));
  }
  return out;
}

std::vector<std::vector<Rational>> restrict_forms(const Arrangement& A,
                                                  const std::vector<Integer>& h) {
  QMatrix H(1, A.n);
  for (int j = 0; j < A.n; ++j) H(0, j) = Rational(h[j]);
  QMatrix K = kernel_basis(H);  // n x (n-1): a basis of the hyperplane
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : A.forms) {
    std::vector<Rational> c(K.cols);
    for (int t = 0; t < K.cols; ++t)
      for (int j = 0; j < A.n; ++j) c[t] += f.c[j] * K(j, t);
    rows.push_back(c);
  }
  return rows;
}

SectionCertificate certify_section(const Arrangement& A, const std::vector<Integer>& h) {
  SectionCertificate cert;
  cert.hyperplane = h;
  auto rows = restrict_forms(A, h);
  cert.nonProportional = true;
  for (auto& r : rows)
    if (is_zero(r)) cert.nonProportional = false;
  if (cert.nonProportional)
    for (auto& r : rows) r = normalized(r);
  for (size_t a = 0; a < rows.size() && cert.nonProportional; ++a)
    for (size_t b = a + 1; b < rows.size(); ++b)
      if (rows[a] == rows[b]) cert.nonProportional = false;
  if (!cert.nonProportional) return cert;
  Arrangement S = make_arrangement(A.n - 1, rows);
  cert.essential = is_essential(S);
  if (!cert.essential) return cert;
  cert.multiplicitiesMatch =
      rank2_multiplicities(intersection_lattice(S)) == rank2_multiplicities(intersection_lattice(A));
  return cert;
}

std::pair<Arrangement, SectionCertificate> generic_section(const Arrangement& A, uint64_t seed,
                                                           int maxAttempts) {
  if (A.n != 4) throw Error("Shape", "generic section expects n = 4");
  if (!is_essential(A)) throw Error("NotEssential", "generic section needs an essential arrangement");
  const long B = 10L * A.d() * A.d();
  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= maxAttempts; ++attempt) {
    std::vector<Integer> h(A.n);
    for (auto& x : h) x = static_cast<long>(rng() % static_cast<uint64_t>(2 * B + 1)) - B;
    bool allZero = std::all_of(h.begin(), h.end(), [](const Integer& x) { return x == 0; });
    if (allZero) continue;
    auto cert = certify_section(A, h);
    cert.attempts = attempt;
    if (cert.ok()) {
      auto rows = restrict_forms(A, h);
      return {make_arrangement(A.n - 1, rows), cert};
    }
  }
  throw Error("GenericityFailed", "no certified section in " + std::to_string(maxAttempts) + " attempts");
}

}  // namespace arrspec
