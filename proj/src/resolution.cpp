#include "arrspec/resolution.hpp"

#include <bit>

#include "arrspec/error.hpp"

namespace arrspec {

using modp::Dense;
using modp::Echelon;

namespace {

Echelon as_echelon(Dense R) {
  Echelon E;
  for (int r = 0; r < R.rows; ++r) {
    int c = 0;
    while (R(r, c) == 0) ++c;
    E.pivots.push_back(c);
  }
  E.rank = R.rows;
  E.R = std::move(R);
  E.reduced = true;
  return E;
}

}  // namespace

DegreewiseModule DegreewiseModule::sub(int n, int j, int shift, int lowest, SpanFn span,
                                       const modp::Field& F) {
  return DegreewiseModule(n, j, shift, lowest, std::move(span), false, F);
}

DegreewiseModule DegreewiseModule::quotient(int n, int j, int shift, int lowest, SpanFn rel,
                                            const modp::Field& F) {
  return DegreewiseModule(n, j, shift, lowest, std::move(rel), true, F);
}

const Echelon& DegreewiseModule::span(int k) {
  auto it = span_.find(k);
  if (it != span_.end()) return it->second;
  Dense R = k < lowest_ ? Dense(0, static_cast<int>(form_dim(n_, j_, k + shift_))) : fn_(k);
  return span_.emplace(k, as_echelon(std::move(R))).first->second;
}

long DegreewiseModule::dim(int k) {
  if (k < lowest_) return 0;
  const Echelon& E = span(k);
  return quotient_ ? form_dim(n_, j_, k + shift_) - E.rank : E.rank;
}

const Dense& DegreewiseModule::mul(int i, int k) {
  auto key = std::make_pair(i, k);
  if (auto it = mul_.find(key); it != mul_.end()) return it->second;
  Mono m{};
  m[i] = 1;
  const int q = k + shift_;
  Dense out(static_cast<int>(dim(k)), static_cast<int>(dim(k + 1)));
  if (out.rows && out.cols) {
    const Echelon& E = span(k);
    const Echelon& E1 = span(k + 1);
    if (!quotient_) {
      Dense V = times_monomial(E.R, n_, j_, q, m);
      for (int r = 0; r < V.rows; ++r)
        for (int t = 0; t < E1.rank; ++t) out(r, t) = V(r, E1.pivots[t]);
    } else {
      const long amb = form_dim(n_, j_, q);
      std::vector<char> piv(amb, 0);
      for (int c : E.pivots) piv[c] = 1;
      Dense U(out.rows, static_cast<int>(amb));
      int r = 0;
      for (long c = 0; c < amb; ++c)
        if (!piv[c]) U(r++, static_cast<int>(c)) = 1;
      Dense V = times_monomial(U, n_, j_, q, m);
      if (E1.rank) modp::reduce_rows(V, E1, F_);
      std::vector<char> piv1(V.cols, 0);
      for (int c : E1.pivots) piv1[c] = 1;
      for (int rr = 0; rr < V.rows; ++rr) {
        int t = 0;
        for (int c = 0; c < V.cols; ++c)
          if (!piv1[c]) out(rr, t++) = V(rr, c);
      }
    }
  }
  return mul_.emplace(key, std::move(out)).first->second;
}

namespace {

// d_j : Lambda^j (x) N_{k-j} -> Lambda^{j-1} (x) N_{k-j+1}, one row per source basis vector
long koszul_rank(DegreewiseModule& N, int j, int k) {
  const int n = N.n();
  if (j < 1 || j > n) return 0;
  const long a = N.dim(k - j), b = N.dim(k - j + 1);
  if (a == 0 || b == 0) return 0;
  auto src = subsets(n, j);
  Dense D(static_cast<int>(src.size() * a), static_cast<int>(binom(n, j - 1) * b));
  for (size_t s = 0; s < src.size(); ++s) {
    unsigned S = src[s];
    for (int i = 0; i < n; ++i) {
      if (!(S >> i & 1)) continue;
      bool neg = std::popcount(S & ((1u << i) - 1)) % 2;
      int t = subset_index(n, S & ~(1u << i));
      const Dense& X = N.mul(i, k - j);
      for (long r = 0; r < a; ++r)
        for (long c = 0; c < b; ++c) {
          double v = X(static_cast<int>(r), static_cast<int>(c));
          if (v == 0) continue;
          D(static_cast<int>(s * a + r), static_cast<int>(t * b + c)) = neg ? N.field().pd - v : v;
        }
    }
  }
  return modp::rank(std::move(D), N.field());
}

}  // namespace

long tor_dims(DegreewiseModule& N, int j, int k) {
  const int n = N.n();
  if (j < 0 || j > n) return 0;
  return binom(n, j) * N.dim(k - j) - koszul_rank(N, j, k) - koszul_rank(N, j + 1, k);
}

BettiTable betti_table(DegreewiseModule& N, int cutoff) {
  const int n = N.n();
  BettiTable T;
  T.cutoffUsed = cutoff;
  bool first = true;
  for (int k = N.lowest(); k <= cutoff; ++k) {
    long alt = 0, hs = 0;
    for (int j = 0; j <= n; ++j) {
      long t = tor_dims(N, j, k);
      alt += (j % 2 ? -1 : 1) * t;
      hs += (j % 2 ? -1 : 1) * binom(n, j) * N.dim(k - j);
      if (!t) continue;
      if (k == cutoff) throw Error("CutoffTooSmall", "Tor_" + std::to_string(j) + " nonzero at the cutoff");
      T.entries[{j, k}] = t;
      T.regularity = first ? k - j : std::max(T.regularity, k - j);
      first = false;
    }
    if (alt != hs) T.alternatingSumOk = false;
  }
  return T;
}

BettiTable betti_table_auto(DegreewiseModule& N, int expected) {
  int slack = N.n() + 2;
  for (int attempt = 0;; ++attempt) {
    try {
      BettiTable T = betti_table(N, expected + slack);
      T.retries = attempt;
      return T;
    } catch (const Error& e) {
      if (e.kind() != "CutoffTooSmall" || attempt == 4) throw;
      slack *= 2;
    }
  }
}

DegreewiseModule milnor_module(Koszul& K) {
  Koszul* k = &K;
  return DegreewiseModule::quotient(K.n(), K.n(), 0, K.n(),
                                    [k](int q) { return k->image(k->n(), q).R; }, K.field());
}

DegreewiseModule boundary_module(Koszul& K) {
  Koszul* k = &K;
  return DegreewiseModule::sub(K.n(), K.n(), 0, K.n(),
                               [k](int q) { return k->image(k->n(), q).R; }, K.field());
}

DegreewiseModule cycle_module(Koszul& K) {
  Koszul* k = &K;
  const int d = K.d();
  return DegreewiseModule::sub(K.n(), K.n() - 1, -d, K.n() - 1 + d,
                               [k, d](int q) { return k->cycles(k->n() - 1, q - d).R; }, K.field());
}

DegreewiseModule derlog_module(const Poly& f, const modp::Field& F, bool zeroPart) {
  // Der_k sits in Omega^1_{k+2}: block i of R_{k+1}^n is the dx_i block
  return DegreewiseModule::sub(f.n, 1, 2, -1,
                               [f, F, zeroPart](int k) {
                                 auto S = derlog_slice(f, k, F);
                                 return zeroPart ? S.derLog0Basis : S.derLogBasis;
                               },
                               F);
}

RegDerReport regularity_derlog(const Poly& f, const modp::Field& F) {
  RegDerReport r;
  r.bound = f.deg - f.n;
  auto N = derlog_module(f, F);
  r.table = betti_table_auto(N, r.bound);
  r.reg = r.table.regularity;
  r.verdict = r.reg <= r.bound;
  return r;
}

RegChainReport verify_reg_chain(Koszul& K) {
  RegChainReport r;
  const int d = K.d();
  r.bound = 2 * d - 2;
  auto M = milnor_module(K);
  auto B = boundary_module(K);
  auto Z = cycle_module(K);
  r.tM = betti_table_auto(M, 2 * d - 2);
  r.tB = betti_table_auto(B, 2 * d - 1);
  r.tZ = betti_table_auto(Z, 2 * d);
  r.regM = r.tM.regularity;
  r.regB = r.tB.regularity;
  r.regZ = r.tZ.regularity;
  r.chainOk = r.regM == r.regB - 1 && r.regM == r.regZ - 2;
  r.boundOk = r.regM <= r.bound;
  r.alternatingSumsOk = r.tM.alternatingSumOk && r.tB.alternatingSumOk && r.tZ.alternatingSumOk;
  return r;
}

}  // namespace arrspec
