#include "arrspec/graded.hpp"

#include <bit>

#include "arrspec/error.hpp"

namespace arrspec {

namespace {

Mono add(const Mono& a, const Mono& b) {
  Mono r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = a[i] + b[i];
  return r;
}

// dx_i wedge dx_S = sign * dx_{S+i}; sign is (-1)^{#{s in S : s < i}}
int wedge_sign(int i, unsigned mask) { return (std::popcount(mask & ((1u << i) - 1)) & 1) ? -1 : 1; }

template <class M>
struct Builder {
  M m;
  explicit Builder(long src, long tgt) {
    m.srcDim = static_cast<int>(src);
    m.tgtDim = static_cast<int>(tgt);
    m.start.push_back(0);
  }
  template <class V>
  void push(long t, const V& v) {
    if (v == 0) return;
    m.tgt.push_back(static_cast<int>(t));
    m.val.push_back(v);
  }
  void end_column() { m.start.push_back(static_cast<int>(m.tgt.size())); }
};

}  // namespace

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.n != b.n) throw Error("Shape", "poly_mul variable mismatch");
  Poly r{a.n, a.deg + b.deg, std::vector<Integer>(num_monomials(a.n, a.deg + b.deg))};
  auto ma = monomial_basis(a.n, a.deg), mb = monomial_basis(b.n, b.deg);
  for (size_t x = 0; x < ma.size(); ++x) {
    if (a.c[x] == 0) continue;
    for (size_t y = 0; y < mb.size(); ++y) {
      if (b.c[y] == 0) continue;
      r.c[mono_rank(a.n, add(ma[x], mb[y]), r.deg)] += a.c[x] * b.c[y];
    }
  }
  return r;
}

Poly defining_polynomial(const Arrangement& A) {
  Poly f{A.n, 0, {Integer(1)}};
  for (const auto& l : A.forms) {
    Integer den = lcm_of_denominators(l.c);
    Poly lin{A.n, 1, std::vector<Integer>(A.n)};
    Integer g = 0;
    for (int i = 0; i < A.n; ++i) {
      Rational s = l.c[i] * Rational(den);
      lin.c[i] = s.get_num();
      g = gcd(g, lin.c[i]);
    }
    for (auto& x : lin.c) x /= g;
    f = poly_mul(f, lin);  // basis of degree 1 is x1, x2, ... in order
  }
  return f;
}

std::vector<Poly> gradient(const Poly& f) {
  std::vector<Poly> df;
  auto mons = monomial_basis(f.n, f.deg);
  for (int i = 0; i < f.n; ++i) {
    Poly g{f.n, f.deg - 1, std::vector<Integer>(num_monomials(f.n, f.deg - 1))};
    for (size_t x = 0; x < mons.size(); ++x) {
      if (f.c[x] == 0 || mons[x][i] == 0) continue;
      Mono m = mons[x];
      int e = m[i]--;
      g.c[mono_rank(f.n, m, g.deg)] += f.c[x] * e;
    }
    df.push_back(std::move(g));
  }
  return df;
}

long form_dim(int n, int j, int k) {
  if (j < 0 || j > n || k < j) return 0;
  return binom(n, j) * num_monomials(n, k - j);
}

FormBasis form_basis(int n, int j, int k) {
  FormBasis b;
  b.n = n;
  b.j = j;
  b.k = k;
  if (j < 0 || j > n || k < j) return b;
  b.subsetMasks = subsets(n, j);
  b.monomials = monomial_basis(n, k - j);
  return b;
}

QMatrix SparseMap::to_qmatrix() const {
  QMatrix M(tgtDim, srcDim);
  for (int s = 0; s < srcDim; ++s)
    for (int e = start[s]; e < start[s + 1]; ++e) M(tgt[e], s) += Rational(val[e]);
  return M;
}

double residue(const Integer& v, const modp::Field& F) {
  Integer m = v % Integer(F.p);
  if (m < 0) m += F.p;
  return static_cast<double>(m.get_ui());
}

modp::Dense multiply_by(const Poly& g, int t, const modp::Field& F) {
  const int n = g.n;
  auto src = monomial_basis(n, t), gm = monomial_basis(n, g.deg);
  modp::Dense M(static_cast<int>(src.size()), static_cast<int>(num_monomials(n, t + g.deg)));
  for (size_t r = 0; r < src.size(); ++r)
    for (size_t e = 0; e < gm.size(); ++e) {
      if (g.c[e] == 0) continue;
      Mono m = src[r];
      for (int i = 0; i < n; ++i) m[i] += gm[e][i];
      double& x = M(static_cast<int>(r), static_cast<int>(mono_rank(n, m, t + g.deg)));
      x = F.red(x + residue(g.c[e], F));
    }
  return M;
}

ModMap SparseMap::mod(const modp::Field& F) const {
  ModMap M;
  M.srcDim = srcDim;
  M.tgtDim = tgtDim;
  M.start = start;
  M.tgt = tgt;
  M.val.resize(val.size());
  for (size_t e = 0; e < val.size(); ++e) M.val[e] = residue(val[e], F);
  return M;
}

modp::Dense ModMap::rows() const {
  modp::Dense D(srcDim, tgtDim);
  for (int s = 0; s < srcDim; ++s)
    for (int e = start[s]; e < start[s + 1]; ++e) D(s, tgt[e]) = val[e];
  return D;
}

modp::Dense ModMap::columns() const {
  modp::Dense D(tgtDim, srcDim);
  for (int s = 0; s < srcDim; ++s)
    for (int e = start[s]; e < start[s + 1]; ++e) D(tgt[e], s) = val[e];
  return D;
}

modp::Dense ModMap::apply_rows(const modp::Dense& V, const modp::Field& F) const {
  if (V.cols != srcDim) throw Error("Shape", "apply_rows dimension mismatch");
  modp::Dense out(V.rows, tgtDim);
  for (int r = 0; r < V.rows; ++r) {
    const double* v = V.row(r);
    double* o = out.row(r);
    for (int s = 0; s < srcDim; ++s) {
      if (v[s] == 0) continue;
      for (int e = start[s]; e < start[s + 1]; ++e) o[tgt[e]] = F.red(o[tgt[e]] + v[s] * val[e]);
    }
  }
  return out;
}

namespace {

// coef(i, x, sign) gives the value stored for sign * (coefficient x of df_i)
template <class M, class Coef>
M build_wedge(int n, int d, int j, int k, const std::vector<Poly>& df, Coef coef) {
  FormBasis src = form_basis(n, j, k), tgt = form_basis(n, j + 1, k + d);
  Builder<M> b(src.size(), tgt.size());
  auto dmons = monomial_basis(n, d - 1);
  for (size_t si = 0; si < src.subsetMasks.size(); ++si) {
    unsigned S = src.subsetMasks[si];
    for (const Mono& m : src.monomials) {
      for (int i = 0; i < n; ++i) {
        if (S & (1u << i)) continue;
        int sg = wedge_sign(i, S);
        int ti = subset_index(n, S | (1u << i));
        for (size_t x = 0; x < dmons.size(); ++x) {
          if (df[i].c[x] == 0) continue;
          long row = tgt.index(ti, mono_rank(n, add(m, dmons[x]), k + d - j - 1));
          b.push(row, coef(i, x, sg));
        }
      }
      b.end_column();
    }
  }
  return b.m;
}

}  // namespace

SparseMap wedge_df_map(const Poly& f, const std::vector<Poly>& df, int j, int k) {
  return build_wedge<SparseMap>(f.n, f.deg, j, k, df, [&](int i, size_t x, int sg) {
    return sg > 0 ? df[i].c[x] : Integer(-df[i].c[x]);
  });
}

ModMap wedge_df_mod(const Poly& f, const std::vector<Poly>& df, int j, int k, const modp::Field& F) {
  std::vector<std::vector<double>> res(df.size());
  for (size_t i = 0; i < df.size(); ++i)
    for (const auto& c : df[i].c) res[i].push_back(residue(c, F));
  return build_wedge<ModMap>(f.n, f.deg, j, k, df, [&](int i, size_t x, int sg) {
    double v = res[i][x];
    return (sg > 0 || v == 0) ? v : F.pd - v;
  });
}

modp::Dense times_monomial(const modp::Dense& V, int n, int j, int k, const Mono& m) {
  int e = 0;
  for (int i = 0; i < n; ++i) e += m[i];
  FormBasis src = form_basis(n, j, k), tgt = form_basis(n, j, k + e);
  if (V.cols != src.size()) throw Error("Shape", "times_monomial dimension mismatch");
  std::vector<int> to(src.size());
  for (size_t si = 0; si < src.subsetMasks.size(); ++si)
    for (size_t a = 0; a < src.monomials.size(); ++a)
      to[src.index(static_cast<int>(si), static_cast<long>(a))] =
          static_cast<int>(tgt.index(static_cast<int>(si), mono_rank(n, add(src.monomials[a], m), k + e - j)));
  modp::Dense out(V.rows, static_cast<int>(tgt.size()));
  for (int r = 0; r < V.rows; ++r) {
    const double* v = V.row(r);
    double* o = out.row(r);
    for (int c = 0; c < V.cols; ++c) o[to[c]] = v[c];
  }
  return out;
}

SparseMap exterior_d_map(int n, int j, int k) {
  FormBasis src = form_basis(n, j, k), tgt = form_basis(n, j + 1, k);
  Builder<SparseMap> b(src.size(), tgt.size());
  for (size_t si = 0; si < src.subsetMasks.size(); ++si) {
    unsigned S = src.subsetMasks[si];
    for (const Mono& m : src.monomials) {
      for (int i = 0; i < n; ++i) {
        if ((S & (1u << i)) || m[i] == 0) continue;
        Mono mm = m;
        mm[i] -= 1;
        long row = tgt.index(subset_index(n, S | (1u << i)), mono_rank(n, mm, k - j - 1));
        b.push(row, Integer(wedge_sign(i, S) * m[i]));
      }
      b.end_column();
    }
  }
  return b.m;
}

SparseMap multiplication_map(int n, int j, int i, int k) {
  FormBasis src = form_basis(n, j, k), tgt = form_basis(n, j, k + 1);
  Builder<SparseMap> b(src.size(), tgt.size());
  for (size_t si = 0; si < src.subsetMasks.size(); ++si)
    for (const Mono& m : src.monomials) {
      Mono mm = m;
      mm[i] += 1;
      b.push(tgt.index(static_cast<int>(si), mono_rank(n, mm, k + 1 - j)), Integer(1));
      b.end_column();
    }
  return b.m;
}

GradedMap wedge_df_matrix(const Arrangement& A, int j, int k) {
  Poly f = defining_polynomial(A);
  auto df = gradient(f);
  return {form_basis(A.n, j, k), form_basis(A.n, j + 1, k + f.deg),
          wedge_df_map(f, df, j, k).to_qmatrix()};
}

GradedMap exterior_d_matrix(int n, int j, int k) {
  return {form_basis(n, j, k), form_basis(n, j + 1, k), exterior_d_map(n, j, k).to_qmatrix()};
}

}  // namespace arrspec
