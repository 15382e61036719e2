#include "arrspec/derlog.hpp"

namespace arrspec {

using modp::Dense;

namespace {

Dense rref(Dense V, const modp::Field& F) {
  if (V.rows == 0) return V;
  auto E = modp::echelon(std::move(V), F, true);
  E.R.rows = E.rank;
  E.R.a.resize(static_cast<size_t>(E.rank) * E.R.cols);
  return std::move(E.R);
}

std::vector<int> pivots_of(const Dense& B) {
  std::vector<int> piv;
  for (int r = 0; r < B.rows; ++r) {
    int c = 0;
    while (B(r, c) == 0) ++c;
    piv.push_back(c);
  }
  return piv;
}

}  // namespace

Dense coordinates_in_basis(const Dense& V, const Dense& B) {
  auto piv = pivots_of(B);
  Dense C(V.rows, B.rows);
  for (int i = 0; i < V.rows; ++i)
    for (int t = 0; t < B.rows; ++t) C(i, t) = V(i, piv[t]);
  return C;
}

DerLogSlice derlog_slice(const Poly& f, int k, const modp::Field& F) {
  const int n = f.n;
  DerLogSlice S;
  S.k = k;
  const long N1 = num_monomials(n, k + 1), N0 = num_monomials(n, k);
  const int cols = static_cast<int>(num_monomials(n, k + f.deg));
  if (N1 == 0) {
    S.derLogBasis = S.derLog0Basis = Dense(0, 0);
    return S;
  }
  auto df = gradient(f);
  // rows: x^m d_i f for each block i, then -x^m f
  Dense M(static_cast<int>(n * N1 + N0), cols);
  for (int i = 0; i < n; ++i) {
    Dense B = multiply_by(df[i], k + 1, F);
    std::copy(B.a.begin(), B.a.end(), M.a.begin() + static_cast<size_t>(i) * N1 * cols);
  }
  if (N0) {
    Dense B = multiply_by(f, k, F);
    for (auto& v : B.a) v = v == 0 ? 0 : F.pd - v;
    std::copy(B.a.begin(), B.a.end(), M.a.begin() + static_cast<size_t>(n) * N1 * cols);
  }
  const int gdim = static_cast<int>(n * N1);
  Dense ker = modp::kernel(M.transpose(), F);
  Dense g(ker.rows, gdim);
  for (int r = 0; r < ker.rows; ++r) std::copy(ker.row(r), ker.row(r) + gdim, g.row(r));
  S.derLogBasis = rref(std::move(g), F);

  Dense G(gdim, cols);
  std::copy(M.a.begin(), M.a.begin() + static_cast<size_t>(gdim) * cols, G.a.begin());
  S.derLog0Basis = rref(modp::kernel(G.transpose(), F), F);
  if (S.derLog0Basis.rows == 0) S.derLog0Basis = Dense(0, gdim);

  // Euler derivations x^m sum x_i d/dx_i
  if (N0) {
    auto mons = monomial_basis(n, k);
    Dense E(static_cast<int>(N0), gdim);
    for (size_t r = 0; r < mons.size(); ++r)
      for (int i = 0; i < n; ++i) {
        Mono m = mons[r];
        ++m[i];
        E(static_cast<int>(r), static_cast<int>(i * N1 + mono_rank(n, m, k + 1))) = 1;
      }
    Dense both(S.derLog0Basis.rows + E.rows, gdim);
    std::copy(S.derLog0Basis.a.begin(), S.derLog0Basis.a.end(), both.a.begin());
    std::copy(E.a.begin(), E.a.end(), both.a.begin() + S.derLog0Basis.a.size());
    S.theta0Component = modp::rank(std::move(both), F) - S.derLog0Basis.rows;
  }
  return S;
}

DerLogSlice derlog_slice(const Arrangement& A, int k, const modp::Field& F) {
  return derlog_slice(defining_polynomial(A), k, F);
}

bool check_derlog0_iso(Koszul& K, int k) {
  const int n = K.n();
  long z = K.dim(n - 1, k + n) - K.rank(n - 1, k + n);
  return derlog_slice(K.f(), k, K.field()).dim_derlog0() == z;
}

std::vector<long> milnor_hilbert_series(Koszul& K, int kmax) {
  std::vector<long> mu;
  for (int q = 0; q <= kmax; ++q) mu.push_back(K.mu(q));
  return mu;
}

}  // namespace arrspec
