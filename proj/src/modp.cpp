#include "arrspec/modp.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <utility>

namespace arrspec::modp {

namespace {

constexpr int kPanel = 128;  // bounds the inner dimension of every exact BLAS update
constexpr int kSub = 16;

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Strided = Eigen::Map<RowMat, 0, Eigen::OuterStride<>>;
using CStrided = Eigen::Map<const RowMat, 0, Eigen::OuterStride<>>;

// C += alpha * A * B on row-major strided blocks; exact while every partial sum
// is an integer below 2^53.
void gemm(int m, int n, int k, double alpha, const double* A, int lda, const double* B, int ldb,
          double* C, int ldc) {
  if (m == 0 || n == 0 || k == 0) return;
  Strided c(C, m, n, Eigen::OuterStride<>(ldc));
  CStrided a(A, m, k, Eigen::OuterStride<>(lda));
  CStrided b(B, k, n, Eigen::OuterStride<>(ldb));
  if (alpha == 1.0) c.noalias() += a * b;
  else if (alpha == -1.0) c.noalias() -= a * b;
  else c.noalias() += alpha * (a * b);
}

void reduce_block(double* base, int rows, int cols, int ld, const Field& F) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < rows; ++i) {
    double* x = base + static_cast<size_t>(i) * ld;
    for (int j = 0; j < cols; ++j) x[j] = F.red(x[j]);
  }
}

struct Elim {
  Dense& A;
  const Field& F;
  int m, n;
  int r = 0;
  std::vector<int> piv;
  std::vector<double> invs;

  Elim(Dense& a, const Field& f) : A(a), F(f), m(a.rows), n(a.cols) {}

  void swap_rows(int i, int j) { std::swap_ranges(A.row(i), A.row(i) + n, A.row(j)); }

  void unblocked(int c0, int c1) {
    for (int c = c0; c < c1 && r < m; ++c) {
      int pr = -1;
      for (int i = r; i < m; ++i)
        if (A(i, c) != 0) { pr = i; break; }
      if (pr < 0) continue;
      if (pr != r) swap_rows(pr, r);
      const double inv = F.inv(static_cast<uint32_t>(A(r, c)));
      double* prow = A.row(r);
      prow[c] = 1.0;
      for (int t = c + 1; t < c1; ++t) prow[t] = F.mul(prow[t], inv);
#pragma omp parallel for schedule(static) if (m - r > 512)
      for (int i = r + 1; i < m; ++i) {
        double* ri = A.row(i);
        const double f = ri[c];
        if (f == 0) continue;
        for (int t = c + 1; t < c1; ++t) ri[t] = F.red(ri[t] - f * prow[t]);
      }
      piv.push_back(c);
      invs.push_back(inv);
      ++r;
    }
  }

  // Replays the row operations of pivots g0..g1-1 on columns [cf, ct).
  void update(int g0, int g1, int cf, int ct) {
    const int k = g1 - g0, w = ct - cf;
    if (k == 0 || w <= 0) return;
    for (int t = g0; t < g1; ++t) {
      double* rt = A.row(t) + cf;
      for (int s = g0; s < t; ++s) {
        const double l = A(t, piv[s]);
        if (l == 0) continue;
        const double* rs = A.row(s) + cf;
        for (int j = 0; j < w; ++j) rt[j] -= l * rs[j];
      }
      const double inv = invs[t];
      for (int j = 0; j < w; ++j) rt[j] = F.mul(F.red(rt[j]), inv);
    }
    const int below = m - g1;
    if (below <= 0) return;
    std::vector<double> L(static_cast<size_t>(below) * k);
    bool any = false;
    for (int i = 0; i < below; ++i)
      for (int s = 0; s < k; ++s) {
        double v = A(g1 + i, piv[g0 + s]);
        L[static_cast<size_t>(i) * k + s] = v;
        any |= v != 0;
      }
    if (!any) return;
    gemm(below, w, k, -1.0, L.data(), k, A.row(g0) + cf, n, A.row(g1) + cf, n);
    reduce_block(A.row(g1) + cf, below, w, n, F);
  }

  void run() {
    for (int c0 = 0; c0 < n && r < m; c0 += kPanel) {
      const int c1 = std::min(n, c0 + kPanel);
      const int g0 = r;
      for (int s0 = c0; s0 < c1 && r < m; s0 += kSub) {
        const int s1 = std::min(c1, s0 + kSub);
        const int h0 = r;
        unblocked(s0, s1);
        update(h0, r, s1, c1);
      }
      update(g0, r, c1, n);
    }
    for (int t = 0; t < r; ++t) std::fill(A.row(t), A.row(t) + piv[t], 0.0);
  }

  void back_substitute() {
    for (int b1 = r; b1 > 0;) {
      const int b0 = std::max(0, b1 - kPanel);
      for (int t = b1 - 1; t >= b0; --t) {
        const double* rt = A.row(t);
        for (int s = b0; s < t; ++s) {
          double* rs = A.row(s);
          const double f = rs[piv[t]];
          if (f == 0) continue;
          for (int j = piv[t]; j < n; ++j) rs[j] = F.red(rs[j] - f * rt[j]);
        }
      }
      if (b0 > 0) {
        const int k = b1 - b0, pc0 = piv[b0];
        std::vector<double> G(static_cast<size_t>(b0) * k);
        for (int s = 0; s < b0; ++s)
          for (int t = 0; t < k; ++t) G[static_cast<size_t>(s) * k + t] = A(s, piv[b0 + t]);
        gemm(b0, n - pc0, k, -1.0, G.data(), k, A.row(b0) + pc0, n, A.row(0) + pc0, n);
        reduce_block(A.row(0) + pc0, b0, n - pc0, n, F);
      }
      b1 = b0;
    }
  }
};

}  // namespace

uint32_t Field::inv(uint32_t a) const {
  int64_t t = 0, nt = 1, rr = p, nr = a % p;
  while (nr != 0) {
    int64_t q = rr / nr;
    t -= q * nt;
    std::swap(t, nt);
    rr -= q * nr;
    std::swap(rr, nr);
  }
  if (t < 0) t += p;
  return static_cast<uint32_t>(t);
}

Dense Dense::transpose() const {
  Dense t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Echelon echelon(Dense A, const Field& F, bool reduce) {
  Elim e(A, F);
  e.run();
  if (reduce) e.back_substitute();
  Echelon out;
  out.rank = e.r;
  out.pivots = std::move(e.piv);
  out.reduced = reduce;
  A.a.resize(static_cast<size_t>(e.r) * A.cols);
  A.rows = e.r;
  out.R = std::move(A);
  return out;
}

Echelon echelon_reference(Dense A, const Field& F, bool reduce) {
  const int m = A.rows, n = A.cols;
  const uint64_t p = F.p;
  std::vector<std::vector<uint64_t>> M(m, std::vector<uint64_t>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) M[i][j] = static_cast<uint64_t>(A(i, j));
  Echelon out;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int pr = -1;
    for (int i = r; i < m; ++i)
      if (M[i][c]) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(M[pr], M[r]);
    const uint64_t inv = F.inv(static_cast<uint32_t>(M[r][c]));
    for (int j = c; j < n; ++j) M[r][j] = M[r][j] * inv % p;
    for (int i = reduce ? 0 : r + 1; i < m; ++i) {
      if (i == r || M[i][c] == 0) continue;
      const uint64_t f = p - M[i][c];
      for (int j = c; j < n; ++j) M[i][j] = (M[i][j] + f * M[r][j]) % p;
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = reduce;
  out.R = Dense(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) out.R(i, j) = static_cast<double>(M[i][j]);
  return out;
}

int rank(Dense A, const Field& F) { return echelon(std::move(A), F, false).rank; }

Dense kernel_from(const Echelon& E, int cols, const Field& F) {
  std::vector<char> isPiv(cols, 0);
  for (int c : E.pivots) isPiv[c] = 1;
  Dense K(cols - E.rank, cols);
  int row = 0;
  for (int f = 0; f < cols; ++f) {
    if (isPiv[f]) continue;
    K(row, f) = 1;
    for (int t = 0; t < E.rank; ++t) {
      const double v = E.R(t, f);
      K(row, E.pivots[t]) = v == 0 ? 0.0 : F.pd - v;
    }
    ++row;
  }
  return K;
}

Dense kernel(const Dense& A, const Field& F) {
  return kernel_from(echelon(A, F, true), A.cols, F);
}

void gemm_acc(Dense& C, const Dense& A, const Dense& B, double s, const Field& F) {
  const int m = A.rows, k = A.cols, n = B.cols;
  if (m == 0 || n == 0 || k == 0) return;
  for (int k0 = 0; k0 < k; k0 += kPanel) {
    const int kk = std::min(kPanel, k - k0);
    gemm(m, n, kk, s, A.a.data() + k0, k, B.row(k0), n, C.a.data(), n);
    reduce_block(C.a.data(), m, n, n, F);
  }
}

void reduce_rows(Dense& V, const Echelon& E, const Field& F) {
  const int r = E.rank;
  if (r == 0 || V.rows == 0) return;
  Dense P(V.rows, r);
  for (int i = 0; i < V.rows; ++i)
    for (int t = 0; t < r; ++t) P(i, t) = V(i, E.pivots[t]);
  gemm_acc(V, P, E.R, -1.0, F);
}

}  // namespace arrspec::modp
