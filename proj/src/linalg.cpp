#include "arrspec/linalg.hpp"

#include "arrspec/error.hpp"

namespace arrspec {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows = static_cast<int>(init.size());
  cols = rows ? static_cast<int>(init.begin()->size()) : 0;
  a.reserve(static_cast<size_t>(rows) * cols);
  for (const auto& r : init) {
    if (static_cast<int>(r.size()) != cols) throw Error("Shape", "ragged initializer");
    for (long v : r) a.emplace_back(v);
  }
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols != o.rows) throw Error("Shape", "product dimension mismatch");
  QMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Rational& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j)
        if (o(k, j) != 0) r(i, j) += x * o(k, j);
    }
  return r;
}

QMatrix QMatrix::hcat(const QMatrix& o) const {
  if (cols == 0 && rows == 0) return o;
  if (o.cols == 0 && o.rows == 0) return *this;
  if (rows != o.rows) throw Error("Shape", "hcat row mismatch");
  QMatrix r(rows, cols + o.cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) r(i, j) = (*this)(i, j);
    for (int j = 0; j < o.cols; ++j) r(i, cols + j) = o(i, j);
  }
  return r;
}

QMatrix QMatrix::column(int j) const { return columns({j}); }

QMatrix QMatrix::columns(const std::vector<int>& idx) const {
  QMatrix r(rows, static_cast<int>(idx.size()));
  for (int i = 0; i < rows; ++i)
    for (size_t j = 0; j < idx.size(); ++j) r(i, static_cast<int>(j)) = (*this)(i, idx[j]);
  return r;
}

bool QMatrix::is_zero() const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

BareissEchelon bareiss(const QMatrix& M) {
  std::vector<std::vector<Integer>> m(M.rows, std::vector<Integer>(M.cols));
  for (int i = 0; i < M.rows; ++i) {
    Integer l = 1;
    for (int j = 0; j < M.cols; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), M(i, j).get_den_mpz_t());
    for (int j = 0; j < M.cols; ++j) {
      Rational s = M(i, j) * l;
      m[i][j] = s.get_num();
    }
  }
  BareissEchelon e;
  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int p = -1;
    for (int i = r; i < M.rows; ++i)
      if (m[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    for (int i = r + 1; i < M.rows; ++i) {
      for (int j = c + 1; j < M.cols; ++j) {
        Integer t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  e.rank = r;
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

int rank(const QMatrix& M) { return bareiss(M).rank; }

QMatrix rref(const QMatrix& M) {
  BareissEchelon e = bareiss(M);
  QMatrix R(e.rank, M.cols);
  for (int t = 0; t < e.rank; ++t)
    for (int j = 0; j < M.cols; ++j) R(t, j) = Rational(e.rows[t][j]);
  for (int t = e.rank - 1; t >= 0; --t) {
    int pc = e.pivots[t];
    Rational inv = 1 / R(t, pc);
    for (int j = pc; j < M.cols; ++j) R(t, j) *= inv;
    for (int u = 0; u < t; ++u) {
      if (R(u, pc) == 0) continue;
      Rational f = R(u, pc);
      for (int j = pc; j < M.cols; ++j) R(u, j) -= f * R(t, j);
    }
  }
  return R;
}

QMatrix kernel_basis(const QMatrix& M) {
  BareissEchelon e = bareiss(M);
  std::vector<char> isPiv(M.cols, 0);
  for (int c : e.pivots) isPiv[c] = 1;
  QMatrix K(M.cols, M.cols - e.rank);
  int col = 0;
  for (int f = 0; f < M.cols; ++f) {
    if (isPiv[f]) continue;
    std::vector<Rational> x(M.cols);
    x[f] = 1;
    for (int t = e.rank - 1; t >= 0; --t) {
      int pc = e.pivots[t];
      Rational s = 0;
      for (int j = pc + 1; j < M.cols; ++j)
        if (e.rows[t][j] != 0 && x[j] != 0) s += Rational(e.rows[t][j]) * x[j];
      x[pc] = -s / Rational(e.rows[t][pc]);
    }
    for (int i = 0; i < M.cols; ++i) K(i, col) = x[i];
    ++col;
  }
  return K;
}

std::vector<int> independent_columns(const QMatrix& M) {
  // pivot columns of the echelon form are the greedy left-to-right choice
  return bareiss(M).pivots;
}

bool solve(const QMatrix& A, const QMatrix& b, QMatrix* x) {
  if (A.rows != b.rows) throw Error("Shape", "solve row mismatch");
  QMatrix aug = A.hcat(b);
  if (A.cols == 0) aug = b;
  // Gauss-Jordan over Q on [A | b]
  int r = 0;
  std::vector<int> piv;
  const int n = A.cols;
  for (int c = 0; c < n && r < aug.rows; ++c) {
    int p = -1;
    for (int i = r; i < aug.rows; ++i)
      if (aug(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < aug.cols; ++j) std::swap(aug(p, j), aug(r, j));
    Rational inv = 1 / aug(r, c);
    for (int j = c; j < aug.cols; ++j) aug(r, j) *= inv;
    for (int i = 0; i < aug.rows; ++i) {
      if (i == r || aug(i, c) == 0) continue;
      Rational f = aug(i, c);
      for (int j = c; j < aug.cols; ++j)
        if (aug(r, j) != 0) aug(i, j) -= f * aug(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  for (int i = r; i < aug.rows; ++i)
    for (int j = n; j < aug.cols; ++j)
      if (aug(i, j) != 0) return false;
  if (x) {
    *x = QMatrix(n, b.cols);
    for (int t = 0; t < r; ++t)
      for (int j = 0; j < b.cols; ++j) (*x)(piv[t], j) = aug(t, n + j);
  }
  return true;
}

int Subquotient::dim() const { return subquotient_dim(cycles, boundaries); }

int subquotient_dim(const QMatrix& Z, const QMatrix& B) {
  if (B.cols > 0 && !solve(Z, B, nullptr))
    throw Error("NotContained", "boundary space is not inside the cycle space");
  return rank(Z) - (B.cols ? rank(B) : 0);
}

QMatrix representatives(const Subquotient& s) {
  QMatrix both = s.boundaries.hcat(s.cycles);
  if (s.boundaries.cols == 0) both = s.cycles;
  std::vector<int> ind = independent_columns(both);
  std::vector<int> reps;
  for (int c : ind)
    if (c >= s.boundaries.cols) reps.push_back(c - s.boundaries.cols);
  QMatrix r = s.cycles.columns(reps);
  r.rows = s.ambientDim;
  return r;
}

QMatrix induced_map(const Subquotient& source, const Subquotient& target,
                    const QMatrix& ambientMap) {
  QMatrix sr = representatives(source);
  QMatrix tr = representatives(target);
  QMatrix tb(target.ambientDim, 0);
  {
    std::vector<int> bi = target.boundaries.cols ? independent_columns(target.boundaries)
                                                 : std::vector<int>{};
    tb = target.boundaries.columns(bi);
    tb.rows = target.ambientDim;
  }
  QMatrix sys = tr.hcat(tb);
  if (tr.cols == 0) sys = tb;
  if (source.boundaries.cols > 0) {
    QMatrix img = ambientMap * source.boundaries;
    if (!img.is_zero() && (tb.cols == 0 || !solve(tb, img, nullptr)))
      throw Error("NotWellDefined", "a boundary maps outside the target boundaries");
  }
  QMatrix out(tr.cols, sr.cols);
  if (sr.cols == 0) return out;
  QMatrix img = ambientMap * sr;
  if (sys.cols == 0) {
    if (!img.is_zero()) throw Error("NotWellDefined", "target is zero but image is not");
    return out;
  }
  QMatrix x;
  if (!solve(sys, img, &x))
    throw Error("NotWellDefined", "a cycle maps outside target cycles plus boundaries");
  for (int i = 0; i < tr.cols; ++i)
    for (int j = 0; j < sr.cols; ++j) out(i, j) = x(i, j);
  return out;
}

}  // namespace arrspec
