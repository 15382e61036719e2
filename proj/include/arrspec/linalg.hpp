#pragma once
#include <initializer_list>
#include <vector>

#include "arrspec/rational.hpp"

namespace arrspec {

// Dense exact matrix, row-major.
struct QMatrix {
  int rows = 0, cols = 0;
  std::vector<Rational> a;

  QMatrix() = default;
  QMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  QMatrix(std::initializer_list<std::initializer_list<long>> init);

  Rational& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rational& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static QMatrix identity(int n);
  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& o) const;
  QMatrix hcat(const QMatrix& o) const;  // rows must agree (empty matrices allowed)
  QMatrix column(int j) const;
  QMatrix columns(const std::vector<int>& idx) const;
  bool is_zero() const;
  bool operator==(const QMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Fraction-free row echelon form: rows scaled to integers, then Bareiss.
struct BareissEchelon {
  int rank = 0;
  std::vector<int> pivots;                 // pivot column of each echelon row
  std::vector<std::vector<Integer>> rows;  // the first `rank` echelon rows
};
BareissEchelon bareiss(const QMatrix& M);

int rank(const QMatrix& M);
// Nonzero rows of the reduced row echelon form (canonical basis of the row space).
QMatrix rref(const QMatrix& M);
QMatrix kernel_basis(const QMatrix& M);  // columns span ker M
// Indices of a maximal independent subset of columns (greedy, left to right).
std::vector<int> independent_columns(const QMatrix& M);
// Solves A x = b for every column of b; false if some column is inconsistent.
bool solve(const QMatrix& A, const QMatrix& b, QMatrix* x);

struct Subquotient {
  int ambientDim = 0;
  QMatrix cycles;      // ambientDim x *, columns span Z
  QMatrix boundaries;  // ambientDim x *, columns span B (B inside Z)
  int dim() const;
};

int subquotient_dim(const QMatrix& Z, const QMatrix& B);  // throws NotContained
// Matrix of the map induced by ambientMap, in the bases of representatives
// chosen by representatives(); throws NotWellDefined.
QMatrix induced_map(const Subquotient& source, const Subquotient& target,
                    const QMatrix& ambientMap);
// Columns of Z completing an independent subset of B to a basis of Z.
QMatrix representatives(const Subquotient& s);

}  // namespace arrspec
