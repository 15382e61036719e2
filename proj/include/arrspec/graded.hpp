#pragma once
#include <vector>

#include "arrspec/arrangement.hpp"
#include "arrspec/linalg.hpp"
#include "arrspec/modp.hpp"
#include "arrspec/monomial.hpp"

namespace arrspec {

// Homogeneous polynomial, dense over monomial_basis(n, deg).
struct Poly {
  int n = 0, deg = 0;
  std::vector<Integer> c;
};

Poly poly_mul(const Poly& a, const Poly& b);
// Product of the forms, each scaled to coprime integer coefficients.
Poly defining_polynomial(const Arrangement& A);
std::vector<Poly> gradient(const Poly& f);
double residue(const Integer& v, const modp::Field& F);
// Rows: x^m * g for the degree-t monomials m, in the degree t + deg g basis.
modp::Dense multiply_by(const Poly& g, int t, const modp::Field& F);

long form_dim(int n, int j, int k);  // dim Omega^j_k = C(n,j) C(k-j+n-1, n-1)

// Basis of Omega^j_k: subset-major (lex), then monomials of degree k-j in lex order.
struct FormBasis {
  int n = 0, j = 0, k = 0;
  std::vector<unsigned> subsetMasks;
  std::vector<Mono> monomials;
  long size() const { return static_cast<long>(subsetMasks.size() * monomials.size()); }
  long index(int subsetIdx, long monoRank) const {
    return subsetIdx * static_cast<long>(monomials.size()) + monoRank;
  }
};
FormBasis form_basis(int n, int j, int k);

// Sparse linear map stored by source column: entries of column s are
// tgt[start[s] .. start[s+1]) with values val.
template <class T>
struct SparseMapT {
  int srcDim = 0, tgtDim = 0;
  std::vector<int> start, tgt;
  std::vector<T> val;
  long nnz() const { return static_cast<long>(tgt.size()); }
};

// Residues mod p.
struct ModMap : SparseMapT<double> {
  modp::Dense rows() const;     // srcDim x tgtDim: images of the source basis
  modp::Dense columns() const;  // tgtDim x srcDim
  // Applies the map to each row of V (a vector in the source space).
  modp::Dense apply_rows(const modp::Dense& V, const modp::Field& F) const;
};

struct SparseMap : SparseMapT<Integer> {
  QMatrix to_qmatrix() const;  // tgtDim x srcDim
  ModMap mod(const modp::Field& F) const;
};

// df wedge: Omega^j_k -> Omega^{j+1}_{k+d}
SparseMap wedge_df_map(const Poly& f, const std::vector<Poly>& df, int j, int k);
ModMap wedge_df_mod(const Poly& f, const std::vector<Poly>& df, int j, int k, const modp::Field& F);
// exterior derivative: Omega^j_k -> Omega^{j+1}_k
SparseMap exterior_d_map(int n, int j, int k);
// multiplication by x_i: Omega^j_k -> Omega^j_{k+1}
SparseMap multiplication_map(int n, int j, int i, int k);
// x^m times each row of V, rows being forms in Omega^j_k
modp::Dense times_monomial(const modp::Dense& V, int n, int j, int k, const Mono& m);

struct GradedMap {
  FormBasis source, target;
  QMatrix matrix;  // target x source
};
GradedMap wedge_df_matrix(const Arrangement& A, int j, int k);
GradedMap exterior_d_matrix(int n, int j, int k);

}  // namespace arrspec
