#pragma once
#include <vector>

#include "arrspec/koszul.hpp"

namespace arrspec {

// Logarithmic derivations of degree k (coefficients in R_{k+1}, deg d/dx_i = -1).
// Vectors are stored blockwise: block i holds the coefficient of d/dx_i in the
// monomial basis of R_{k+1}.
struct DerLogSlice {
  int k = 0;
  modp::Dense derLogBasis;   // reduced echelon rows: theta(f) in (f)
  modp::Dense derLog0Basis;  // reduced echelon rows: theta(f) = 0
  long theta0Component = 0;  // dim of R_k * Euler inside derLog, beyond derLog0
  long dim_derlog() const { return derLogBasis.rows; }
  long dim_derlog0() const { return derLog0Basis.rows; }
};

DerLogSlice derlog_slice(const Poly& f, int k, const modp::Field& F);
DerLogSlice derlog_slice(const Arrangement& A, int k, const modp::Field& F);

// dim derLog0_k == dim (A_f^{n-1})_{k+n}
bool check_derlog0_iso(Koszul& K, int k);

// mu_q for 0 <= q <= kmax
std::vector<long> milnor_hilbert_series(Koszul& K, int kmax);

// Coordinates of the rows of V in a reduced echelon basis B (values at B's pivots).
modp::Dense coordinates_in_basis(const modp::Dense& V, const modp::Dense& B);

}  // namespace arrspec
