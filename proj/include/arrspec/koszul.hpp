#pragma once
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "arrspec/arrangement.hpp"
#include "arrspec/graded.hpp"
#include "arrspec/modp.hpp"

namespace arrspec {

// Solves x M = b for row vectors x, via the reduced echelon form of [M | I].
class LeftSolver {
 public:
  LeftSolver(const modp::Dense& M, const modp::Field& F);
  // One solution row per row of B; false if some row of B is not in the row space of M.
  bool solve(const modp::Dense& B, modp::Dense* X) const;
  modp::Dense kernel() const;  // rows x with x M = 0
  int unknowns() const { return m_; }

 private:
  int m_, n_;
  modp::Field F_;
  modp::Echelon E_;
};

// The complex (Omega^., df^) and the exterior derivative of one arrangement,
// computed modulo one prime and cached. Everything is indexed by the form
// degree q (deg x_i = deg dx_i = 1).
class Koszul {
 public:
  Koszul(const Arrangement& A, uint32_t prime);

  int n() const { return A_.n; }
  int d() const { return A_.d(); }
  const Arrangement& arrangement() const { return A_; }
  const modp::Field& field() const { return F_; }
  const Poly& f() const { return f_; }
  const std::vector<Poly>& df() const { return df_; }

  long dim(int j, int q) const { return form_dim(n(), j, q); }
  const ModMap& wedge(int j, int q);  // Omega^j_q -> Omega^{j+1}_{q+d}
  const ModMap& dmap(int j, int q);   // Omega^j_q -> Omega^{j+1}_q

  long rank(int j, int q);  // rank of df^ on Omega^j_q
  long h(int j, int q);     // dim H^j(Omega, df^) in form degree q
  long mu(int q) { return h(n(), q); }

  // Reduced echelon basis of B^j_q = df^ Omega^{j-1}_{q-d} inside Omega^j_q.
  const modp::Echelon& image(int j, int q);
  // Rows spanning Z^j_q = ker(df^) on Omega^j_q, in reduced echelon form.
  const modp::Echelon& cycles(int j, int q);
  // Elements of Z^j_q spanning it modulo x_1 Z_{q-1} + ... + x_n Z_{q-1}.
  const modp::Dense& new_generators(int j, int q);

  // Solves df^ eta = v for every row v of V (v in Omega^{j+1}_{q+d}).
  // Returns false if some row is outside the image.
  bool preimage(int j, int q, const modp::Dense& V, modp::Dense* eta);

  // Frees cached echelons whose ambient dimension exceeds maxDim.
  void trim(long maxDim);
  void release_image(int j, int q) { image_.erase({j, q}); }

 private:
  Arrangement A_;
  modp::Field F_;
  Poly f_;
  std::vector<Poly> df_;
  using Key = std::pair<int, int>;
  std::map<Key, std::unique_ptr<ModMap>> wedge_, d_;
  std::map<Key, long> rank_;
  std::map<Key, modp::Echelon> image_, cycles_;
  std::map<Key, modp::Dense> gens_;
  std::map<Key, std::unique_ptr<LeftSolver>> preimageSystem_;
};

// Rank of the rows of V modulo the row space of a reduced echelon E.
int rank_modulo(modp::Dense V, const modp::Echelon& E, const modp::Field& F);
// Coordinates of the rows of V in the basis E.R (V must lie in the row space).
modp::Dense coordinates(const modp::Dense& V, const modp::Echelon& E);
modp::Dense vstack(const modp::Dense& a, const modp::Dense& b);

}  // namespace arrspec
