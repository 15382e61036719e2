#pragma once
#include <functional>
#include <map>
#include <utility>

#include "arrspec/derlog.hpp"

namespace arrspec {

// A graded R-module given degree by degree: a basis of each piece and the
// action of the variables. Pieces are either subspaces of Omega^j_{k+shift}
// (basis = reduced echelon rows) or quotients of it (by a reduced echelon
// relation space, basis = non-pivot coordinates).
class DegreewiseModule {
 public:
  using SpanFn = std::function<modp::Dense(int k)>;
  static DegreewiseModule sub(int n, int j, int shift, int lowest, SpanFn span, const modp::Field& F);
  static DegreewiseModule quotient(int n, int j, int shift, int lowest, SpanFn relations,
                                   const modp::Field& F);

  int n() const { return n_; }
  int lowest() const { return lowest_; }
  const modp::Field& field() const { return F_; }
  long dim(int k);
  // dim(k) x dim(k+1): row b is x_i times basis vector b
  const modp::Dense& mul(int i, int k);

 private:
  DegreewiseModule(int n, int j, int shift, int lowest, SpanFn fn, bool quotient, const modp::Field& F)
      : n_(n), j_(j), shift_(shift), lowest_(lowest), fn_(std::move(fn)), quotient_(quotient), F_(F) {}
  const modp::Echelon& span(int k);
  int n_, j_, shift_, lowest_;
  SpanFn fn_;
  bool quotient_;
  modp::Field F_;
  std::map<int, modp::Echelon> span_;
  std::map<std::pair<int, int>, modp::Dense> mul_;
};

// dim Tor_j(C, N)_k from the Koszul complex Lambda^j(C^n) (x) N_{k-j}.
long tor_dims(DegreewiseModule& N, int j, int k);

struct BettiTable {
  std::map<std::pair<int, int>, long> entries;  // (j, k) -> c_{j,k}, nonzero only
  int cutoffUsed = 0;
  int regularity = 0;
  bool alternatingSumOk = true;  // sum_j (-1)^j Tor_j = coefficient of HS(N)(1-t)^n
  int retries = 0;
};

// Throws CutoffTooSmall if some Tor_j is nonzero in degree cutoff.
BettiTable betti_table(DegreewiseModule& N, int cutoff);
// cutoff = expected + n + 2, slack doubled on CutoffTooSmall, at most 4 retries
BettiTable betti_table_auto(DegreewiseModule& N, int expected);

// M = Omega^n / df^Omega^{n-1}, graded by form degree
DegreewiseModule milnor_module(Koszul& K);
// df^Omega^{n-1} inside Omega^n
DegreewiseModule boundary_module(Koszul& K);
// A_f^{n-1}(-d): the element of Z^{n-1} at form degree q sits in degree q + d
DegreewiseModule cycle_module(Koszul& K);
// Der(-log D) (or Der^0) in degrees k >= -1, deg d/dx_i = -1
DegreewiseModule derlog_module(const Poly& f, const modp::Field& F, bool zeroPart = false);

struct RegDerReport {
  int reg = 0, bound = 0;
  bool verdict = false;
  BettiTable table;
};
RegDerReport regularity_derlog(const Poly& f, const modp::Field& F);

struct RegChainReport {
  int regM = 0, regB = 0, regZ = 0, bound = 0;
  bool chainOk = false, boundOk = false, alternatingSumsOk = false;
  BettiTable tM, tB, tZ;
  bool ok() const { return chainOk && boundOk && alternatingSumsOk; }
};
RegChainReport verify_reg_chain(Koszul& K);

}  // namespace arrspec
