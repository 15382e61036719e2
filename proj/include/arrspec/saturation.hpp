#pragma once
#include <map>
#include <utility>
#include <vector>

#include "arrspec/koszul.hpp"

namespace arrspec {

// Homogeneous ideal of R given degree by degree as reduced echelon subspaces of R_t
// (coordinates in monomial_basis(n, t)).
class DegreewiseIdeal {
 public:
  DegreewiseIdeal(int n, const modp::Field& F) : n_(n), F_(F) {}
  virtual ~DegreewiseIdeal() = default;
  virtual const modp::Echelon& slice(int t) = 0;
  virtual int witness(int) { return 0; }
  int n() const { return n_; }
  const modp::Field& field() const { return F_; }

 protected:
  int n_;
  modp::Field F_;
};

// (df) in degree t = (df^Omega^{n-1}) at form degree t + n
class JacobianIdeal : public DegreewiseIdeal {
 public:
  explicit JacobianIdeal(Koszul& K) : DegreewiseIdeal(K.n(), K.field()), K_(K) {}
  const modp::Echelon& slice(int t) override;

 private:
  Koszul& K_;
  std::map<int, modp::Echelon> empty_;
};

// I : P^N with N raised until two consecutive exponents give the same piece.
class ColonIdeal : public DegreewiseIdeal {
 public:
  ColonIdeal(DegreewiseIdeal& base, std::vector<Poly> gens, int maxN);
  const modp::Echelon& slice(int t) override;
  int witness(int t) override;

 private:
  const modp::Echelon& power(int N, int t);  // I : P^N in degree t
  DegreewiseIdeal& base_;
  std::vector<Poly> gens_;
  int e_, maxN_;
  std::map<std::pair<int, int>, modp::Echelon> memo_;
  std::map<int, int> witness_;
  std::map<int, modp::Echelon> result_;
};

struct IdealSlice {
  int k = 0;
  modp::Dense basis;
  int stabilizationWitness = 0;
  long dim() const { return basis.rows; }
};

IdealSlice colon_power_slice(DegreewiseIdeal& I, const std::vector<Poly>& P, int k, int maxN);

// Linear generators of the prime of a flat; the maximal ideal.
std::vector<Poly> flat_prime(const Flat& X, int n);
std::vector<Poly> maximal_ideal(int n);
// Forms of a single degree e cutting out exactly the rank-(n-1) flats
// (points of P^{n-1}): the vanishing ideal of those points in the first degree
// past the one where they impose independent conditions.
std::vector<Poly> points_ideal(const Arrangement& A, int* degree = nullptr);

struct SaturationResult {
  std::vector<IdealSlice> slices;  // J_t for 0 <= t <= kmax
  std::vector<long> jacobianDims;  // dim (df)_t
  int pointDegree = 0;
  int k0 = -1;                  // (df)_t = J_t for k0 <= t <= kmax
  bool equalityAtTop = false;   // the last three degrees
  // dim J_t - dim (df)_t over the last three degrees is one constant; it is the
  // length of the embedded points of (df) and is 0 exactly when equalityAtTop
  bool gapStableAtTop = false;
  long embeddedLength = -1;
  bool idealClosed = false;     // x_i J_t in J_{t+1}
  bool containsJacobian = false;
  bool orderIndependent = true; // iterated flat-by-flat colons agree (when run)
  int orderCheckWindow = -1;
};

// Saturation of (df) by the rank-3 flat primes and m (n = 4). The primary
// computation saturates once by the points ideal; if orderCheck >= 0 the
// flat-by-flat colon is also run through degree orderCheck in the lattice order
// and in a seeded permutation, and both must agree with it.
SaturationResult jacobian_saturation(Koszul& K, int kmax, int orderCheck = -1, uint64_t seed = 1);
bool jacobian_vanishes_low(const SaturationResult& S, int d);
long mprime_hilbert(const SaturationResult& S, int n, int k);

}  // namespace arrspec
