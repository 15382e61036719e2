#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arrspec/koszul.hpp"

namespace arrspec {

// Columns are j = 2..n. Internally every entry is indexed by form degree q;
// the reported index is k = q + (n-j) d, so mu_k, nu_k, rho_k of column
// n, n-1, n-2 sit at q = k, k-d, k-2d.
inline int k_index(int n, int d, int j, int q) { return q + (n - j) * d; }

struct Zigzag {
  std::vector<modp::Dense> eta;  // eta_1 .. eta_{r-1}, one row per source basis vector
};

struct DifferentialRecord {
  int r = 0, jSource = 0, qSource = 0, qTarget = 0;
  modp::Dense matrix;  // source basis x target basis
  long rank = 0;
  bool liftsAgree = true;  // recomputation with a randomized lift gave the same matrix
  Zigzag witness;
};

// Explicit page entry: a subquotient of Omega^j_q. reps are independent
// modulo boundaries and reduced against them.
struct EntrySpace {
  modp::Echelon boundaries;
  modp::Echelon reps;
  long dim() const { return reps.rank; }
};

struct PagesOptions {
  int kmax = 0;
  int rMax = 0;         // 0: closure value for the input
  uint64_t seed = 1;
  bool sampling = true; // certify large degrees by sampling module generators
};

struct Pages {
  int n = 0, d = 0, kmax = 0, qExplicit = 0, rMax = 0;
  std::map<std::pair<int, int>, long> h;        // (j,q) -> E1 dim, columns 0..n
  std::map<std::pair<int, int>, long> d1rank;   // (j,q) -> rank of H^j_q -> H^{j+1}_q
  std::map<std::pair<int, int>, bool> sampled;  // d1 rank certified by sampling
  // page[r][(j,q)] for r >= 2; entries absent are zero
  std::map<int, std::map<std::pair<int, int>, long>> page;
  std::vector<DifferentialRecord> d1;  // explicit regime only
  std::vector<DifferentialRecord> higher;
  bool d1Composition = true;       // d1 d1 = 0 on every explicit pair
  bool drComposition = true;       // d_r d_r = 0 wherever both computed
  bool d1RankConsistent = true;    // explicit d1 matrices agree with the rank formula
  bool explicitDimsConsistent = true;

  int window(int j) const { return kmax - (n - j) * d; }  // last q in column j
  long e(int r, int j, int q) const;  // page r (r = 1 means E1)
};

int default_rmax(int d);  // ceil((4d-5)/d) + 1
Pages compute_pages(Koszul& K, const PagesOptions& opt);

struct Counterexample {
  std::string what;
  int j = 0, k = 0;
  long value = 0;
};

struct VanishingReport {
  bool muRange = false, nuRange = false, rhoRange = false, degeneration = false;
  int windowUsed = 0, rMax = 0;
  std::vector<Counterexample> counterexamples;
  // largest k with a nonzero E2 entry in each column (-1 if none)
  int sharpMu = -1, sharpNu = -1, sharpRho = -1;
  bool ok() const { return muRange && nuRange && rhoRange && degeneration; }
};

// Optional perturbation of one E2 entry before checking, for tests.
struct FaultInjection {
  int j = 0, k = 0;
  long delta = 0;
};
VanishingReport check_vanishing_ranges(const Pages& P, const FaultInjection* fault = nullptr);

// A common factor of degree e >= 1 of the partials gives a class in H^1 at form
// degree d - e, so h^0 = h^1 = 0 below d forces them to vanish in every degree.
bool depth_two_certified(Koszul& K);

// chi_{f,q} = sum_j (-1)^(n-j) h^j_q at form degree q, computed on the complex
// itself rather than the page window. Uses the depth-two certificate for the
// two lowest columns and throws if it does not hold.
long chi_f(Koszul& K, int q);

struct StabilizationReport {
  long tau = 0;
  bool mu = true, nu = true, rho = true;
  std::vector<Counterexample> counterexamples;
  bool ok() const { return mu && nu && rho; }
};
StabilizationReport verify_stabilization(const Pages& P, long tau);

// Every column vanishes below the ambient support and h^0, h^1 vanish in the window.
bool low_cohomology_vanishes(const Pages& P);
bool euler_preserved(const Pages& P);  // E1 and E2 strand Euler characteristics agree

}  // namespace arrspec
