// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "arrspec/cli.hpp"
#include "arrspec/resolution.hpp"
#include "arrspec/saturation.hpp"
#include "arrspec/specseq.hpp"

using namespace arrspec;

namespace {

const uint32_t kP = modp::kPrimes[0];

struct Named {
  std::string name;
  Arrangement A;
};

Arrangement pencil7() {
  return parse_arrangement("1 0 0 0\n0 1 0 0\n1 1 0 0\n1 -1 0 0\n0 0 1 0\n0 0 0 1\n1 1 1 1\n");
}

std::vector<Named> corpus4() {
  return {{"B4", builtin_boolean(4)},       {"G5", builtin_generic(4, 5, 1)},
          {"G6", builtin_generic(4, 6, 1)}, {"G7", builtin_generic(4, 7, 1)},
          {"PROD6", builtin_product(3, 3)}, {"PENCIL7", pencil7()}};
}

// collects failure notes for one criterion
struct Ledger {
  std::vector<std::string> notes;
  bool ok = true;
  void expect(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      notes.push_back(what);
    }
  }
  template <class A, class B>
  void eq(const A& a, const B& b, const std::string& what) {
    if (!(a == b)) {
      std::ostringstream o;
      o << what << ": got " << a << ", want " << b;
      ok = false;
      notes.push_back(o.str());
    }
  }
};

bool all_ok = true;

void criterion(int id, const std::string& title, double limitSeconds, const std::function<void(Ledger&)>& body) {
  Ledger L;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(L);
  } catch (const std::exception& e) {
    L.expect(false, std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limitSeconds > 0 && s >= limitSeconds) {
    L.ok = false;
    L.notes.push_back("runtime " + std::to_string(s) + " s over the " + std::to_string(limitSeconds) + " s limit");
  }
  all_ok = all_ok && L.ok;
  std::printf("%s  criterion %d: %s (%.1f s)\n", L.ok ? "PASS" : "FAIL", id, title.c_str(), s);
  for (const auto& n : L.notes) std::printf("      %s\n", n.c_str());
  std::fflush(stdout);
}

Pages pages_for(Koszul& K, int kmax, uint64_t seed = 1) {
  PagesOptions o;
  o.kmax = kmax;
  o.seed = seed;
  return compute_pages(K, o);
}

// d (df^w) + df^(dw) = 0 on Omega^j_q
bool anticommute(Koszul& K, int j, int q) {
  const auto& F = K.field();
  long dim = K.dim(j, q);
  if (dim == 0 || j + 2 > K.n()) return true;
  modp::Dense I(static_cast<int>(dim), static_cast<int>(dim));
  for (int i = 0; i < dim; ++i) I(i, i) = 1;
  auto a = K.dmap(j + 1, q + K.d()).apply_rows(K.wedge(j, q).apply_rows(I, F), F);
  auto b = K.wedge(j + 1, q).apply_rows(K.dmap(j, q).apply_rows(I, F), F);
  for (size_t i = 0; i < a.a.size(); ++i)
    if (F.red(a.a[i] + b.a[i]) != 0) return false;
  return true;
}

}  // namespace

int main() {
  criterion(1, "B4 closed forms", 30, [](Ledger& L) {
    Arrangement A = builtin_boolean(4);
    Koszul K(A, kP);
    long want[] = {1, 4, 10, 16};
    for (int k = 4; k <= 7; ++k) L.eq(K.mu(k), want[k - 4], "mu_" + std::to_string(k));
    for (int k = 5; k <= 16; ++k) L.eq(K.mu(k), 6L * (k - 4) - 2, "mu_" + std::to_string(k));
    L.eq(derlog_slice(A, 0, K.field()).dim_derlog0(), 3L, "nu_4 (degree-0 syzygies of the partials)");
    L.eq(K.h(3, 4), 3L, "h3 at form degree 4");
    auto lat = intersection_lattice(A);
    L.eq(lat.tjurinaSection, 6L, "tau");
    L.eq(lat.chiU, 0L, "chi(U)");
    L.eq(chi_f(K, 4), 1L, "chi_{f,4}");
    for (int k = 8; k <= 16; ++k) L.eq(K.mu(k) - K.mu(k - 1), 6L, "Diff(mu)_" + std::to_string(k));
  });

  criterion(2, "G5 Euler characteristics", 300, [](Ledger& L) {
    Arrangement A = builtin_generic(4, 5, 1);
    Koszul K(A, kP);
    auto lat = intersection_lattice(A);
    L.eq(lat.chiU, -1L, "chi(U)");
    L.eq(lat.tjurinaSection, 10L, "tau");
    L.eq(chi_f(K, 5), 2L, "chi_{f,5}");
    for (int k = 22; k >= 10; --k) {
      L.eq(chi_f(K, k), 0L, "chi_{f," + std::to_string(k) + "}");
      K.trim(0);
    }
  });

  criterion(3, "second-page vanishing ranges and degeneration on the corpus", 45 * 60, [](Ledger& L) {
    for (auto& [name, A] : corpus4()) {
      Koszul K(A, kP);
      Pages P = pages_for(K, 4 * A.d() + 2);
      auto r = check_vanishing_ranges(P);
      L.expect(r.rMax == default_rmax(A.d()), name + ": rMax");
      L.expect(r.muRange, name + ": mu2 nonzero above 2d-2");
      L.expect(r.nuRange, name + ": nu2 nonzero above 3d-1");
      L.expect(r.rhoRange, name + ": rho2 nonzero above 4d-2");
      L.expect(r.degeneration, name + ": some d_r, 3 <= r <= rMax, is nonzero");
      for (const auto& c : r.counterexamples)
        L.notes.push_back(name + ": " + c.what + " column " + std::to_string(c.j) + " k " + std::to_string(c.k) +
                          " value " + std::to_string(c.value));
      std::printf("      %s: d=%d rMax=%d last nonzero k: mu2 %d, nu2 %d, rho2 %d\n", name.c_str(), A.d(), r.rMax,
                  r.sharpMu, r.sharpNu, r.sharpRho);
    }
  });

  criterion(4, "regularity bounds and the regularity chain", 0, [](Ledger& L) {
    for (auto& [name, A] : corpus4()) {
      Koszul K(A, kP);
      const int d = A.d();
      auto D = regularity_derlog(K.f(), K.field());
      L.expect(D.reg <= d - 4, name + ": reg Der(-log D) = " + std::to_string(D.reg) + " > d-4");
      if (name == "B4") L.eq(D.reg, 0, "B4: reg Der(-log D)");
      auto c = verify_reg_chain(K);
      L.expect(c.regM <= 2 * d - 2, name + ": reg M = " + std::to_string(c.regM) + " > 2d-2");
      L.expect(c.regM == c.regB - 1, name + ": reg M != reg B - 1");
      L.expect(c.regM == c.regZ - 2, name + ": reg M != reg A_f^3(-d) - 2");
      std::printf("      %s: reg Der %d (bound %d), reg M %d = reg B - 1 %d = reg Z - 2 %d (bound %d)\n", name.c_str(),
                  D.reg, d - 4, c.regM, c.regB - 1, c.regZ - 2, 2 * d - 2);
    }
  });

  criterion(5, "saturated Jacobian ideal vanishes below d-1; B4 is saturated", 0, [](Ledger& L) {
    for (auto& [name, A] : corpus4()) {
      Koszul K(A, kP);
      auto S = jacobian_saturation(K, A.d() + 2);
      L.expect(jacobian_vanishes_low(S, A.d()), name + ": J_k != 0 for some k < d-1");
      L.expect(S.containsJacobian && S.idealClosed, name + ": J is not an ideal containing (df)");
    }
    Koszul K(builtin_boolean(4), kP);
    auto S = jacobian_saturation(K, 12, 6);
    for (int k = 0; k <= 12; ++k) L.eq(S.slices[k].dim(), S.jacobianDims[k], "B4: dim J_" + std::to_string(k));
    L.expect(S.orderIndependent, "B4: flat order changes J");
  });

  criterion(6, "n = 3 degenerates at the second page", 0, [](Ledger& L) {
    std::vector<Named> c3 = {{"T3", builtin_boolean(3)},
                             {"G3_5", parse_arrangement("1 0 0\n0 1 0\n0 0 1\n1 1 1\n1 2 3\n")},
                             {"NP5", builtin_nearpencil(5)}};
    for (auto& [name, A] : c3) {
      Koszul K(A, kP);
      const int d = A.d();
      Pages P = pages_for(K, 4 * d + 2);
      for (const auto& r : P.higher) L.expect(r.rank == 0, name + ": d_" + std::to_string(r.r) + " nonzero");
      L.expect(P.page.rbegin()->second == P.page.at(2), name + ": last page differs from E2");
      for (int q = 0; q <= P.window(2); ++q)
        if (k_index(3, d, 2, q) < d + 2) L.eq(P.e(1, 2, q), 0L, name + ": nu below d+2");
      std::printf("      %s: rMax %d, %zu higher differentials, all zero\n", name.c_str(), P.rMax, P.higher.size());
    }
  });

  criterion(7, "structural identities", 0, [](Ledger& L) {
    std::vector<Named> c = {{"B4", builtin_boolean(4)}, {"G5", builtin_generic(4, 5, 1)},
                            {"PROD6", builtin_product(3, 3)},
                            {"CONE5", parse_arrangement("1 0 0 0\n0 1 0 0\n0 0 1 0\n1 1 1 0\n0 0 0 1\n")}};
    for (auto& [name, A] : c) {
      Koszul K(A, kP);
      const int d = A.d(), n = A.n;
      for (int k = 0; k <= 2 * d; ++k) {
        auto S = derlog_slice(K.f(), k, K.field());
        L.eq(S.dim_derlog(), S.dim_derlog0() + num_monomials(n, k), name + ": splitting at " + std::to_string(k));
        L.eq(S.dim_derlog0(), K.dim(3, k + 4) - K.rank(3, k + 4), name + ": derLog0 vs Z^3 at " + std::to_string(k));
      }
      for (int j = 0; j + 2 <= n; ++j)
        for (int q = j; q <= d + 3; ++q) L.expect(anticommute(K, j, q), name + ": d and df^ do not anticommute");
      Pages P = pages_for(K, 4 * d + 2, 1);
      L.expect(low_cohomology_vanishes(P), name + ": h0 or h1 nonzero");
      L.expect(P.d1Composition && P.drComposition, name + ": d^2 != 0 on a page");
      L.expect(euler_preserved(P), name + ": E1 and E2 Euler characteristics differ");
      bool lifts = true;
      for (const auto& r : P.d1) lifts = lifts && r.liftsAgree;
      for (const auto& r : P.higher) lifts = lifts && r.liftsAgree;
      L.expect(lifts, name + ": randomized lifts disagree");
      Pages P2 = pages_for(K, 4 * d + 2, 977);
      L.expect(P2.page == P.page && P2.d1rank == P.d1rank, name + ": pages depend on the seed");
      auto M = milnor_module(K);
      auto B = boundary_module(K);
      auto Z = cycle_module(K);
      auto D = derlog_module(K.f(), K.field());
      L.expect(betti_table_auto(M, 2 * d - 2).alternatingSumOk, name + ": alternating sum for M");
      L.expect(betti_table_auto(B, 2 * d - 1).alternatingSumOk, name + ": alternating sum for B");
      L.expect(betti_table_auto(Z, 2 * d).alternatingSumOk, name + ": alternating sum for Z");
      L.expect(betti_table_auto(D, d - 4).alternatingSumOk, name + ": alternating sum for Der");
    }
  });

  criterion(8, "product law for logarithmic derivations", 0, [](Ledger& L) {
    Arrangement A = builtin_product(3, 3);
    modp::Field F(kP);
    auto fac = product_decomposition(A);
    L.expect(fac.has_value() && fac->size() == 2, "PROD6 does not split into two factors");
    if (!fac || fac->size() != 2) return;
    L.expect((*fac)[0].formIndices == std::vector<int>{0, 1, 2}, "first block");
    L.expect((*fac)[1].formIndices == std::vector<int>{3, 4, 5}, "second block");
    const int d = A.d();
    std::map<std::pair<int, int>, long> predicted;
    for (const auto& fc : *fac) {
      auto D = derlog_module(defining_polynomial(fc.sub), F);
      auto T = betti_table_auto(D, fc.sub.d() - fc.sub.n);
      for (const auto& [jk, v] : T.entries) predicted[jk] += v;
    }
    for (int k = -1; k <= 2 * d; ++k) {
      long want = 0;
      for (const auto& fc : *fac)
        for (int i = -1; i <= k; ++i)
          want += derlog_slice(fc.sub, i, F).dim_derlog() * num_monomials(4 - fc.sub.n, k - i);
      L.eq(derlog_slice(A, k, F).dim_derlog(), want, "dim Der_" + std::to_string(k));
    }
    auto D = derlog_module(defining_polynomial(A), F);
    L.expect(betti_table_auto(D, d - 4).entries == predicted, "Betti table differs from the factor tables");
  });

  criterion(9, "B4 Milnor numbers as a standard-monomial count", 0, [](Ledger& L) {
    Koszul K(builtin_boolean(4), kP);
    for (int k = 0; k <= 16; ++k) {
      long count = 0;
      for (const Mono& m : monomial_basis(4, k - 4)) {
        int support = 0;
        for (int i = 0; i < 4; ++i) support += m[i] > 0;
        count += support < 3;  // x_i x_j x_l divides nothing else in (df)
      }
      L.eq(K.mu(k), count, "mu_" + std::to_string(k));
    }
  });

  std::printf("%s\n", all_ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all_ok ? 0 : 1;
}
