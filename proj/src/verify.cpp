#include <chrono>

#include "arrspec/cli.hpp"
#include "arrspec/error.hpp"
#include "arrspec/resolution.hpp"
#include "arrspec/saturation.hpp"
#include "arrspec/specseq.hpp"

namespace arrspec {

using nlohmann::json;

int default_kmax(int d) { return 4 * d + 2; }

int effective_kmax(int requested, int d, std::vector<std::string>* warnings) {
  if (requested < 0) return default_kmax(d);
  if (requested < 4 * d - 1) {
    if (warnings)
      warnings->push_back("kmax " + std::to_string(requested) + " raised to " + std::to_string(4 * d - 1) +
                          ": the rho range is not testable below 4d-1");
    return 4 * d - 1;
  }
  return requested;
}

json stable_part(const json& doc) {
  json s = doc;
  s.erase("volatile");
  return s;
}

namespace {

class Stopwatch {
 public:
  double lap() {
    auto t = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(t - last_).count();
    last_ = t;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

json counterexamples(const std::vector<Counterexample>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back({{"what", c.what}, {"column", c.j}, {"k", c.k}, {"value", c.value}});
  return a;
}

json page_summary(const Pages& P) {
  json e1 = json::object(), e2 = json::array();
  const char* names[] = {"h0", "h1", "rho", "nu", "mu"};
  for (int j = 2; j <= P.n; ++j) {
    const char* nm = names[4 - (P.n - j)];
    json row = json::array();
    for (int q = 0; q <= P.window(j); ++q) row.push_back(P.e(1, j, q));
    e1[nm] = {{"kFirst", k_index(P.n, P.d, j, 0)}, {"values", row}};
  }
  for (const auto& [key, v] : P.page.at(2))
    e2.push_back({{"column", key.first}, {"k", k_index(P.n, P.d, key.first, key.second)}, {"dim", v}});
  return {{"e1", e1}, {"e2Nonzero", e2}};
}

// One prime: every integer the report depends on.
json run_suite(const Arrangement& A, const LatticeInvariants& L, uint32_t prime, int kmax, uint64_t seed,
               json& timings, std::vector<std::string>& failures) {
  const int n = A.n, d = A.d();
  Koszul K(A, prime);
  Stopwatch sw;
  json R;
  auto check = [&](const std::string& name, bool ok) {
    if (!ok) failures.push_back(name);
    return ok;
  };

  PagesOptions o;
  o.kmax = kmax;
  o.seed = seed;
  Pages P = compute_pages(K, o);
  timings["pages"] = sw.lap();
  R["pages"] = page_summary(P);
  long sampled = 0;
  for (const auto& [k, v] : P.sampled) sampled += v;
  bool lifts = true;
  for (const auto& r : P.d1) lifts = lifts && r.liftsAgree;
  for (const auto& r : P.higher) lifts = lifts && r.liftsAgree;
  json st;
  st["lowCohomologyVanishes"] = check("lowCohomology", low_cohomology_vanishes(P));
  st["eulerPreserved"] = check("eulerPreserved", euler_preserved(P));
  st["d1Composition"] = check("d1Composition", P.d1Composition);
  st["drComposition"] = check("drComposition", P.drComposition);
  st["d1RankConsistent"] = check("d1RankConsistent", P.d1RankConsistent);
  st["explicitDimsConsistent"] = check("explicitDimsConsistent", P.explicitDimsConsistent);
  st["liftsAgree"] = check("liftsAgree", lifts);
  st["sampledRanks"] = sampled;
  st["qExplicit"] = P.qExplicit;
  R["structure"] = st;

  if (n == 3) {
    json deg;
    bool zero = true;
    json recs = json::array();
    for (const auto& r : P.higher) {
      zero = zero && r.rank == 0;
      recs.push_back({{"r", r.r}, {"column", r.jSource}, {"k", k_index(n, d, r.jSource, r.qSource)}, {"rank", r.rank}});
    }
    deg["rMax"] = P.rMax;
    deg["higherDifferentialsZero"] = check("degenerationAtE2", zero);
    deg["differentials"] = recs;
    bool nuLow = true;
    for (int q = 0; q <= P.window(n - 1); ++q)
      if (k_index(n, d, n - 1, q) < d + 2 && P.e(1, n - 1, q) != 0) nuLow = false;
    deg["nuVanishesBelowDPlus2"] = check("nuVanishing", nuLow);
    R["degeneration"] = deg;
    timings["checks"] = sw.lap();
    return R;
  }

  auto t1 = check_vanishing_ranges(P);
  R["vanishingRanges"] = {{"muRange", t1.muRange},
                   {"nuRange", t1.nuRange},
                   {"rhoRange", t1.rhoRange},
                   {"degeneration", t1.degeneration},
                   {"windowUsed", t1.windowUsed},
                   {"rMax", t1.rMax},
                   {"sharp", {{"mu", t1.sharpMu}, {"nu", t1.sharpNu}, {"rho", t1.sharpRho}}},
                   {"counterexamples", counterexamples(t1.counterexamples)}};
  check("vanishingRanges", t1.ok());

  json id;
  bool depth2 = depth_two_certified(K);
  id["depthTwo"] = check("depthTwo", depth2);
  if (depth2) {
    long cd = chi_f(K, d);
    id["chiEndpoint"] = {{"k", d}, {"value", cd}, {"expected", 1 - L.chiU}, {"ok", check("chiEndpoint", cd == 1 - L.chiU)}};
    const int hi = std::max(2 * d + 2, kmax - 2 * d);
    json vals = json::array();
    bool ok = true;
    for (int k = 2 * d; k <= hi; ++k) {
      long c = chi_f(K, k);
      vals.push_back(c);
      ok = ok && c == 0;
    }
    id["chiVanishing"] = {{"from", 2 * d}, {"to", hi}, {"values", vals}, {"ok", check("chiVanishing", ok)}};
  }
  auto stab = verify_stabilization(P, L.tjurinaSection);
  id["tjurinaStabilization"] = {{"tau", L.tjurinaSection},
                                {"mu", stab.mu},
                                {"nu", stab.nu},
                                {"rho", stab.rho},
                                {"counterexamples", counterexamples(stab.counterexamples)},
                                {"ok", check("tjurinaStabilization", stab.ok())}};
  timings["identities"] = sw.lap();
  bool split = true, iso = true;
  for (int k = 0; k <= 2 * d; ++k) {
    auto S = derlog_slice(K.f(), k, K.field());
    split = split && S.dim_derlog() == S.dim_derlog0() + num_monomials(n, k) &&
            S.theta0Component == num_monomials(n, k);
    iso = iso && check_derlog0_iso(K, k);
  }
  id["splitting"] = {{"window", 2 * d}, {"ok", check("splitting", split)}};
  id["derlog0Iso"] = {{"window", 2 * d}, {"ok", check("derlog0Iso", iso)}};
  R["identities"] = id;
  timings["derlog"] = sw.lap();

  auto chain = verify_reg_chain(K);
  auto rd = regularity_derlog(K.f(), K.field());
  R["regularity"] = {{"regM", chain.regM},
                     {"regBoundaryMinus1", chain.regB - 1},
                     {"regCyclesMinus2", chain.regZ - 2},
                     {"regDerLog", rd.reg},
                     {"bounds", {{"M", chain.bound}, {"derLog", rd.bound}}},
                     {"chainOk", check("regChain", chain.chainOk)},
                     {"boundOk", check("regMBound", chain.boundOk)},
                     {"derLogOk", check("regDerLog", rd.verdict)},
                     {"alternatingSums", check("alternatingSums", chain.alternatingSumsOk && rd.table.alternatingSumOk)}};
  timings["regularity"] = sw.lap();

  auto flats = L.flatsByRank.count(3) ? L.flatsByRank.at(3).size() : 0;
  const int levels = static_cast<int>(flats) + 1;
  const int orderWindow = std::min(d - 2, 22 - levels);
  auto S = jacobian_saturation(K, 2 * d - 2, orderWindow, seed);
  json dims = json::array();
  for (const auto& s : S.slices) dims.push_back(s.dim());
  R["saturation"] = {{"jDims", dims},
                  {"pointDegree", S.pointDegree},
                  {"k0", S.k0},
                  {"ok", check("jacobianLowVanishing", jacobian_vanishes_low(S, d))},
                  {"containsJacobian", check("saturationContainsJacobian", S.containsJacobian)},
                  {"ideal", check("saturationIdeal", S.idealClosed)},
                  {"equalityAtTop", S.equalityAtTop},
                  {"embeddedLength", S.embeddedLength},
                  {"gapStableAtTop", check("saturationGapStable", S.gapStableAtTop)},
                  {"orderCheckWindow", S.orderCheckWindow},
                  {"orderIndependent", check("saturationOrder", S.orderIndependent)}};
  timings["saturation"] = sw.lap();
  return R;
}

}  // namespace

VerifyReport run_verify(const Arrangement& A, const std::string& id, const VerifyOptions& opt) {
  if (A.n != 3 && A.n != 4) throw Error("Shape", "verify needs n = 3 or n = 4");
  if (!is_essential(A))
    throw Error("NotEssential", "normals have rank " + std::to_string(rank(normal_matrix(A))) + " < n = " +
                                    std::to_string(A.n));
  VerifyReport rep;
  const int d = A.d();
  const int kmax = effective_kmax(opt.kmax, d, &rep.warnings);
  std::vector<uint32_t> primes = opt.primes;
  if (primes.empty()) primes = {modp::kPrimes[0], modp::kPrimes[1]};

  auto L = intersection_lattice(A);
  json doc;
  doc["schema"] = "arrspec-verify/1";
  doc["arrangementId"] = id;
  doc["n"] = A.n;
  doc["d"] = d;
  doc["kmax"] = kmax;
  doc["seed"] = opt.seed;
  doc["conventions"] = {
      {"grading", "deg x_i = deg dx_i = 1; computations are indexed by the form degree q"},
      {"kIndex", "column j at form degree q is reported at k = q + (n-j)d"},
      {"rows", {{"mu", "column n"}, {"nu", "column n-1"}, {"rho", "column n-2"}}},
      {"chiF", "sum_j (-1)^(n-j) h^j at one form degree"},
      {"derLogGrading", "deg d/dx_i = -1; Der_k has coefficients of degree k+1"},
      {"milnorModule", "M = Omega^n / df^Omega^{n-1}, graded by form degree"},
      {"arithmetic", "modular; every integer result is recomputed under a second prime and must agree"}};
  doc["lattice"] = {{"chiU", L.chiU}, {"tau", L.tjurinaSection}, {"poincare", L.poincareCoefficients}};
  json timings, results;
  std::vector<std::string> failures;
  bool agree = true;
  for (size_t i = 0; i < primes.size(); ++i) {
    json t;
    std::vector<std::string> f;
    json r = run_suite(A, L, primes[i], kmax, opt.seed, t, f);
    timings["prime" + std::to_string(i)] = t;
    if (i == 0) {
      results = r;
      failures = f;
    } else if (r != results) {
      agree = false;
    }
  }
  if (!agree) failures.push_back("primesDisagree");
  doc["results"] = results;
  doc["certification"] = {{"primes", primes}, {"agree", agree}};
  doc["warnings"] = rep.warnings;
  doc["failures"] = failures;
  rep.pass = failures.empty();
  doc["pass"] = rep.pass;
  doc["volatile"] = {{"timings", timings}};
  rep.doc = std::move(doc);
  return rep;
}

}  // namespace arrspec
