#include "arrspec/specseq.hpp"

#include <algorithm>
#include <random>

#include "arrspec/error.hpp"

namespace arrspec {

using modp::Dense;
using modp::Echelon;
using Key = std::pair<int, int>;

namespace {

Echelon empty_echelon(long cols) {
  Echelon E;
  E.R = Dense(0, static_cast<int>(cols));
  E.reduced = true;
  return E;
}

Echelon rref_rows(Dense V, const modp::Field& F, long cols) {
  if (V.rows == 0) return empty_echelon(cols);
  Echelon E = modp::echelon(std::move(V), F, true);
  E.R.rows = E.rank;
  E.R.a.resize(static_cast<size_t>(E.rank) * E.R.cols);
  return E;
}

Dense multiply(const Dense& A, const Dense& B, const modp::Field& F) {
  Dense C(A.rows, B.cols);
  if (A.rows && B.cols && A.cols) modp::gemm_acc(C, A, B, 1.0, F);
  return C;
}

Dense negate(Dense A, const modp::Field& F) {
  for (auto& v : A.a) v = v == 0 ? 0 : F.pd - v;
  return A;
}

bool is_zero(const Dense& A) {
  return std::all_of(A.a.begin(), A.a.end(), [](double v) { return v == 0; });
}

Dense random_combination(const Dense& rows, int count, std::mt19937_64& rng, const modp::Field& F) {
  Dense c(count, rows.rows);
  for (auto& v : c.a) v = static_cast<double>(rng() % F.p);
  return multiply(c, rows, F);
}

Dense add(Dense a, const Dense& b, const modp::Field& F) {
  for (size_t i = 0; i < a.a.size(); ++i) a.a[i] = F.red(a.a[i] + b.a[i]);
  return a;
}

// Coordinates of each row of V in the page entry S: reduce against the
// boundaries, then read off the representative pivots. False if some row is
// not a cycle of S modulo its boundaries.
bool coordinates_in(const EntrySpace& S, Dense V, Dense* C, const modp::Field& F) {
  if (S.boundaries.rank) modp::reduce_rows(V, S.boundaries, F);
  *C = coordinates(V, S.reps);
  Dense back = multiply(*C, S.reps.R, F);
  for (size_t i = 0; i < V.a.size(); ++i)
    if (V.a[i] != back.a[i]) return false;
  return true;
}

EntrySpace make_entry(Echelon boundaries, Dense cycles, const modp::Field& F) {
  EntrySpace S;
  S.boundaries = std::move(boundaries);
  if (S.boundaries.rank && cycles.rows) modp::reduce_rows(cycles, S.boundaries, F);
  S.reps = rref_rows(std::move(cycles), F, S.boundaries.R.cols);
  return S;
}

// Complement of the boundary pivots: the cycles of a top-degree entry.
Dense unit_complement(const Echelon& B, long dim) {
  std::vector<char> piv(dim, 0);
  for (int t = 0; t < B.rank; ++t) piv[B.pivots[t]] = 1;
  Dense U(static_cast<int>(dim - B.rank), static_cast<int>(dim));
  int r = 0;
  for (long c = 0; c < dim; ++c)
    if (!piv[c]) U(r++, static_cast<int>(c)) = 1;
  return U;
}

class Builder {
 public:
  Builder(Koszul& K, const PagesOptions& opt) : K_(K), F_(K.field()), rng_(opt.seed), opt_(opt) {
    P_.n = K.n();
    P_.d = K.d();
    P_.kmax = opt.kmax;
    P_.qExplicit = std::max(2 * P_.d, P_.d + 6);
    c0_ = 2;
  }

  Pages run() {
    const int n = P_.n;
    sampled_ranks();
    for (int j = 0; j <= n; ++j)
      for (int q = 0; q <= colWindow(j); ++q) P_.h[{j, q}] = K_.h(j, q);
    for (int j = n - 1; j >= c0_ - 1; --j)
      for (int q = 0; q <= colWindow(j + 1); ++q)
        if (!P_.d1rank.count({j, q})) P_.d1rank[{j, q}] = d1_rank(j, q);
    auto& e2 = P_.page[2];
    for (int j = c0_; j <= n; ++j)
      for (int q = j; q <= colWindow(j); ++q) {
        long v = P_.h[{j, q}] - rk(j, q) - rk(j - 1, q);
        if (v < 0) throw Error("Internal", "negative E2 dimension");
        if (v) e2[{j, q}] = v;
      }
    explicit_d1();
    higher_pages();
    return std::move(P_);
  }

 private:
  Koszul& K_;
  const modp::Field& F_;
  std::mt19937_64 rng_;
  PagesOptions opt_;
  Pages P_;
  int c0_;
  std::map<Key, EntrySpace> spaces_;

  // h^0 and h^1 are tracked as far as the lowest reported column
  int colWindow(int j) const { return P_.window(std::max(j, c0_)); }

  long rk(int j, int q) const {
    if (j >= P_.n || j < 0) return 0;
    auto it = P_.d1rank.find({j, q});
    return it == P_.d1rank.end() ? 0 : it->second;
  }

  Dense d_of_cycles(int j, int q) { return K_.dmap(j, q).apply_rows(K_.cycles(j, q).R, F_); }

  long explicit_rank(int j, int q) {
    if (K_.dim(j, q) == 0 || K_.dim(j + 1, q) == 0) return 0;
    return rank_modulo(d_of_cycles(j, q), K_.image(j + 1, q), F_);
  }

  long d1_rank(int j, int q) {
    if (q < j) return 0;
    if (K_.h(j, q) == 0 || K_.h(j + 1, q) == 0) return 0;
    return explicit_rank(j, q);
  }

  // Lower bound from d(m g) over module generators g of Z^j, stopping at bound.
  // Returns -1 if the candidates are exhausted first.
  long sample_rank(int j, int q, long bound) {
    if (bound == 0) return 0;
    std::vector<std::pair<int, Mono>> cand;
    for (int t = j; t <= P_.qExplicit && t <= q; ++t)
      if (K_.new_generators(j, t).rows)
        for (const Mono& m : monomial_basis(P_.n, q - t)) cand.push_back({t, m});
    for (size_t i = cand.size(); i > 1; --i) std::swap(cand[i - 1], cand[rng_() % i]);
    const Echelon& B = K_.image(j + 1, q);
    Dense acc(0, static_cast<int>(K_.dim(j + 1, q)));
    long r = 0;
    size_t next = 0;
    while (r < bound && next < cand.size()) {
      Dense chunk(0, acc.cols);
      long want = bound - r + 8;
      while (next < cand.size() && chunk.rows < want) {
        auto [t, m] = cand[next++];
        Dense mg = times_monomial(K_.new_generators(j, t), P_.n, j, t, m);
        chunk = vstack(chunk, K_.dmap(j, q).apply_rows(mg, F_));
      }
      if (B.rank) modp::reduce_rows(chunk, B, F_);
      Echelon E = modp::echelon(vstack(acc, chunk), F_, false);
      r = E.rank;
      acc = std::move(E.R);
      acc.rows = E.rank;
      acc.a.resize(static_cast<size_t>(E.rank) * acc.cols);
    }
    return r >= bound ? r : -1;
  }

  // d1 ranks above the explicit regime, highest degrees first so that the
  // large images are built once and released.
  void sampled_ranks() {
    const int n = P_.n;
    if (!opt_.sampling) return;
    for (int q = P_.window(n); q > P_.qExplicit; --q) {
      for (int j = n - 1; j >= c0_; --j) {
        if (q > colWindow(j + 1)) continue;
        K_.image(j + 1, q);  // also caches rank(j, q - d)
        long hj1 = K_.h(j + 1, q);
        long bound = hj1 - rk(j + 1, q);
        // rank of H^j -> H^{j+1} is at most dim H^j and at most the kernel of the next map
        if (q <= colWindow(j)) bound = std::min(bound, K_.h(j, q));
        long r = K_.h(j + 1, q) == 0 ? 0 : sample_rank(j, q, bound);
        if (r < 0) {
          r = explicit_rank(j, q);
        } else {
          P_.sampled[{j, q}] = true;
        }
        P_.d1rank[{j, q}] = r;
        K_.release_image(j + 1, q);
      }
    }
  }

  EntrySpace e1_space(int j, int q) {
    const Echelon& B = K_.image(j, q);
    Echelon bd = B;
    Dense cyc = j == P_.n ? unit_complement(B, K_.dim(j, q)) : K_.cycles(j, q).R;
    return make_entry(std::move(bd), std::move(cyc), F_);
  }

  EntrySpace e2_space(int j, int q) {
    Dense bd = K_.image(j, q).R;
    if (K_.h(j - 1, q) != 0) bd = vstack(bd, d_of_cycles(j - 1, q));
    Echelon boundaries = rref_rows(std::move(bd), F_, K_.dim(j, q));
    Dense cyc;
    if (j == P_.n) {
      cyc = unit_complement(boundaries, K_.dim(j, q));
    } else {
      const Dense& Z = K_.cycles(j, q).R;
      Dense V = K_.dmap(j, q).apply_rows(Z, F_);
      const Echelon& Bt = K_.image(j + 1, q);
      if (Bt.rank) modp::reduce_rows(V, Bt, F_);
      if (is_zero(V)) {
        cyc = Z;
      } else {
        Dense c = modp::kernel(V.transpose(), F_);
        cyc = multiply(c, Z, F_);
      }
    }
    return make_entry(std::move(boundaries), std::move(cyc), F_);
  }

  // d1 as explicit matrices between E1 entries in the explicit regime
  void explicit_d1() {
    const int n = P_.n;
    for (int q = c0_; q <= std::min(P_.qExplicit, P_.window(n)); ++q) {
      std::map<int, EntrySpace> e1;
      std::map<int, Dense> mats;
      for (int j = c0_; j <= n; ++j)
        if (q <= P_.window(j) && q >= j) e1.emplace(j, e1_space(j, q));
      for (int j = c0_; j < n; ++j) {
        if (!e1.count(j) || !e1.count(j + 1)) continue;
        const EntrySpace& S = e1.at(j);
        const EntrySpace& T = e1.at(j + 1);
        DifferentialRecord rec;
        rec.r = 1;
        rec.jSource = j;
        rec.qSource = rec.qTarget = q;
        Dense img = K_.dmap(j, q).apply_rows(S.reps.R, F_);
        if (!coordinates_in(T, img, &rec.matrix, F_)) throw Error("NotWellDefined", "d1 leaves the cycles");
        rec.rank = rec.matrix.rows && rec.matrix.cols ? modp::rank(rec.matrix, F_) : 0;
        // randomized lift: add boundaries to every representative
        if (S.reps.rank && S.boundaries.rank) {
          Dense lifted = add(S.reps.R, random_combination(S.boundaries.R, S.reps.rank, rng_, F_), F_);
          Dense other;
          bool ok = coordinates_in(T, K_.dmap(j, q).apply_rows(lifted, F_), &other, F_);
          rec.liftsAgree = ok && other.a == rec.matrix.a;
        }
        if (rec.rank != rk(j, q)) P_.d1RankConsistent = false;
        mats[j] = rec.matrix;
        P_.d1.push_back(std::move(rec));
      }
      for (int j = c0_; j + 1 < n; ++j)
        if (mats.count(j) && mats.count(j + 1) && !is_zero(multiply(mats[j], mats[j + 1], F_)))
          P_.d1Composition = false;
    }
  }

  int closure_rmax() const {
    int r = 2;
    for (const auto& [key, v] : P_.page.at(2)) {
      auto [j, q] = key;
      if (j < P_.n) r = std::max(r, (q - (j + 1)) / P_.d + 2);
    }
    return r;
  }

  // Solves the zig-zag df^eta_1 = d omega, df^eta_{i+1} = d eta_i for each
  // row omega of W and returns d eta_{r-1}; the unknowns are stacked blocks.
  struct ZigzagSystem {
    std::vector<int> offset, size;  // unknown blocks eta_1..eta_{r-1}
    std::unique_ptr<LeftSolver> solver;
    int eqCols = 0, firstEq = 0;
  };

  ZigzagSystem zigzag_system(int r, int j, int q) {
    ZigzagSystem Z;
    const int d = P_.d;
    int rows = 0;
    for (int i = 1; i <= r - 1; ++i) {
      Z.offset.push_back(rows);
      Z.size.push_back(static_cast<int>(K_.dim(j, q - i * d)));
      rows += Z.size.back();
    }
    // equation blocks: E_1 in Omega^{j+1}_q, E_{i+1} in Omega^{j+1}_{q-id}
    std::vector<int> eqOff;
    int cols = 0;
    for (int i = 0; i <= r - 2; ++i) {
      eqOff.push_back(cols);
      cols += static_cast<int>(K_.dim(j + 1, q - i * d));
    }
    Z.eqCols = cols;
    Dense M(rows, cols);
    auto put = [&](const Dense& blk, int r0, int c0) {
      for (int a = 0; a < blk.rows; ++a)
        for (int b = 0; b < blk.cols; ++b) M(r0 + a, c0 + b) = blk(a, b);
    };
    for (int i = 1; i <= r - 1; ++i) {
      int qi = q - i * d;
      if (Z.size[i - 1] == 0) continue;
      // eta_i appears in E_i through df^ and in E_{i+1} through -d
      if (K_.dim(j + 1, qi + d) > 0) put(K_.wedge(j, qi).rows(), Z.offset[i - 1], eqOff[i - 1]);
      if (i + 1 <= r - 1 && K_.dim(j + 1, qi) > 0) put(negate(K_.dmap(j, qi).rows(), F_), Z.offset[i - 1], eqOff[i]);
    }
    Z.solver = std::make_unique<LeftSolver>(M, F_);
    return Z;
  }

  // Returns d eta_{r-1} for every row of W, storing the chain in witness.
  Dense run_zigzag(const ZigzagSystem& Z, int r, int j, int q, const Dense& W, Zigzag* witness,
                   const Dense* kernelShift) {
    Dense rhs(W.rows, Z.eqCols);
    Dense dW = K_.dmap(j, q).apply_rows(W, F_);
    for (int a = 0; a < W.rows; ++a) std::copy(dW.row(a), dW.row(a) + dW.cols, rhs.row(a));
    Dense X;
    if (!Z.solver->solve(rhs, &X))
      throw Error("ZigzagObstructed", "no zig-zag for a class surviving to page " + std::to_string(r) +
                                          " at column " + std::to_string(j) + ", degree " + std::to_string(q));
    if (kernelShift) X = add(X, *kernelShift, F_);
    const int qLast = q - (r - 1) * P_.d;
    Dense out(W.rows, static_cast<int>(K_.dim(j + 1, qLast)));
    for (int i = 1; i <= r - 1; ++i) {
      Dense eta(W.rows, Z.size[i - 1]);
      for (int a = 0; a < W.rows; ++a)
        std::copy(X.row(a) + Z.offset[i - 1], X.row(a) + Z.offset[i - 1] + Z.size[i - 1], eta.row(a));
      if (i == r - 1 && eta.cols && out.cols) out = K_.dmap(j, qLast).apply_rows(eta, F_);
      if (witness) witness->eta.push_back(std::move(eta));
    }
    return out;
  }

  void higher_pages() {
    const int n = P_.n, d = P_.d;
    for (const auto& [key, v] : P_.page[2]) spaces_.emplace(key, e2_space(key.first, key.second));
    for (const auto& [key, S] : spaces_)
      if (S.dim() != P_.page[2][key]) P_.explicitDimsConsistent = false;
    P_.rMax = opt_.rMax ? opt_.rMax : (n == 4 ? default_rmax(d) : closure_rmax());
    for (int r = 2; r <= P_.rMax; ++r) {
      std::map<Key, Dense> kernelOf;  // source -> combinations of reps killed by d_r
      std::map<Key, Dense> incoming;  // target -> boundary vectors added
      std::map<Key, Dense> mats;
      for (const auto& [key, S] : spaces_) {
        auto [j, q] = key;
        if (j >= n || S.dim() == 0) continue;
        const int qt = q - (r - 1) * d;
        DifferentialRecord rec;
        rec.r = r;
        rec.jSource = j;
        rec.qSource = q;
        rec.qTarget = qt;
        ZigzagSystem Z = zigzag_system(r, j, q);
        Dense img = run_zigzag(Z, r, j, q, S.reps.R, &rec.witness, nullptr);
        auto tgt = spaces_.find({j + 1, qt});
        bool hasTarget = tgt != spaces_.end() && tgt->second.dim() > 0;
        if (hasTarget) {
          if (!coordinates_in(tgt->second, img, &rec.matrix, F_))
            throw Error("NotWellDefined", "d_" + std::to_string(r) + " leaves the target cycles");
          rec.rank = modp::rank(rec.matrix, F_);
          // second lift: shift the representatives by boundaries and the chain by a zig-zag of zero
          Dense lifted = S.reps.R;
          if (S.boundaries.rank)
            lifted = add(lifted, random_combination(S.boundaries.R, S.reps.rank, rng_, F_), F_);
          Dense ker = Z.solver->kernel();
          Dense shift = ker.rows ? random_combination(ker, S.reps.rank, rng_, F_) : Dense();
          Dense img2 = run_zigzag(Z, r, j, q, lifted, nullptr, ker.rows ? &shift : nullptr);
          Dense other;
          rec.liftsAgree = coordinates_in(tgt->second, img2, &other, F_) && other.a == rec.matrix.a;
          if (rec.rank) {
            kernelOf[key] = modp::kernel(rec.matrix.transpose(), F_);
            incoming[{j + 1, qt}] = img;
          }
          mats[key] = rec.matrix;
        } else {
          rec.matrix = Dense(S.dim(), 0);
        }
        P_.higher.push_back(std::move(rec));
      }
      for (const auto& [key, M] : mats) {
        Key next{key.first + 1, key.second - (r - 1) * d};
        if (mats.count(next) && M.cols && !is_zero(multiply(M, mats[next], F_))) P_.drComposition = false;
      }
      // pass to page r+1
      for (auto& [key, S] : spaces_) {
        Dense cyc = S.reps.R;
        if (auto it = kernelOf.find(key); it != kernelOf.end()) cyc = multiply(it->second, S.reps.R, F_);
        Echelon bd = S.boundaries;
        if (auto it = incoming.find(key); it != incoming.end())
          bd = rref_rows(vstack(S.boundaries.R, it->second), F_, K_.dim(key.first, key.second));
        S = make_entry(std::move(bd), std::move(cyc), F_);
      }
      auto& pg = P_.page[r + 1];
      for (const auto& [key, S] : spaces_)
        if (S.dim()) pg[key] = S.dim();
    }
  }
};

}  // namespace

long Pages::e(int r, int j, int q) const {
  if (r <= 1) {
    auto it = h.find({j, q});
    return it == h.end() ? 0 : it->second;
  }
  auto pit = page.find(std::min(r, rMax + 1));
  if (pit == page.end()) return 0;
  auto it = pit->second.find({j, q});
  return it == pit->second.end() ? 0 : it->second;
}

int default_rmax(int d) { return (4 * d - 5 + d - 1) / d + 1; }

Pages compute_pages(Koszul& K, const PagesOptions& opt) {
  if (opt.kmax <= 0) throw Error("BadWindow", "kmax must be positive");
  return Builder(K, opt).run();
}

VanishingReport check_vanishing_ranges(const Pages& P, const FaultInjection* fault) {
  if (P.n != 4) throw Error("Shape", "the vanishing ranges are stated for n = 4");
  VanishingReport rep;
  rep.windowUsed = P.kmax;
  rep.rMax = P.rMax;
  const int d = P.d;
  rep.muRange = rep.nuRange = rep.rhoRange = true;
  struct Col {
    int j;
    int threshold;
    bool* flag;
    int* sharp;
    const char* name;
  } cols[] = {{4, 2 * d - 2, &rep.muRange, &rep.sharpMu, "mu2"},
              {3, 3 * d - 1, &rep.nuRange, &rep.sharpNu, "nu2"},
              {2, 4 * d - 2, &rep.rhoRange, &rep.sharpRho, "rho2"}};
  for (auto& c : cols)
    for (int q = c.j; q <= P.window(c.j); ++q) {
      int k = k_index(4, d, c.j, q);
      long v = P.e(2, c.j, q);
      if (fault && fault->j == c.j && fault->k == k) v += fault->delta;
      if (v != 0) *c.sharp = std::max(*c.sharp, k);
      if (k > c.threshold && v != 0) {
        *c.flag = false;
        rep.counterexamples.push_back({c.name, c.j, k, v});
      }
    }
  rep.degeneration = true;
  for (const auto& rec : P.higher)
    if (rec.r >= 3 && rec.rank != 0) {
      rep.degeneration = false;
      rep.counterexamples.push_back({"d" + std::to_string(rec.r), rec.jSource,
                                     k_index(4, d, rec.jSource, rec.qSource), rec.rank});
    }
  return rep;
}

bool depth_two_certified(Koszul& K) {
  for (int q = 0; q < K.d(); ++q)
    if (K.h(0, q) || K.h(1, q)) return false;
  return true;
}

long chi_f(Koszul& K, int q) {
  if (!depth_two_certified(K)) throw Error("Internal", "partials of f share a factor");
  const int n = K.n(), d = K.d();
  // Z^1 = B^1 everywhere, so df^ on Omega^1 has rank dim Omega^1 - dim Omega^0(-d)
  long s = K.dim(2, q) - K.rank(2, q) - (K.dim(1, q - d) - K.dim(0, q - 2 * d));
  if (n % 2) s = -s;
  for (int j = 3; j <= n; ++j) s += ((n - j) % 2 ? -1 : 1) * K.h(j, q);
  return s;
}

StabilizationReport verify_stabilization(const Pages& P, long tau) {
  StabilizationReport rep;
  rep.tau = tau;
  const int d = P.d, n = P.n;
  auto diff = [&](int j, int q) { return P.e(1, j, q) - P.e(1, j, q - 1); };
  for (int q = 2 * d; q <= P.window(n); ++q)
    if (diff(n, q) != tau) {
      rep.mu = false;
      rep.counterexamples.push_back({"Diff(mu)", n, q, diff(n, q)});
    }
  for (int q = 2 * d + 1; q <= P.kmax - 2 * d; ++q) {
    if (n >= 3 && diff(n - 1, q) != 2 * tau) {
      rep.nu = false;
      rep.counterexamples.push_back({"Diff(nu)", n - 1, k_index(n, d, n - 1, q), diff(n - 1, q)});
    }
    if (n >= 4 && diff(n - 2, q) != tau) {
      rep.rho = false;
      rep.counterexamples.push_back({"Diff(rho)", n - 2, k_index(n, d, n - 2, q), diff(n - 2, q)});
    }
  }
  return rep;
}

bool low_cohomology_vanishes(const Pages& P) {
  for (const auto& [key, v] : P.h) {
    auto [j, q] = key;
    if ((j <= 1 || q < j) && v != 0) return false;
  }
  return true;
}

bool euler_preserved(const Pages& P) {
  for (int q = 0; q <= P.window(2); ++q) {
    long a = 0, b = 0;
    for (int j = 2; j <= P.n; ++j) {
      long s = (P.n - j) % 2 ? -1 : 1;
      a += s * P.e(1, j, q);
      b += s * P.e(2, j, q);
    }
    if (a != b) return false;
  }
  return true;
}

}  // namespace arrspec
