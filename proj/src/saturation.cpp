#include "arrspec/saturation.hpp"

#include <algorithm>
#include <random>

#include "arrspec/error.hpp"

namespace arrspec {

using modp::Dense;
using modp::Echelon;

namespace {

Echelon empty_slice(int n, int t) {
  Echelon E;
  E.R = Dense(0, static_cast<int>(num_monomials(n, t)));
  E.reduced = true;
  return E;
}

Echelon rref(Dense V, const modp::Field& F) {
  int cols = V.cols;
  if (V.rows == 0) {
    Echelon E;
    E.R = Dense(0, cols);
    E.reduced = true;
    return E;
  }
  return modp::echelon(std::move(V), F, true);
}

Poly integer_poly(int n, int deg, std::vector<Rational> c) {
  Integer l = lcm_of_denominators(c);
  Poly p{n, deg, {}};
  for (auto& x : c) {
    Rational s = x * l;
    p.c.push_back(s.get_num());
  }
  return p;
}

bool same(const Echelon& a, const Echelon& b) { return a.rank == b.rank && a.R.a == b.R.a; }

}  // namespace

const Echelon& JacobianIdeal::slice(int t) {
  if (t < 0) {
    auto it = empty_.find(t);
    if (it == empty_.end()) it = empty_.emplace(t, empty_slice(n_, 0)).first;
    return it->second;
  }
  return K_.image(n_, t + n_);
}

ColonIdeal::ColonIdeal(DegreewiseIdeal& base, std::vector<Poly> gens, int maxN)
    : DegreewiseIdeal(base.n(), base.field()), base_(base), gens_(std::move(gens)), maxN_(maxN) {
  e_ = gens_.empty() ? 0 : gens_[0].deg;
  for (const auto& g : gens_)
    if (g.deg != e_) throw Error("Shape", "colon generators must share one degree");
}

const Echelon& ColonIdeal::power(int N, int t) {
  if (N == 0) return base_.slice(t);
  auto key = std::make_pair(N, t);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const Echelon& prev = power(N - 1, t);
  const Echelon& up = power(N - 1, t + e_);
  const int dimT = static_cast<int>(num_monomials(n_, t));
  // candidates: monomials outside the pivots of the previous piece
  std::vector<char> piv(dimT, 0), pivUp(up.R.cols, 0);
  for (int c : prev.pivots) piv[c] = 1;
  for (int c : up.pivots) pivUp[c] = 1;
  std::vector<int> free, freeUp;
  for (int c = 0; c < dimT; ++c)
    if (!piv[c]) free.push_back(c);
  for (int c = 0; c < up.R.cols; ++c)
    if (!pivUp[c]) freeUp.push_back(c);
  const int u = static_cast<int>(free.size()), w = static_cast<int>(freeUp.size());
  if (u > 0) {
    Dense M(u, static_cast<int>(gens_.size()) * w);
    for (size_t g = 0; g < gens_.size(); ++g) {
      Dense G = multiply_by(gens_[g], t, F_);
      Dense V(u, G.cols);
      for (int r = 0; r < u; ++r) std::copy(G.row(free[r]), G.row(free[r]) + G.cols, V.row(r));
      if (up.rank) modp::reduce_rows(V, up, F_);
      for (int r = 0; r < u; ++r)
        for (int c = 0; c < w; ++c) M(r, static_cast<int>(g) * w + c) = V(r, freeUp[c]);
    }
    Dense ker = w ? modp::kernel(M.transpose(), F_) : [&] {
      Dense I(u, u);
      for (int r = 0; r < u; ++r) I(r, r) = 1;
      return I;
    }();
    if (ker.rows) {
      Dense add(ker.rows, dimT);
      for (int r = 0; r < ker.rows; ++r)
        for (int c = 0; c < u; ++c) add(r, free[c]) = ker(r, c);
      Dense both(prev.rank + ker.rows, dimT);
      std::copy(prev.R.a.begin(), prev.R.a.end(), both.a.begin());
      std::copy(add.a.begin(), add.a.end(), both.a.begin() + prev.R.a.size());
      return memo_.emplace(key, rref(std::move(both), F_)).first->second;
    }
  }
  return memo_.emplace(key, prev).first->second;
}

const Echelon& ColonIdeal::slice(int t) {
  if (auto it = result_.find(t); it != result_.end()) return it->second;
  if (t < 0) return result_.emplace(t, empty_slice(n_, 0)).first->second;
  for (int N = 0; N < maxN_; ++N) {
    if (power(N + 1, t).rank == power(N, t).rank) {
      witness_[t] = N;
      return result_.emplace(t, power(N, t)).first->second;
    }
  }
  throw Error("NoStabilization", "colon exponent exceeded " + std::to_string(maxN_) + " in degree " +
                                     std::to_string(t));
}

int ColonIdeal::witness(int t) {
  slice(t);
  return witness_.at(t);
}

IdealSlice colon_power_slice(DegreewiseIdeal& I, const std::vector<Poly>& P, int k, int maxN) {
  ColonIdeal C(I, P, maxN);
  IdealSlice s;
  s.k = k;
  s.basis = C.slice(k).R;
  s.stabilizationWitness = C.witness(k);
  return s;
}

std::vector<Poly> flat_prime(const Flat& X, int n) {
  std::vector<Poly> out;
  for (int r = 0; r < X.equations.rows; ++r) {
    std::vector<Rational> c(n);
    // linear monomials in lex order are x1, x2, ..., xn
    for (int i = 0; i < n; ++i) c[i] = X.equations(r, i);
    out.push_back(integer_poly(n, 1, c));
  }
  return out;
}

std::vector<Poly> maximal_ideal(int n) {
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> c(n);
    c[i] = 1;
    out.push_back(integer_poly(n, 1, c));
  }
  return out;
}

std::vector<Poly> points_ideal(const Arrangement& A, int* degree) {
  const int n = A.n;
  auto L = intersection_lattice(A);
  std::vector<std::vector<Rational>> pts;
  for (const Flat& X : L.flatsByRank[n - 1]) {
    QMatrix k = kernel_basis(X.equations);
    std::vector<Rational> p(n);
    for (int i = 0; i < n; ++i) p[i] = k(i, 0);
    pts.push_back(p);
  }
  const int s = static_cast<int>(pts.size());
  auto eval = [&](int t) {
    auto mons = monomial_basis(n, t);
    QMatrix E(s, static_cast<int>(mons.size()));
    for (int a = 0; a < s; ++a)
      for (size_t m = 0; m < mons.size(); ++m) {
        Rational v = 1;
        for (int i = 0; i < n; ++i)
          for (int r = 0; r < mons[m][i]; ++r) v *= pts[a][i];
        E(a, static_cast<int>(m)) = v;
      }
    return E;
  };
  int t = 0;
  while (rank(eval(t)) < s) ++t;
  const int e = t + 1;
  if (degree) *degree = e;
  QMatrix K = kernel_basis(eval(e));
  std::vector<Poly> out;
  for (int c = 0; c < K.cols; ++c) {
    std::vector<Rational> v(K.rows);
    for (int r = 0; r < K.rows; ++r) v[r] = K(r, c);
    out.push_back(integer_poly(n, e, v));
  }
  return out;
}

SaturationResult jacobian_saturation(Koszul& K, int kmax, int orderCheck, uint64_t seed) {
  const int n = K.n(), d = K.d();
  const int maxN = 2 * d + 4;
  SaturationResult S;
  JacobianIdeal I(K);
  ColonIdeal J(I, points_ideal(K.arrangement(), &S.pointDegree), maxN);
  const modp::Field& F = K.field();
  S.containsJacobian = true;
  for (int t = 0; t <= kmax; ++t) {
    const Echelon& E = J.slice(t);
    S.slices.push_back({t, E.R, J.witness(t)});
    const Echelon& B = I.slice(t);
    S.jacobianDims.push_back(B.rank);
    if (B.rank) {
      Dense V = B.R;
      modp::reduce_rows(V, E, F);
      if (std::any_of(V.a.begin(), V.a.end(), [](double x) { return x != 0; })) S.containsJacobian = false;
    }
  }
  S.k0 = kmax + 1;
  while (S.k0 > 0 && S.slices[S.k0 - 1].dim() == S.jacobianDims[S.k0 - 1]) --S.k0;
  S.equalityAtTop = S.k0 <= kmax - 2;
  if (kmax >= 2) {
    auto gap = [&](int t) { return static_cast<long>(S.slices[t].dim()) - S.jacobianDims[t]; };
    S.embeddedLength = gap(kmax);
    S.gapStableAtTop = gap(kmax - 1) == S.embeddedLength && gap(kmax - 2) == S.embeddedLength;
  }
  S.idealClosed = true;
  for (int t = 0; t < kmax; ++t) {
    for (int i = 0; i < n && S.slices[t].dim(); ++i) {
      Mono m{};
      m[i] = 1;
      Dense V = times_monomial(S.slices[t].basis, n, 0, t, m);
      modp::reduce_rows(V, J.slice(t + 1), F);
      if (std::any_of(V.a.begin(), V.a.end(), [](double x) { return x != 0; })) S.idealClosed = false;
    }
  }
  if (orderCheck >= 0) {
    S.orderCheckWindow = orderCheck;
    auto L = intersection_lattice(K.arrangement());
    std::vector<Flat> flats = L.flatsByRank[n - 1];
    for (int pass = 0; pass < 2; ++pass) {
      if (pass == 1) {
        std::mt19937_64 rng(seed);
        std::shuffle(flats.begin(), flats.end(), rng);
      }
      std::vector<std::unique_ptr<ColonIdeal>> chain;
      DegreewiseIdeal* cur = &I;
      for (const Flat& X : flats) {
        chain.push_back(std::make_unique<ColonIdeal>(*cur, flat_prime(X, n), maxN));
        cur = chain.back().get();
      }
      chain.push_back(std::make_unique<ColonIdeal>(*cur, maximal_ideal(n), maxN));
      cur = chain.back().get();
      for (int t = 0; t <= orderCheck; ++t)
        if (!same(cur->slice(t), J.slice(t))) S.orderIndependent = false;
    }
  }
  return S;
}

bool jacobian_vanishes_low(const SaturationResult& S, int d) {
  for (int t = 0; t <= d - 2 && t < static_cast<int>(S.slices.size()); ++t)
    if (S.slices[t].dim() != 0) return false;
  return static_cast<int>(S.slices.size()) > d - 2;
}

long mprime_hilbert(const SaturationResult& S, int n, int k) {
  const int t = k - n;
  if (t < 0) return 0;
  if (t >= static_cast<int>(S.slices.size())) throw Error("DegreeUnavailable", "J not computed in degree " + std::to_string(t));
  return num_monomials(n, t) - S.slices[t].dim();
}

}  // namespace arrspec
