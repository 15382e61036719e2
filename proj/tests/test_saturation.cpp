#include "arrspec/saturation.hpp"
#include "doctest.h"

using namespace arrspec;

namespace {
const char* kB4 = "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
const char* kG5 = "1 1 1 1\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
modp::Field F(modp::kPrimes[0]);

// a fixed ideal given by explicit generators of one degree
class Generated : public DegreewiseIdeal {
 public:
  Generated(int n, std::vector<Poly> g) : DegreewiseIdeal(n, F), g_(std::move(g)) {}
  const modp::Echelon& slice(int t) override {
    if (auto it = s_.find(t); it != s_.end()) return it->second;
    int e = g_[0].deg;
    modp::Dense V(0, static_cast<int>(num_monomials(n_, t)));
    if (t >= e)
      for (const auto& g : g_) {
        auto M = multiply_by(g, t - e, F);
        modp::Dense W(V.rows + M.rows, V.cols);
        std::copy(V.a.begin(), V.a.end(), W.a.begin());
        std::copy(M.a.begin(), M.a.end(), W.a.begin() + V.a.size());
        V = std::move(W);
      }
    modp::Echelon E;
    if (V.rows) E = modp::echelon(std::move(V), F, true);
    else E.R = V, E.reduced = true;
    return s_.emplace(t, std::move(E)).first->second;
  }

 private:
  std::vector<Poly> g_;
  std::map<int, modp::Echelon> s_;
};

Poly mono_poly(int n, Mono m) {
  int deg = 0;
  for (int i = 0; i < n; ++i) deg += m[i];
  Poly p{n, deg, std::vector<Integer>(num_monomials(n, deg))};
  p.c[mono_rank(n, m, deg)] = 1;
  return p;
}
}  // namespace

TEST_CASE("x1 * m saturates to (x1)") {
  std::vector<Poly> g;
  for (int i = 0; i < 4; ++i) {
    Mono m{1, 0, 0, 0};
    m[i] += 1;
    g.push_back(mono_poly(4, m));
  }
  Generated I(4, g);
  auto s = colon_power_slice(I, maximal_ideal(4), 1, 8);
  CHECK(s.dim() == 1);
  CHECK(s.basis(0, 0) == 1);
  CHECK(s.stabilizationWitness == 1);
  // the unit ideal as P changes nothing
  Generated I2(4, g);
  auto u = colon_power_slice(I2, {mono_poly(4, Mono{})}, 2, 8);
  CHECK(u.dim() == I2.slice(2).rank);
}

TEST_CASE("B4: the Jacobian ideal is already saturated") {
  Koszul K(parse_arrangement(kB4), F.p);
  auto S = jacobian_saturation(K, 12, 6);
  CHECK(S.pointDegree == 2);
  for (int t = 0; t <= 12; ++t) CHECK(S.slices[t].dim() == S.jacobianDims[t]);
  CHECK(S.slices[2].dim() == 0);
  CHECK(S.slices[3].dim() == 4);
  CHECK(S.k0 == 0);
  CHECK(S.orderIndependent);
  CHECK(S.idealClosed);
  CHECK(S.containsJacobian);
  CHECK(jacobian_vanishes_low(S, 4));
  for (int k = 4; k <= 16; ++k) CHECK(mprime_hilbert(S, 4, k) == K.mu(k));
  CHECK(mprime_hilbert(S, 4, 3) == 0);
}

TEST_CASE("G5 saturation") {
  Koszul K(parse_arrangement(kG5), F.p);
  auto S = jacobian_saturation(K, 8, 3);
  CHECK(jacobian_vanishes_low(S, 5));
  CHECK(S.equalityAtTop);
  CHECK(S.gapStableAtTop);
  CHECK(S.embeddedLength == 0);
  CHECK(S.orderIndependent);
  CHECK(S.idealClosed);
  CHECK(S.containsJacobian);
  for (int k = 4; k <= 7; ++k) CHECK(mprime_hilbert(S, 4, k) == num_monomials(4, k - 4));
  MESSAGE("G5 k0 = " << S.k0);
}

// four generic planes through [0:0:0:1] are not free there: (df) has an embedded
// point, so J and (df) differ by one dimension in every large degree
TEST_CASE("embedded point keeps a constant gap") {
  Koszul K(parse_arrangement("1 0 0 0\n0 1 0 0\n0 0 1 0\n1 1 1 0\n0 0 0 1\n"), F.p);
  auto S = jacobian_saturation(K, 10, 2);
  CHECK(jacobian_vanishes_low(S, 5));
  CHECK_FALSE(S.equalityAtTop);
  CHECK(S.gapStableAtTop);
  CHECK(S.embeddedLength == 1);
  for (int t = 4; t <= 10; ++t) CHECK(S.slices[t].dim() - S.jacobianDims[t] == 1);
  CHECK(S.orderIndependent);
  CHECK(S.idealClosed);
}
