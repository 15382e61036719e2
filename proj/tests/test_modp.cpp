#include <random>

#include "arrspec/linalg.hpp"
#include "arrspec/modp.hpp"
#include "doctest.h"

using namespace arrspec;
using namespace arrspec::modp;

namespace {
Dense low_rank(std::mt19937_64& g, const Field& F, int m, int n, int k, bool sparseLeft) {
  Dense X(m, k), Y(k, n), A(m, n);
  for (auto& v : X.a) v = (!sparseLeft || g() % 3 == 0) ? g() % F.p : 0;
  for (auto& v : Y.a) v = g() % F.p;
  gemm_acc(A, X, Y, 1.0, F);
  return A;
}
}  // namespace

TEST_CASE("blocked elimination agrees with the serial reference") {
  Field F(kPrimes[0]);
  std::mt19937_64 g(1);
  for (int trial = 0; trial < 12; ++trial) {
    int m = 20 + g() % 300, n = 20 + g() % 300, k = 1 + g() % std::min(m, n);
    Dense A = low_rank(g, F, m, n, k, trial % 2);
    auto e1 = echelon(A, F, true), e2 = echelon_reference(A, F, true);
    CHECK(e1.rank == e2.rank);
    CHECK(e1.pivots == e2.pivots);
    CHECK(e1.R.a == e2.R.a);
    CHECK(e1.rank == k);
  }
}

TEST_CASE("kernel rows are annihilated") {
  Field F(kPrimes[1]);
  std::mt19937_64 g(2);
  for (int trial = 0; trial < 8; ++trial) {
    int m = 10 + g() % 150, n = 10 + g() % 150, k = 1 + g() % std::min(m, n);
    Dense A = low_rank(g, F, m, n, k, false);
    Dense K = kernel(A, F);
    CHECK(K.rows == n - k);
    Dense Z(m, K.rows);
    gemm_acc(Z, A, K.transpose(), 1.0, F);
    bool zero = true;
    for (double v : Z.a) zero = zero && v == 0;
    CHECK(zero);
  }
}

TEST_CASE("reduce_rows zeroes pivot coordinates and detects membership") {
  Field F(kPrimes[2]);
  std::mt19937_64 g(3);
  Dense A = low_rank(g, F, 40, 60, 25, false);
  auto E = echelon(A, F, true);
  Dense V(3, 60);
  // two rows from the row space, one random
  for (int j = 0; j < 60; ++j) {
    V(0, j) = A(5, j);
    V(1, j) = F.red(A(1, j) + 3 * A(7, j));
    V(2, j) = g() % F.p;
  }
  reduce_rows(V, E, F);
  bool r0 = true, r1 = true, r2 = true;
  for (int j = 0; j < 60; ++j) {
    r0 = r0 && V(0, j) == 0;
    r1 = r1 && V(1, j) == 0;
    r2 = r2 && V(2, j) == 0;
  }
  CHECK(r0);
  CHECK(r1);
  CHECK_FALSE(r2);
}

TEST_CASE("modular rank matches exact rank on integer matrices") {
  std::mt19937_64 g(4);
  Field F(kPrimes[0]);
  for (int trial = 0; trial < 10; ++trial) {
    int m = 2 + g() % 9, n = 2 + g() % 9;
    QMatrix Q(m, n);
    Dense D(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        long v = (g() % 4 == 0) ? static_cast<long>(g() % 9) - 4 : 0;
        Q(i, j) = v;
        D(i, j) = F.from_signed(v);
      }
    CHECK(rank(D, F) == rank(Q));
  }
}
