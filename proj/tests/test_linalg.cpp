#include <random>

#include "arrspec/error.hpp"
#include "arrspec/linalg.hpp"
#include "doctest.h"

using namespace arrspec;

namespace {
QMatrix random_matrix(std::mt19937_64& g, int r, int c, int rk) {
  QMatrix X(r, rk), Y(rk, c);
  for (auto& v : X.a) v = Rational(static_cast<long>(g() % 7) - 3, 1 + static_cast<long>(g() % 3));
  for (auto& v : Y.a) v = static_cast<long>(g() % 11) - 5;
  return X * Y;
}
}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(QMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(rank(QMatrix(3, 3)) == 0);
  CHECK(rank(QMatrix::identity(4)) == 4);
}

TEST_CASE("kernel examples") {
  QMatrix K = kernel_basis(QMatrix{{1, 1}});
  REQUIRE(K.cols == 1);
  CHECK(K(0, 0) == -K(1, 0));
  CHECK(kernel_basis(QMatrix::identity(3)).cols == 0);
  K = kernel_basis(QMatrix{{1, 2}, {2, 4}});
  REQUIRE(K.cols == 1);
  CHECK(K(0, 0) == -2 * K(1, 0));
}

TEST_CASE("kernel of random matrices is annihilated with the right count") {
  std::mt19937_64 g(7);
  for (int t = 0; t < 30; ++t) {
    int r = 1 + g() % 8, c = 1 + g() % 8, k = g() % (std::min(r, c) + 1);
    QMatrix M = random_matrix(g, r, c, k);
    QMatrix K = kernel_basis(M);
    CHECK(K.cols == c - rank(M));
    CHECK((M * K).is_zero());
  }
}

TEST_CASE("rref is canonical") {
  QMatrix a{{1, 2, 3}, {2, 4, 7}};
  QMatrix b{{3, 6, 10}, {1, 2, 4}};
  CHECK(rref(a) == rref(b));
  CHECK(rref(a) == (QMatrix{{1, 2, 0}, {0, 0, 1}}));
}

TEST_CASE("subquotient dims") {
  CHECK(subquotient_dim(QMatrix::identity(3), QMatrix(3, 0)) == 3);
  QMatrix Z{{1, 0}, {0, 1}, {0, 0}};
  CHECK(subquotient_dim(Z, Z) == 0);
  QMatrix B{{1}, {1}, {0}};
  CHECK(subquotient_dim(Z, B) == 1);
  QMatrix bad{{0}, {0}, {1}};
  CHECK_THROWS_WITH_AS(subquotient_dim(Z, bad), doctest::Contains("NotContained"), Error);
}

TEST_CASE("induced maps") {
  Subquotient s{3, QMatrix::identity(3), QMatrix{{1}, {0}, {0}}};
  CHECK(induced_map(s, s, QMatrix::identity(3)) == QMatrix::identity(2));
  CHECK(induced_map(s, s, QMatrix(3, 3)).is_zero());
  Subquotient empty{3, QMatrix(3, 0), QMatrix(3, 0)};
  QMatrix m = induced_map(empty, s, QMatrix::identity(3));
  CHECK(m.cols == 0);
  CHECK(m.rows == 2);
  // a map that sends a cycle outside the target cycles
  Subquotient t{3, QMatrix{{1}, {0}, {0}}, QMatrix(3, 0)};
  CHECK_THROWS_WITH_AS(induced_map(s, t, QMatrix::identity(3)), doctest::Contains("NotWellDefined"), Error);
}

TEST_CASE("induced maps of a complex compose to zero") {
  // C0 = Q^2 -> C1 = Q^3 -> C2 = Q^2 with d1 d0 = 0
  QMatrix d0{{1, 0}, {1, 1}, {0, 1}};
  QMatrix d1{{1, -1, 1}, {2, -2, 2}};
  REQUIRE((d1 * d0).is_zero());
  Subquotient c0{2, QMatrix::identity(2), QMatrix(2, 0)};
  Subquotient c1{3, QMatrix::identity(3), QMatrix(3, 0)};
  Subquotient c2{2, QMatrix::identity(2), QMatrix(2, 0)};
  CHECK((induced_map(c1, c2, d1) * induced_map(c0, c1, d0)).is_zero());
}

TEST_CASE("solve") {
  QMatrix A{{1, 2}, {3, 4}}, b{{5}, {6}}, x;
  REQUIRE(solve(A, b, &x));
  CHECK(A * x == b);
  CHECK_FALSE(solve(QMatrix{{1, 1}, {2, 2}}, QMatrix{{1}, {3}}, nullptr));
}

TEST_CASE("parse rationals") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}
