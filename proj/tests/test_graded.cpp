#include "arrspec/graded.hpp"
#include "doctest.h"

using namespace arrspec;

namespace {
const char* kB4 = "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
const char* kG5 = "1 1 1 1\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
}  // namespace

TEST_CASE("monomial bases") {
  CHECK(monomial_basis(4, 0).size() == 1);
  CHECK(monomial_basis(4, 2).size() == 10);
  auto m = monomial_basis(3, 1);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == Mono{1, 0, 0, 0});
  CHECK(m[2] == Mono{0, 0, 1, 0});
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= 7; ++k) {
      auto b = monomial_basis(n, k);
      CHECK(static_cast<long>(b.size()) == num_monomials(n, k));
      for (size_t i = 0; i < b.size(); ++i) CHECK(mono_rank(n, b[i], k) == static_cast<long>(i));
    }
}

TEST_CASE("form bases") {
  CHECK(form_basis(4, 4, 4).size() == 1);
  CHECK(form_basis(4, 2, 3).size() == 24);
  CHECK(form_basis(4, 3, 2).size() == 0);
  for (int j = 0; j <= 4; ++j) CHECK(form_basis(4, j, 9).size() == form_dim(4, j, 9));
}

TEST_CASE("wedge with df on B4") {
  Arrangement B4 = parse_arrangement(kB4);
  // dx2 dx3 dx4 has subset index 3 among 3-subsets of 4
  auto W = wedge_df_matrix(B4, 3, 3);
  REQUIRE(W.matrix.rows == 20);
  REQUIRE(W.matrix.cols == 4);
  int row = static_cast<int>(mono_rank(4, Mono{0, 1, 1, 1}, 3));
  for (int r = 0; r < 20; ++r) CHECK(W.matrix(r, 3) == (r == row ? 1 : 0));
  // 1 maps to the four products of three coordinates
  auto W0 = wedge_df_matrix(B4, 0, 0);
  int nz = 0;
  for (const auto& v : W0.matrix.a) nz += v != 0;
  CHECK(nz == 4);
  CHECK(wedge_df_matrix(B4, 4, 5).matrix.rows == 0);
}

TEST_CASE("exterior derivative") {
  auto D = exterior_d_matrix(4, 1, 2);  // x_a dx_b -> dx_a dx_b
  // x1 dx2: subset {1} is index 1; monomial x1 has rank 0 in degree 1
  long src = D.source.index(1, 0);
  // target dx1 dx2 = subset {0,1} index 0, constant monomial
  CHECK(D.matrix(0, static_cast<int>(src)) == 1);
  long src2 = D.source.index(1, 1);  // x2 dx2
  bool zero = true;
  for (int r = 0; r < D.matrix.rows; ++r) zero = zero && D.matrix(r, static_cast<int>(src2)) == 0;
  CHECK(zero);
  CHECK(exterior_d_matrix(4, 2, 2).matrix.is_zero());
}

TEST_CASE("d^2 = 0, (df^)^2 = 0 and anticommutation") {
  for (const char* txt : {kB4, kG5, "1 0 0\n0 1 0\n1 1 0\n0 0 1\n"}) {
    Arrangement A = parse_arrangement(txt);
    const int n = A.n, d = A.d();
    for (int j = 0; j + 2 <= n; ++j)
      for (int k = j; k <= j + 4; ++k) {
        auto d1 = exterior_d_matrix(n, j, k).matrix, d2 = exterior_d_matrix(n, j + 1, k).matrix;
        if (d1.cols && d2.rows) CHECK((d2 * d1).is_zero());
        auto w1 = wedge_df_matrix(A, j, k).matrix, w2 = wedge_df_matrix(A, j + 1, k + d).matrix;
        if (w1.cols && w2.rows) CHECK((w2 * w1).is_zero());
        // d(df ^ w) = -df ^ dw
        auto lhs = exterior_d_matrix(n, j + 1, k + d).matrix * w1;
        auto rhs = wedge_df_matrix(A, j + 1, k).matrix * d1;
        for (auto& v : rhs.a) v = -v;
        if (lhs.rows && lhs.cols) CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("multiplication commutes") {
  for (int k = 0; k < 4; ++k) {
    auto a = multiplication_map(4, 2, 1, k + 1).to_qmatrix() * multiplication_map(4, 2, 3, k).to_qmatrix();
    auto b = multiplication_map(4, 2, 3, k + 1).to_qmatrix() * multiplication_map(4, 2, 1, k).to_qmatrix();
    CHECK(a == b);
    CHECK(rank(multiplication_map(4, 0, 0, k).to_qmatrix()) == num_monomials(4, k));
  }
}

TEST_CASE("modular images agree with exact matrices") {
  Arrangement A = parse_arrangement(kG5);
  Poly f = defining_polynomial(A);
  auto df = gradient(f);
  modp::Field F(modp::kPrimes[0]);
  auto S = wedge_df_map(f, df, 2, 5);
  QMatrix Q = S.to_qmatrix();
  auto C = S.mod(F).columns();
  auto C2 = wedge_df_mod(f, df, 2, 5, F).columns();
  CHECK(C.a == C2.a);
  bool same = true;
  for (int r = 0; r < Q.rows; ++r)
    for (int c = 0; c < Q.cols; ++c) {
      Integer num = Q(r, c).get_num() % Integer(F.p);
      if (num < 0) num += F.p;
      same = same && C(r, c) == static_cast<double>(num.get_ui());
    }
  CHECK(same);
  CHECK(rank(Q) == modp::rank(C, F));
}
