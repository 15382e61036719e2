#include "arrspec/derlog.hpp"
#include "doctest.h"

using namespace arrspec;

namespace {
const char* kB4 = "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
const char* kG5 = "1 1 1 1\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
const char* kProd = "1 0 0 0\n0 1 0 0\n1 1 0 0\n0 0 1 0\n0 0 0 1\n0 0 1 1\n";
modp::Field F(modp::kPrimes[0]);
}  // namespace

TEST_CASE("B4 degree-zero derivations") {
  auto S = derlog_slice(parse_arrangement(kB4), 0, F);
  CHECK(S.dim_derlog() == 4);
  CHECK(S.dim_derlog0() == 3);
  CHECK(S.theta0Component == 1);
  CHECK(derlog_slice(parse_arrangement(kB4), -1, F).dim_derlog() == 0);
  CHECK(derlog_slice(parse_arrangement(kG5), -1, F).dim_derlog() == 0);
}

TEST_CASE("splitting and the A_f^{n-1} isomorphism") {
  for (const char* txt : {kB4, kG5, kProd}) {
    Koszul K(parse_arrangement(txt), F.p);
    for (int k = 0; k <= 2 * K.d(); ++k) {
      auto S = derlog_slice(K.f(), k, F);
      CHECK(S.dim_derlog() == S.dim_derlog0() + num_monomials(4, k));
      CHECK(S.theta0Component == num_monomials(4, k));
      CHECK(check_derlog0_iso(K, k));
    }
  }
}

TEST_CASE("a pencil of three lines is free with exponents 0 and 1") {
  Arrangement L = parse_arrangement("1 0\n0 1\n1 1\n");
  for (int k = -1; k <= 6; ++k)
    CHECK(derlog_slice(L, k, F).dim_derlog() == num_monomials(2, k) + num_monomials(2, k - 1));
}

TEST_CASE("product convolution") {
  Arrangement A = parse_arrangement(kProd);
  auto fac = product_decomposition(A);
  REQUIRE(fac);
  REQUIRE(fac->size() == 2);
  for (int k = 0; k <= 12; ++k) {
    long want = 0;
    for (const auto& fc : *fac) {
      int r = fc.sub.n;
      for (int i = -1; i <= k; ++i) want += derlog_slice(fc.sub, i, F).dim_derlog() * num_monomials(4 - r, k - i);
    }
    CHECK(derlog_slice(A, k, F).dim_derlog() == want);
  }
}

TEST_CASE("Milnor series for B4") {
  Koszul K(parse_arrangement(kB4), F.p);
  auto mu = milnor_hilbert_series(K, 9);
  std::vector<long> tail(mu.begin() + 4, mu.end());
  CHECK(tail == std::vector<long>{1, 4, 10, 16, 22, 28});
}
