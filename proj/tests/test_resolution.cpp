#include "arrspec/error.hpp"
#include "arrspec/resolution.hpp"
#include "doctest.h"

using namespace arrspec;

namespace {
const char* kB4 = "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
const char* kG5 = "1 1 1 1\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
modp::Field F(modp::kPrimes[0]);

modp::Dense identity(long n) {
  modp::Dense I(static_cast<int>(n), static_cast<int>(n));
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}
using modp::Dense;
}  // namespace

TEST_CASE("free module and residue field") {
  auto R3 = DegreewiseModule::sub(4, 0, -3, 3, [](int k) { return identity(num_monomials(4, k - 3)); }, F);
  auto T = betti_table(R3, 9);
  CHECK(T.entries.size() == 1);
  CHECK(T.entries.at({0, 3}) == 1);
  CHECK(T.regularity == 3);
  auto Rm = DegreewiseModule::quotient(4, 0, 0, 0,
                                       [](int k) { return k == 0 ? Dense(0, 1) : identity(num_monomials(4, k)); }, F);
  auto U = betti_table(Rm, 7);
  for (int j = 0; j <= 4; ++j) CHECK(U.entries.at({j, j}) == binom(4, j));
  CHECK(U.entries.size() == 5);
  CHECK(U.regularity == 0);
  CHECK(U.alternatingSumOk);
  CHECK_THROWS_AS(betti_table(Rm, 3), Error);
}

TEST_CASE("B4 Milnor module and the regularity chain") {
  Koszul K(parse_arrangement(kB4), F.p);
  auto M = milnor_module(K);
  CHECK(tor_dims(M, 0, 4) == 1);
  CHECK(tor_dims(M, 1, 7) == 4);
  auto r = verify_reg_chain(K);
  CHECK(r.ok());
  CHECK(r.regM <= 6);
  auto D = regularity_derlog(K.f(), F);
  CHECK(D.reg == 0);
  CHECK(D.verdict);
  CHECK(D.table.entries.size() == 1);
  CHECK(D.table.entries.at({0, 0}) == 4);
}

TEST_CASE("G5 regularities") {
  Koszul K(parse_arrangement(kG5), F.p);
  auto r = verify_reg_chain(K);
  CHECK(r.ok());
  CHECK(r.regM <= 8);
  auto D = regularity_derlog(K.f(), F);
  CHECK(D.verdict);
  CHECK(D.table.alternatingSumOk);
}
