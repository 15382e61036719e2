#pragma once
#include <array>
#include <cstdint>
#include <vector>

namespace arrspec {

inline constexpr int kMaxVars = 4;
using Mono = std::array<int, kMaxVars>;  // unused trailing exponents are zero

long binom(long n, long k);
// C(k+n-1, n-1); zero for k < 0
long num_monomials(int n, int k);

// Degree-k monomials in lex order: exponent of x1 descending, then x2, ...
std::vector<Mono> monomial_basis(int n, int k);
// Position of a degree-k monomial in monomial_basis(n, k).
long mono_rank(int n, const Mono& a, int k);

// Strictly increasing j-subsets of {0..n-1} in lex order, as bitmasks.
std::vector<unsigned> subsets(int n, int j);
int subset_index(int n, unsigned mask);  // position within subsets(n, popcount(mask))

}  // namespace arrspec
