#include "arrspec/monomial.hpp"

#include <bit>
#include <map>

namespace arrspec {

long binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long num_monomials(int n, int k) { return k < 0 ? 0 : binom(k + n - 1, n - 1); }

std::vector<Mono> monomial_basis(int n, int k) {
  std::vector<Mono> out;
  if (k < 0) return out;
  out.reserve(num_monomials(n, k));
  Mono cur{};
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, k);
  return out;
}

long mono_rank(int n, const Mono& a, int k) {
  // monomials before a: those with a larger exponent at the first differing slot
  long r = 0;
  int left = k;
  for (int i = 0; i + 1 < n; ++i) {
    r += binom(left - a[i] - 1 + (n - i - 1), n - i - 1);
    left -= a[i];
  }
  return r;
}

std::vector<unsigned> subsets(int n, int j) {
  std::vector<unsigned> out;
  // enumerate in lex order of the sorted index lists
  auto rec = [&](auto&& self, int start, int left, unsigned mask) -> void {
    if (left == 0) {
      out.push_back(mask);
      return;
    }
    for (int i = start; i <= n - left; ++i) self(self, i + 1, left - 1, mask | (1u << i));
  };
  rec(rec, 0, j, 0u);
  return out;
}

int subset_index(int n, unsigned mask) {
  static thread_local std::map<std::pair<int, unsigned>, int> memo;
  auto key = std::make_pair(n, mask);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  auto all = subsets(n, std::popcount(mask));
  for (size_t i = 0; i < all.size(); ++i) memo[{n, all[i]}] = static_cast<int>(i);
  return memo.at(key);
}

}  // namespace arrspec
