#pragma once
#include <cmath>
#include <cstdint>
#include <vector>

namespace arrspec::modp {

// Primes below 8e6: a 128-term dot product of residues stays below 2^53,
// so double-precision products accumulate exactly between reductions.
inline constexpr uint32_t kPrimes[] = {7999993u, 7999963u, 7999921u, 7999919u};

struct Field {
  uint32_t p;
  double pd, pinv;
  explicit Field(uint32_t prime) : p(prime), pd(prime), pinv(1.0 / prime) {}

  double red(double x) const {
    double r = x - std::floor(x * pinv) * pd;
    if (r < 0) r += pd;
    else if (r >= pd) r -= pd;
    return r;
  }
  double mul(double a, double b) const { return red(a * b); }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
  }
  uint32_t inv(uint32_t a) const;
  uint32_t from_signed(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p);
    return static_cast<uint32_t>(r < 0 ? r + p : r);
  }
  uint32_t neg(uint32_t a) const { return a ? p - a : 0; }
};

// Row-major dense matrix of residues stored as doubles.
struct Dense {
  int rows = 0, cols = 0;
  std::vector<double> a;
  Dense() = default;
  Dense(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
  double* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
  const double* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }
  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  Dense transpose() const;
};

struct Echelon {
  int rank = 0;
  std::vector<int> pivots;  // pivot column of echelon row t
  Dense R;                  // rank x cols; reduced (pivot columns = identity) when requested
  bool reduced = false;
};

// Blocked elimination: dense products for trailing updates, OpenMP for reductions.
Echelon echelon(Dense A, const Field& F, bool reduce);
// Unblocked integer elimination, the reference the blocked kernel is tested against.
Echelon echelon_reference(Dense A, const Field& F, bool reduce);

int rank(Dense A, const Field& F);
// Rows span the kernel of A (A x = 0 with x a row of the result).
Dense kernel(const Dense& A, const Field& F);
Dense kernel_from(const Echelon& E, int cols, const Field& F);
// V <- V - V[:,piv] * R for a reduced echelon R: pivot coordinates become zero.
void reduce_rows(Dense& V, const Echelon& E, const Field& F);
// C <- C + s * A * B with all operands residues; the result is reduced.
void gemm_acc(Dense& C, const Dense& A, const Dense& B, double s, const Field& F);


}  // namespace arrspec::modp
