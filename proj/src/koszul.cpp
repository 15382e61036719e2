#include "arrspec/koszul.hpp"

#include "arrspec/error.hpp"

namespace arrspec {

using modp::Dense;
using modp::Echelon;

namespace {

Echelon empty_echelon(long cols) {
  Echelon E;
  E.R = Dense(0, static_cast<int>(cols));
  E.reduced = true;
  return E;
}

}  // namespace

Dense vstack(const Dense& a, const Dense& b) {
  if (a.rows == 0) return b;
  if (b.rows == 0) return a;
  if (a.cols != b.cols) throw Error("Shape", "vstack column mismatch");
  Dense out(a.rows + b.rows, a.cols);
  std::copy(a.a.begin(), a.a.end(), out.a.begin());
  std::copy(b.a.begin(), b.a.end(), out.a.begin() + a.a.size());
  return out;
}

int rank_modulo(Dense V, const Echelon& E, const modp::Field& F) {
  if (V.rows == 0) return 0;
  if (E.rank > 0) reduce_rows(V, E, F);
  return modp::rank(std::move(V), F);
}

Dense coordinates(const Dense& V, const Echelon& E) {
  Dense C(V.rows, E.rank);
  for (int r = 0; r < V.rows; ++r)
    for (int t = 0; t < E.rank; ++t) C(r, t) = V(r, E.pivots[t]);
  return C;
}

Koszul::Koszul(const Arrangement& A, uint32_t prime) : A_(A), F_(prime) {
  f_ = defining_polynomial(A_);
  df_ = gradient(f_);
}

const ModMap& Koszul::wedge(int j, int q) {
  auto& slot = wedge_[{j, q}];
  if (!slot) slot = std::make_unique<ModMap>(wedge_df_mod(f_, df_, j, q, F_));
  return *slot;
}

const ModMap& Koszul::dmap(int j, int q) {
  auto& slot = d_[{j, q}];
  if (!slot) slot = std::make_unique<ModMap>(exterior_d_map(n(), j, q).mod(F_));
  return *slot;
}

long Koszul::rank(int j, int q) {
  if (j < 0 || j >= n() || q < j) return 0;
  Key key{j, q};
  if (auto it = rank_.find(key); it != rank_.end()) return it->second;
  long r;
  if (auto it = cycles_.find(key); it != cycles_.end()) {
    r = dim(j, q) - it->second.rank;
  } else if (auto im = image_.find({j + 1, q + d()}); im != image_.end()) {
    r = im->second.rank;
  } else {
    // ranks of large slices are needed without their echelon forms
    auto& w = wedge(j, q);
    r = modp::rank(w.rows(), F_);
    wedge_.erase(key);
  }
  rank_[key] = r;
  return r;
}

long Koszul::h(int j, int q) {
  if (j < 0 || j > n() || q < j) return 0;
  return dim(j, q) - rank(j, q) - rank(j - 1, q - d());
}

const Echelon& Koszul::image(int j, int q) {
  Key key{j, q};
  if (auto it = image_.find(key); it != image_.end()) return it->second;
  Echelon E;
  if (j < 1 || j > n() || q - d() < j - 1) {
    E = empty_echelon(dim(j, q));
  } else {
    E = modp::echelon(wedge(j - 1, q - d()).rows(), F_, true);
    rank_[{j - 1, q - d()}] = E.rank;
  }
  return image_.emplace(key, std::move(E)).first->second;
}

const Echelon& Koszul::cycles(int j, int q) {
  Key key{j, q};
  if (auto it = cycles_.find(key); it != cycles_.end()) return it->second;
  Echelon E;
  const long D = dim(j, q);
  if (D == 0) {
    E = empty_echelon(0);
  } else if (j == n()) {
    Dense I(static_cast<int>(D), static_cast<int>(D));
    for (int i = 0; i < D; ++i) I(i, i) = 1;
    E = modp::echelon(std::move(I), F_, true);
  } else {
    Dense K = modp::kernel(wedge(j, q).columns(), F_);
    E = K.rows ? modp::echelon(std::move(K), F_, true) : empty_echelon(D);
    rank_[key] = D - E.rank;
  }
  return cycles_.emplace(key, std::move(E)).first->second;
}

const Dense& Koszul::new_generators(int j, int q) {
  Key key{j, q};
  if (auto it = gens_.find(key); it != gens_.end()) return it->second;
  const Echelon& Z = cycles(j, q);
  Dense residual = Z.R;
  if (q - 1 >= j && Z.rank > 0) {
    const Echelon& Zprev = cycles(j, q - 1);
    Dense S(0, static_cast<int>(dim(j, q)));
    for (int i = 0; i < n(); ++i) {
      Mono m{};
      m[i] = 1;
      S = vstack(S, times_monomial(Zprev.R, n(), j, q - 1, m));
    }
    if (S.rows) {
      Echelon ES = modp::echelon(std::move(S), F_, true);
      if (ES.rank) modp::reduce_rows(residual, ES, F_);
    }
  }
  Dense G;
  if (residual.rows) {
    G = modp::echelon(std::move(residual), F_, false).R;
  } else {
    G = Dense(0, static_cast<int>(dim(j, q)));
  }
  return gens_.emplace(key, std::move(G)).first->second;
}

LeftSolver::LeftSolver(const Dense& M, const modp::Field& F) : m_(M.rows), n_(M.cols), F_(F) {
  Dense aug(m_, n_ + m_);
  for (int r = 0; r < m_; ++r) {
    std::copy(M.row(r), M.row(r) + n_, aug.row(r));
    aug(r, n_ + r) = 1;
  }
  E_ = m_ ? modp::echelon(std::move(aug), F_, true) : empty_echelon(n_);
}

bool LeftSolver::solve(const Dense& B, Dense* X) const {
  if (B.cols != n_) throw Error("Shape", "LeftSolver right-hand side mismatch");
  *X = Dense(B.rows, m_);
  for (int r = 0; r < B.rows; ++r) {
    std::vector<double> v(B.row(r), B.row(r) + n_);
    double* x = X->row(r);
    for (int t = 0; t < E_.rank && E_.pivots[t] < n_; ++t) {
      double c = v[E_.pivots[t]];
      if (c == 0) continue;
      const double* row = E_.R.row(t);
      for (int col = 0; col < n_; ++col)
        if (row[col] != 0) v[col] = F_.red(v[col] - c * row[col]);
      for (int col = 0; col < m_; ++col)
        if (row[n_ + col] != 0) x[col] = F_.red(x[col] + c * row[n_ + col]);
    }
    for (double y : v)
      if (y != 0) return false;
  }
  return true;
}

Dense LeftSolver::kernel() const {
  int first = 0;
  while (first < E_.rank && E_.pivots[first] < n_) ++first;
  Dense K(E_.rank - first, m_);
  for (int t = first; t < E_.rank; ++t) std::copy(E_.R.row(t) + n_, E_.R.row(t) + n_ + m_, K.row(t - first));
  return K;
}

bool Koszul::preimage(int j, int q, const Dense& V, Dense* eta) {
  const int src = static_cast<int>(dim(j, q)), tgt = static_cast<int>(dim(j + 1, q + d()));
  if (V.cols != tgt) throw Error("Shape", "preimage dimension mismatch");
  auto& slot = preimageSystem_[{j, q}];
  if (!slot) slot = std::make_unique<LeftSolver>(src && tgt ? wedge(j, q).rows() : Dense(src, tgt), F_);
  return slot->solve(V, eta);
}

void Koszul::trim(long maxDim) {
  for (auto* cache : {&image_, &cycles_})
    for (auto it = cache->begin(); it != cache->end();)
      it = it->second.R.cols > maxDim ? cache->erase(it) : std::next(it);
  for (auto it = wedge_.begin(); it != wedge_.end();)
    it = it->second->tgtDim > maxDim ? wedge_.erase(it) : std::next(it);
}

}  // namespace arrspec
