#include "cdiag/pushout.hpp"

#include <algorithm>
#include <numeric>

#include "cdiag/degreewise.hpp"
#include "cdiag/util.hpp"

namespace cdiag {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Pushout pushout(const SimplicialMap& f, const SimplicialMap& g) {
  if (f.src.get() != g.src.get()) fail(ErrorKind::Parameter, "pushout legs need a common source");
  const SimplicialSet& A = *f.src;
  const SimplicialSet& X = *f.dst;
  const SimplicialSet& B = *g.dst;
  const int top = std::max(X.dim(), B.dim());

  // Degreewise classes of X_n ⊔ B_n under f(a) ~ g(a).
  std::vector<UnionFind> uf;
  std::vector<int> xcount(top + 1, 0), bcount(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    xcount[n] = static_cast<int>(X.simplices(n).size());
    bcount[n] = static_cast<int>(B.simplices(n).size());
    uf.emplace_back(xcount[n] + bcount[n]);
  }
  for (int n = 0; n <= top; ++n) {
    // A.simplices(n) includes the degenerate simplices above dim(A).
    for (const Simplex& a : A.simplices(n)) {
      int xi = X.index_of(f.apply(a));
      int bi = B.index_of(g.apply(a));
      uf[n].unite(xi, xcount[n] + bi);
    }
  }

  // Dense class ids per degree.
  std::vector<std::vector<int>> cls(top + 1);
  std::vector<int> ccount(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    cls[n].assign(xcount[n] + bcount[n], -1);
    for (int e = 0; e < xcount[n] + bcount[n]; ++e) {
      int r = uf[n].find(e);
      if (cls[n][r] < 0) cls[n][r] = ccount[n]++;
      cls[n][e] = cls[n][r];
    }
  }

  // A canonical representative per class, to evaluate structure maps.
  std::vector<std::vector<int>> rep(top + 1);
  for (int n = 0; n <= top; ++n) {
    rep[n].assign(ccount[n], -1);
    for (int e = xcount[n] + bcount[n] - 1; e >= 0; --e) rep[n][cls[n][e]] = e;
  }

  auto face_raw = [&](int n, int i, int e) -> int {
    if (e < xcount[n]) {
      return X.index_of(X.face(X.simplices(n)[e], i));
    }
    return xcount[n - 1] + B.index_of(B.face(B.simplices(n)[e - xcount[n]], i));
  };
  auto degen_raw = [&](int n, int i, int e) -> int {
    if (e < xcount[n]) {
      return X.index_of(X.degeneracy(X.simplices(n)[e], i));
    }
    return xcount[n + 1] + B.index_of(B.degeneracy(B.simplices(n)[e - xcount[n]], i));
  };

  DegreewiseSSet T;
  T.top = top;
  T.counts = ccount;
  T.face.resize(top + 1);
  T.degen.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    if (n >= 1) {
      T.face[n].assign(n + 1, std::vector<int>(ccount[n]));
      for (int c = 0; c < ccount[n]; ++c) {
        for (int i = 0; i <= n; ++i) {
          T.face[n][i][c] = cls[n - 1][face_raw(n, i, rep[n][c])];
        }
      }
    }
    if (n < top) {
      T.degen[n].assign(n + 1, std::vector<int>(ccount[n]));
      for (int c = 0; c < ccount[n]; ++c) {
        for (int i = 0; i <= n; ++i) {
          T.degen[n][i][c] = cls[n + 1][degen_raw(n, i, rep[n][c])];
        }
      }
    }
  }

  ExtractedPresentation P = extract_presentation(T);
  Pushout out;
  out.set = P.set;
  out.from_right.src = f.dst;
  out.from_right.dst = P.set;
  for (GenId gx = 0; gx < X.generator_count(); ++gx) {
    int n = X.generator(gx).dim;
    int e = cls[n][X.index_of(Simplex::of(gx))];
    out.from_right.img.push_back(P.elem_simplex[n][e]);
  }
  out.from_left.src = g.dst;
  out.from_left.dst = P.set;
  for (GenId gb = 0; gb < B.generator_count(); ++gb) {
    int n = B.generator(gb).dim;
    int e = cls[n][xcount[n] + B.index_of(Simplex::of(gb))];
    out.from_left.img.push_back(P.elem_simplex[n][e]);
  }
  return out;
}

}  // namespace cdiag
