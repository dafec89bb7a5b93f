#include "cdiag/degreewise.hpp"

#include <algorithm>

#include "cdiag/util.hpp"

namespace cdiag {

DegreewiseSSet tabulate(const SimplicialSet& X, int top) {
  DegreewiseSSet T;
  T.top = top;
  T.counts.assign(top + 1, 0);
  T.face.resize(top + 1);
  T.degen.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    const auto& list = X.simplices(n);
    T.counts[n] = static_cast<int>(list.size());
    if (n >= 1) {
      const auto& lower = X.simplices(n - 1);
      auto at = [&](const Simplex& s) {
        return static_cast<int>(std::lower_bound(lower.begin(), lower.end(), s) -
                                lower.begin());
      };
      T.face[n].assign(n + 1, std::vector<int>(list.size()));
      for (size_t e = 0; e < list.size(); ++e) {
        for (int i = 0; i <= n; ++i) T.face[n][i][e] = at(X.face(list[e], i));
      }
    }
    if (n < top) {
      const auto& upper = X.simplices(n + 1);
      auto at = [&](const Simplex& s) {
        return static_cast<int>(std::lower_bound(upper.begin(), upper.end(), s) -
                                upper.begin());
      };
      T.degen[n].assign(n + 1, std::vector<int>(list.size()));
      for (size_t e = 0; e < list.size(); ++e) {
        for (int i = 0; i <= n; ++i) T.degen[n][i][e] = at(X.degeneracy(list[e], i));
      }
    }
  }
  return T;
}

ExtractedPresentation extract_presentation(const DegreewiseSSet& T) {
  ExtractedPresentation out;
  SimplicialSet::Builder b;
  out.elem_simplex.resize(T.top + 1);

  // An element is degenerate iff it equals s_i d_i of itself for some i; its
  // EZ normal form is obtained by stripping such indices (largest first).
  auto is_deg_at = [&](int n, int e, int i) {
    return T.degen[n - 1][i][T.face[n][i][e]] == e;
  };

  for (int n = 0; n <= T.top; ++n) {
    out.elem_simplex[n].resize(T.counts[n]);
    for (int e = 0; e < T.counts[n]; ++e) {
      int strip = -1;
      for (int i = n - 1; i >= 0; --i) {
        if (is_deg_at(n, e, i)) {
          strip = i;
          break;
        }
      }
      if (strip < 0) {
        // Nondegenerate: a new generator, its faces already in normal form.
        std::vector<Simplex> faces;
        if (n >= 1) {
          faces.reserve(n + 1);
          for (int i = 0; i <= n; ++i) {
            faces.push_back(out.elem_simplex[n - 1][T.face[n][i][e]]);
          }
        }
        GenId id = b.add(n, std::move(faces));
        out.elem_simplex[n][e] = Simplex::of(id);
        out.gen_elem.push_back({n, e});
      } else {
        const Simplex& sub = out.elem_simplex[n - 1][T.face[n][strip][e]];
        out.elem_simplex[n][e] = Simplex{sub.word.inserted(strip), sub.gen};
      }
    }
  }
  out.set = b.build();
  return out;
}

}  // namespace cdiag
