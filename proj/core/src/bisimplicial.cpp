#include "cdiag/bisimplicial.hpp"

#include <algorithm>
#include <sstream>

#include "cdiag/degreewise.hpp"
#include "cdiag/util.hpp"

namespace cdiag {

std::vector<int> IBiSet::elements(int n, int m) const {
  std::vector<int> out(static_cast<size_t>(count(n, m)));
  for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

std::vector<int> IBiSet::fillers(int n, int m, const std::vector<int>& hfaces,
                                 const std::vector<int>& vfaces) const {
  std::vector<int> out;
  for (int e : elements(n, m)) {
    bool ok = true;
    for (int i = 0; ok && i <= n && !hfaces.empty(); ++i) {
      ok = h_face(n, m, i, e) == hfaces[i];
    }
    for (int j = 0; ok && j <= m && !vfaces.empty(); ++j) {
      ok = v_face(n, m, j, e) == vfaces[j];
    }
    if (ok) out.push_back(e);
  }
  return out;
}

void IBiSet::require_inside(int n, int m) const {
  BiBounds b = bounds();
  if (n < 0 || m < 0 || n > b.p || m > b.q) {
    fail(ErrorKind::Bounds, "bidegree (" + std::to_string(n) + ", " + std::to_string(m) +
                                ") outside the bounded view");
  }
}

bool bi_nondegenerate(const IBiSet& X, int n, int m, int e) {
  for (int i = 0; i < n; ++i) {
    if (X.h_deg(n - 1, m, i, X.h_face(n, m, i, e)) == e) return false;
  }
  for (int j = 0; j < m; ++j) {
    if (X.v_deg(n, m - 1, j, X.v_face(n, m, j, e)) == e) return false;
  }
  return true;
}

BiNormalForm bi_normal_form(const IBiSet& X, int n, int m, int e) {
  for (int i = n - 1; i >= 0; --i) {
    int f = X.h_face(n, m, i, e);
    if (X.h_deg(n - 1, m, i, f) == e) {
      BiNormalForm sub = bi_normal_form(X, n - 1, m, f);
      sub.hword = sub.hword.inserted(i);
      return sub;
    }
  }
  for (int j = m - 1; j >= 0; --j) {
    int f = X.v_face(n, m, j, e);
    if (X.v_deg(n, m - 1, j, f) == e) {
      BiNormalForm sub = bi_normal_form(X, n, m - 1, f);
      sub.vword = sub.vword.inserted(j);
      return sub;
    }
  }
  return BiNormalForm{Word(), Word(), n, m, e};
}

int bi_vertex(const IBiSet& X, int n, int m, int e, int i, int j) {
  // Drop every horizontal vertex except i (largest index first keeps the
  // remaining indices stable), then every vertical vertex except j.
  int cur = e;
  int level = n;
  for (int k = n; k >= 0; --k) {
    if (k == i) continue;
    cur = X.h_face(level, m, k, cur);
    --level;
  }
  level = m;
  for (int k = m; k >= 0; --k) {
    if (k == j) continue;
    cur = X.v_face(0, level, k, cur);
    --level;
  }
  return cur;
}

std::string validate_biset(const IBiSet& X) {
  BiBounds b = X.bounds();
  std::ostringstream bad;
  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) {
      for (int e : X.elements(n, m)) {
        if (n >= 2) {
          for (int j = 1; j <= n; ++j) {
            for (int i = 0; i < j; ++i) {
              if (X.h_face(n - 1, m, i, X.h_face(n, m, j, e)) !=
                  X.h_face(n - 1, m, j - 1, X.h_face(n, m, i, e))) {
                return "horizontal dd identity fails";
              }
            }
          }
        }
        if (m >= 2) {
          for (int j = 1; j <= m; ++j) {
            for (int i = 0; i < j; ++i) {
              if (X.v_face(n, m - 1, i, X.v_face(n, m, j, e)) !=
                  X.v_face(n, m - 1, j - 1, X.v_face(n, m, i, e))) {
                return "vertical dd identity fails";
              }
            }
          }
        }
        if (n >= 1 && m >= 1) {
          for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= m; ++j) {
              if (X.v_face(n - 1, m, j, X.h_face(n, m, i, e)) !=
                  X.h_face(n, m - 1, i, X.v_face(n, m, j, e))) {
                return "horizontal and vertical faces do not commute";
              }
            }
          }
        }
        if (n < b.p) {
          for (int i = 0; i <= n; ++i) {
            int s = X.h_deg(n, m, i, e);
            if (X.h_face(n + 1, m, i, s) != e || X.h_face(n + 1, m, i + 1, s) != e) {
              return "horizontal ds identity fails";
            }
            if (m >= 1) {
              for (int j = 0; j <= m; ++j) {
                if (X.v_face(n + 1, m, j, s) !=
                    X.h_deg(n, m - 1, i, X.v_face(n, m, j, e))) {
                  return "horizontal degeneracy does not commute with vertical face";
                }
              }
            }
          }
        }
        if (m < b.q) {
          for (int j = 0; j <= m; ++j) {
            int s = X.v_deg(n, m, j, e);
            if (X.v_face(n, m + 1, j, s) != e || X.v_face(n, m + 1, j + 1, s) != e) {
              return "vertical ds identity fails";
            }
            if (n >= 1) {
              for (int i = 0; i <= n; ++i) {
                if (X.h_face(n, m + 1, i, s) !=
                    X.v_deg(n - 1, m, j, X.h_face(n, m, i, e))) {
                  return "vertical degeneracy does not commute with horizontal face";
                }
              }
            }
          }
        }
        if (n < b.p && m < b.q) {
          for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= m; ++j) {
              if (X.v_deg(n + 1, m, j, X.h_deg(n, m, i, e)) !=
                  X.h_deg(n, m + 1, i, X.v_deg(n, m, j, e))) {
                return "degeneracies do not commute";
              }
            }
          }
        }
      }
    }
  }
  // Marking: contains the horizontal degeneracy image of (0, m), closed
  // under vertical operators.
  if (b.p >= 1) {
    for (int m = 0; m <= b.q; ++m) {
      for (int e : X.elements(0, m)) {
        if (!X.is_marked(m, X.h_deg(0, m, 0, e))) {
          return "marking misses a horizontally degenerate element";
        }
      }
      for (int e : X.elements(1, m)) {
        if (!X.is_marked(m, e)) continue;
        if (m >= 1) {
          for (int j = 0; j <= m; ++j) {
            if (!X.is_marked(m - 1, X.v_face(1, m, j, e))) {
              return "marking not closed under vertical faces";
            }
          }
        }
        if (m < b.q) {
          for (int j = 0; j <= m; ++j) {
            if (!X.is_marked(m + 1, X.v_deg(1, m, j, e))) {
              return "marking not closed under vertical degeneracies";
            }
          }
        }
      }
    }
  }
  return {};
}

long long BiView::count(int n, int m) const {
  require_inside(n, m);
  return counts_[idx(n, m)];
}

int BiView::h_face(int n, int m, int i, int e) const { return hface_[idx(n, m)][i][e]; }
int BiView::v_face(int n, int m, int j, int e) const { return vface_[idx(n, m)][j][e]; }
int BiView::h_deg(int n, int m, int i, int e) const { return hdeg_[idx(n, m)][i][e]; }
int BiView::v_deg(int n, int m, int j, int e) const { return vdeg_[idx(n, m)][j][e]; }

bool BiView::is_marked(int m, int e) const { return marked_[m][e] != 0; }

std::string BiView::label(int n, int m, int e) const { return labels_[idx(n, m)][e]; }

std::shared_ptr<BiView> materialize(const IBiSet& X,
                                    const std::function<bool(int, int)>* marking,
                                    const std::vector<std::vector<char>>* masks,
                                    std::vector<std::vector<int>>* kept_out) {
  BiBounds b = X.bounds();
  auto out = std::make_shared<BiView>();
  out->bounds_ = b;
  const int cells = (b.p + 1) * (b.q + 1);
  out->counts_.assign(cells, 0);
  out->hface_.resize(cells);
  out->vface_.resize(cells);
  out->hdeg_.resize(cells);
  out->vdeg_.resize(cells);
  out->labels_.resize(cells);
  out->marked_.resize(b.q + 1);

  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) (void)X.elements(n, m);
  }

  // New ids per bidegree under the masks.
  std::vector<std::vector<int>> newid(cells);
  std::vector<std::vector<int>> kept(cells);
  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) {
      int c = mask_index(b, n, m);
      long long total = X.count(n, m);
      newid[c].assign(total, -1);
      for (int e = 0; e < total; ++e) {
        if (masks && !(*masks)[c][e]) continue;
        newid[c][e] = static_cast<int>(kept[c].size());
        kept[c].push_back(e);
      }
      out->counts_[c] = static_cast<long long>(kept[c].size());
    }
  }

  auto remap = [&](int n, int m, int e) {
    int v = newid[mask_index(b, n, m)][e];
    if (v < 0) fail(ErrorKind::Validation, "mask is not closed under the operators");
    return v;
  };

  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) {
      int c = mask_index(b, n, m);
      const auto& ks = kept[c];
      out->labels_[c].reserve(ks.size());
      for (int e : ks) out->labels_[c].push_back(X.label(n, m, e));
      if (n >= 1) {
        out->hface_[c].assign(n + 1, std::vector<int>(ks.size()));
        for (int i = 0; i <= n; ++i) {
          for (size_t t = 0; t < ks.size(); ++t) {
            out->hface_[c][i][t] = remap(n - 1, m, X.h_face(n, m, i, ks[t]));
          }
        }
      }
      if (m >= 1) {
        out->vface_[c].assign(m + 1, std::vector<int>(ks.size()));
        for (int j = 0; j <= m; ++j) {
          for (size_t t = 0; t < ks.size(); ++t) {
            out->vface_[c][j][t] = remap(n, m - 1, X.v_face(n, m, j, ks[t]));
          }
        }
      }
      if (n < b.p) {
        out->hdeg_[c].assign(n + 1, std::vector<int>(ks.size()));
        for (int i = 0; i <= n; ++i) {
          for (size_t t = 0; t < ks.size(); ++t) {
            out->hdeg_[c][i][t] = remap(n + 1, m, X.h_deg(n, m, i, ks[t]));
          }
        }
      }
      if (m < b.q) {
        out->vdeg_[c].assign(m + 1, std::vector<int>(ks.size()));
        for (int j = 0; j <= m; ++j) {
          for (size_t t = 0; t < ks.size(); ++t) {
            out->vdeg_[c][j][t] = remap(n, m + 1, X.v_deg(n, m, j, ks[t]));
          }
        }
      }
    }
  }
  for (int m = 0; m <= b.q; ++m) {
    if (b.p < 1) break;
    int c = mask_index(b, 1, m);
    out->marked_[m].resize(kept[c].size());
    for (size_t t = 0; t < kept[c].size(); ++t) {
      bool v = marking ? (*marking)(m, kept[c][t]) : X.is_marked(m, kept[c][t]);
      out->marked_[m][t] = v ? 1 : 0;
    }
  }
  if (kept_out) *kept_out = std::move(kept);
  return out;
}

namespace {

// Shared implementation for box products and rows-constant views: levelwise
// element lists drawn from simplicial sets, with op tables built on demand.
class LevelwiseBiSet : public IBiSet {
 public:
  BiBounds bounds() const override { return bounds_; }
  long long count(int n, int m) const override {
    require_inside(n, m);
    return static_cast<long long>(level(n, m).size());
  }

 protected:
  BiBounds bounds_;
  // Sorted canonical lists per bidegree, filled in the constructor.
  std::vector<std::vector<std::pair<Simplex, Simplex>>> cells_;
  const std::vector<std::pair<Simplex, Simplex>>& level(int n, int m) const {
    return cells_[n * (bounds_.q + 1) + m];
  }
  int index_in(int n, int m, const std::pair<Simplex, Simplex>& v) const {
    const auto& list = level(n, m);
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || !(*it == v)) fail(ErrorKind::Internal, "element not in level");
    return static_cast<int>(it - list.begin());
  }
};

class BoxProduct final : public LevelwiseBiSet {
 public:
  BoxProduct(MarkedSSet X, SSetPtr Y, int p, int q) : X_(std::move(X)), Y_(std::move(Y)) {
    bounds_ = {p, q};
    cells_.resize((p + 1) * (q + 1));
    for (int n = 0; n <= p; ++n) {
      for (int m = 0; m <= q; ++m) {
        auto& cell = cells_[n * (q + 1) + m];
        for (const Simplex& x : X_.set()->simplices(n)) {
          for (const Simplex& y : Y_->simplices(m)) cell.push_back({x, y});
        }
        std::sort(cell.begin(), cell.end());
      }
    }
  }

  int h_face(int n, int m, int i, int e) const override {
    auto [x, y] = level(n, m)[e];
    return index_in(n - 1, m, {X_.set()->face(x, i), y});
  }
  int v_face(int n, int m, int j, int e) const override {
    auto [x, y] = level(n, m)[e];
    return index_in(n, m - 1, {x, Y_->face(y, j)});
  }
  int h_deg(int n, int m, int i, int e) const override {
    auto [x, y] = level(n, m)[e];
    return index_in(n + 1, m, {X_.set()->degeneracy(x, i), y});
  }
  int v_deg(int n, int m, int j, int e) const override {
    auto [x, y] = level(n, m)[e];
    return index_in(n, m + 1, {x, Y_->degeneracy(y, j)});
  }
  bool is_marked(int m, int e) const override {
    const auto& [x, y] = level(1, m)[e];
    return X_.is_marked(x);
  }
  std::string label(int n, int m, int e) const override {
    const auto& [x, y] = level(n, m)[e];
    return "(" + simplex_label(*X_.set(), x) + " | " + simplex_label(*Y_, y) + ")";
  }

 private:
  MarkedSSet X_;
  SSetPtr Y_;
};

class RowsConstant final : public LevelwiseBiSet {
 public:
  RowsConstant(MarkedSSet X, int p, int q) : X_(std::move(X)) {
    bounds_ = {p, q};
    cells_.resize((p + 1) * (q + 1));
    Simplex unit = Simplex::of(0);
    for (int n = 0; n <= p; ++n) {
      for (int m = 0; m <= q; ++m) {
        auto& cell = cells_[n * (q + 1) + m];
        for (const Simplex& x : X_.set()->simplices(n)) cell.push_back({x, unit});
      }
    }
  }

  int h_face(int n, int m, int i, int e) const override {
    (void)m;
    return index_in(n - 1, m, {X_.set()->face(level(n, m)[e].first, i), level(n, m)[e].second});
  }
  int v_face(int n, int m, int j, int e) const override {
    (void)j;
    return e;
  }
  int h_deg(int n, int m, int i, int e) const override {
    return index_in(n + 1, m, {X_.set()->degeneracy(level(n, m)[e].first, i),
                               level(n, m)[e].second});
  }
  int v_deg(int n, int m, int j, int e) const override {
    (void)j;
    return e;
  }
  bool is_marked(int m, int e) const override { return X_.is_marked(level(1, m)[e].first); }
  std::string label(int n, int m, int e) const override {
    return simplex_label(*X_.set(), level(n, m)[e].first);
  }

 private:
  MarkedSSet X_;
};

}  // namespace

BiPtr box_product(const SSetPtr& X, const SSetPtr& Y, int p, int q) {
  return std::make_shared<BoxProduct>(MarkedSSet::flat(X), Y, p, q);
}

BiPtr box_product_marked(const MarkedSSet& X, const SSetPtr& Y, int p, int q) {
  return std::make_shared<BoxProduct>(X, Y, p, q);
}

BiPtr rows_constant(const MarkedSSet& X, int p, int q) {
  return std::make_shared<RowsConstant>(X, p, q);
}

BiSlice slice(const IBiSet& X, BiAxis axis, int index) {
  BiBounds b = X.bounds();
  const bool col = axis == BiAxis::Column;
  if (index < 0 || index > (col ? b.p : b.q)) {
    fail(ErrorKind::Bounds, "slice index outside the bounded view");
  }
  int top = col ? b.q : b.p;
  // Force lazy views to intern every touched bidegree; handles are then
  // dense 0..count-1.
  for (int k = 0; k <= top; ++k) {
    (void)(col ? X.elements(index, k) : X.elements(k, index));
  }
  DegreewiseSSet T;
  T.top = top;
  T.counts.resize(top + 1);
  T.face.resize(top + 1);
  T.degen.resize(top + 1);
  auto cnt = [&](int k) { return col ? X.count(index, k) : X.count(k, index); };
  auto fc = [&](int k, int i, int e) {
    return col ? X.v_face(index, k, i, e) : X.h_face(k, index, i, e);
  };
  auto dg = [&](int k, int i, int e) {
    return col ? X.v_deg(index, k, i, e) : X.h_deg(k, index, i, e);
  };
  for (int k = 0; k <= top; ++k) {
    T.counts[k] = static_cast<int>(cnt(k));
    if (k >= 1) {
      T.face[k].assign(k + 1, std::vector<int>(T.counts[k]));
      for (int i = 0; i <= k; ++i) {
        for (int e = 0; e < T.counts[k]; ++e) T.face[k][i][e] = fc(k, i, e);
      }
    }
    if (k < top) {
      T.degen[k].assign(k + 1, std::vector<int>(T.counts[k]));
      for (int i = 0; i <= k; ++i) {
        for (int e = 0; e < T.counts[k]; ++e) T.degen[k][i][e] = dg(k, i, e);
      }
    }
  }
  ExtractedPresentation P = extract_presentation(T);
  return BiSlice{P.set, std::move(P.elem_simplex)};
}

MarkedSSet row_marked(const IBiSet& X, int m) {
  BiSlice row = slice(X, BiAxis::Row, m);
  std::vector<Simplex> marked;
  if (X.bounds().p >= 1) {
    long long total = X.count(1, m);
    for (int e = 0; e < total; ++e) {
      const Simplex& s = row.elem_simplex[1][e];
      if (s.word.empty() && X.is_marked(m, e)) marked.push_back(s);
    }
  }
  return MarkedSSet(row.set, std::move(marked));
}

BiSlice diagonal_slice(const IBiSet& X) {
  BiBounds b = X.bounds();
  int top = std::min(b.p, b.q);
  for (int k = 0; k <= top; ++k) {
    (void)X.elements(k, k);
    if (k < top) (void)X.elements(k + 1, k);
  }
  DegreewiseSSet T;
  T.top = top;
  T.counts.resize(top + 1);
  T.face.resize(top + 1);
  T.degen.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    T.counts[k] = static_cast<int>(X.count(k, k));
    if (k >= 1) {
      T.face[k].assign(k + 1, std::vector<int>(T.counts[k]));
      for (int i = 0; i <= k; ++i) {
        for (int e = 0; e < T.counts[k]; ++e) {
          T.face[k][i][e] = X.v_face(k - 1, k, i, X.h_face(k, k, i, e));
        }
      }
    }
    if (k < top) {
      T.degen[k].assign(k + 1, std::vector<int>(T.counts[k]));
      for (int i = 0; i <= k; ++i) {
        for (int e = 0; e < T.counts[k]; ++e) {
          T.degen[k][i][e] = X.v_deg(k + 1, k, i, X.h_deg(k, k, i, e));
        }
      }
    }
  }
  ExtractedPresentation P = extract_presentation(T);
  return BiSlice{P.set, std::move(P.elem_simplex)};
}

MarkedSSet diagonal_marked(const IBiSet& X) {
  BiSlice diag = diagonal_slice(X);
  BiBounds b = X.bounds();
  std::vector<Simplex> marked;
  if (b.p >= 1 && b.q >= 1) {
    long long total = X.count(1, 1);
    for (int e = 0; e < total; ++e) {
      const Simplex& s = diag.elem_simplex[1][e];
      if (s.word.empty() && X.is_marked(1, e)) marked.push_back(s);
    }
  }
  return MarkedSSet(diag.set, std::move(marked));
}

BiPtr full_subset(const BiPtr& X, const std::vector<int>& vertices) {
  BiBounds b = X->bounds();
  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) (void)X->elements(n, m);
  }
  std::vector<std::vector<char>> masks((b.p + 1) * (b.q + 1));
  std::vector<char> in_v(static_cast<size_t>(X->count(0, 0)), 0);
  for (int v : vertices) in_v.at(v) = 1;
  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) {
      long long total = X->count(n, m);
      auto& mask = masks[mask_index(b, n, m)];
      mask.assign(total, 1);
      for (int e = 0; e < total; ++e) {
        for (int i = 0; i <= n && mask[e]; ++i) {
          for (int j = 0; j <= m && mask[e]; ++j) {
            if (!in_v[bi_vertex(*X, n, m, e, i, j)]) mask[e] = 0;
          }
        }
      }
    }
  }
  return materialize(*X, nullptr, &masks);
}

BiPtr bidegree_skeleton(const BiPtr& X, int s) {
  if (s < 0) fail(ErrorKind::Parameter, "skeleton level must be >= 0");
  BiBounds b = X->bounds();
  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) (void)X->elements(n, m);
  }
  std::vector<std::vector<char>> masks((b.p + 1) * (b.q + 1));
  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) {
      long long total = X->count(n, m);
      auto& mask = masks[mask_index(b, n, m)];
      mask.assign(total, 0);
      for (int e = 0; e < total; ++e) {
        BiNormalForm nf = bi_normal_form(*X, n, m, e);
        mask[e] = (nf.n + nf.m <= s) ? 1 : 0;
      }
    }
  }
  return materialize(*X, nullptr, &masks);
}

namespace {

int apply_bi_words(const IBiSet& B, const BiNormalForm& nf, int value) {
  int n = nf.n, m = nf.m;
  int cur = value;
  const auto& v = nf.vword.indices();
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    cur = B.v_deg(n, m, *it, cur);
    ++m;
  }
  const auto& h = nf.hword.indices();
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    cur = B.h_deg(n, m, *it, cur);
    ++n;
  }
  return cur;
}

}  // namespace

long long enumerate_bi_maps(const IBiSet& A, const IBiSet& B, const BiMapSearch& search,
                            const std::function<bool(const BiMapTable&)>& visit) {
  BiBounds ab = A.bounds();
  BiBounds bb = B.bounds();
  if (bb.p < ab.p || bb.q < ab.q) {
    fail(ErrorKind::Bounds, "target view does not cover the source bounds");
  }
  struct Cell {
    int n, m, e;
  };
  std::vector<Cell> order;
  for (int n = 0; n <= ab.p; ++n) {
    for (int m = 0; m <= ab.q; ++m) (void)A.elements(n, m);
  }
  std::vector<std::vector<BiNormalForm>> forms((ab.p + 1) * (ab.q + 1));
  for (int n = 0; n <= ab.p; ++n) {
    for (int m = 0; m <= ab.q; ++m) {
      int c = mask_index(ab, n, m);
      long long total = A.count(n, m);
      forms[c].reserve(total);
      for (int e = 0; e < total; ++e) {
        forms[c].push_back(bi_normal_form(A, n, m, e));
        if (forms[c].back().hword.empty() && forms[c].back().vword.empty()) {
          order.push_back({n, m, e});
        }
      }
    }
  }
  std::stable_sort(order.begin(), order.end(), [](const Cell& a, const Cell& b) {
    if (a.n + a.m != b.n + b.m) return a.n + a.m < b.n + b.m;
    if (a.n != b.n) return a.n < b.n;
    return a.e < b.e;
  });

  BiMapTable table;
  table.src_bounds = ab;
  table.values.resize((ab.p + 1) * (ab.q + 1));
  for (int n = 0; n <= ab.p; ++n) {
    for (int m = 0; m <= ab.q; ++m) {
      table.values[mask_index(ab, n, m)].assign(A.count(n, m), -1);
    }
  }
  auto eval = [&](int n, int m, int e) {
    const BiNormalForm& nf = forms[mask_index(ab, n, m)][e];
    int core = table.values[mask_index(ab, nf.n, nf.m)][nf.core];
    if (core < 0) fail(ErrorKind::Internal, "evaluation before assignment");
    return apply_bi_words(B, nf, core);
  };

  long long found = 0;
  bool stop = false;
  std::function<void(size_t)> rec = [&](size_t at) {
    if (stop) return;
    if (at == order.size()) {
      // Complete the table on degenerate elements.
      for (int n = 0; n <= ab.p; ++n) {
        for (int m = 0; m <= ab.q; ++m) {
          int c = mask_index(ab, n, m);
          for (size_t e = 0; e < table.values[c].size(); ++e) {
            const BiNormalForm& nf = forms[c][e];
            if (!nf.hword.empty() || !nf.vword.empty()) {
              table.values[c][e] = apply_bi_words(
                  B, nf, table.values[mask_index(ab, nf.n, nf.m)][nf.core]);
            }
          }
        }
      }
      ++found;
      if (!visit(table)) stop = true;
      return;
    }
    auto [n, m, e] = order[at];
    std::vector<int> hfaces, vfaces;
    if (n >= 1) {
      hfaces.resize(n + 1);
      for (int i = 0; i <= n; ++i) hfaces[i] = eval(n - 1, m, A.h_face(n, m, i, e));
    }
    if (m >= 1) {
      vfaces.resize(m + 1);
      for (int j = 0; j <= m; ++j) vfaces[j] = eval(n, m - 1, A.v_face(n, m, j, e));
    }
    int cell = mask_index(ab, n, m);
    int forced = search.forced.empty() ? -1 : search.forced[cell][e];
    bool marked_src = (n == 1) && A.is_marked(m, e);
    auto attempt = [&](int cand) {
      if (search.require_marked && marked_src && !B.is_marked(m, cand)) return;
      table.values[cell][e] = cand;
      rec(at + 1);
    };
    if (forced >= 0) {
      // verify the prescription directly instead of enumerating fillers
      bool ok = true;
      for (int i = 0; i <= n && ok && n >= 1; ++i) ok = B.h_face(n, m, i, forced) == hfaces[i];
      for (int j = 0; j <= m && ok && m >= 1; ++j) ok = B.v_face(n, m, j, forced) == vfaces[j];
      if (ok) attempt(forced);
    } else {
      for (int cand : B.fillers(n, m, hfaces, vfaces)) {
        attempt(cand);
        if (stop) return;
      }
    }
    table.values[cell][e] = -1;
  };
  rec(0);
  return found;
}

std::optional<BiMapTable> find_bi_isomorphism(const IBiSet& A, const IBiSet& B) {
  BiBounds ab = A.bounds();
  BiBounds bb = B.bounds();
  if (ab.p != bb.p || ab.q != bb.q) return std::nullopt;
  for (int n = 0; n <= ab.p; ++n) {
    for (int m = 0; m <= ab.q; ++m) {
      if (A.count(n, m) != B.count(n, m)) return std::nullopt;
    }
  }
  std::optional<BiMapTable> out;
  // Bijectivity on bi-nondegenerate elements plus equal counts suffices.
  std::vector<std::vector<char>> used((ab.p + 1) * (ab.q + 1));
  for (int n = 0; n <= ab.p; ++n) {
    for (int m = 0; m <= ab.q; ++m) {
      used[mask_index(ab, n, m)].assign(A.count(n, m), 0);
    }
  }
  enumerate_bi_maps(A, B, {}, [&](const BiMapTable& t) {
    for (int n = 0; n <= ab.p; ++n) {
      for (int m = 0; m <= ab.q; ++m) {
        int c = mask_index(ab, n, m);
        std::vector<char> hit(B.count(n, m), 0);
        for (int v : t.values[c]) {
          if (v < 0 || hit[v]) return true;  // not bijective; keep searching
          hit[v] = 1;
        }
        // marking must be reflected, not just preserved
        if (n == 1) {
          for (size_t e = 0; e < t.values[c].size(); ++e) {
            if (A.is_marked(m, static_cast<int>(e)) != B.is_marked(m, t.values[c][e])) {
              return true;
            }
          }
        }
      }
    }
    out = t;
    return false;
  });
  return out;
}

bool bi_isomorphic(const IBiSet& A, const IBiSet& B) {
  return find_bi_isomorphism(A, B).has_value();
}

}  // namespace cdiag
