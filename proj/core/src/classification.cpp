#include "cdiag/classification.hpp"

#include <algorithm>
#include <sstream>

#include "cdiag/shapes.hpp"
#include "cdiag/util.hpp"

namespace cdiag {

ClassificationView::ClassificationView(MarkedSSet source, int p, int q)
    : source_(std::move(source)), bounds_{p, q},
      target_(std::make_shared<TargetIndex>(source_.set())) {}

const MarkedProduct& ClassificationView::grid(int n, int m) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = grids_.find({n, m});
    if (it != grids_.end()) return it->second;
  }
  MarkedProduct built(MarkedSSet::flat(standard_simplex(n)),
                      MarkedSSet::sharp(standard_simplex(m)));
  std::lock_guard<std::mutex> lk(mu_);
  auto [it, fresh] = grids_.emplace(std::make_pair(n, m), std::move(built));
  (void)fresh;  // a racing builder may have won; either copy is identical
  return it->second;
}

ClassificationView::Key ClassificationView::key_from_assignment(
    int n, int m, const std::vector<Simplex>& assign) const {
  const MarkedProduct& g = grid(n, m);
  Key key(assign.size());
  for (size_t i = 0; i < assign.size(); ++i) {
    int dim = g.product.set()->generator(static_cast<GenId>(i)).dim;
    key[i] = static_cast<int32_t>(target_->index_of(dim, assign[i]));
  }
  return key;
}

int ClassificationView::intern_assignment(int n, int m, const Key& key) const {
  std::lock_guard<std::mutex> lk(mu_);
  Store& st = stores_[{n, m}];
  auto [it, fresh] = st.ids.emplace(key, static_cast<int>(st.keys.size()));
  if (fresh) st.keys.push_back(&it->first);
  return it->second;
}

int ClassificationView::intern_map(int n, int m, const std::vector<Simplex>& assignment) const {
  return intern_assignment(n, m, key_from_assignment(n, m, assignment));
}

const std::vector<int32_t>& ClassificationView::key_of(int n, int m, int e) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = stores_.find({n, m});
  if (it == stores_.end() || e < 0 || e >= static_cast<int>(it->second.keys.size())) {
    fail(ErrorKind::Internal, "unknown classification element handle");
  }
  return *it->second.keys[e];
}

long long ClassificationView::count(int n, int m) const {
  require_inside(n, m);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = stores_.find({n, m});
    if (it != stores_.end() && it->second.full_count >= 0) return it->second.full_count;
  }
  const MarkedProduct& g = grid(n, m);
  long long c = enumerate_marked_maps_visit(g.marked, source_, target_, {},
                                            [](const std::vector<Simplex>&) { return true; });
  std::lock_guard<std::mutex> lk(mu_);
  stores_[{n, m}].full_count = c;
  return c;
}

std::vector<int> ClassificationView::elements(int n, int m) const {
  require_inside(n, m);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = stores_.find({n, m});
    if (it != stores_.end() && it->second.fully_interned) {
      std::vector<int> out(it->second.keys.size());
      for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
      return out;
    }
  }
  const MarkedProduct& g = grid(n, m);
  std::vector<int> out;
  enumerate_marked_maps_visit(
      g.marked, source_, target_, {}, [&](const std::vector<Simplex>& assign) {
        out.push_back(intern_assignment(n, m, key_from_assignment(n, m, assign)));
        return true;
      });
  std::lock_guard<std::mutex> lk(mu_);
  Store& st = stores_[{n, m}];
  st.fully_interned = true;
  st.full_count = static_cast<long long>(out.size());
  return out;
}

const SimplicialMap& ClassificationView::subst(Op op, int i, int n, int m) const {
  auto key = std::make_tuple(static_cast<int>(op), i, n, m);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = substs_.find(key);
    if (it != substs_.end()) return it->second;
  }
  // The substitution maps the grid of the *result* bidegree into the grid of
  // the element's bidegree; applying an operator is precomposition with it.
  SimplicialMap built;
  switch (op) {
    case Op::HFace:
      built = product_map(grid(n - 1, m).product, grid(n, m).product,
                          simplex_map_from_monotone(Monotone::coface(n, i)),
                          SimplicialMap::identity(grid(n, m).product.right()));
      break;
    case Op::VFace:
      built = product_map(grid(n, m - 1).product, grid(n, m).product,
                          SimplicialMap::identity(grid(n, m).product.left()),
                          simplex_map_from_monotone(Monotone::coface(m, i)));
      break;
    case Op::HDeg:
      built = product_map(grid(n + 1, m).product, grid(n, m).product,
                          simplex_map_from_monotone(Monotone::codegeneracy(n, i)),
                          SimplicialMap::identity(grid(n, m).product.right()));
      break;
    case Op::VDeg:
      built = product_map(grid(n, m + 1).product, grid(n, m).product,
                          SimplicialMap::identity(grid(n, m).product.left()),
                          simplex_map_from_monotone(Monotone::codegeneracy(m, i)));
      break;
  }
  std::lock_guard<std::mutex> lk(mu_);
  return substs_.emplace(key, std::move(built)).first->second;
}

int ClassificationView::apply_op(Op op, int i, int n, int m, int e) const {
  int rn = n, rm = m;
  switch (op) {
    case Op::HFace: rn = n - 1; break;
    case Op::VFace: rm = m - 1; break;
    case Op::HDeg: rn = n + 1; break;
    case Op::VDeg: rm = m + 1; break;
  }
  const SimplicialMap& sub = subst(op, i, n, m);
  const Key key = key_of(n, m, e);
  const SimplicialSet& egrid = *grid(n, m).product.set();
  const SimplicialSet& rgrid = *grid(rn, rm).product.set();
  Key out(rgrid.generator_count());
  for (GenId g = 0; g < rgrid.generator_count(); ++g) {
    const Simplex& im = sub.img[g];  // simplex of the element's grid
    Simplex val = target_->simplex(egrid.generator(im.gen).dim, key[im.gen]);
    Simplex moved{Word::compose(im.word, val.word), val.gen};
    out[g] = static_cast<int32_t>(target_->index_of(rgrid.generator(g).dim, moved));
  }
  return intern_assignment(rn, rm, out);
}

int ClassificationView::h_face(int n, int m, int i, int e) const {
  return apply_op(Op::HFace, i, n, m, e);
}
int ClassificationView::v_face(int n, int m, int j, int e) const {
  return apply_op(Op::VFace, j, n, m, e);
}
int ClassificationView::h_deg(int n, int m, int i, int e) const {
  return apply_op(Op::HDeg, i, n, m, e);
}
int ClassificationView::v_deg(int n, int m, int j, int e) const {
  return apply_op(Op::VDeg, j, n, m, e);
}

bool ClassificationView::is_marked(int m, int e) const {
  // Marked iff the map is also a marked map out of (Δ¹)♯ x (Δᵐ)♯: every
  // edge whose Δ¹-component is the nondegenerate edge must land on a mark.
  const Key key = key_of(1, m, e);
  const MarkedProduct& g = grid(1, m);
  const SimplicialSet& P = *g.product.set();
  for (GenId gen = 0; gen < P.generator_count(); ++gen) {
    if (P.generator(gen).dim != 1) continue;
    auto [a, b] = g.product.components(Simplex::of(gen));
    if (!a.word.empty()) continue;  // degenerate Δ¹ component, already marked
    if (g.product.left()->generator(a.gen).dim != 1) continue;
    Simplex val = target_->simplex(1, key[gen]);
    if (!source_.is_marked(val)) return false;
  }
  return true;
}

std::vector<int> ClassificationView::fillers(int n, int m, const std::vector<int>& hfaces,
                                             const std::vector<int>& vfaces) const {
  require_inside(n, m);
  const MarkedProduct& g = grid(n, m);
  const SimplicialSet& P = *g.product.set();
  MapSearch search;
  search.forced.assign(P.generator_count(), std::nullopt);
  bool consistent = true;

  auto impose = [&](const SimplicialMap& sub, const Key& face_key,
                    const SimplicialSet& fgrid) {
    // sub : face grid -> element grid sends generators to generators.
    for (GenId fg = 0; fg < fgrid.generator_count() && consistent; ++fg) {
      const Simplex& im = sub.img[fg];
      if (!im.word.empty()) {
        fail(ErrorKind::Internal, "face substitution is not generator-to-generator");
      }
      Simplex val = target_->simplex(fgrid.generator(fg).dim, face_key[fg]);
      auto& slot = search.forced[im.gen];
      if (slot && !(*slot == val)) {
        consistent = false;
      } else {
        slot = val;
      }
    }
  };

  if (n >= 1) {
    if (static_cast<int>(hfaces.size()) != n + 1) {
      fail(ErrorKind::Parameter, "need all horizontal faces prescribed");
    }
    for (int i = 0; i <= n; ++i) {
      impose(subst(Op::HFace, i, n, m), key_of(n - 1, m, hfaces[i]),
             *grid(n - 1, m).product.set());
    }
  }
  if (m >= 1) {
    if (static_cast<int>(vfaces.size()) != m + 1) {
      fail(ErrorKind::Parameter, "need all vertical faces prescribed");
    }
    for (int j = 0; j <= m; ++j) {
      impose(subst(Op::VFace, j, n, m), key_of(n, m - 1, vfaces[j]),
             *grid(n, m - 1).product.set());
    }
  }
  if (!consistent) return {};

  std::vector<int> out;
  enumerate_marked_maps_visit(
      g.marked, source_, target_, search, [&](const std::vector<Simplex>& assign) {
        out.push_back(intern_assignment(n, m, key_from_assignment(n, m, assign)));
        return true;
      });
  return out;
}

SimplicialMap ClassificationView::map_of(int n, int m, int e) const {
  const Key key = key_of(n, m, e);
  const MarkedProduct& g = grid(n, m);
  SimplicialMap f;
  f.src = g.product.set();
  f.dst = source_.set();
  f.img.reserve(key.size());
  for (size_t i = 0; i < key.size(); ++i) {
    f.img.push_back(target_->simplex(g.product.set()->generator(i).dim, key[i]));
  }
  return f;
}

std::string ClassificationView::label(int n, int m, int e) const {
  SimplicialMap f = map_of(n, m, e);
  std::ostringstream out;
  out << "[";
  for (GenId g = 0; g < f.src->generator_count(); ++g) {
    if (f.src->generator(g).dim > 1) break;  // vertices and edges determine the rest here
    if (g) out << ", ";
    out << f.src->generator(g).name << ":" << simplex_label(*f.dst, f.img[g]);
  }
  out << "]";
  return out.str();
}

ClassPtr classification_diagram(const MarkedSSet& X, int p, int q) {
  return std::make_shared<ClassificationView>(X, p, q);
}

BiPtr p1_star(const MarkedSSet& X, int p, int q) { return rows_constant(X, p, q); }

MarkedSSet i1_star(const IBiSet& X) { return row_marked(X, 1); }

MarkedSSet t_lower(const IBiSet& X) { return diagonal_marked(X); }

int InducedClassMap::apply(int n, int m, int e) const {
  SimplicialMap f = src->map_of(n, m, e);
  std::vector<Simplex> assign(f.img.size());
  for (size_t i = 0; i < f.img.size(); ++i) assign[i] = through.map.apply(f.img[i]);
  return dst->intern_map(n, m, assign);
}

InducedClassMap induced_class_map(ClassPtr src, ClassPtr dst, MarkedMap u) {
  if (u.map.src.get() != src->source().set().get() ||
      u.map.dst.get() != dst->source().set().get()) {
    fail(ErrorKind::Parameter, "induced map endpoints do not match the views");
  }
  if (!preserves_marking(src->source(), dst->source(), u.map)) {
    fail(ErrorKind::Validation, "map does not preserve the marking");
  }
  return InducedClassMap{std::move(src), std::move(dst), std::move(u)};
}

namespace {

// Functors [n] x [m] -> C with vertical steps in W, presented by object and
// step tables. Key layout: objects row-major, then right-steps, then
// down-steps.
class RelClass final : public IBiSet {
 public:
  RelClass(RelativeCategory R, int p, int q) : R_(std::move(R)), bounds_{p, q} {
    std::string why = R_.validate();
    if (!why.empty()) fail(ErrorKind::Validation, "invalid relative category: " + why);
    cells_.resize((p + 1) * (q + 1));
    built_.assign(cells_.size(), 0);
  }

  BiBounds bounds() const override { return bounds_; }

  long long count(int n, int m) const override {
    require_inside(n, m);
    return static_cast<long long>(cell(n, m).size());
  }

  int h_face(int n, int m, int i, int e) const override {
    return reindexed(n, m, e, Monotone::coface(n, i), Monotone::identity(m), n - 1, m);
  }
  int v_face(int n, int m, int j, int e) const override {
    return reindexed(n, m, e, Monotone::identity(n), Monotone::coface(m, j), n, m - 1);
  }
  int h_deg(int n, int m, int i, int e) const override {
    return reindexed(n, m, e, Monotone::codegeneracy(n, i), Monotone::identity(m), n + 1, m);
  }
  int v_deg(int n, int m, int j, int e) const override {
    return reindexed(n, m, e, Monotone::identity(n), Monotone::codegeneracy(m, j), n, m + 1);
  }

  bool is_marked(int m, int e) const override {
    const auto& f = cell(1, m)[e];
    // marked iff the horizontal steps also lie in W
    for (int j = 0; j <= m; ++j) {
      if (!R_.weak[right_step(f, 1, m, 0, j)]) return false;
    }
    return true;
  }

  std::string label(int n, int m, int e) const override {
    const auto& f = cell(n, m)[e];
    std::ostringstream out;
    out << "F[";
    for (int j = 0; j <= m; ++j) {
      for (int i = 0; i <= n; ++i) {
        if (i || j) out << " ";
        out << obj(f, n, m, i, j);
      }
    }
    out << "]";
    return out.str();
  }

 private:
  using Fun = std::vector<int>;  // objects then right steps then down steps

  static int obj_index(int n, int /*m*/, int i, int j) { return j * (n + 1) + i; }
  int obj(const Fun& f, int n, int m, int i, int j) const {
    return f[obj_index(n, m, i, j)];
  }
  static int right_index(int n, int m, int i, int j) {
    return (n + 1) * (m + 1) + j * n + i;  // i in 0..n-1
  }
  static int down_index(int n, int m, int i, int j) {
    return (n + 1) * (m + 1) + (m + 1) * n + j * (n + 1) + i;  // j in 0..m-1
  }
  int right_step(const Fun& f, int n, int m, int i, int j) const {
    return f[right_index(n, m, i, j)];
  }
  int down_step(const Fun& f, int n, int m, int i, int j) const {
    return f[down_index(n, m, i, j)];
  }
  static int fun_size(int n, int m) {
    return (n + 1) * (m + 1) + (m + 1) * n + (n + 1) * m;
  }

  const std::vector<Fun>& cell(int n, int m) const {
    require_inside(n, m);
    int c = n * (bounds_.q + 1) + m;
    std::lock_guard<std::mutex> lk(mu_);
    if (!built_[c]) {
      const_cast<RelClass*>(this)->build_cell(n, m);
    }
    return cells_[c];
  }

  void build_cell(int n, int m) {
    const FiniteCategory& C = R_.base;
    std::vector<Fun> out;
    Fun f(fun_size(n, m), -1);
    // assign objects and steps row by row, checking squares as they close
    std::function<void(int)> go = [&](int at) {
      if (at == (n + 1) * (m + 1)) {
        // objects chosen; enumerate right steps then down steps, closing
        // commuting squares as soon as both parallel paths exist
        std::function<void(int)> pick = [&](int idx) {
          const int rcount = (m + 1) * n;
          const int total = rcount + (n + 1) * m;
          if (idx == total) {
            out.push_back(f);
            return;
          }
          int base = (n + 1) * (m + 1);
          if (idx < rcount) {
            int j = idx / n, i = idx % n;
            int a = obj(f, n, m, i, j), b = obj(f, n, m, i + 1, j);
            for (int arr : C.hom(a, b)) {
              f[base + idx] = arr;
              pick(idx + 1);
              f[base + idx] = -1;
            }
          } else {
            int rel = idx - rcount;
            int j = rel / (n + 1), i = rel % (n + 1);
            int a = obj(f, n, m, i, j), b = obj(f, n, m, i, j + 1);
            for (int arr : C.hom(a, b)) {
              if (!R_.weak[arr]) continue;
              // placing D(i, j) closes the square of cell (i-1, j)
              if (i >= 1) {
                int r_lo = right_step(f, n, m, i - 1, j);
                int r_hi = right_step(f, n, m, i - 1, j + 1);
                int d_left = down_step(f, n, m, i - 1, j);
                if (C.compose(arr, r_lo) != C.compose(r_hi, d_left)) continue;
              }
              f[base + idx] = arr;
              pick(idx + 1);
              f[base + idx] = -1;
            }
          }
        };
        pick(0);
        return;
      }
      for (int o = 0; o < C.object_count(); ++o) {
        f[at] = o;
        go(at + 1);
        f[at] = -1;
      }
    };
    go(0);
    std::sort(out.begin(), out.end());
    int c = n * (bounds_.q + 1) + m;
    cells_[c] = std::move(out);
    built_[c] = true;
  }

  int reindexed(int n, int m, int e, const Monotone& alpha, const Monotone& beta,
                int rn, int rm) const {
    const FiniteCategory& C = R_.base;
    const Fun& f = cell(n, m)[e];
    Fun g(fun_size(rn, rm), -1);
    for (int j = 0; j <= rm; ++j) {
      for (int i = 0; i <= rn; ++i) {
        g[obj_index(rn, rm, i, j)] = obj(f, n, m, alpha(i), beta(j));
      }
    }
    auto compose_right = [&](int from_i, int to_i, int j) {
      // composite of right steps from (from_i, j) to (to_i, j)
      int acc = C.identity(obj(f, n, m, from_i, j));
      for (int i = from_i; i < to_i; ++i) acc = C.compose(right_step(f, n, m, i, j), acc);
      return acc;
    };
    auto compose_down = [&](int i, int from_j, int to_j) {
      int acc = C.identity(obj(f, n, m, i, from_j));
      for (int j = from_j; j < to_j; ++j) acc = C.compose(down_step(f, n, m, i, j), acc);
      return acc;
    };
    for (int j = 0; j <= rm; ++j) {
      for (int i = 0; i < rn; ++i) {
        g[right_index(rn, rm, i, j)] = compose_right(alpha(i), alpha(i + 1), beta(j));
      }
    }
    for (int j = 0; j < rm; ++j) {
      for (int i = 0; i <= rn; ++i) {
        g[down_index(rn, rm, i, j)] = compose_down(alpha(i), beta(j), beta(j + 1));
      }
    }
    const auto& list = cell(rn, rm);
    auto it = std::lower_bound(list.begin(), list.end(), g);
    if (it == list.end() || *it != g) fail(ErrorKind::Internal, "reindexed functor missing");
    return static_cast<int>(it - list.begin());
  }

  RelativeCategory R_;
  BiBounds bounds_;
  mutable std::mutex mu_;
  mutable std::vector<std::vector<Fun>> cells_;
  mutable std::vector<char> built_;
};

}  // namespace

BiPtr relative_classification(const RelativeCategory& R, int p, int q) {
  return std::make_shared<RelClass>(R, p, q);
}

EquivalenceVerdict column_verdict(const InducedClassMap& f, int n) {
  BiBounds b = f.src->bounds();
  BiSlice sx = slice(*f.src, BiAxis::Column, n);
  BiSlice sy = slice(*f.dst, BiAxis::Column, n);
  SimplicialMap induced;
  induced.src = sx.set;
  induced.dst = sy.set;
  induced.img.resize(sx.set->generator_count());
  for (int m = 0; m <= b.q; ++m) {
    long long total = f.src->count(n, m);
    for (int e = 0; e < total; ++e) {
      const Simplex& s = sx.elem_simplex[m][e];
      if (!s.word.empty()) continue;
      int image = f.apply(n, m, e);
      induced.img[s.gen] = sy.elem_simplex[m][image];
    }
  }
  std::string why = induced.validate();
  if (!why.empty()) fail(ErrorKind::Internal, "induced column map invalid: " + why);
  return weak_homotopy_verdict(induced, std::max(0, b.q - 1));
}

EquivalenceVerdict row_verdict(const InducedClassMap& f, int m) {
  BiBounds b = f.src->bounds();
  BiSlice sx = slice(*f.src, BiAxis::Row, m);
  BiSlice sy = slice(*f.dst, BiAxis::Row, m);
  SimplicialMap induced;
  induced.src = sx.set;
  induced.dst = sy.set;
  induced.img.resize(sx.set->generator_count());
  for (int n = 0; n <= b.p; ++n) {
    long long total = f.src->count(n, m);
    for (int e = 0; e < total; ++e) {
      const Simplex& s = sx.elem_simplex[n][e];
      if (!s.word.empty()) continue;
      int image = f.apply(n, m, e);
      induced.img[s.gen] = sy.elem_simplex[n][image];
    }
  }
  std::string why = induced.validate();
  if (!why.empty()) fail(ErrorKind::Internal, "induced row map invalid: " + why);
  return categorical_verdict(induced);
}

ConstancyReport categorically_constant_check(const IBiSet& X, int nbound) {
  BiBounds b = X.bounds();
  if (nbound > b.q) fail(ErrorKind::Bounds, "constancy bound exceeds the view");
  ConstancyReport rep;
  MarkedSSet row0 = row_marked(X, 0);
  BiSlice srow0 = slice(X, BiAxis::Row, 0);
  for (int n = 0; n <= nbound; ++n) {
    MarkedSSet rown = row_marked(X, n);
    BiSlice srown = slice(X, BiAxis::Row, n);
    // the map induced by the vertical degeneracies [n] ->> [0]
    SimplicialMap f;
    f.src = row0.set();
    f.dst = rown.set();
    f.img.resize(row0.set()->generator_count());
    for (int k = 0; k <= b.p; ++k) {
      long long total = X.count(k, 0);
      for (int e = 0; e < total; ++e) {
        const Simplex& s = srow0.elem_simplex[k][e];
        if (!s.word.empty()) continue;
        int cur = e;
        for (int j = 0; j < n; ++j) cur = X.v_deg(k, j, j, cur);
        f.img[s.gen] = srown.elem_simplex[k][cur];
      }
    }
    std::string why = f.validate();
    if (!why.empty()) fail(ErrorKind::Internal, "row degeneracy map invalid: " + why);

    // marked isomorphism?
    bool iso = is_isomorphism(f);
    if (iso) {
      bool marks_match = true;
      for (GenId g = 0; g < row0.set()->generator_count() && marks_match; ++g) {
        if (row0.set()->generator(g).dim != 1) continue;
        marks_match = row0.is_marked(Simplex::of(g)) == rown.is_marked(f.img[g]);
      }
      if (marks_match) {
        rep.per_n.push_back(Three::Holds);
        rep.reasons.push_back("rows are isomorphic as marked simplicial sets");
        continue;
      }
    }
    // both rows naturally-marked nerves: decide exactly
    DetectedNerve d0 = detect_nerve(row0.set());
    DetectedNerve dn = detect_nerve(rown.set());
    bool natural = false;
    if (d0.ok && dn.ok) {
      natural = natural_marking(row0.set()).marked_edges() == row0.marked_edges() &&
                natural_marking(rown.set()).marked_edges() == rown.marked_edges();
    }
    if (natural) {
      EquivalenceVerdict v = categorical_verdict(f);
      if (v.status == EquivalenceVerdict::Status::Equivalent) {
        rep.per_n.push_back(Three::Holds);
        rep.reasons.push_back("naturally marked nerves, " + v.certificate);
      } else if (v.status == EquivalenceVerdict::Status::NotEquivalent) {
        rep.per_n.push_back(Three::Fails);
        rep.reasons.push_back("naturally marked nerves, " + v.certificate);
      } else {
        rep.per_n.push_back(Three::Unknown);
        rep.reasons.push_back(v.certificate);
      }
      continue;
    }
    rep.per_n.push_back(Three::Unknown);
    rep.reasons.push_back("no sound rule applies to the marked rows");
  }
  return rep;
}

}  // namespace cdiag
