#include "cdiag/category.hpp"

#include <algorithm>
#include <set>

#include "cdiag/shapes.hpp"
#include "cdiag/util.hpp"

namespace cdiag {

FiniteCategory FiniteCategory::from_table(int objects, std::vector<Arrow> arrows,
                                          std::vector<int> identities,
                                          std::vector<std::vector<int>> comp) {
  FiniteCategory C;
  C.nobj_ = objects;
  C.arrows_ = std::move(arrows);
  C.id_ = std::move(identities);
  C.comp_ = std::move(comp);
  std::string why = C.validate();
  if (!why.empty()) fail(ErrorKind::Validation, "invalid category table: " + why);
  return C;
}

std::string FiniteCategory::validate() const {
  const int A = arrow_count();
  if (static_cast<int>(id_.size()) != nobj_) return "identity table size";
  if (static_cast<int>(comp_.size()) != A) return "composition table size";
  for (const auto& row : comp_) {
    if (static_cast<int>(row.size()) != A) return "composition table row size";
  }
  for (int o = 0; o < nobj_; ++o) {
    int e = id_[o];
    if (e < 0 || e >= A || arrows_[e].src != o || arrows_[e].dst != o) {
      return "identity of object " + std::to_string(o) + " malformed";
    }
  }
  for (int g = 0; g < A; ++g) {
    for (int f = 0; f < A; ++f) {
      bool comp_ok = arrows_[f].dst == arrows_[g].src;
      int c = comp_[g][f];
      if (!comp_ok) {
        if (c != -1) return "composite defined for non-composable pair";
        continue;
      }
      if (c < 0 || c >= A) return "missing composite";
      if (arrows_[c].src != arrows_[f].src || arrows_[c].dst != arrows_[g].dst) {
        return "composite has wrong endpoints";
      }
    }
  }
  for (int f = 0; f < A; ++f) {
    if (comp_[id_[arrows_[f].dst]][f] != f) return "left unit law fails";
    if (comp_[f][id_[arrows_[f].src]] != f) return "right unit law fails";
  }
  for (int h = 0; h < A; ++h) {
    for (int g = 0; g < A; ++g) {
      if (arrows_[g].dst != arrows_[h].src) continue;
      for (int f = 0; f < A; ++f) {
        if (arrows_[f].dst != arrows_[g].src) continue;
        if (comp_[h][comp_[g][f]] != comp_[comp_[h][g]][f]) {
          return "associativity fails";
        }
      }
    }
  }
  return {};
}

int FiniteCategory::find_arrow(const std::string& name) const {
  for (int a = 0; a < arrow_count(); ++a) {
    if (arrows_[a].name == name) return a;
  }
  return -1;
}

bool FiniteCategory::is_identity(int a) const { return id_[arrows_.at(a).src] == a; }

bool FiniteCategory::composable(int g, int f) const {
  return arrows_.at(f).dst == arrows_.at(g).src;
}

int FiniteCategory::compose(int g, int f) const {
  if (!composable(g, f)) fail(ErrorKind::Parameter, "arrows not composable");
  return comp_[g][f];
}

std::vector<int> FiniteCategory::hom(int a, int b) const {
  std::vector<int> out;
  for (int f = 0; f < arrow_count(); ++f) {
    if (arrows_[f].src == a && arrows_[f].dst == b) out.push_back(f);
  }
  return out;
}

std::optional<int> FiniteCategory::inverse(int a) const {
  for (int b : hom(arrows_.at(a).dst, arrows_.at(a).src)) {
    if (comp_[b][a] == id_[arrows_[a].src] && comp_[a][b] == id_[arrows_[a].dst]) {
      return b;
    }
  }
  return std::nullopt;
}

FiniteCategory FiniteCategory::chain(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i + 1 <= n; ++i) rel.push_back({i, i + 1});
  return from_poset(n + 1, rel);
}

FiniteCategory FiniteCategory::from_poset(int objects,
                                          const std::vector<std::pair<int, int>>& relations) {
  std::vector<std::vector<bool>> le(objects, std::vector<bool>(objects, false));
  for (int i = 0; i < objects; ++i) le[i][i] = true;
  for (auto [a, b] : relations) {
    if (a < 0 || b < 0 || a >= objects || b >= objects) {
      fail(ErrorKind::Parameter, "poset relation out of range");
    }
    le[a][b] = true;
  }
  for (int k = 0; k < objects; ++k) {
    for (int i = 0; i < objects; ++i) {
      for (int j = 0; j < objects; ++j) {
        if (le[i][k] && le[k][j]) le[i][j] = true;
      }
    }
  }
  for (int i = 0; i < objects; ++i) {
    for (int j = 0; j < objects; ++j) {
      if (i != j && le[i][j] && le[j][i]) {
        fail(ErrorKind::Validation, "relation is not antisymmetric (not a poset)");
      }
    }
  }
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> idx(objects, std::vector<int>(objects, -1));
  for (int i = 0; i < objects; ++i) {
    for (int j = 0; j < objects; ++j) {
      if (le[i][j]) {
        idx[i][j] = static_cast<int>(arrows.size());
        arrows.push_back({i, j, "a" + std::to_string(i) + "_" + std::to_string(j)});
      }
    }
  }
  std::vector<int> ids(objects);
  for (int i = 0; i < objects; ++i) ids[i] = idx[i][i];
  const int A = static_cast<int>(arrows.size());
  std::vector<std::vector<int>> comp(A, std::vector<int>(A, -1));
  for (int g = 0; g < A; ++g) {
    for (int f = 0; f < A; ++f) {
      if (arrows[f].dst == arrows[g].src) comp[g][f] = idx[arrows[f].src][arrows[g].dst];
    }
  }
  return from_table(objects, std::move(arrows), std::move(ids), std::move(comp));
}

FiniteCategory FiniteCategory::free_on_graph(int objects,
                                             const std::vector<std::pair<int, int>>& edges,
                                             std::vector<std::string> edge_names) {
  // Acyclicity check (self-loops included): otherwise the path category is
  // infinite and the word problem looms.
  {
    std::vector<int> indeg(objects, 0);
    std::vector<std::vector<int>> adj(objects);
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= objects || b >= objects) {
        fail(ErrorKind::Parameter, "graph edge out of range");
      }
      adj[a].push_back(b);
      indeg[b]++;
    }
    std::vector<int> queue;
    for (int i = 0; i < objects; ++i) {
      if (indeg[i] == 0) queue.push_back(i);
    }
    int seen = 0;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      ++seen;
      for (int w : adj[v]) {
        if (--indeg[w] == 0) queue.push_back(w);
      }
    }
    if (seen != objects) {
      fail(ErrorKind::Unsupported, "graph has a cycle; free category would be infinite");
    }
  }
  if (edge_names.empty()) {
    for (size_t e = 0; e < edges.size(); ++e) edge_names.push_back("f" + std::to_string(e));
  }
  if (edge_names.size() != edges.size()) {
    fail(ErrorKind::Parameter, "edge name count mismatch");
  }

  // Arrows are paths; enumerate by length, shortest first.
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> path_edges;  // per arrow
  std::map<std::vector<int>, int> arrow_of_path;
  std::vector<int> ids(objects);
  for (int i = 0; i < objects; ++i) {
    ids[i] = static_cast<int>(arrows.size());
    arrows.push_back({i, i, "id" + std::to_string(i)});
    path_edges.push_back({});
    // identity path keyed by a sentinel (object encoded as -(i+1))
    arrow_of_path[{-(i + 1)}] = ids[i];
  }
  std::vector<std::vector<int>> frontier;  // paths of the current length
  for (size_t e = 0; e < edges.size(); ++e) frontier.push_back({static_cast<int>(e)});
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& path : frontier) {
      int a = static_cast<int>(arrows.size());
      int src = edges[path.front()].first;
      int dst = edges[path.back()].second;
      std::string name = edge_names[path.front()];
      for (size_t i = 1; i < path.size(); ++i) name = edge_names[path[i]] + "_" + name;
      arrows.push_back({src, dst, name});
      path_edges.push_back(path);
      arrow_of_path[path] = a;
      for (size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].first == dst) {
          auto longer = path;
          longer.push_back(static_cast<int>(e));
          next.push_back(std::move(longer));
        }
      }
    }
    frontier = std::move(next);
  }

  const int A = static_cast<int>(arrows.size());
  std::vector<std::vector<int>> comp(A, std::vector<int>(A, -1));
  for (int g = 0; g < A; ++g) {
    for (int f = 0; f < A; ++f) {
      if (arrows[f].dst != arrows[g].src) continue;
      std::vector<int> path = path_edges[f];
      path.insert(path.end(), path_edges[g].begin(), path_edges[g].end());
      if (path.empty()) {
        comp[g][f] = ids[arrows[f].src];
      } else {
        comp[g][f] = arrow_of_path.at(path);
      }
    }
  }
  return from_table(objects, std::move(arrows), std::move(ids), std::move(comp));
}

FiniteCategory FiniteCategory::indiscrete(int objects) {
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> idx(objects, std::vector<int>(objects));
  for (int i = 0; i < objects; ++i) {
    for (int j = 0; j < objects; ++j) {
      idx[i][j] = static_cast<int>(arrows.size());
      arrows.push_back({i, j, "e" + std::to_string(i) + "_" + std::to_string(j)});
    }
  }
  std::vector<int> ids(objects);
  for (int i = 0; i < objects; ++i) ids[i] = idx[i][i];
  const int A = static_cast<int>(arrows.size());
  std::vector<std::vector<int>> comp(A, std::vector<int>(A, -1));
  for (int g = 0; g < A; ++g) {
    for (int f = 0; f < A; ++f) {
      if (arrows[f].dst == arrows[g].src) comp[g][f] = idx[arrows[f].src][arrows[g].dst];
    }
  }
  return from_table(objects, std::move(arrows), std::move(ids), std::move(comp));
}

FiniteCategory FiniteCategory::discrete(int objects) {
  return from_poset(objects, {});
}

FiniteCategory FiniteCategory::square() {
  // objects 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1)
  return from_poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

std::string Functor::validate() const {
  if (static_cast<int>(obj_map.size()) != src.object_count()) return "object map size";
  if (static_cast<int>(arrow_map.size()) != src.arrow_count()) return "arrow map size";
  for (int o : obj_map) {
    if (o < 0 || o >= dst.object_count()) return "object map out of range";
  }
  for (int a = 0; a < src.arrow_count(); ++a) {
    int fa = arrow_map[a];
    if (fa < 0 || fa >= dst.arrow_count()) return "arrow map out of range";
    if (dst.arrow(fa).src != obj_map[src.arrow(a).src] ||
        dst.arrow(fa).dst != obj_map[src.arrow(a).dst]) {
      return "arrow image has wrong endpoints";
    }
  }
  for (int o = 0; o < src.object_count(); ++o) {
    if (arrow_map[src.identity(o)] != dst.identity(obj_map[o])) {
      return "identities not preserved";
    }
  }
  for (int g = 0; g < src.arrow_count(); ++g) {
    for (int f = 0; f < src.arrow_count(); ++f) {
      if (!src.composable(g, f)) continue;
      if (arrow_map[src.compose(g, f)] != dst.compose(arrow_map[g], arrow_map[f])) {
        return "composition not preserved";
      }
    }
  }
  return {};
}

bool is_equivalence(const Functor& F) {
  std::string why = F.validate();
  if (!why.empty()) fail(ErrorKind::Validation, "not a functor: " + why);
  // Fully faithful.
  for (int a = 0; a < F.src.object_count(); ++a) {
    for (int b = 0; b < F.src.object_count(); ++b) {
      std::vector<int> images;
      for (int f : F.src.hom(a, b)) images.push_back(F.arrow_map[f]);
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
      if (images.size() != F.dst.hom(F.obj_map[a], F.obj_map[b]).size()) return false;
    }
  }
  // Essentially surjective.
  for (int d = 0; d < F.dst.object_count(); ++d) {
    bool hit = false;
    for (int a = 0; a < F.src.object_count() && !hit; ++a) {
      for (int f : F.dst.hom(F.obj_map[a], d)) {
        if (F.dst.is_iso(f)) {
          hit = true;
          break;
        }
      }
    }
    if (!hit) return false;
  }
  return true;
}

RelativeCategory RelativeCategory::wide_closure(FiniteCategory base,
                                                const std::vector<int>& arrows) {
  std::vector<bool> weak(base.arrow_count(), false);
  for (int o = 0; o < base.object_count(); ++o) weak[base.identity(o)] = true;
  for (int a : arrows) {
    if (a < 0 || a >= base.arrow_count()) fail(ErrorKind::Parameter, "weak arrow out of range");
    weak[a] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int g = 0; g < base.arrow_count(); ++g) {
      if (!weak[g]) continue;
      for (int f = 0; f < base.arrow_count(); ++f) {
        if (!weak[f] || !base.composable(g, f)) continue;
        int c = base.compose(g, f);
        if (!weak[c]) {
          weak[c] = true;
          changed = true;
        }
      }
    }
  }
  RelativeCategory R{std::move(base), std::move(weak)};
  return R;
}

RelativeCategory RelativeCategory::with_isos(FiniteCategory base) {
  std::vector<int> isos;
  for (int a = 0; a < base.arrow_count(); ++a) {
    if (base.is_iso(a)) isos.push_back(a);
  }
  return wide_closure(std::move(base), isos);
}

std::string RelativeCategory::validate() const {
  if (static_cast<int>(weak.size()) != base.arrow_count()) return "weak table size";
  for (int o = 0; o < base.object_count(); ++o) {
    if (!weak[base.identity(o)]) return "weak subcategory misses an identity";
  }
  for (int g = 0; g < base.arrow_count(); ++g) {
    for (int f = 0; f < base.arrow_count(); ++f) {
      if (weak[g] && weak[f] && base.composable(g, f) && !weak[base.compose(g, f)]) {
        return "weak subcategory not closed under composition";
      }
    }
  }
  return {};
}

Nerve::Nerve(const FiniteCategory& C, int d) : cat_(C), d_(d) {
  if (d < 0) fail(ErrorKind::Parameter, "nerve bound must be >= 0");
  SimplicialSet::Builder b;
  vertex_of_object_.resize(C.object_count());
  for (int o = 0; o < C.object_count(); ++o) {
    vertex_of_object_[o] = b.add(0, {}, "o" + std::to_string(o));
    gen_of_chain_[{o, {}}] = vertex_of_object_[o];
    chain_of_gen_.push_back({o, {}});
  }
  // Identity-free composable chains per length, lexicographic in arrow ids.
  std::vector<std::vector<std::pair<int, std::vector<int>>>> level(d + 1);
  for (int a = 0; a < C.arrow_count(); ++a) {
    if (!C.is_identity(a)) level[1].push_back({C.arrow(a).src, {a}});
  }
  for (int k = 2; k <= d; ++k) {
    for (const auto& [start, chain] : level[k - 1]) {
      int tip = C.arrow(chain.back()).dst;
      for (int a = 0; a < C.arrow_count(); ++a) {
        if (C.is_identity(a) || C.arrow(a).src != tip) continue;
        auto longer = chain;
        longer.push_back(a);
        level[k].push_back({start, std::move(longer)});
      }
    }
  }
  for (int k = 1; k <= d; ++k) {
    for (const auto& [start, chain] : level[k]) {
      std::vector<Simplex> faces(k + 1);
      // d_0 drops the first arrow, d_k the last, inner faces compose.
      {
        std::vector<int> rest(chain.begin() + 1, chain.end());
        faces[0] = simplex_of_chain(C.arrow(chain[0]).dst, std::move(rest));
      }
      {
        std::vector<int> rest(chain.begin(), chain.end() - 1);
        faces[k] = simplex_of_chain(start, std::move(rest));
      }
      for (int i = 1; i < k; ++i) {
        std::vector<int> composed;
        composed.reserve(k - 1);
        for (int p = 0; p < i - 1; ++p) composed.push_back(chain[p]);
        composed.push_back(C.compose(chain[i], chain[i - 1]));
        for (int p = i + 1; p < k; ++p) composed.push_back(chain[p]);
        faces[i] = simplex_of_chain(start, std::move(composed));
      }
      GenId id = b.add(k, std::move(faces));
      gen_of_chain_[{start, chain}] = id;
      chain_of_gen_.push_back({start, chain});
    }
  }
  set_ = b.build();
}

Simplex Nerve::simplex_of_chain(int start_object, std::vector<int> chain) const {
  for (size_t p = 0; p < chain.size(); ++p) {
    if (cat_.is_identity(chain[p])) {
      std::vector<int> rest = chain;
      rest.erase(rest.begin() + p);
      Simplex sub = simplex_of_chain(start_object, std::move(rest));
      return Simplex{sub.word.inserted(static_cast<int>(p)), sub.gen};
    }
  }
  auto it = gen_of_chain_.find({start_object, chain});
  if (it == gen_of_chain_.end()) {
    fail(ErrorKind::Bounds, "chain exceeds the nerve truncation");
  }
  return Simplex::of(it->second);
}

std::pair<int, std::vector<int>> Nerve::chain_of_simplex(const Simplex& x) const {
  auto [start, chain] = chain_of_gen_.at(x.gen);
  // Degeneracy s_j inserts an identity at arrow position j+1 (object j).
  std::vector<int> objects;
  objects.push_back(start);
  for (int a : chain) objects.push_back(cat_.arrow(a).dst);
  const auto& ix = x.word.indices();
  for (auto it = ix.rbegin(); it != ix.rend(); ++it) {
    int j = *it;
    chain.insert(chain.begin() + j, cat_.identity(objects[j]));
    objects.insert(objects.begin() + j, objects[j]);
  }
  return {start, chain};
}

FunCat::FunCat(int n, const FiniteCategory& C) : n_(n) {
  if (n < 0) fail(ErrorKind::Parameter, "functor category needs n >= 0");
  // Objects: composable chains of length n (identities allowed).
  std::vector<std::pair<int, std::vector<int>>> objs;
  if (n == 0) {
    for (int o = 0; o < C.object_count(); ++o) objs.push_back({o, {}});
  } else {
    std::function<void(int, std::vector<int>&)> grow = [&](int tip, std::vector<int>& acc) {
      if (static_cast<int>(acc.size()) == n) {
        objs.push_back({C.arrow(acc[0]).src, acc});
        return;
      }
      for (int a = 0; a < C.arrow_count(); ++a) {
        if (C.arrow(a).src != tip) continue;
        acc.push_back(a);
        grow(C.arrow(a).dst, acc);
        acc.pop_back();
      }
    };
    std::vector<int> acc;
    for (int a = 0; a < C.arrow_count(); ++a) {
      acc.push_back(a);
      grow(C.arrow(a).dst, acc);
      acc.pop_back();
    }
  }
  obj_chain_ = std::move(objs);
  std::sort(obj_chain_.begin(), obj_chain_.end());
  for (size_t i = 0; i < obj_chain_.size(); ++i) {
    obj_of_[obj_chain_[i]] = static_cast<int>(i);
  }

  auto object_at = [&](const std::pair<int, std::vector<int>>& oc, int i) {
    if (i == 0) return oc.first;
    return C.arrow(oc.second[i - 1]).dst;
  };

  // Arrows: natural transformations, componentwise.
  std::vector<FiniteCategory::Arrow> arrows;
  std::vector<std::vector<int>> comps;
  const int O = static_cast<int>(obj_chain_.size());
  for (int F = 0; F < O; ++F) {
    for (int G = 0; G < O; ++G) {
      std::vector<int> t(n + 1, -1);
      std::function<void(int)> fill = [&](int i) {
        if (i == n + 1) {
          int a = static_cast<int>(arrows.size());
          arrows.push_back({F, G, "t" + std::to_string(a)});
          comps.push_back(t);
          arr_of_[{F, G, t}] = a;
          return;
        }
        for (int cand : C.hom(object_at(obj_chain_[F], i), object_at(obj_chain_[G], i))) {
          if (i > 0) {
            // naturality square at step i-1 -> i
            int fF = obj_chain_[F].second[i - 1];
            int fG = obj_chain_[G].second[i - 1];
            if (C.compose(cand, fF) != C.compose(fG, t[i - 1])) continue;
          }
          t[i] = cand;
          fill(i + 1);
          t[i] = -1;
        }
      };
      fill(0);
    }
  }
  arr_comps_ = comps;

  std::vector<int> ids(O);
  for (int F = 0; F < O; ++F) {
    std::vector<int> t(n + 1);
    for (int i = 0; i <= n; ++i) t[i] = C.identity(object_at(obj_chain_[F], i));
    ids[F] = arr_of_.at({F, F, t});
  }
  const int A = static_cast<int>(arrows.size());
  std::vector<std::vector<int>> comp(A, std::vector<int>(A, -1));
  for (int g = 0; g < A; ++g) {
    for (int f = 0; f < A; ++f) {
      if (arrows[f].dst != arrows[g].src) continue;
      std::vector<int> t(n + 1);
      for (int i = 0; i <= n; ++i) t[i] = C.compose(comps[g][i], comps[f][i]);
      comp[g][f] = arr_of_.at({arrows[f].src, arrows[g].dst, t});
    }
  }
  cat_ = FiniteCategory::from_table(O, std::move(arrows), std::move(ids), std::move(comp));
}

int FunCat::object_of_chain(int start, const std::vector<int>& chain) const {
  auto it = obj_of_.find({start, chain});
  if (it == obj_of_.end()) fail(ErrorKind::Parameter, "not an object chain");
  return it->second;
}

const std::pair<int, std::vector<int>>& FunCat::chain_of_object(int obj) const {
  return obj_chain_.at(obj);
}

int FunCat::arrow_of_components(int src_obj, int dst_obj, const std::vector<int>& comps) const {
  auto it = arr_of_.find({src_obj, dst_obj, comps});
  if (it == arr_of_.end()) fail(ErrorKind::Parameter, "not a natural transformation");
  return it->second;
}

const std::vector<int>& FunCat::components_of_arrow(int a) const { return arr_comps_.at(a); }

CoreResult core_of(const FiniteCategory& C) {
  std::vector<int> keep;
  for (int a = 0; a < C.arrow_count(); ++a) {
    if (C.is_iso(a)) keep.push_back(a);
  }
  std::vector<int> newid(C.arrow_count(), -1);
  std::vector<FiniteCategory::Arrow> arrows;
  for (size_t i = 0; i < keep.size(); ++i) {
    newid[keep[i]] = static_cast<int>(i);
    arrows.push_back(C.arrow(keep[i]));
  }
  std::vector<int> ids(C.object_count());
  for (int o = 0; o < C.object_count(); ++o) ids[o] = newid[C.identity(o)];
  const int A = static_cast<int>(arrows.size());
  std::vector<std::vector<int>> comp(A, std::vector<int>(A, -1));
  for (int g = 0; g < A; ++g) {
    for (int f = 0; f < A; ++f) {
      if (arrows[f].dst != arrows[g].src) continue;
      comp[g][f] = newid[C.compose(keep[g], keep[f])];
    }
  }
  CoreResult out;
  out.cat = FiniteCategory::from_table(C.object_count(), std::move(arrows), std::move(ids),
                                       std::move(comp));
  out.arrow_in_base = keep;
  return out;
}

long long count_chains(const FiniteCategory& C, int k, bool identity_free) {
  // chains[o]: number of admissible chains of current length ending at o.
  std::vector<long long> cur(C.object_count(), 1);
  for (int step = 0; step < k; ++step) {
    std::vector<long long> next(C.object_count(), 0);
    for (int a = 0; a < C.arrow_count(); ++a) {
      if (identity_free && C.is_identity(a)) continue;
      next[C.arrow(a).dst] += cur[C.arrow(a).src];
    }
    cur = std::move(next);
  }
  long long total = 0;
  for (long long v : cur) total += v;
  return total;
}

namespace {

// Restriction key of an n-simplex along a shape of lower-dimensional
// generators; used for horn-filler and coskeletality bookkeeping.
std::vector<Simplex> restriction_key(const SimplicialSet& X, const Simplex& top,
                                     const SimplicialSet& shape, int n) {
  std::vector<Simplex> key;
  key.reserve(shape.generator_count());
  for (GenId g = 0; g < shape.generator_count(); ++g) {
    Monotone m = simplex_as_monotone(shape, n, Simplex::of(g));
    // act expects an operator into [n]; build the composite directly.
    key.push_back(X.act(top, m));
  }
  return key;
}

}  // namespace

DetectedNerve detect_nerve(const SSetPtr& X) {
  DetectedNerve out;
  const SimplicialSet& S = *X;

  const auto& vertices = S.simplices(0);
  const auto& edges = S.simplices(1);
  std::vector<FiniteCategory::Arrow> arrows(edges.size());
  for (size_t e = 0; e < edges.size(); ++e) {
    arrows[e].src = static_cast<int>(S.index_of(S.face(edges[e], 1)));
    arrows[e].dst = static_cast<int>(S.index_of(S.face(edges[e], 0)));
    arrows[e].name = "m" + std::to_string(e);
  }
  std::vector<int> ids(vertices.size());
  for (size_t v = 0; v < vertices.size(); ++v) {
    ids[v] = S.index_of(S.degeneracy(vertices[v], 0));
  }

  // Unique inner-horn fillers in dimension 2 give the composition table.
  const auto& tris = S.simplices(2);
  std::map<std::pair<int, int>, std::vector<int>> fillers;  // (d2, d0) -> triangles
  for (size_t t = 0; t < tris.size(); ++t) {
    int f = S.index_of(S.face(tris[t], 2));
    int g = S.index_of(S.face(tris[t], 0));
    fillers[{f, g}].push_back(static_cast<int>(t));
  }
  const int A = static_cast<int>(edges.size());
  std::vector<std::vector<int>> comp(A, std::vector<int>(A, -1));
  for (int g = 0; g < A; ++g) {
    for (int f = 0; f < A; ++f) {
      if (arrows[f].dst != arrows[g].src) continue;
      auto it = fillers.find({f, g});
      if (it == fillers.end() || it->second.empty()) {
        out.failure = "no filler for the inner horn on edges (" +
                      std::to_string(f) + ", " + std::to_string(g) + ")";
        return out;
      }
      if (it->second.size() > 1) {
        out.failure = "duplicate fillers for an inner 2-horn";
        return out;
      }
      comp[g][f] = S.index_of(S.face(tris[it->second[0]], 1));
    }
  }

  FiniteCategory C;
  try {
    C = FiniteCategory::from_table(static_cast<int>(vertices.size()), arrows, ids, comp);
  } catch (const Error& e) {
    out.failure = std::string("composition table is not a category: ") + e.what();
    return out;
  }

  // Unique inner-horn fillers in dimension 3.
  if (S.dim() >= 2) {
    for (int k = 1; k <= 2; ++k) {
      SSetPtr H = horn(3, k);
      long long horn_maps = count_maps(H, X);
      std::map<std::vector<Simplex>, int> seen;
      for (const Simplex& s : S.simplices(3)) {
        seen[restriction_key(S, s, *H, 3)]++;
      }
      long long covered = 0;
      for (const auto& [key, cnt] : seen) {
        if (cnt > 1) {
          out.failure = "duplicate fillers for an inner 3-horn";
          return out;
        }
        covered += cnt;
      }
      if (covered != horn_maps) {
        out.failure = "an inner 3-horn of the candidate nerve has no filler";
        return out;
      }
    }
  }

  // 2-coskeletality within the dimension bound.
  for (int n = 3; n <= S.dim(); ++n) {
    SSetPtr sk2 = skeleton(*standard_simplex(n), 2).set;
    std::map<std::vector<Simplex>, int> seen;
    for (const Simplex& s : S.simplices(n)) {
      if (++seen[restriction_key(S, s, *sk2, n)] > 1) {
        out.failure = "restriction to the 2-skeleton is not injective in dimension " +
                      std::to_string(n);
        return out;
      }
    }
    if (static_cast<long long>(seen.size()) != count_maps(sk2, X)) {
      out.failure = "not 2-coskeletal in dimension " + std::to_string(n);
      return out;
    }
  }

  out.ok = true;
  out.cat = std::move(C);
  out.arrow_edge = edges;
  out.object_vertex.resize(vertices.size());
  for (size_t v = 0; v < vertices.size(); ++v) out.object_vertex[v] = vertices[v].gen;
  return out;
}

MarkedSSet natural_marking(const SSetPtr& X) {
  DetectedNerve d = detect_nerve(X);
  if (!d.ok) {
    fail(ErrorKind::Unsupported,
         "natural marking needs the nerve of a finite category: " + d.failure);
  }
  std::vector<Simplex> marked;
  for (int a = 0; a < d.cat.arrow_count(); ++a) {
    if (d.arrow_edge[a].word.empty() && d.cat.is_iso(a)) marked.push_back(d.arrow_edge[a]);
  }
  return MarkedSSet(X, std::move(marked));
}

}  // namespace cdiag
