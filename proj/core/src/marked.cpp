#include "cdiag/marked.hpp"

#include <algorithm>
#include <sstream>

#include "cdiag/degreewise.hpp"
#include "cdiag/shapes.hpp"
#include "cdiag/util.hpp"

namespace cdiag {

MarkedSSet::MarkedSSet(SSetPtr set, std::vector<Simplex> marked_nondeg_edges)
    : set_(std::move(set)), marked_(std::move(marked_nondeg_edges)) {
  for (const Simplex& e : marked_) {
    if (!e.word.empty() || set_->generator(e.gen).dim != 1) {
      fail(ErrorKind::Validation, "marked edges must be nondegenerate 1-simplices");
    }
  }
  std::sort(marked_.begin(), marked_.end());
  marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
}

MarkedSSet MarkedSSet::flat(SSetPtr X) { return MarkedSSet(std::move(X), {}); }

MarkedSSet MarkedSSet::sharp(SSetPtr X) {
  std::vector<Simplex> edges;
  for (GenId g = 0; g < X->generator_count(); ++g) {
    if (X->generator(g).dim == 1) edges.push_back(Simplex::of(g));
  }
  return MarkedSSet(std::move(X), std::move(edges));
}

bool MarkedSSet::is_marked(const Simplex& edge) const {
  if (set_->dim_of(edge) != 1) fail(ErrorKind::Parameter, "marking is defined on edges");
  if (!edge.word.empty()) return true;
  return std::binary_search(marked_.begin(), marked_.end(), edge);
}

std::string MarkedSSet::to_text() const {
  std::ostringstream out;
  out << set_->to_text() << "\nmarked [";
  for (size_t i = 0; i < marked_.size(); ++i) {
    if (i) out << ", ";
    out << set_->generator(marked_[i].gen).name;
  }
  out << "]";
  return out.str();
}

bool preserves_marking(const MarkedSSet& X, const MarkedSSet& Y, const SimplicialMap& f) {
  for (const Simplex& e : X.marked_edges()) {
    if (!Y.is_marked(f.apply(e))) return false;
  }
  return true;
}

MarkedMap as_marked_map(const MarkedSSet& X, const MarkedSSet& Y, SimplicialMap f) {
  if (!preserves_marking(X, Y, f)) {
    fail(ErrorKind::Validation, "map does not carry the marking");
  }
  return MarkedMap{std::move(f), true};
}

long long enumerate_marked_maps_visit(
    const MarkedSSet& X, const MarkedSSet& Y, const TargetIndexPtr& ti,
    const MapSearch& search,
    const std::function<bool(const std::vector<Simplex>&)>& visit) {
  std::vector<bool> must_mark(X.set()->generator_count(), false);
  for (const Simplex& e : X.marked_edges()) must_mark[e.gen] = true;
  MapSearch s = search;
  auto inner = search.admissible;
  s.admissible = [&, inner](GenId g, const Simplex& cand) {
    if (must_mark[g] && !Y.is_marked(cand)) return false;
    return !inner || inner(g, cand);
  };
  return enumerate_maps_visit(X.set(), ti, s, visit);
}

std::vector<MarkedMap> enumerate_marked_maps(const MarkedSSet& X, const MarkedSSet& Y) {
  auto ti = std::make_shared<TargetIndex>(Y.set());
  std::vector<MarkedMap> out;
  enumerate_marked_maps_visit(X, Y, ti, {}, [&](const std::vector<Simplex>& assign) {
    out.push_back(MarkedMap{SimplicialMap{X.set(), Y.set(), assign}, true});
    return true;
  });
  return out;
}

long long count_marked_maps(const MarkedSSet& X, const MarkedSSet& Y) {
  auto ti = std::make_shared<TargetIndex>(Y.set());
  return enumerate_marked_maps_visit(X, Y, ti, {},
                                     [](const std::vector<Simplex>&) { return true; });
}

MarkedProduct::MarkedProduct(const MarkedSSet& A, const MarkedSSet& B)
    : product(A.set(), B.set()) {
  std::vector<Simplex> edges;
  for (GenId g = 0; g < product.set()->generator_count(); ++g) {
    if (product.set()->generator(g).dim != 1) continue;
    auto [a, b] = product.components(Simplex::of(g));
    if (A.is_marked(a) && B.is_marked(b)) edges.push_back(Simplex::of(g));
  }
  marked = MarkedSSet(product.set(), std::move(edges));
}

SSetPtr marked_mapping_space(const MarkedSSet& X, const MarkedSSet& Y, int d) {
  if (d < 0) fail(ErrorKind::Parameter, "mapping space bound must be >= 0");
  // Level n: marked maps X x (Delta^n)# -> Y, as sorted assignment vectors.
  std::vector<MarkedProduct> prods;
  std::vector<std::vector<SimplicialMap>> levels;
  for (int n = 0; n <= d; ++n) {
    prods.emplace_back(X, MarkedSSet::sharp(standard_simplex(n)));
    std::vector<SimplicialMap> maps;
    for (auto& mm : enumerate_marked_maps(prods[n].marked, Y)) {
      maps.push_back(std::move(mm.map));
    }
    levels.push_back(std::move(maps));
  }

  auto index_of_level = [&](int n, const SimplicialMap& f) {
    auto it = std::lower_bound(levels[n].begin(), levels[n].end(), f);
    if (it == levels[n].end() || !(*it == f)) {
      fail(ErrorKind::Internal, "mapping space structure map left the level");
    }
    return static_cast<int>(it - levels[n].begin());
  };

  DegreewiseSSet T;
  T.top = d;
  T.counts.resize(d + 1);
  T.face.resize(d + 1);
  T.degen.resize(d + 1);
  auto identity_on_x = [&](const MarkedSSet& xs) { return SimplicialMap::identity(xs.set()); };
  for (int n = 0; n <= d; ++n) {
    T.counts[n] = static_cast<int>(levels[n].size());
    if (n >= 1) {
      T.face[n].assign(n + 1, std::vector<int>(levels[n].size()));
      for (int i = 0; i <= n; ++i) {
        // Precompose with id_X x coface_i : X x Delta^{n-1} -> X x Delta^n.
        SimplicialMap cofc = simplex_map_from_monotone(Monotone::coface(n, i));
        SimplicialMap m = product_map(prods[n - 1].product, prods[n].product,
                                      identity_on_x(X), cofc);
        for (size_t e = 0; e < levels[n].size(); ++e) {
          T.face[n][i][e] = index_of_level(n - 1, SimplicialMap::compose(levels[n][e], m));
        }
      }
    }
    if (n < d) {
      T.degen[n].assign(n + 1, std::vector<int>(levels[n].size()));
      for (int i = 0; i <= n; ++i) {
        SimplicialMap codg = simplex_map_from_monotone(Monotone::codegeneracy(n, i));
        SimplicialMap m = product_map(prods[n + 1].product, prods[n].product,
                                      identity_on_x(X), codg);
        for (size_t e = 0; e < levels[n].size(); ++e) {
          T.degen[n][i][e] = index_of_level(n + 1, SimplicialMap::compose(levels[n][e], m));
        }
      }
    }
  }
  return extract_presentation(T).set;
}

}  // namespace cdiag
