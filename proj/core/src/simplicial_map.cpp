#include "cdiag/simplicial_map.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cdiag {

const std::vector<int> TargetIndex::kEmpty{};

SimplicialMap SimplicialMap::identity(SSetPtr X) {
  SimplicialMap f;
  f.src = X;
  f.dst = X;
  f.img.reserve(X->generator_count());
  for (GenId g = 0; g < X->generator_count(); ++g) f.img.push_back(Simplex::of(g));
  return f;
}

SimplicialMap SimplicialMap::compose(const SimplicialMap& f, const SimplicialMap& g) {
  if (f.src.get() != g.dst.get()) fail(ErrorKind::Parameter, "maps not composable");
  SimplicialMap h;
  h.src = g.src;
  h.dst = f.dst;
  h.img.reserve(g.img.size());
  for (const Simplex& y : g.img) h.img.push_back(f.apply(y));
  return h;
}

std::string SimplicialMap::validate() const {
  if (static_cast<int>(img.size()) != src->generator_count()) {
    return "assignment size mismatch";
  }
  for (GenId g = 0; g < src->generator_count(); ++g) {
    const auto& gen = src->generator(g);
    if (dst->dim_of(img[g]) != gen.dim) {
      return "image of generator " + gen.name + " has wrong dimension";
    }
    for (int i = 0; i <= gen.dim && gen.dim > 0; ++i) {
      Simplex lhs = apply(src->face(Simplex::of(g), i));
      Simplex rhs = dst->face(img[g], i);
      if (!(lhs == rhs)) {
        return "face " + std::to_string(i) + " of generator " + gen.name +
               " does not commute";
      }
    }
  }
  return {};
}

bool SimplicialMap::is_injective_on_generators() const {
  std::vector<Simplex> seen = img;
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

bool SimplicialMap::is_mono() const {
  for (int n = 0; n <= src->dim(); ++n) {
    const auto& list = src->simplices(n);
    std::vector<Simplex> images;
    images.reserve(list.size());
    for (const Simplex& x : list) images.push_back(apply(x));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

TargetIndex::TargetIndex(SSetPtr Y) : Y_(std::move(Y)) {}

TargetIndex::Level& TargetIndex::level(int n) const {
  std::lock_guard<std::mutex> lk(mu_);
  Level& lv = levels_[n];
  if (lv.built) return lv;
  lv.list = Y_->simplices(n);
  lv.face_idx.resize(lv.list.size());
  lv.degen_idx.resize(lv.list.size());
  if (n >= 1) {
    const auto& lower = Y_->simplices(n - 1);
    auto idx_at = [&](const Simplex& x) {
      auto it = std::lower_bound(lower.begin(), lower.end(), x);
      return static_cast<int>(it - lower.begin());
    };
    for (size_t e = 0; e < lv.list.size(); ++e) {
      std::vector<int> key(n + 1);
      for (int i = 0; i <= n; ++i) key[i] = idx_at(Y_->face(lv.list[e], i));
      lv.face_idx[e] = key;
      lv.by_faces[key].push_back(static_cast<int>(e));
    }
  }
  {
    const auto& upper = Y_->simplices(n + 1);
    auto idx_up = [&](const Simplex& x) {
      auto it = std::lower_bound(upper.begin(), upper.end(), x);
      return static_cast<int>(it - upper.begin());
    };
    for (size_t e = 0; e < lv.list.size(); ++e) {
      lv.degen_idx[e].resize(n + 1);
      for (int i = 0; i <= n; ++i) {
        lv.degen_idx[e][i] = idx_up(Y_->degeneracy(lv.list[e], i));
      }
    }
  }
  lv.built = true;
  return lv;
}

int TargetIndex::count(int n) const { return static_cast<int>(level(n).list.size()); }

const Simplex& TargetIndex::simplex(int n, int idx) const {
  return level(n).list.at(idx);
}

int TargetIndex::index_of(int n, const Simplex& x) const {
  const auto& list = level(n).list;
  auto it = std::lower_bound(list.begin(), list.end(), x);
  if (it == list.end() || !(*it == x)) fail(ErrorKind::Internal, "simplex not in target");
  return static_cast<int>(it - list.begin());
}

int TargetIndex::face(int n, int idx, int i) const { return level(n).face_idx.at(idx).at(i); }

int TargetIndex::degeneracy(int n, int idx, int i) const {
  return level(n).degen_idx.at(idx).at(i);
}

const std::vector<int>& TargetIndex::with_faces(int n, const std::vector<int>& key) const {
  const Level& lv = level(n);
  auto it = lv.by_faces.find(key);
  if (it == lv.by_faces.end()) return kEmpty;
  return it->second;
}

long long enumerate_maps_visit(const SSetPtr& X, const TargetIndexPtr& Y,
                               const MapSearch& search,
                               const std::function<bool(const std::vector<Simplex>&)>& visit) {
  const int G = X->generator_count();
  if (!search.forced.empty() && static_cast<int>(search.forced.size()) != G) {
    fail(ErrorKind::Parameter, "forced assignment size mismatch");
  }
  std::vector<Simplex> assign(G);
  long long found = 0;
  bool stop = false;

  // Generators are dimension-sorted, so faces are assigned before cofaces.
  std::function<void(int)> rec = [&](int g) {
    if (stop) return;
    if (g == G) {
      ++found;
      if (!visit(assign)) stop = true;
      return;
    }
    const auto& gen = X->generator(g);
    auto try_candidate = [&](const Simplex& cand) {
      if (stop) return;
      if (search.forced.size() && search.forced[g] && !(*search.forced[g] == cand)) return;
      if (search.admissible && !search.admissible(g, cand)) return;
      assign[g] = cand;
      rec(g + 1);
    };
    if (gen.dim == 0) {
      if (search.forced.size() && search.forced[g]) {
        try_candidate(*search.forced[g]);
        return;
      }
      for (int idx = 0; idx < Y->count(0); ++idx) try_candidate(Y->simplex(0, idx));
      return;
    }
    // Candidate images must have exactly the already-assigned face images.
    std::vector<int> key(gen.dim + 1);
    for (int i = 0; i <= gen.dim; ++i) {
      const Simplex& f = gen.faces[i];
      const Simplex& fy = assign[f.gen];
      Simplex image{Word::compose(f.word, fy.word), fy.gen};
      key[i] = Y->index_of(gen.dim - 1, image);
    }
    for (int idx : Y->with_faces(gen.dim, key)) {
      try_candidate(Y->simplex(gen.dim, idx));
    }
  };
  rec(0);
  return found;
}

std::vector<SimplicialMap> enumerate_maps(const SSetPtr& X, const SSetPtr& Y) {
  auto ti = std::make_shared<TargetIndex>(Y);
  std::vector<SimplicialMap> out;
  enumerate_maps_visit(X, ti, {}, [&](const std::vector<Simplex>& assign) {
    out.push_back(SimplicialMap{X, Y, assign});
    return true;
  });
  return out;
}

long long count_maps(const SSetPtr& X, const SSetPtr& Y) {
  auto ti = std::make_shared<TargetIndex>(Y);
  return enumerate_maps_visit(X, ti, {}, [](const std::vector<Simplex>&) { return true; });
}

std::optional<SimplicialMap> find_isomorphism(const SSetPtr& X, const SSetPtr& Y) {
  if (X->generator_count() != Y->generator_count() || X->dim() != Y->dim()) {
    return std::nullopt;
  }
  for (GenId g = 0; g < X->generator_count(); ++g) {
    if (X->generator(g).dim != Y->generator(g).dim) return std::nullopt;
  }
  auto ti = std::make_shared<TargetIndex>(Y);
  std::vector<bool> used(Y->generator_count(), false);
  std::optional<SimplicialMap> result;
  const int G = X->generator_count();
  std::vector<Simplex> assign(G);
  std::function<bool(int)> rec = [&](int g) -> bool {
    if (g == G) {
      result = SimplicialMap{X, Y, assign};
      return true;
    }
    const auto& gen = X->generator(g);
    auto attempt = [&](const Simplex& cand) -> bool {
      if (!cand.word.empty() || used[cand.gen]) return false;
      if (Y->generator(cand.gen).dim != gen.dim) return false;
      assign[g] = cand;
      used[cand.gen] = true;
      if (rec(g + 1)) return true;
      used[cand.gen] = false;
      return false;
    };
    if (gen.dim == 0) {
      for (int idx = 0; idx < ti->count(0); ++idx) {
        if (attempt(ti->simplex(0, idx))) return true;
      }
      return false;
    }
    std::vector<int> key(gen.dim + 1);
    for (int i = 0; i <= gen.dim; ++i) {
      const Simplex& f = gen.faces[i];
      const Simplex& fy = assign[f.gen];
      key[i] = ti->index_of(gen.dim - 1, Simplex{Word::compose(f.word, fy.word), fy.gen});
    }
    for (int idx : ti->with_faces(gen.dim, key)) {
      if (attempt(ti->simplex(gen.dim, idx))) return true;
    }
    return false;
  };
  rec(0);
  return result;
}

bool isomorphic(const SSetPtr& X, const SSetPtr& Y) {
  return find_isomorphism(X, Y).has_value();
}

long long count_monotone_maps(int p, int n) {
  if (p < 0 || n < 0) return 0;
  // Nondecreasing (p+1)-tuples over {0..n}, counted by direct recursion.
  std::vector<std::vector<long long>> memo(p + 2, std::vector<long long>(n + 2, 0));
  for (int v = 0; v <= n + 1; ++v) memo[0][v] = 1;
  for (int len = 1; len <= p + 1; ++len) {
    memo[len][n + 1] = 0;
    for (int v = n; v >= 0; --v) {
      memo[len][v] = memo[len][v + 1] + memo[len - 1][v];
    }
  }
  return memo[p + 1][0];
}

}  // namespace cdiag
