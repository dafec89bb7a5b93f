#include "cdiag/fundamental.hpp"

#include <algorithm>
#include <deque>

#include "cdiag/homology.hpp"
#include "cdiag/util.hpp"

namespace cdiag {

namespace {

// Free and cyclic reduction of a word.
std::vector<int> reduce(std::vector<int> w) {
  std::vector<int> out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  while (out.size() >= 2 && out.front() == -out.back()) {
    out.erase(out.begin());
    out.pop_back();
  }
  return out;
}

}  // namespace

Pi1Result pi1_presentation(const SSetPtr& X, GenId basepoint) {
  const SimplicialSet& S = *X;
  if (basepoint < 0 || basepoint >= S.generator_count() ||
      S.generator(basepoint).dim != 0) {
    fail(ErrorKind::Parameter, "basepoint must be a vertex generator");
  }

  // Vertices and nondegenerate edges.
  std::vector<GenId> verts, edges;
  for (GenId g = 0; g < S.generator_count(); ++g) {
    if (S.generator(g).dim == 0) verts.push_back(g);
    if (S.generator(g).dim == 1) edges.push_back(g);
  }
  std::vector<int> vidx(S.generator_count(), -1);
  for (size_t v = 0; v < verts.size(); ++v) vidx[verts[v]] = static_cast<int>(v);

  // Spanning tree by BFS over nondegenerate edges (both directions).
  std::vector<int> parent_edge(verts.size(), -1);
  std::vector<bool> seen(verts.size(), false);
  std::vector<bool> tree(edges.size(), false);
  std::deque<int> queue;
  seen[vidx[basepoint]] = true;
  queue.push_back(vidx[basepoint]);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (size_t e = 0; e < edges.size(); ++e) {
      int a = vidx[S.face(Simplex::of(edges[e]), 1).gen];
      int b = vidx[S.face(Simplex::of(edges[e]), 0).gen];
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        if (seen[x] && !seen[y]) {
          seen[y] = true;
          tree[e] = true;
          parent_edge[y] = static_cast<int>(e);
          queue.push_back(y);
        }
      }
    }
  }
  for (size_t v = 0; v < verts.size(); ++v) {
    if (!seen[v]) {
      fail(ErrorKind::Domain, "simplicial set is disconnected relative to the basepoint");
    }
  }

  // Generators: non-tree nondegenerate edges.
  std::vector<int> gen_of_edge(edges.size(), 0);
  int ngen = 0;
  for (size_t e = 0; e < edges.size(); ++e) {
    if (!tree[e]) gen_of_edge[e] = ++ngen;
  }
  auto word_of = [&](const Simplex& edge) -> std::vector<int> {
    if (!edge.word.empty()) return {};  // degenerate edge is a constant path
    auto it = std::lower_bound(edges.begin(), edges.end(), edge.gen);
    int e = static_cast<int>(it - edges.begin());
    if (tree[e]) return {};
    return {gen_of_edge[e]};
  };

  // One relator per nondegenerate 2-simplex: d2 then d0 equals d1.
  std::vector<std::vector<int>> relators;
  for (GenId g = 0; g < S.generator_count(); ++g) {
    if (S.generator(g).dim != 2) continue;
    const auto& f = S.generator(g).faces;
    std::vector<int> w;
    for (int x : word_of(f[2])) w.push_back(x);
    for (int x : word_of(f[0])) w.push_back(x);
    std::vector<int> hyp = word_of(f[1]);
    for (auto it = hyp.rbegin(); it != hyp.rend(); ++it) w.push_back(-*it);
    w = reduce(std::move(w));
    if (!w.empty()) relators.push_back(std::move(w));
  }

  // Greedy Tietze simplification.
  std::vector<bool> alive(ngen + 1, true);
  alive[0] = false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& w : relators) w = reduce(std::move(w));
    relators.erase(std::remove_if(relators.begin(), relators.end(),
                                  [](const std::vector<int>& w) { return w.empty(); }),
                   relators.end());
    // Kill generators forced trivial.
    for (const auto& w : relators) {
      if (w.size() == 1) {
        int g = std::abs(w[0]);
        if (alive[g]) {
          alive[g] = false;
          changed = true;
          for (auto& r : relators) {
            r.erase(std::remove_if(r.begin(), r.end(),
                                   [&](int x) { return std::abs(x) == g; }),
                    r.end());
          }
        }
      }
    }
    if (changed) continue;
    // Substitute equalities g = h^{+-1} from length-2 relators.
    for (const auto& w : relators) {
      if (w.size() == 2 && std::abs(w[0]) != std::abs(w[1])) {
        int kill = std::abs(w[1]);
        // w = [a, b] means b = a^{-1}.
        int a = w[0];
        int b = w[1];
        for (auto& r : relators) {
          std::vector<int> nw;
          for (int x : r) {
            if (x == b) {
              nw.push_back(-a);
            } else if (x == -b) {
              nw.push_back(a);
            } else {
              nw.push_back(x);
            }
          }
          r = std::move(nw);
        }
        alive[kill] = false;
        changed = true;
        break;
      }
    }
  }

  Pi1Result out;
  out.generators = static_cast<int>(std::count(alive.begin(), alive.end(), true));
  out.relators = relators;
  if (out.generators == 0) {
    out.verdict = Pi1Result::Verdict::Trivial;
    out.certificate = "presentation empties under Tietze simplification";
    return out;
  }
  if (out.relators.empty()) {
    out.verdict = Pi1Result::Verdict::Nontrivial;
    out.certificate = "free group of rank " + std::to_string(out.generators);
    return out;
  }
  HomologyProfile h = homology(S, 1);
  if (h.levels[1].free_rank > 0 || !h.levels[1].torsion.empty()) {
    out.verdict = Pi1Result::Verdict::Nontrivial;
    out.certificate = "abelianization is nonzero (H1 = " + h.to_string() + ")";
    return out;
  }
  out.verdict = Pi1Result::Verdict::Unknown;
  out.certificate = "presentation did not simplify; abelianization vanishes";
  return out;
}

}  // namespace cdiag
