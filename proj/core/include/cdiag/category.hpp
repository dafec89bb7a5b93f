#ifndef CDIAG_CATEGORY_HPP
#define CDIAG_CATEGORY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdiag/marked.hpp"
#include "cdiag/simplicial_set.hpp"

namespace cdiag {

// A finite category presented by a total composition table.
class FiniteCategory {
 public:
  struct Arrow {
    int src = 0;
    int dst = 0;
    std::string name;
  };

  FiniteCategory() = default;
  // comp[g][f] = g ∘ f for f.dst == g.src, -1 otherwise. Validates laws.
  static FiniteCategory from_table(int objects, std::vector<Arrow> arrows,
                                   std::vector<int> identities,
                                   std::vector<std::vector<int>> comp);
  static FiniteCategory chain(int n);  // the poset [n]
  static FiniteCategory from_poset(int objects,
                                   const std::vector<std::pair<int, int>>& relations);
  static FiniteCategory free_on_graph(int objects,
                                      const std::vector<std::pair<int, int>>& edges,
                                      std::vector<std::string> edge_names = {});
  static FiniteCategory indiscrete(int objects);
  static FiniteCategory terminal() { return indiscrete(1); }
  static FiniteCategory discrete(int objects);
  static FiniteCategory square();  // the commutative-square poset [1]x[1]

  int object_count() const { return nobj_; }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const Arrow& arrow(int a) const { return arrows_.at(a); }
  int find_arrow(const std::string& name) const;  // -1 if absent

  int identity(int obj) const { return id_.at(obj); }
  bool is_identity(int a) const;
  int compose(int g, int f) const;  // g ∘ f
  bool composable(int g, int f) const;
  std::vector<int> hom(int a, int b) const;

  std::optional<int> inverse(int a) const;
  bool is_iso(int a) const { return inverse(a).has_value(); }

  std::string validate() const;

 private:
  int nobj_ = 0;
  std::vector<Arrow> arrows_;
  std::vector<int> id_;
  std::vector<std::vector<int>> comp_;
};

struct Functor {
  FiniteCategory src;
  FiniteCategory dst;
  std::vector<int> obj_map;
  std::vector<int> arrow_map;

  std::string validate() const;
};

// Exact equivalence decision: fully faithful and essentially surjective.
bool is_equivalence(const Functor& F);

struct RelativeCategory {
  FiniteCategory base;
  std::vector<bool> weak;  // per arrow; contains identities, composition-closed

  // Wide subcategory generated by the listed arrows.
  static RelativeCategory wide_closure(FiniteCategory base, const std::vector<int>& arrows);
  static RelativeCategory with_isos(FiniteCategory base);
  std::string validate() const;
};

// The nerve truncated at dimension d, with chain bookkeeping. Generators of
// dimension k are the composable chains of k non-identity arrows.
class Nerve {
 public:
  Nerve(const FiniteCategory& C, int d);

  const SSetPtr& set() const { return set_; }
  const FiniteCategory& category() const { return cat_; }
  int bound() const { return d_; }

  GenId vertex_of_object(int obj) const { return vertex_of_object_.at(obj); }
  // EZ simplex of an arbitrary composable chain (identities allowed).
  Simplex simplex_of_chain(int start_object, std::vector<int> chain) const;
  // Inverse direction: the chain (with identities) of an arbitrary simplex.
  std::pair<int, std::vector<int>> chain_of_simplex(const Simplex& x) const;

 private:
  FiniteCategory cat_;
  int d_;
  SSetPtr set_;
  std::vector<GenId> vertex_of_object_;
  std::map<std::pair<int, std::vector<int>>, GenId> gen_of_chain_;
  std::vector<std::pair<int, std::vector<int>>> chain_of_gen_;
};

// Fun([n], C): objects are n-chains of composable arrows, morphisms are
// natural transformations.
class FunCat {
 public:
  FunCat(int n, const FiniteCategory& C);

  const FiniteCategory& cat() const { return cat_; }
  int steps() const { return n_; }

  int object_of_chain(int start, const std::vector<int>& chain) const;
  const std::pair<int, std::vector<int>>& chain_of_object(int obj) const;
  int arrow_of_components(int src_obj, int dst_obj, const std::vector<int>& comps) const;
  const std::vector<int>& components_of_arrow(int a) const;

 private:
  int n_;
  FiniteCategory cat_;
  std::vector<std::pair<int, std::vector<int>>> obj_chain_;
  std::map<std::pair<int, std::vector<int>>, int> obj_of_;
  std::vector<std::vector<int>> arr_comps_;
  std::map<std::tuple<int, int, std::vector<int>>, int> arr_of_;
};

struct CoreResult {
  FiniteCategory cat;
  std::vector<int> arrow_in_base;  // core arrow -> base arrow
};
CoreResult core_of(const FiniteCategory& C);

// Nerve recognition: succeeds iff X has unique inner-horn fillers in
// dimensions 2 and 3 and is 2-coskeletal within its dimension bound.
struct DetectedNerve {
  bool ok = false;
  std::string failure;
  FiniteCategory cat;                // objects = vertices, arrows = edges
  std::vector<Simplex> arrow_edge;   // arrow -> 1-simplex of X
  std::vector<GenId> object_vertex;  // object -> 0-generator of X
};
DetectedNerve detect_nerve(const SSetPtr& X);

// Marks exactly the edges whose arrows are isomorphisms in the detected
// category; refuses non-nerves.
MarkedSSet natural_marking(const SSetPtr& X);

// Number of composable k-chains counted from the arrow table alone (dynamic
// programming oracle for nerve counts).
long long count_chains(const FiniteCategory& C, int k, bool identity_free);

}  // namespace cdiag

#endif  // CDIAG_CATEGORY_HPP
