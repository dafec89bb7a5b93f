#ifndef CDIAG_SIMPLICIAL_SET_HPP
#define CDIAG_SIMPLICIAL_SET_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cdiag/word.hpp"

namespace cdiag {

using GenId = int;

// A simplex in Eilenberg-Zilber normal form: a degeneracy word applied to a
// nondegenerate generator. Canonical order is (generator, word).
struct Simplex {
  Word word;
  GenId gen = -1;

  static Simplex of(GenId g) { return Simplex{Word(), g}; }

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return a.gen == b.gen && a.word == b.word;
  }
  friend auto operator<=>(const Simplex& a, const Simplex& b) {
    if (auto c = a.gen <=> b.gen; c != 0) return c;
    return a.word <=> b.word;
  }
};

class SimplicialSet;
using SSetPtr = std::shared_ptr<const SimplicialSet>;

// A finite simplicial set presented by its nondegenerate simplices. Each
// generator of dimension n >= 1 stores its n+1 faces in EZ normal form.
// Generators are ordered by dimension (builder enforces face references to
// lower dimensions only). Instances are immutable after build; the per-
// dimension enumeration caches are write-once and guarded for concurrent use.
class SimplicialSet {
 public:
  struct Generator {
    int dim = 0;
    std::string name;
    std::vector<Simplex> faces;  // empty iff dim == 0
  };

  class Builder {
   public:
    // Returns the id of the new generator. Faces must reference generators
    // already added. Empty name gets a canonical fallback.
    GenId add(int dim, std::vector<Simplex> faces = {}, std::string name = {});
    SSetPtr build();

   private:
    std::vector<Generator> gens_;
  };

  static SSetPtr empty();

  int generator_count() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(GenId g) const { return gens_.at(g); }
  GenId find_generator(std::string_view name) const;  // -1 if absent

  // Max generator dimension; -1 for the empty simplicial set.
  int dim() const { return dim_; }
  int dim_of(const Simplex& x) const;

  Simplex face(const Simplex& x, int i) const;
  Simplex degeneracy(const Simplex& x, int i) const;
  // Contravariant action of a monotone map [m] -> [dim x].
  Simplex act(const Simplex& x, const Monotone& op) const;

  bool in_image_of_degeneracy(const Simplex& x, int i) const;
  std::vector<int> degeneracy_set(const Simplex& x) const;

  // All n-simplices in canonical order.
  const std::vector<Simplex>& simplices(int n) const;
  long long count(int n) const;
  int index_of(const Simplex& x) const;  // position within simplices(dim_of(x))

  std::vector<int> nondegenerate_counts() const;  // per dimension 0..dim()

  // Generator ids of the vertices of x, in order.
  std::vector<GenId> vertex_tuple(const Simplex& x) const;

  // Exhaustive check of the simplicial identities and EZ uniqueness on all
  // simplices of dimension <= up_to (default dim()+1). Returns an empty
  // string on success, else a description of the first failure.
  std::string validate(int up_to = -1) const;

  // Canonical text serialization; see parse_sset_literal for the grammar.
  std::string to_text() const;

 private:
  friend class Builder;
  SimplicialSet() = default;

  std::vector<Generator> gens_;
  int dim_ = -1;
  std::vector<int> gens_by_dim_start_;  // offsets into gens_ per dimension

  struct Cache {
    std::mutex mu;
    std::unordered_map<int, std::vector<Simplex>> simplices;
  };
  mutable Cache cache_;
};

// The n-simplices of the presentation, computed without the cache (used by
// the cache itself and by tests).
std::vector<Simplex> enumerate_simplices(const SimplicialSet& X, int n);

// Disjoint union (coproduct); generator names get prefixed when they clash.
SSetPtr disjoint_union(const SimplicialSet& X, const SimplicialSet& Y);

// "s1 s0 name" rendering of an arbitrary simplex.
std::string simplex_label(const SimplicialSet& X, const Simplex& x);

}  // namespace cdiag

#endif  // CDIAG_SIMPLICIAL_SET_HPP
