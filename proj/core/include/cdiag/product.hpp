#ifndef CDIAG_PRODUCT_HPP
#define CDIAG_PRODUCT_HPP

#include <map>
#include <utility>
#include <vector>

#include "cdiag/simplicial_map.hpp"
#include "cdiag/simplicial_set.hpp"

namespace cdiag {

// Binary product presheaf. Nondegenerate n-simplices are the pairs of
// n-simplices with disjoint degeneracy sets (the shuffle decomposition);
// both components may carry nonempty words.
class ProductSSet {
 public:
  ProductSSet(SSetPtr X, SSetPtr Y);

  const SSetPtr& set() const { return set_; }
  const SSetPtr& left() const { return left_; }
  const SSetPtr& right() const { return right_; }

  // EZ normal form of the pair (a, b) with a in X_n, b in Y_n.
  Simplex of_pair(const Simplex& a, const Simplex& b) const;
  // The two components of an arbitrary product simplex.
  std::pair<Simplex, Simplex> components(const Simplex& x) const;

  SimplicialMap proj_left() const;
  SimplicialMap proj_right() const;
  // The pairing <f, g> : Z -> X x Y.
  SimplicialMap pair_map(const SimplicialMap& f, const SimplicialMap& g) const;

 private:
  SSetPtr set_, left_, right_;
  std::vector<std::pair<Simplex, Simplex>> factors_;     // per generator
  std::map<std::pair<Simplex, Simplex>, GenId> lookup_;  // nondegenerate pairs
};

// The map X x Y -> X' x Y' induced by f and g.
SimplicialMap product_map(const ProductSSet& src, const ProductSSet& dst,
                          const SimplicialMap& f, const SimplicialMap& g);

}  // namespace cdiag

#endif  // CDIAG_PRODUCT_HPP
