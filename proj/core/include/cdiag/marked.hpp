#ifndef CDIAG_MARKED_HPP
#define CDIAG_MARKED_HPP

#include <vector>

#include "cdiag/product.hpp"
#include "cdiag/simplicial_map.hpp"
#include "cdiag/simplicial_set.hpp"

namespace cdiag {

// A simplicial set with a distinguished set of edges containing every
// degenerate edge. Only the nondegenerate marked edges are stored; degenerate
// ones are implicitly marked.
class MarkedSSet {
 public:
  MarkedSSet() = default;
  MarkedSSet(SSetPtr set, std::vector<Simplex> marked_nondeg_edges);

  static MarkedSSet flat(SSetPtr X);
  static MarkedSSet sharp(SSetPtr X);

  const SSetPtr& set() const { return set_; }
  const std::vector<Simplex>& marked_edges() const { return marked_; }
  bool is_marked(const Simplex& edge) const;
  int nondeg_marked_count() const { return static_cast<int>(marked_.size()); }

  std::string to_text() const;

  friend bool operator==(const MarkedSSet& a, const MarkedSSet& b) {
    return a.set_.get() == b.set_.get() && a.marked_ == b.marked_;
  }

 private:
  SSetPtr set_;
  std::vector<Simplex> marked_;  // sorted, nondegenerate
};

// A map of marked simplicial sets: the underlying map plus the verified
// marking-preservation bit.
struct MarkedMap {
  SimplicialMap map;
  bool marking_checked = false;

  friend bool operator==(const MarkedMap& a, const MarkedMap& b) {
    return a.map == b.map;
  }
  friend auto operator<=>(const MarkedMap& a, const MarkedMap& b) {
    return a.map <=> b.map;
  }
};

bool preserves_marking(const MarkedSSet& X, const MarkedSSet& Y, const SimplicialMap& f);
MarkedMap as_marked_map(const MarkedSSet& X, const MarkedSSet& Y, SimplicialMap f);

std::vector<MarkedMap> enumerate_marked_maps(const MarkedSSet& X, const MarkedSSet& Y);
long long count_marked_maps(const MarkedSSet& X, const MarkedSSet& Y);

// Visitor form sharing a prebuilt target index; used by the classification
// diagram and the lifting solver.
long long enumerate_marked_maps_visit(
    const MarkedSSet& X, const MarkedSSet& Y, const TargetIndexPtr& ti,
    const MapSearch& search,
    const std::function<bool(const std::vector<Simplex>&)>& visit);

// Product of marked simplicial sets: an edge is marked iff both components
// are.
struct MarkedProduct {
  ProductSSet product;
  MarkedSSet marked;
  MarkedProduct(const MarkedSSet& A, const MarkedSSet& B);
};

// The simplicial set of marked maps X x (Delta^n)# -> Y, up to dimension d.
SSetPtr marked_mapping_space(const MarkedSSet& X, const MarkedSSet& Y, int d);

}  // namespace cdiag

#endif  // CDIAG_MARKED_HPP
