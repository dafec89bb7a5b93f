#ifndef CDIAG_SHAPES_HPP
#define CDIAG_SHAPES_HPP

#include <string>
#include <vector>

#include "cdiag/simplicial_map.hpp"
#include "cdiag/simplicial_set.hpp"

namespace cdiag {

// Standard finite simplicial sets. The generators of simplex/boundary/horn
// are the vertex subsets of [n]; an a-simplex is identified with the monotone
// map [a] -> [n] given by its vertex tuple.
SSetPtr standard_simplex(int n);
SSetPtr boundary(int n);
SSetPtr horn(int n, int k);

// The d-skeleton of the nerve J of the free-living isomorphism: two vertices,
// two nondegenerate simplices in every dimension 1..d (the alternating
// chains starting at 0 and at 1).
SSetPtr j_truncated(int d);

struct ShapeSpec {
  enum class Kind { Simplex, Boundary, Horn, JTruncated } kind;
  int n = 0;
  int k = 0;  // horn only
};

SSetPtr make_shape(const ShapeSpec& spec);

// For the subset-named shape family above: the vertex tuple of a simplex as
// a monotone map into [n], and the generator carrying a given vertex subset.
Monotone simplex_as_monotone(const SimplicialSet& shape, int n, const Simplex& x);
GenId subset_generator(const SimplicialSet& shape, const std::vector<int>& vertices);

// The simplex of Delta^n corresponding to a monotone map [p] -> [n], and the
// simplicial map Delta^m -> Delta^n induced by one.
Simplex simplex_of_monotone(const SimplicialSet& shape, const Monotone& t);
SimplicialMap simplex_map_from_monotone(const Monotone& op);

// Canonical inclusion between subset shapes sharing generator names
// (horn/boundary/skeleton into the simplex, and alike).
SimplicialMap named_inclusion(const SSetPtr& sub, const SSetPtr& ambient);

// p-skeleton of an arbitrary presented simplicial set, with the generator
// correspondence (skeleton generator -> original generator id).
struct SkeletonResult {
  SSetPtr set;
  std::vector<GenId> into;  // per skeleton generator
};
SkeletonResult skeleton(const SimplicialSet& X, int p);

}  // namespace cdiag

#endif  // CDIAG_SHAPES_HPP
