#ifndef CDIAG_PUSHOUT_HPP
#define CDIAG_PUSHOUT_HPP

#include "cdiag/simplicial_map.hpp"
#include "cdiag/simplicial_set.hpp"

namespace cdiag {

struct Pushout {
  SSetPtr set;
  SimplicialMap from_right;  // X -> P for f : A -> X
  SimplicialMap from_left;   // B -> P for g : A -> B
};

// Colimit of X <-f- A -g-> B, computed as the degreewise quotient of the
// coproduct and re-presented by its nondegenerate classes.
Pushout pushout(const SimplicialMap& f, const SimplicialMap& g);

}  // namespace cdiag

#endif  // CDIAG_PUSHOUT_HPP
