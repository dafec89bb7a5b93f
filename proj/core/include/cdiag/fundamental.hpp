#ifndef CDIAG_FUNDAMENTAL_HPP
#define CDIAG_FUNDAMENTAL_HPP

#include <string>
#include <vector>

#include "cdiag/simplicial_set.hpp"

namespace cdiag {

// Edge-path group presentation from a spanning tree, greedily Tietze-
// simplified. The verdict is sound: Trivial only when the presentation
// empties, Nontrivial when a finite obstruction exists, else Unknown.
struct Pi1Result {
  int generators = 0;                      // surviving generators
  std::vector<std::vector<int>> relators;  // words over +/-(k+1)
  enum class Verdict { Trivial, Nontrivial, Unknown } verdict = Verdict::Unknown;
  std::string certificate;
};

Pi1Result pi1_presentation(const SSetPtr& X, GenId basepoint);

}  // namespace cdiag

#endif  // CDIAG_FUNDAMENTAL_HPP
