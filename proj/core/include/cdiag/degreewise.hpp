#ifndef CDIAG_DEGREEWISE_HPP
#define CDIAG_DEGREEWISE_HPP

#include <vector>

#include "cdiag/simplicial_set.hpp"

namespace cdiag {

// Explicit simplex tables for dimensions 0..top. Elements are dense indices;
// face tables exist for n >= 1 and degeneracy tables for n < top.
struct DegreewiseSSet {
  int top = -1;
  std::vector<int> counts;                          // size top+1
  std::vector<std::vector<std::vector<int>>> face;  // [n][i][e], n >= 1
  std::vector<std::vector<std::vector<int>>> degen; // [n][i][e], n < top

  int face_of(int n, int i, int e) const { return face[n][i][e]; }
  int degen_of(int n, int i, int e) const { return degen[n][i][e]; }
};

DegreewiseSSet tabulate(const SimplicialSet& X, int top);

// Extraction of a generator presentation from tables. The result is exact
// for the presented truncation: nondegenerate elements above `top` are not
// representable, so callers own the choice of bound.
struct ExtractedPresentation {
  SSetPtr set;
  std::vector<std::vector<Simplex>> elem_simplex;  // [n][e] in the new set
  std::vector<std::pair<int, int>> gen_elem;       // generator -> (n, e)
};

ExtractedPresentation extract_presentation(const DegreewiseSSet& T);

}  // namespace cdiag

#endif  // CDIAG_DEGREEWISE_HPP
