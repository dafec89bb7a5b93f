#ifndef CDIAG_HOMOLOGY_HPP
#define CDIAG_HOMOLOGY_HPP

#include <string>
#include <vector>

#include "cdiag/simplicial_set.hpp"

namespace cdiag {

// Integral homology profile: free rank and torsion coefficients (normal
// form: each > 1, each dividing the next) per dimension.
struct HomologyProfile {
  struct Level {
    long long free_rank = 0;
    std::vector<long long> torsion;
    friend bool operator==(const Level&, const Level&) = default;
  };
  std::vector<Level> levels;  // 0..top

  bool point_like() const;
  std::string to_string() const;
  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

struct SmithResult {
  std::vector<long long> diagonal;  // nonzero entries, divisibility chain
  int rank = 0;
};

// Smith normal form of an integer matrix (destructive, exact arithmetic with
// overflow checks; inputs here are desk scale).
SmithResult smith_normal_form(std::vector<std::vector<long long>> M);

// Homology of the normalized chain complex (free on the nondegenerate
// generators, boundaries drop degenerate faces) in dimensions 0..top.
HomologyProfile homology(const SimplicialSet& X, int top);

// Boundary matrix rows = (n-1)-generators, cols = n-generators.
std::vector<std::vector<long long>> boundary_matrix(const SimplicialSet& X, int n);

// Oracle variant: homology computed from full (unnormalized) simplex tables
// up to the same top dimension; agrees with `homology` on valid inputs.
HomologyProfile homology_unnormalized(const SimplicialSet& X, int top);

}  // namespace cdiag

#endif  // CDIAG_HOMOLOGY_HPP
