#ifndef CDIAG_VERDICTS_HPP
#define CDIAG_VERDICTS_HPP

#include <string>

#include "cdiag/simplicial_map.hpp"
#include "cdiag/simplicial_set.hpp"

namespace cdiag {

enum class Three { Holds, Fails, Unknown };

std::string to_string(Three v);

struct ContractVerdict {
  Three status = Three::Unknown;
  std::string reason;
};

// Sound rules only: holds via the nerve-with-initial-or-terminal-object rule,
// fails via a homology obstruction, else unknown.
ContractVerdict contractibility(const SSetPtr& X);

// Three-valued equivalence verdict with a finite certificate either way.
struct EquivalenceVerdict {
  enum class Status { Equivalent, NotEquivalent, Unknown } status = Status::Unknown;
  std::string certificate;
};

bool is_isomorphism(const SimplicialMap& f);

// Weak-homotopy comparison of the (truncated) source and target of f.
// Homology is compared in degrees 0..top, which the caller must choose
// inside the range where the truncations are exact.
EquivalenceVerdict weak_homotopy_verdict(const SimplicialMap& f, int top);

// Weak-categorical comparison; exact when both sides are nerves.
EquivalenceVerdict categorical_verdict(const SimplicialMap& f);

}  // namespace cdiag

#endif  // CDIAG_VERDICTS_HPP
