#ifndef CDIAG_ANODYNE_HPP
#define CDIAG_ANODYNE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cdiag/bisimplicial.hpp"
#include "cdiag/classification.hpp"
#include "cdiag/marked.hpp"

namespace cdiag {

// The generator families: the five marked bianodyne inclusions (A)-(E), the
// two generating-cofibration families of marked bisimplicial sets, and the
// generating cofibrations of marked simplicial sets.
struct GeneratorSpec {
  enum class Family { MbeA, MbeB, MbeC, MbeD, MbeE, CofFlat, CofMark, CofSSetPlus };
  Family family;
  int n = 0;
  int m = 0;
  int k = 0;
  int j_truncation = 3;  // families C, D, E

  std::string name() const;
  static std::optional<Family> family_from_token(const std::string& token);
};

// A masked sub-view together with its ambient view and the element
// injection; always a levelwise-injective inclusion by construction.
struct BiInclusion {
  BiPtr sub;
  BiPtr total;
  std::vector<std::vector<int>> into;  // [mask_index][sub handle] -> total handle
  bool involves_j = false;
  int j_truncation = -1;
  std::string name;
};

// A marked simplicial inclusion presented generator-to-generator.
struct SInclusion {
  MarkedSSet sub;
  MarkedSSet total;
  SimplicialMap incl;
  bool involves_j = false;
  int j_truncation = -1;
  std::string name;
};

using Inclusion = std::variant<SInclusion, BiInclusion>;

Inclusion make_generator(const GeneratorSpec& spec);

// Sub-presentation spanned by a generator mask (must be face-closed).
struct SubPresentation {
  SSetPtr set;
  SimplicialMap incl;
};
SubPresentation sub_presentation(const SSetPtr& X, const std::vector<char>& keep);

// Pushout products i ∧ j as inclusions into the product of the targets.
SInclusion pushout_product(const SInclusion& i, const SInclusion& j);
BiInclusion pushout_product(const BiInclusion& i, const BiInclusion& j);
// Levelwise product of bounded views (used by the bisimplicial variant).
BiPtr bi_product(const BiPtr& A, const BiPtr& B);

struct LiftVerdict {
  enum class Status { Holds, Fails, Unknown } status = Status::Unknown;
  long long squares = 0;
  long long min_lifts = 0;     // over all squares, when Holds
  long long max_lifts = 0;
  std::string witness;         // a square with no lift, when Fails
  std::optional<int> truncation;
  bool exact = true;
  std::string note;
};

std::string to_string(LiftVerdict::Status s);

// Provenance data used to certify truncation-exactness of verdicts whose
// inclusion involves a J-truncation.
struct TargetMeta {
  bool two_coskeletal = false;
  int provenance_bound = -1;
};
TargetMeta classification_meta(const ClassificationView& N);

// Right lifting property of f : X -> Y against a marked simplicial
// inclusion; enumerates the commuting squares and searches lifts by
// backtracking in canonical order.
LiftVerdict has_rlp(const MarkedSSet& X, const MarkedSSet& Y, const SimplicialMap& f,
                    const SInclusion& incl);
// Unmarked convenience form (flat markings on both sides).
LiftVerdict has_rlp(const SSetPtr& X, const SSetPtr& Y, const SimplicialMap& f,
                    const SSetPtr& sub, const SSetPtr& total);

// Extension property of a marked bisimplicial object (the map to the
// terminal object) against a bi-inclusion.
LiftVerdict has_rlp_terminal(const IBiSet& target, const BiInclusion& incl,
                             const TargetMeta* meta = nullptr);

}  // namespace cdiag

#endif  // CDIAG_ANODYNE_HPP
