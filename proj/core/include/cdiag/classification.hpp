#ifndef CDIAG_CLASSIFICATION_HPP
#define CDIAG_CLASSIFICATION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cdiag/bisimplicial.hpp"
#include "cdiag/category.hpp"
#include "cdiag/marked.hpp"
#include "cdiag/verdicts.hpp"

namespace cdiag {

// The classification diagram of a marked simplicial set: the (n, m)-elements
// are the marked maps (Δⁿ)♭ x (Δᵐ)♯ -> (X, S); the marking consists of the
// maps that are also marked in the Δ¹ direction. Bidegrees are computed
// lazily; elements are interned on demand, so counts never materialize
// element tables. Interning calls must stay on one thread; counts are safe
// to take concurrently.
class ClassificationView final : public IBiSet {
 public:
  ClassificationView(MarkedSSet source, int p, int q);

  BiBounds bounds() const override { return bounds_; }
  long long count(int n, int m) const override;
  std::vector<int> elements(int n, int m) const override;  // interns everything
  int h_face(int n, int m, int i, int e) const override;
  int v_face(int n, int m, int j, int e) const override;
  int h_deg(int n, int m, int i, int e) const override;
  int v_deg(int n, int m, int j, int e) const override;
  bool is_marked(int m, int e) const override;
  std::vector<int> fillers(int n, int m, const std::vector<int>& hfaces,
                           const std::vector<int>& vfaces) const override;
  std::string label(int n, int m, int e) const override;

  const MarkedSSet& source() const { return source_; }
  const MarkedProduct& grid(int n, int m) const;
  SimplicialMap map_of(int n, int m, int e) const;
  int intern_assignment(int n, int m, const std::vector<int32_t>& key) const;
  int intern_map(int n, int m, const std::vector<Simplex>& assignment) const;
  const std::vector<int32_t>& key_of(int n, int m, int e) const;

 private:
  using Key = std::vector<int32_t>;
  struct Store {
    std::map<Key, int> ids;
    std::vector<const Key*> keys;
    long long full_count = -1;
    bool fully_interned = false;
  };
  enum class Op { HFace, VFace, HDeg, VDeg };

  Store& store(int n, int m) const;
  // Substitution map: the image of grid(n', m') in grid(n, m) along the
  // elementary operator (n', m') are the source bidegree of the op.
  const SimplicialMap& subst(Op op, int i, int n, int m) const;
  Key key_from_assignment(int n, int m, const std::vector<Simplex>& assign) const;
  int apply_op(Op op, int i, int n, int m, int e) const;

  MarkedSSet source_;
  BiBounds bounds_;
  TargetIndexPtr target_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, MarkedProduct> grids_;
  mutable std::map<std::pair<int, int>, Store> stores_;
  mutable std::map<std::tuple<int, int, int, int>, SimplicialMap> substs_;
};

using ClassPtr = std::shared_ptr<ClassificationView>;

// (t+)^! with marking; the unmarked classification diagram is the same view
// consumed through the IBiSet interface without its marking.
ClassPtr classification_diagram(const MarkedSSet& X, int p, int q);

// Reindexing functors.
BiPtr p1_star(const MarkedSSet& X, int p, int q);  // rows all equal to X
MarkedSSet i1_star(const IBiSet& X);               // first row (index 1)
MarkedSSet t_lower(const IBiSet& X);               // (diag X, S_1)

// The bidegree-wise function induced on classification diagrams by a marked
// map; used for functoriality checks and column/row verdicts.
struct InducedClassMap {
  ClassPtr src;
  ClassPtr dst;
  MarkedMap through;
  int apply(int n, int m, int e) const;
};
InducedClassMap induced_class_map(ClassPtr src, ClassPtr dst, MarkedMap u);

// Classification diagram of a relative category: (n, m)-elements are the
// functors [n] x [m] -> C whose [m]-direction arrows lie in W.
BiPtr relative_classification(const RelativeCategory& R, int p, int q);

// Column/row verdicts for the induced comparison map.
EquivalenceVerdict column_verdict(const InducedClassMap& f, int n);
EquivalenceVerdict row_verdict(const InducedClassMap& f, int m);

// Per-n verdicts that the row-degeneracy maps (X_{*,0}, S_0) -> (X_{*,n}, S_n)
// are cartesian equivalences, by sound rules (marked isomorphism, or both
// rows naturally-marked nerves compared by categorical equivalence).
struct ConstancyReport {
  std::vector<Three> per_n;
  std::vector<std::string> reasons;
};
ConstancyReport categorically_constant_check(const IBiSet& X, int nbound);

}  // namespace cdiag

#endif  // CDIAG_CLASSIFICATION_HPP
