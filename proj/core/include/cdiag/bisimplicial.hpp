#ifndef CDIAG_BISIMPLICIAL_HPP
#define CDIAG_BISIMPLICIAL_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdiag/marked.hpp"
#include "cdiag/simplicial_set.hpp"

namespace cdiag {

struct BiBounds {
  int p = 0;
  int q = 0;
};

// A bounded view of a marked bisimplicial set. Elements at bidegree (n, m)
// are opaque handles in a canonical order; horizontal operators move n,
// vertical operators move m. The marking is a simplicial subset of column 1,
// queried on (1, m)-elements. Implementations must be pure and safe for
// concurrent reads.
class IBiSet {
 public:
  virtual ~IBiSet() = default;

  virtual BiBounds bounds() const = 0;
  virtual long long count(int n, int m) const = 0;
  virtual std::vector<int> elements(int n, int m) const;  // 0..count-1 by default

  virtual int h_face(int n, int m, int i, int e) const = 0;
  virtual int v_face(int n, int m, int j, int e) const = 0;
  virtual int h_deg(int n, int m, int i, int e) const = 0;  // needs n < pbound
  virtual int v_deg(int n, int m, int j, int e) const = 0;  // needs m < qbound

  virtual bool is_marked(int m, int e) const = 0;

  // Elements at (n, m) whose face tuples match the prescription. Empty face
  // vectors mean "no constraint in that direction" (only legal when the
  // corresponding dimension is 0).
  virtual std::vector<int> fillers(int n, int m, const std::vector<int>& hfaces,
                                   const std::vector<int>& vfaces) const;

  virtual std::string label(int n, int m, int e) const = 0;

  void require_inside(int n, int m) const;
};

using BiPtr = std::shared_ptr<const IBiSet>;

// Bidegreewise EZ data: e == hword . vword . core with core bi-nondegenerate.
struct BiNormalForm {
  Word hword;
  Word vword;
  int n = 0, m = 0;
  int core = 0;
};

bool bi_nondegenerate(const IBiSet& X, int n, int m, int e);
BiNormalForm bi_normal_form(const IBiSet& X, int n, int m, int e);
// The (i, j) vertex of an element, as a handle at (0, 0).
int bi_vertex(const IBiSet& X, int n, int m, int e, int i, int j);

// Exhaustive check of both families of simplicial identities, their
// commutation, and the marking closure properties, within bounds.
std::string validate_biset(const IBiSet& X);

// Explicit tables; the result of materializing any view (or restricting it
// to a subobject / replacing its marking).
class BiView : public IBiSet {
 public:
  BiBounds bounds() const override { return bounds_; }
  long long count(int n, int m) const override;
  int h_face(int n, int m, int i, int e) const override;
  int v_face(int n, int m, int j, int e) const override;
  int h_deg(int n, int m, int i, int e) const override;
  int v_deg(int n, int m, int j, int e) const override;
  bool is_marked(int m, int e) const override;
  std::string label(int n, int m, int e) const override;

 private:
  friend std::shared_ptr<BiView> materialize(const IBiSet&,
                                             const std::function<bool(int, int)>*,
                                             const std::vector<std::vector<char>>*,
                                             std::vector<std::vector<int>>*);
  BiBounds bounds_;
  int idx(int n, int m) const { return n * (bounds_.q + 1) + m; }
  std::vector<long long> counts_;
  std::vector<std::vector<std::vector<int>>> hface_, vface_, hdeg_, vdeg_;  // [idx][i][e]
  std::vector<std::vector<char>> marked_;  // per m, elements of (1, m)
  std::vector<std::vector<std::string>> labels_;
};

// Copies a view into explicit tables. Optional marking override (per (m, e))
// and optional per-bidegree keep-masks (the masked subset must be closed
// under all operators; validated).
std::shared_ptr<BiView> materialize(const IBiSet& X,
                                    const std::function<bool(int, int)>* marking = nullptr,
                                    const std::vector<std::vector<char>>* masks = nullptr,
                                    std::vector<std::vector<int>>* kept_out = nullptr);

// mask helper: index of bidegree (n, m) in a mask vector
inline int mask_index(const BiBounds& b, int n, int m) { return n * (b.q + 1) + m; }

// Box products (X or X̄) ⊠ Y within bounds; marking is S x Y in column 1.
// Elements at (n, m) are the pairs (x, y) in lexicographic order, so the
// handle is index(x) * |Y_m| + index(y).
BiPtr box_product(const SSetPtr& X, const SSetPtr& Y, int p, int q);
BiPtr box_product_marked(const MarkedSSet& X, const SSetPtr& Y, int p, int q);

// Rows-constant view: every row is (X, S); vertical operators are identity.
BiPtr rows_constant(const MarkedSSet& X, int p, int q);

// Slices and the diagonal, re-presented by generators (exact up to the
// view's bound in the sliced direction).
struct BiSlice {
  SSetPtr set;
  std::vector<std::vector<Simplex>> elem_simplex;  // [level][element]
};
enum class BiAxis { Column, Row };
BiSlice slice(const IBiSet& X, BiAxis axis, int index);
MarkedSSet row_marked(const IBiSet& X, int m);
BiSlice diagonal_slice(const IBiSet& X);
// (diag X, S_1): the diagonal with the level-1 marking.
MarkedSSet diagonal_marked(const IBiSet& X);

// Full bisimplicial subset spanned by a set of (0,0)-elements.
BiPtr full_subset(const BiPtr& X, const std::vector<int>& vertices);
// Elements whose bi-nondegenerate core has total degree <= s.
BiPtr bidegree_skeleton(const BiPtr& X, int s);

// A map of bounded views, stored on every element.
struct BiMapTable {
  BiBounds src_bounds;
  std::vector<std::vector<int>> values;  // [mask_index(n,m)][e]
  int at(const BiBounds& b, int n, int m, int e) const {
    return values[mask_index(b, n, m)][e];
  }
};

struct BiMapSearch {
  // forced[mask_index][e] = target handle or -1.
  std::vector<std::vector<int>> forced;
  bool require_marked = true;  // marked elements must land on marked elements
};

// Enumerates maps of bounded views by backtracking over the bi-nondegenerate
// elements of A in (total degree, n, element) order; canonical order.
long long enumerate_bi_maps(const IBiSet& A, const IBiSet& B, const BiMapSearch& search,
                            const std::function<bool(const BiMapTable&)>& visit);

std::optional<BiMapTable> find_bi_isomorphism(const IBiSet& A, const IBiSet& B);
bool bi_isomorphic(const IBiSet& A, const IBiSet& B);

}  // namespace cdiag

#endif  // CDIAG_BISIMPLICIAL_HPP
