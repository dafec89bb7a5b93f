#ifndef CDIAG_SIMPLICIAL_MAP_HPP
#define CDIAG_SIMPLICIAL_MAP_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cdiag/simplicial_set.hpp"
#include "cdiag/util.hpp"

namespace cdiag {

// A simplicial map, stored as the image of each source generator in EZ
// normal form. Extends to all simplices by (w . g) -> w . img[g].
struct SimplicialMap {
  SSetPtr src;
  SSetPtr dst;
  std::vector<Simplex> img;

  Simplex apply(const Simplex& x) const {
    const Simplex& y = img.at(x.gen);
    return Simplex{Word::compose(x.word, y.word), y.gen};
  }

  static SimplicialMap identity(SSetPtr X);
  static SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g);

  // Empty string when the assignment commutes with all faces.
  std::string validate() const;

  bool is_injective_on_generators() const;
  bool is_mono() const;  // injective on all simplices up to src dim

  friend bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
    return a.img == b.img;
  }
  friend auto operator<=>(const SimplicialMap& a, const SimplicialMap& b) {
    return a.img <=> b.img;
  }
};

// Per-dimension candidate index for a fixed target: canonical simplex lists,
// integer face tables and a faces -> simplices lookup used to drive the
// backtracking enumeration. Write-once per dimension, safe for concurrent use.
class TargetIndex {
 public:
  explicit TargetIndex(SSetPtr Y);

  const SimplicialSet& set() const { return *Y_; }
  SSetPtr ptr() const { return Y_; }

  int count(int n) const;
  const Simplex& simplex(int n, int idx) const;
  int index_of(int n, const Simplex& x) const;
  int face(int n, int idx, int i) const;        // index at dimension n-1
  int degeneracy(int n, int idx, int i) const;  // index at dimension n+1
  // Indices of the n-simplices whose face tuple matches.
  const std::vector<int>& with_faces(int n, const std::vector<int>& key) const;

 private:
  struct Level {
    std::vector<Simplex> list;
    std::unordered_map<std::vector<int>, std::vector<int>, VecIntHash> by_faces;
    std::vector<std::vector<int>> face_idx;   // [idx][i]
    std::vector<std::vector<int>> degen_idx;  // [idx][i]
    bool built = false;
  };
  Level& level(int n) const;

  SSetPtr Y_;
  mutable std::mutex mu_;
  mutable std::unordered_map<int, Level> levels_;
  static const std::vector<int> kEmpty;
};

using TargetIndexPtr = std::shared_ptr<TargetIndex>;

struct MapSearch {
  // Forced images for a subset of source generators (partial map extension).
  std::vector<std::optional<Simplex>> forced;
  // Extra per-generator admissibility constraint (marking preservation etc).
  std::function<bool(GenId, const Simplex&)> admissible;
};

// Enumerates simplicial maps X -> Y by backtracking over generator images in
// canonical order (generator index, then image normal form). The visitor
// receives each complete assignment; returning false stops the search.
// Returns the number of maps visited.
long long enumerate_maps_visit(const SSetPtr& X, const TargetIndexPtr& Y,
                               const MapSearch& search,
                               const std::function<bool(const std::vector<Simplex>&)>& visit);

std::vector<SimplicialMap> enumerate_maps(const SSetPtr& X, const SSetPtr& Y);
long long count_maps(const SSetPtr& X, const SSetPtr& Y);

// Oracle-grade helper: the number of monotone maps [p] -> [n].
long long count_monotone_maps(int p, int n);

// First isomorphism in canonical search order, if any. An isomorphism of
// presented simplicial sets is exactly a dimension-preserving bijection of
// generators commuting with faces.
std::optional<SimplicialMap> find_isomorphism(const SSetPtr& X, const SSetPtr& Y);
bool isomorphic(const SSetPtr& X, const SSetPtr& Y);

}  // namespace cdiag

#endif  // CDIAG_SIMPLICIAL_MAP_HPP
