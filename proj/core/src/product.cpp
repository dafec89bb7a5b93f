#include "cdiag/product.hpp"

#include <algorithm>

#include "cdiag/util.hpp"

namespace cdiag {

namespace {

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return true;
}

}  // namespace

ProductSSet::ProductSSet(SSetPtr X, SSetPtr Y) : left_(std::move(X)), right_(std::move(Y)) {
  SimplicialSet::Builder b;
  int top = (left_->dim() < 0 || right_->dim() < 0) ? -1 : left_->dim() + right_->dim();

  // Pass 1: collect the nondegenerate pairs per dimension (canonical order).
  std::vector<std::vector<std::pair<Simplex, Simplex>>> gens(top + 1);
  for (int n = 0; n <= top; ++n) {
    for (const Simplex& a : left_->simplices(n)) {
      std::vector<int> da = left_->degeneracy_set(a);
      for (const Simplex& b : right_->simplices(n)) {
        if (disjoint(da, right_->degeneracy_set(b))) {
          gens[n].push_back({a, b});
        }
      }
    }
  }
  for (int n = 0; n <= top; ++n) {
    for (const auto& pr : gens[n]) {
      GenId id = static_cast<GenId>(factors_.size());
      factors_.push_back(pr);
      lookup_[pr] = id;
      (void)id;
    }
  }

  // Pass 2: build generators with faces via joint normalization.
  // of_pair needs lookup_, which is complete by now; the builder needs faces
  // of lower dimension first, which the dimension order guarantees.
  int at = 0;
  for (int n = 0; n <= top; ++n) {
    for (const auto& pr : gens[n]) {
      std::vector<Simplex> faces;
      if (n >= 1) {
        faces.reserve(n + 1);
        for (int i = 0; i <= n; ++i) {
          faces.push_back(of_pair(left_->face(pr.first, i), right_->face(pr.second, i)));
        }
      }
      b.add(n, std::move(faces), "q" + std::to_string(at++));
    }
  }
  set_ = b.build();
}

Simplex ProductSSet::of_pair(const Simplex& a, const Simplex& b) const {
  if (left_->dim_of(a) != right_->dim_of(b)) {
    fail(ErrorKind::Parameter, "pair components have different dimensions");
  }
  std::vector<int> da = left_->degeneracy_set(a);
  std::vector<int> db = right_->degeneracy_set(b);
  std::vector<int> common;
  std::set_intersection(da.begin(), da.end(), db.begin(), db.end(),
                        std::back_inserter(common));
  if (common.empty()) {
    auto it = lookup_.find({a, b});
    if (it == lookup_.end()) fail(ErrorKind::Internal, "pair not in product table");
    return Simplex::of(it->second);
  }
  int i = common.back();
  Simplex sub = of_pair(left_->face(a, i), right_->face(b, i));
  return Simplex{sub.word.inserted(i), sub.gen};
}

std::pair<Simplex, Simplex> ProductSSet::components(const Simplex& x) const {
  const auto& pr = factors_.at(x.gen);
  return {Simplex{Word::compose(x.word, pr.first.word), pr.first.gen},
          Simplex{Word::compose(x.word, pr.second.word), pr.second.gen}};
}

SimplicialMap ProductSSet::proj_left() const {
  SimplicialMap f;
  f.src = set_;
  f.dst = left_;
  f.img.reserve(factors_.size());
  for (const auto& pr : factors_) f.img.push_back(pr.first);
  return f;
}

SimplicialMap ProductSSet::proj_right() const {
  SimplicialMap f;
  f.src = set_;
  f.dst = right_;
  f.img.reserve(factors_.size());
  for (const auto& pr : factors_) f.img.push_back(pr.second);
  return f;
}

SimplicialMap ProductSSet::pair_map(const SimplicialMap& f, const SimplicialMap& g) const {
  if (f.src.get() != g.src.get()) fail(ErrorKind::Parameter, "pairing needs a common source");
  SimplicialMap h;
  h.src = f.src;
  h.dst = set_;
  h.img.reserve(f.img.size());
  for (size_t i = 0; i < f.img.size(); ++i) h.img.push_back(of_pair(f.img[i], g.img[i]));
  return h;
}

SimplicialMap product_map(const ProductSSet& src, const ProductSSet& dst,
                          const SimplicialMap& f, const SimplicialMap& g) {
  SimplicialMap h;
  h.src = src.set();
  h.dst = dst.set();
  h.img.reserve(src.set()->generator_count());
  for (GenId q = 0; q < src.set()->generator_count(); ++q) {
    auto [a, b] = src.components(Simplex::of(q));
    h.img.push_back(dst.of_pair(f.apply(a), g.apply(b)));
  }
  return h;
}

}  // namespace cdiag
