#include "cdiag/verdicts.hpp"

#include <algorithm>

#include "cdiag/category.hpp"
#include "cdiag/homology.hpp"
#include "cdiag/util.hpp"

namespace cdiag {

std::string to_string(Three v) {
  switch (v) {
    case Three::Holds: return "holds";
    case Three::Fails: return "fails";
    case Three::Unknown: return "unknown";
  }
  return "unknown";
}

ContractVerdict contractibility(const SSetPtr& X) {
  ContractVerdict out;
  if (X->generator_count() == 0) {
    out.status = Three::Fails;
    out.reason = "empty simplicial set";
    return out;
  }
  DetectedNerve d = detect_nerve(X);
  if (d.ok) {
    const FiniteCategory& C = d.cat;
    for (int o = 0; o < C.object_count(); ++o) {
      bool terminal = true, initial = true;
      for (int a = 0; a < C.object_count(); ++a) {
        terminal = terminal && C.hom(a, o).size() == 1;
        initial = initial && C.hom(o, a).size() == 1;
      }
      if (terminal || initial) {
        out.status = Three::Holds;
        out.reason = std::string("nerve of a category with ") +
                     (terminal ? "a terminal" : "an initial") + " object " +
                     std::to_string(o);
        return out;
      }
    }
  }
  HomologyProfile h = homology(*X, std::max(X->dim(), 0));
  if (!h.point_like()) {
    out.status = Three::Fails;
    out.reason = "homology differs from a point: " + h.to_string();
    return out;
  }
  out.status = Three::Unknown;
  out.reason = d.ok ? "nerve without initial or terminal object; homology is point-like"
                    : "no sound rule applies";
  return out;
}

bool is_isomorphism(const SimplicialMap& f) {
  if (f.src->generator_count() != f.dst->generator_count()) return false;
  std::vector<bool> hit(f.dst->generator_count(), false);
  for (GenId g = 0; g < f.src->generator_count(); ++g) {
    const Simplex& y = f.img[g];
    if (!y.word.empty()) return false;
    if (f.src->generator(g).dim != f.dst->generator(y.gen).dim) return false;
    if (hit[y.gen]) return false;
    hit[y.gen] = true;
  }
  return true;
}

EquivalenceVerdict weak_homotopy_verdict(const SimplicialMap& f, int top) {
  EquivalenceVerdict out;
  if (is_isomorphism(f)) {
    out.status = EquivalenceVerdict::Status::Equivalent;
    out.certificate = "isomorphism of simplicial sets";
    return out;
  }
  ContractVerdict cx = contractibility(f.src);
  ContractVerdict cy = contractibility(f.dst);
  if (cx.status == Three::Holds && cy.status == Three::Holds) {
    out.status = EquivalenceVerdict::Status::Equivalent;
    out.certificate = "both sides contractible (" + cx.reason + "; " + cy.reason + ")";
    return out;
  }
  HomologyProfile hx = homology(*f.src, top);
  HomologyProfile hy = homology(*f.dst, top);
  if (!(hx == hy)) {
    for (int n = 0; n <= top; ++n) {
      if (!(hx.levels[n] == hy.levels[n])) {
        out.status = EquivalenceVerdict::Status::NotEquivalent;
        out.certificate = "homology mismatch in degree " + std::to_string(n) + ": " +
                          hx.to_string() + " vs " + hy.to_string();
        return out;
      }
    }
  }
  out.status = EquivalenceVerdict::Status::Unknown;
  out.certificate = "no sound rule decided the comparison";
  return out;
}

EquivalenceVerdict categorical_verdict(const SimplicialMap& f) {
  EquivalenceVerdict out;
  if (is_isomorphism(f)) {
    out.status = EquivalenceVerdict::Status::Equivalent;
    out.certificate = "isomorphism of simplicial sets";
    return out;
  }
  DetectedNerve dx = detect_nerve(f.src);
  DetectedNerve dy = detect_nerve(f.dst);
  if (dx.ok && dy.ok) {
    Functor F;
    F.src = dx.cat;
    F.dst = dy.cat;
    const auto& xverts = f.src->simplices(0);
    const auto& yverts = f.dst->simplices(0);
    const auto& yedges = f.dst->simplices(1);
    for (const Simplex& v : xverts) {
      Simplex w = f.apply(v);
      F.obj_map.push_back(static_cast<int>(
          std::lower_bound(yverts.begin(), yverts.end(), w) - yverts.begin()));
    }
    for (const Simplex& e : dx.arrow_edge) {
      Simplex w = f.apply(e);
      F.arrow_map.push_back(static_cast<int>(
          std::lower_bound(yedges.begin(), yedges.end(), w) - yedges.begin()));
    }
    std::string why = F.validate();
    if (!why.empty()) {
      fail(ErrorKind::Internal, "induced assignment is not a functor: " + why);
    }
    if (is_equivalence(F)) {
      out.status = EquivalenceVerdict::Status::Equivalent;
      out.certificate = "categorical equivalence of the detected categories";
    } else {
      out.status = EquivalenceVerdict::Status::NotEquivalent;
      out.certificate = "detected categories are not equivalent";
    }
    return out;
  }
  // Fallback obstruction: path components must biject under an equivalence.
  HomologyProfile hx = homology(*f.src, 0);
  HomologyProfile hy = homology(*f.dst, 0);
  if (!(hx == hy)) {
    out.status = EquivalenceVerdict::Status::NotEquivalent;
    out.certificate = "component counts differ: " + hx.to_string() + " vs " + hy.to_string();
    return out;
  }
  out.status = EquivalenceVerdict::Status::Unknown;
  out.certificate = dx.ok ? "target is not a recognized nerve" : "source is not a recognized nerve";
  return out;
}

}  // namespace cdiag
