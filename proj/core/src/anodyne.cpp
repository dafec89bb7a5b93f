#include "cdiag/anodyne.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cdiag/shapes.hpp"
#include "cdiag/util.hpp"

namespace cdiag {

std::string GeneratorSpec::name() const {
  std::ostringstream out;
  switch (family) {
    case Family::MbeA: out << "mbe_A(" << n << "," << m << "," << k << ")"; break;
    case Family::MbeB: out << "mbe_B(" << n << "," << m << "," << k << ")"; break;
    case Family::MbeC: out << "mbe_C(m=" << m << ",d=" << j_truncation << ")"; break;
    case Family::MbeD: out << "mbe_D(m=" << m << ",d=" << j_truncation << ")"; break;
    case Family::MbeE: out << "mbe_E(m=" << m << ",d=" << j_truncation << ")"; break;
    case Family::CofFlat: out << "cof_flat(" << n << "," << m << ")"; break;
    case Family::CofMark: out << "cof_mark(" << n << ")"; break;
    case Family::CofSSetPlus: out << "cof_sset_plus(" << n << "," << m << ")"; break;
  }
  return out.str();
}

std::optional<GeneratorSpec::Family> GeneratorSpec::family_from_token(const std::string& t) {
  using F = GeneratorSpec::Family;
  if (t == "mbe_A") return F::MbeA;
  if (t == "mbe_B") return F::MbeB;
  if (t == "mbe_C") return F::MbeC;
  if (t == "mbe_D") return F::MbeD;
  if (t == "mbe_E") return F::MbeE;
  if (t == "cof_flat") return F::CofFlat;
  if (t == "cof_mark") return F::CofMark;
  if (t == "cof_sset_plus") return F::CofSSetPlus;
  return std::nullopt;
}

namespace {

// Set of left-factor vertices (as X-vertex indices) hit by an element,
// using the lexicographic element order of box products.
std::set<int> h_vertices(const IBiSet& box, long long y0count, int n, int m, int e) {
  std::set<int> out;
  for (int i = 0; i <= n; ++i) {
    out.insert(static_cast<int>(bi_vertex(box, n, m, e, i, 0) / y0count));
  }
  return out;
}

std::set<int> v_vertices(const IBiSet& box, long long y0count, int n, int m, int e) {
  std::set<int> out;
  for (int j = 0; j <= m; ++j) {
    out.insert(static_cast<int>(bi_vertex(box, n, m, e, 0, j) % y0count));
  }
  return out;
}

// Masked-subview inclusion of a box product, with the mask decided by a
// predicate on (bidegree, element).
BiInclusion masked_inclusion(BiPtr total, const std::function<bool(int, int, int)>& keep,
                             std::string name) {
  BiBounds b = total->bounds();
  std::vector<std::vector<char>> masks((b.p + 1) * (b.q + 1));
  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) {
      long long count = total->count(n, m);
      auto& mask = masks[mask_index(b, n, m)];
      mask.assign(count, 0);
      for (int e = 0; e < count; ++e) mask[e] = keep(n, m, e) ? 1 : 0;
    }
  }
  BiInclusion out;
  out.total = std::move(total);
  out.sub = materialize(*out.total, nullptr, &masks, &out.into);
  out.name = std::move(name);
  return out;
}

// Inclusion of box products induced by an inclusion of the left factors
// which is generator-to-generator (identity masks, handle arithmetic).
BiInclusion box_left_inclusion(const MarkedSSet& subX, const MarkedSSet& totX,
                               const SimplicialMap& iota, const SSetPtr& Y, int p, int q,
                               std::string name) {
  BiInclusion out;
  out.sub = box_product_marked(subX, Y, p, q);
  out.total = box_product_marked(totX, Y, p, q);
  out.name = std::move(name);
  BiBounds b{p, q};
  out.into.resize((p + 1) * (q + 1));
  for (int n = 0; n <= p; ++n) {
    const auto& sub_level = subX.set()->simplices(n);
    const auto& tot_level = totX.set()->simplices(n);
    for (int m = 0; m <= q; ++m) {
      long long ycount = Y->count(m);
      auto& table = out.into[mask_index(b, n, m)];
      table.resize(static_cast<size_t>(sub_level.size() * ycount));
      for (size_t xi = 0; xi < sub_level.size(); ++xi) {
        Simplex image = iota.apply(sub_level[xi]);
        auto it = std::lower_bound(tot_level.begin(), tot_level.end(), image);
        long long ti = it - tot_level.begin();
        for (long long yi = 0; yi < ycount; ++yi) {
          table[xi * ycount + yi] = static_cast<int>(ti * ycount + yi);
        }
      }
    }
  }
  return out;
}

}  // namespace

Inclusion make_generator(const GeneratorSpec& spec) {
  using F = GeneratorSpec::Family;
  const int n = spec.n, m = spec.m, k = spec.k, d = spec.j_truncation;
  switch (spec.family) {
    case F::MbeA: {
      if (n < 0 || m < 1 || k < 0 || k > m) {
        fail(ErrorKind::Parameter, "family A needs n >= 0, m >= 1, 0 <= k <= m");
      }
      BiPtr total = box_product(standard_simplex(n), standard_simplex(m), n, m);
      return masked_inclusion(
          total,
          [=, &total](int a, int b, int e) {
            // ∂Δⁿ part: the element misses a horizontal vertex (empty for n=0)
            auto hv = h_vertices(*total, m + 1, a, b, e);
            if (static_cast<int>(hv.size()) <= n) return true;
            auto vv = v_vertices(*total, m + 1, a, b, e);
            for (int j = 0; j <= m; ++j) {
              if (j != k && !vv.count(j)) return true;  // Λᵏₘ part
            }
            return false;
          },
          spec.name());
    }
    case F::MbeB: {
      if (k <= 0 || k >= n || m < 0) {
        fail(ErrorKind::Parameter, "family B needs 0 < k < n, m >= 0");
      }
      BiPtr total = box_product(standard_simplex(n), standard_simplex(m), n, m);
      return masked_inclusion(
          total,
          [=, &total](int a, int b, int e) {
            auto hv = h_vertices(*total, m + 1, a, b, e);
            for (int i = 0; i <= n; ++i) {
              if (i != k && !hv.count(i)) return true;  // horn part
            }
            if (m > 0) {
              auto vv = v_vertices(*total, m + 1, a, b, e);
              if (static_cast<int>(vv.size()) <= m) return true;  // boundary part
            }
            return false;
          },
          spec.name());
    }
    case F::MbeC: {
      if (m < 0 || d < 0) fail(ErrorKind::Parameter, "family C needs m >= 0, d >= 0");
      SSetPtr J = j_truncated(d);
      BiPtr total = box_product(J, standard_simplex(m), d, m);
      BiInclusion out = masked_inclusion(
          total,
          [=, &total](int a, int b, int e) {
            auto hv = h_vertices(*total, m + 1, a, b, e);
            if (hv.size() == 1 && hv.count(1)) return true;  // {1} ⊠ Δᵐ
            if (m > 0) {
              auto vv = v_vertices(*total, m + 1, a, b, e);
              if (static_cast<int>(vv.size()) <= m) return true;  // J ⊠ ∂Δᵐ
            }
            return false;
          },
          spec.name());
      out.involves_j = true;
      out.j_truncation = d;
      return out;
    }
    case F::MbeD: {
      if (m < 0 || d < 0) fail(ErrorKind::Parameter, "family D needs m >= 0, d >= 0");
      SSetPtr J = j_truncated(d);
      BiInclusion out =
          box_left_inclusion(MarkedSSet::flat(J), MarkedSSet::sharp(J),
                             SimplicialMap::identity(J), standard_simplex(m), d, m,
                             spec.name());
      out.involves_j = true;
      out.j_truncation = d;
      return out;
    }
    case F::MbeE: {
      if (m < 0 || d < 1) fail(ErrorKind::Parameter, "family E needs m >= 0, d >= 1");
      SSetPtr J = j_truncated(d);
      SSetPtr D1 = standard_simplex(1);
      SimplicialMap iota;
      iota.src = D1;
      iota.dst = J;
      iota.img = {Simplex::of(J->find_generator("p0")), Simplex::of(J->find_generator("p1")),
                  Simplex::of(J->find_generator("c0_1"))};
      if (!iota.validate().empty()) fail(ErrorKind::Internal, "bad interval inclusion");
      BiInclusion out =
          box_left_inclusion(MarkedSSet::sharp(D1), MarkedSSet::sharp(J), iota,
                             standard_simplex(m), d, m, spec.name());
      out.involves_j = true;
      out.j_truncation = d;
      return out;
    }
    case F::CofFlat: {
      if (n < 0 || m < 0) fail(ErrorKind::Parameter, "cof_flat needs n, m >= 0");
      BiPtr total = box_product(standard_simplex(n), standard_simplex(m), n, m);
      return masked_inclusion(
          total,
          [=, &total](int a, int b, int e) {
            if (n > 0) {
              auto hv = h_vertices(*total, m + 1, a, b, e);
              if (static_cast<int>(hv.size()) <= n) return true;
            }
            if (m > 0) {
              auto vv = v_vertices(*total, m + 1, a, b, e);
              if (static_cast<int>(vv.size()) <= m) return true;
            }
            return false;
          },
          spec.name());
    }
    case F::CofMark: {
      if (n < 0) fail(ErrorKind::Parameter, "cof_mark needs n >= 0");
      SSetPtr D1 = standard_simplex(1);
      return box_left_inclusion(MarkedSSet::flat(D1), MarkedSSet::sharp(D1),
                                SimplicialMap::identity(D1), standard_simplex(n), 1, n,
                                spec.name());
    }
    case F::CofSSetPlus: {
      if (m == 0) {
        if (n < 0) fail(ErrorKind::Parameter, "cof_sset_plus needs n >= 0");
        SInclusion out;
        SSetPtr B = boundary(n);
        SSetPtr D = standard_simplex(n);
        out.sub = MarkedSSet::flat(B);
        out.total = MarkedSSet::flat(D);
        out.incl = named_inclusion(B, D);
        out.name = spec.name();
        return out;
      }
      if (m == 1 && n == 1) {
        SInclusion out;
        SSetPtr D1 = standard_simplex(1);
        out.sub = MarkedSSet::flat(D1);
        out.total = MarkedSSet::sharp(D1);
        out.incl = SimplicialMap::identity(D1);
        out.name = spec.name();
        return out;
      }
      fail(ErrorKind::Parameter, "cof_sset_plus takes (n, 0) or (1, 1)");
    }
  }
  fail(ErrorKind::Internal, "unknown generator family");
}

SubPresentation sub_presentation(const SSetPtr& X, const std::vector<char>& keep) {
  SimplicialSet::Builder b;
  std::vector<GenId> newid(X->generator_count(), -1);
  SubPresentation out;
  std::vector<GenId> kept;
  for (GenId g = 0; g < X->generator_count(); ++g) {
    if (!keep[g]) continue;
    const auto& gen = X->generator(g);
    std::vector<Simplex> faces = gen.faces;
    for (Simplex& f : faces) {
      if (newid[f.gen] < 0) {
        fail(ErrorKind::Validation, "generator mask is not closed under faces");
      }
      f.gen = newid[f.gen];
    }
    newid[g] = b.add(gen.dim, std::move(faces), gen.name);
    kept.push_back(g);
  }
  out.set = b.build();
  out.incl.src = out.set;
  out.incl.dst = X;
  for (GenId g : kept) out.incl.img.push_back(Simplex::of(g));
  return out;
}

SInclusion pushout_product(const SInclusion& i, const SInclusion& j) {
  // Image generators of the two monos.
  std::vector<char> inA(i.total.set()->generator_count(), 0);
  for (const Simplex& s : i.incl.img) inA[s.gen] = 1;
  std::vector<char> inC(j.total.set()->generator_count(), 0);
  for (const Simplex& s : j.incl.img) inC[s.gen] = 1;

  MarkedProduct prod(i.total, j.total);
  std::vector<char> keep(prod.product.set()->generator_count(), 0);
  for (GenId g = 0; g < prod.product.set()->generator_count(); ++g) {
    auto [a, c] = prod.product.components(Simplex::of(g));
    if (inA[a.gen] || inC[c.gen]) keep[g] = 1;
  }
  SubPresentation sp = sub_presentation(prod.product.set(), keep);
  std::vector<Simplex> sub_marked;
  for (const Simplex& e : prod.marked.marked_edges()) {
    if (keep[e.gen]) {
      // generator indices were remapped; look the name up
      GenId g = sp.set->find_generator(prod.product.set()->generator(e.gen).name);
      sub_marked.push_back(Simplex::of(g));
    }
  }
  SInclusion out;
  out.sub = MarkedSSet(sp.set, std::move(sub_marked));
  out.total = prod.marked;
  out.incl = sp.incl;
  out.involves_j = i.involves_j || j.involves_j;
  out.j_truncation = std::max(i.j_truncation, j.j_truncation);
  out.name = "(" + i.name + ") ∧ (" + j.name + ")";
  return out;
}

namespace {

// Levelwise product of bounded views.
class BiProduct final : public IBiSet {
 public:
  BiProduct(BiPtr A, BiPtr B) : A_(std::move(A)), B_(std::move(B)) {
    BiBounds a = A_->bounds(), b = B_->bounds();
    bounds_ = {std::min(a.p, b.p), std::min(a.q, b.q)};
  }
  BiBounds bounds() const override { return bounds_; }
  long long count(int n, int m) const override {
    require_inside(n, m);
    return A_->count(n, m) * B_->count(n, m);
  }
  int h_face(int n, int m, int i, int e) const override {
    auto [a, b] = split(n, m, e);
    return join(n - 1, m, A_->h_face(n, m, i, a), B_->h_face(n, m, i, b));
  }
  int v_face(int n, int m, int j, int e) const override {
    auto [a, b] = split(n, m, e);
    return join(n, m - 1, A_->v_face(n, m, j, a), B_->v_face(n, m, j, b));
  }
  int h_deg(int n, int m, int i, int e) const override {
    auto [a, b] = split(n, m, e);
    return join(n + 1, m, A_->h_deg(n, m, i, a), B_->h_deg(n, m, i, b));
  }
  int v_deg(int n, int m, int j, int e) const override {
    auto [a, b] = split(n, m, e);
    return join(n, m + 1, A_->v_deg(n, m, j, a), B_->v_deg(n, m, j, b));
  }
  bool is_marked(int m, int e) const override {
    auto [a, b] = split(1, m, e);
    return A_->is_marked(m, a) && B_->is_marked(m, b);
  }
  std::string label(int n, int m, int e) const override {
    auto [a, b] = split(n, m, e);
    return "(" + A_->label(n, m, a) + " * " + B_->label(n, m, b) + ")";
  }
  std::pair<int, int> split(int n, int m, int e) const {
    long long bc = B_->count(n, m);
    return {static_cast<int>(e / bc), static_cast<int>(e % bc)};
  }
  int join(int n, int m, int a, int b) const {
    return static_cast<int>(a * B_->count(n, m) + b);
  }

 private:
  BiPtr A_, B_;
  BiBounds bounds_;
};

}  // namespace

BiPtr bi_product(const BiPtr& A, const BiPtr& B) {
  return std::make_shared<BiProduct>(A, B);
}

BiInclusion pushout_product(const BiInclusion& i, const BiInclusion& j) {
  BiPtr prod = bi_product(i.total, j.total);
  BiBounds b = prod->bounds();
  // image masks per bidegree
  auto in_image = [](const BiInclusion& inc, int cell, long long total) {
    std::vector<char> in(total, 0);
    if (cell < static_cast<int>(inc.into.size())) {
      for (int t : inc.into[cell]) in[t] = 1;
    }
    return in;
  };
  auto* bp = static_cast<const BiProduct*>(prod.get());
  std::vector<std::vector<char>> masks((b.p + 1) * (b.q + 1));
  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) {
      int cell = mask_index(b, n, m);
      std::vector<char> inA = in_image(i, mask_index(i.total->bounds(), n, m),
                                       i.total->count(n, m));
      std::vector<char> inC = in_image(j, mask_index(j.total->bounds(), n, m),
                                       j.total->count(n, m));
      long long total = prod->count(n, m);
      masks[cell].assign(total, 0);
      for (long long e = 0; e < total; ++e) {
        auto [a, c] = bp->split(n, m, static_cast<int>(e));
        masks[cell][e] = (inA[a] || inC[c]) ? 1 : 0;
      }
    }
  }
  BiInclusion out;
  out.total = prod;
  out.sub = materialize(*prod, nullptr, &masks, &out.into);
  out.involves_j = i.involves_j || j.involves_j;
  out.j_truncation = std::max(i.j_truncation, j.j_truncation);
  out.name = "(" + i.name + ") ∧ (" + j.name + ")";
  return out;
}

std::string to_string(LiftVerdict::Status s) {
  switch (s) {
    case LiftVerdict::Status::Holds: return "holds";
    case LiftVerdict::Status::Fails: return "fails";
    case LiftVerdict::Status::Unknown: return "unknown";
  }
  return "unknown";
}

TargetMeta classification_meta(const ClassificationView& N) {
  TargetMeta meta;
  DetectedNerve d = detect_nerve(N.source().set());
  meta.two_coskeletal = d.ok;
  meta.provenance_bound = N.source().set()->dim();
  return meta;
}

namespace {

void finish_exactness(LiftVerdict& v, bool involves_j, int trunc, const TargetMeta* meta,
                      int max_total_degree) {
  if (!involves_j) {
    v.exact = true;
    v.note = "exact";
    return;
  }
  v.truncation = trunc;
  if (meta && meta->two_coskeletal && trunc >= 3 && meta->provenance_bound >= max_total_degree) {
    v.exact = true;
    v.note = "at truncation " + std::to_string(trunc) +
             "; exact (2-coskeletal provenance of bound " +
             std::to_string(meta->provenance_bound) + " covers total degree " +
             std::to_string(max_total_degree) + ")";
  } else {
    v.exact = false;
    v.note = "holds/fails at truncation " + std::to_string(trunc) + " only";
  }
}

}  // namespace

LiftVerdict has_rlp(const MarkedSSet& X, const MarkedSSet& Y, const SimplicialMap& f,
                    const SInclusion& incl) {
  LiftVerdict verdict;
  auto tiX = std::make_shared<TargetIndex>(X.set());
  auto tiY = std::make_shared<TargetIndex>(Y.set());

  const int subgens = incl.sub.set()->generator_count();
  const int totgens = incl.total.set()->generator_count();
  // generator image table of the inclusion
  std::vector<int> image_gen(totgens, -1);
  for (GenId g = 0; g < subgens; ++g) {
    const Simplex& im = incl.incl.img[g];
    if (!im.word.empty()) fail(ErrorKind::Parameter, "inclusion must be generator-to-generator");
    image_gen[im.gen] = g;
  }

  bool stop = false;
  long long min_lifts = -1, max_lifts = 0;
  enumerate_marked_maps_visit(incl.sub, X, tiX, {}, [&](const std::vector<Simplex>& top) {
    // bottoms extending f ∘ top along the inclusion
    MapSearch bottom_search;
    bottom_search.forced.assign(totgens, std::nullopt);
    for (GenId g = 0; g < totgens; ++g) {
      if (image_gen[g] >= 0) bottom_search.forced[g] = f.apply(top[image_gen[g]]);
    }
    enumerate_marked_maps_visit(
        incl.total, Y, tiY, bottom_search, [&](const std::vector<Simplex>& bottom) {
          ++verdict.squares;
          MapSearch lift_search;
          lift_search.forced.assign(totgens, std::nullopt);
          for (GenId g = 0; g < totgens; ++g) {
            if (image_gen[g] >= 0) lift_search.forced[g] = top[image_gen[g]];
          }
          lift_search.admissible = [&](GenId g, const Simplex& cand) {
            return f.apply(cand) == bottom[g];
          };
          long long lifts = enumerate_marked_maps_visit(
              incl.total, X, tiX, lift_search,
              [](const std::vector<Simplex>&) { return true; });
          if (lifts == 0) {
            verdict.status = LiftVerdict::Status::Fails;
            std::ostringstream w;
            w << "square with no lift; top on sub-generators:";
            for (GenId g = 0; g < subgens; ++g) {
              w << " " << incl.sub.set()->generator(g).name << "->"
                << simplex_label(*X.set(), top[g]);
            }
            verdict.witness = w.str();
            stop = true;
            return false;
          }
          if (min_lifts < 0 || lifts < min_lifts) min_lifts = lifts;
          max_lifts = std::max(max_lifts, lifts);
          return true;
        });
    return !stop;
  });
  if (verdict.status != LiftVerdict::Status::Fails) {
    verdict.status = LiftVerdict::Status::Holds;
    verdict.min_lifts = (min_lifts < 0) ? 0 : min_lifts;
    verdict.max_lifts = max_lifts;
  }
  finish_exactness(verdict, incl.involves_j, incl.j_truncation, nullptr,
                   incl.total.set()->dim());
  return verdict;
}

LiftVerdict has_rlp(const SSetPtr& X, const SSetPtr& Y, const SimplicialMap& f,
                    const SSetPtr& sub, const SSetPtr& total) {
  SInclusion incl;
  incl.sub = MarkedSSet::flat(sub);
  incl.total = MarkedSSet::flat(total);
  incl.incl = named_inclusion(sub, total);
  incl.name = "shape inclusion";
  return has_rlp(MarkedSSet::flat(X), MarkedSSet::flat(Y), f, incl);
}

LiftVerdict has_rlp_terminal(const IBiSet& target, const BiInclusion& incl,
                             const TargetMeta* meta) {
  LiftVerdict verdict;
  BiBounds ib = incl.total->bounds();
  BiBounds tb = target.bounds();
  if (tb.p < ib.p || tb.q < ib.q) {
    verdict.status = LiftVerdict::Status::Unknown;
    verdict.note = "bounds insufficient: target view does not cover the inclusion";
    return verdict;
  }

  long long min_lifts = -1, max_lifts = 0;
  bool stop = false;
  enumerate_bi_maps(*incl.sub, target, {}, [&](const BiMapTable& square) {
    ++verdict.squares;
    BiMapSearch lift_search;
    lift_search.forced.resize((ib.p + 1) * (ib.q + 1));
    for (int n = 0; n <= ib.p; ++n) {
      for (int m = 0; m <= ib.q; ++m) {
        int cell = mask_index(ib, n, m);
        lift_search.forced[cell].assign(incl.total->count(n, m), -1);
        for (size_t e = 0; e < incl.into[cell].size(); ++e) {
          lift_search.forced[cell][incl.into[cell][e]] = square.values[cell][e];
        }
      }
    }
    long long lifts =
        enumerate_bi_maps(*incl.total, target, lift_search,
                          [](const BiMapTable&) { return true; });
    if (lifts == 0) {
      verdict.status = LiftVerdict::Status::Fails;
      std::ostringstream w;
      w << "square with no lift; values on the subobject:";
      for (int n = 0; n <= ib.p; ++n) {
        for (int m = 0; m <= ib.q; ++m) {
          int cell = mask_index(ib, n, m);
          for (size_t e = 0; e < incl.into[cell].size(); ++e) {
            if (!bi_nondegenerate(*incl.sub, n, m, static_cast<int>(e))) continue;
            w << " (" << n << "," << m << ") " << incl.sub->label(n, m, e) << " -> "
              << target.label(n, m, square.values[cell][e]) << ";";
          }
        }
      }
      verdict.witness = w.str();
      stop = true;
      return false;
    }
    if (min_lifts < 0 || lifts < min_lifts) min_lifts = lifts;
    max_lifts = std::max(max_lifts, lifts);
    return true;
  });
  (void)stop;
  if (verdict.status != LiftVerdict::Status::Fails) {
    verdict.status = LiftVerdict::Status::Holds;
    verdict.min_lifts = (min_lifts < 0) ? 0 : min_lifts;
    verdict.max_lifts = max_lifts;
  }
  finish_exactness(verdict, incl.involves_j, incl.j_truncation, meta, ib.p + ib.q);
  return verdict;
}

}  // namespace cdiag
