#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdiag/anodyne.hpp"
#include "cdiag/category.hpp"
#include "cdiag/pushout.hpp"
#include "cdiag/shapes.hpp"
#include "cdiag/util.hpp"

using namespace cdiag;

namespace {

const BiInclusion& as_bi(const Inclusion& i) { return std::get<BiInclusion>(i); }
const SInclusion& as_s(const Inclusion& i) { return std::get<SInclusion>(i); }

void check_bi_mono(const BiInclusion& i) {
  BiBounds b = i.sub->bounds();
  for (int n = 0; n <= b.p; ++n) {
    for (int m = 0; m <= b.q; ++m) {
      const auto& table = i.into[mask_index(b, n, m)];
      std::vector<int> seen(table.begin(), table.end());
      std::sort(seen.begin(), seen.end());
      CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
      CHECK(static_cast<long long>(table.size()) == i.sub->count(n, m));
    }
  }
}

}  // namespace

TEST_CASE("generator family A") {
  auto g = make_generator({GeneratorSpec::Family::MbeA, 0, 1, 0, 3});
  const BiInclusion& i = as_bi(g);
  // ∂Δ⁰ is empty, so the subobject is Δ⁰ ⊠ Λ¹₀ = the vertex 0 column
  CHECK(i.total->count(0, 1) == 3);
  CHECK(i.sub->count(0, 1) == 1);
  CHECK(i.sub->count(0, 0) == 1);
  check_bi_mono(i);
  CHECK(validate_biset(*i.sub) == "");
  CHECK_THROWS_AS(make_generator({GeneratorSpec::Family::MbeA, 0, 0, 0, 3}), Error);
}

TEST_CASE("generator family B") {
  auto g = make_generator({GeneratorSpec::Family::MbeB, 2, 1, 1, 3});
  const BiInclusion& i = as_bi(g);
  check_bi_mono(i);
  // the horn union misses the interior cells
  CHECK(i.sub->count(2, 1) < i.total->count(2, 1));
  CHECK(validate_biset(*i.sub) == "");
  CHECK_THROWS_AS(make_generator({GeneratorSpec::Family::MbeB, 1, 0, 0, 3}), Error);
}

TEST_CASE("generator family D has identical underlying views with different markings") {
  auto g = make_generator({GeneratorSpec::Family::MbeD, 0, 0, 0, 3});
  const BiInclusion& i = as_bi(g);
  CHECK(i.sub->count(1, 0) == i.total->count(1, 0));
  CHECK(i.sub->count(1, 0) == 4);  // J truncated at 3 has 4 edges in total
  int sub_marked = 0, tot_marked = 0;
  for (int e : i.sub->elements(1, 0)) sub_marked += i.sub->is_marked(0, e);
  for (int e : i.total->elements(1, 0)) tot_marked += i.total->is_marked(0, e);
  CHECK(sub_marked == 2);  // degenerate edges only
  CHECK(tot_marked == 4);
  CHECK(i.involves_j);
  CHECK(i.j_truncation == 3);
}

TEST_CASE("generator family E embeds the sharp interval") {
  auto g = make_generator({GeneratorSpec::Family::MbeE, 0, 0, 0, 2});
  const BiInclusion& i = as_bi(g);
  check_bi_mono(i);
  CHECK(i.sub->count(1, 0) == 3);   // edges of Δ¹
  CHECK(i.total->count(1, 0) == 4); // edges of sk_2 J
  CHECK(validate_biset(*i.total) == "");
}

TEST_CASE("generating cofibrations") {
  auto g = make_generator({GeneratorSpec::Family::CofMark, 0, 0, 0, 3});
  const BiInclusion& i = as_bi(g);
  CHECK(i.sub->count(1, 0) == i.total->count(1, 0));
  int sub_marked = 0, tot_marked = 0;
  for (int e : i.sub->elements(1, 0)) sub_marked += i.sub->is_marked(0, e);
  for (int e : i.total->elements(1, 0)) tot_marked += i.total->is_marked(0, e);
  CHECK(sub_marked == 2);
  CHECK(tot_marked == 3);

  auto cf = make_generator({GeneratorSpec::Family::CofFlat, 1, 1, 0, 3});
  check_bi_mono(as_bi(cf));
  CHECK(as_bi(cf).sub->count(1, 1) == as_bi(cf).total->count(1, 1) - 1);

  auto cs = make_generator({GeneratorSpec::Family::CofSSetPlus, 2, 0, 0, 3});
  CHECK(as_s(cs).sub.set()->nondegenerate_counts() == std::vector<int>{3, 3});
  auto cm = make_generator({GeneratorSpec::Family::CofSSetPlus, 1, 1, 0, 3});
  CHECK(as_s(cm).sub.nondeg_marked_count() == 0);
  CHECK(as_s(cm).total.nondeg_marked_count() == 1);
}

TEST_CASE("inner horn lifting against a nerve") {
  Nerve N(FiniteCategory::chain(1), 2);
  auto D0 = standard_simplex(0);
  SimplicialMap to_point;
  to_point.src = N.set();
  to_point.dst = D0;
  for (GenId g = 0; g < N.set()->generator_count(); ++g) {
    Simplex img = Simplex::of(0);
    for (int i = 0; i < N.set()->generator(g).dim; ++i) img = D0->degeneracy(img, 0);
    to_point.img.push_back(img);
  }
  REQUIRE(to_point.validate() == "");

  auto inner = has_rlp(N.set(), D0, to_point, horn(2, 1), standard_simplex(2));
  CHECK(inner.status == LiftVerdict::Status::Holds);
  CHECK(inner.min_lifts == 1);
  CHECK(inner.max_lifts == 1);
  CHECK(inner.squares > 0);

  auto outer = has_rlp(N.set(), D0, to_point, horn(2, 0), standard_simplex(2));
  CHECK(outer.status == LiftVerdict::Status::Fails);
  CHECK(!outer.witness.empty());
}

TEST_CASE("identity inclusion always lifts") {
  auto D1 = standard_simplex(1);
  SInclusion ident;
  ident.sub = MarkedSSet::flat(D1);
  ident.total = MarkedSSet::flat(D1);
  ident.incl = SimplicialMap::identity(D1);
  ident.name = "id";
  Nerve N(FiniteCategory::chain(1), 2);
  SimplicialMap f = SimplicialMap::identity(D1);
  auto v = has_rlp(MarkedSSet::flat(D1), MarkedSSet::flat(D1), f, ident);
  CHECK(v.status == LiftVerdict::Status::Holds);
  CHECK(v.min_lifts == 1);
  CHECK(v.max_lifts == 1);
}

TEST_CASE("pushout product of boundary inclusions") {
  SInclusion b1;
  b1.sub = MarkedSSet::flat(boundary(1));
  b1.total = MarkedSSet::flat(standard_simplex(1));
  b1.incl = named_inclusion(boundary(1), standard_simplex(1));
  b1.name = "bd1";
  SInclusion pp = pushout_product(b1, b1);
  CHECK(pp.sub.set()->nondegenerate_counts() == std::vector<int>{4, 4});
  CHECK(pp.total.set()->nondegenerate_counts() == std::vector<int>{4, 5, 2});
  CHECK(pp.incl.validate() == "");
  CHECK(pp.incl.is_mono());

  // unit: pushout product with (∅ ⊆ Δ⁰) is isomorphic to the original
  SInclusion unit;
  unit.sub = MarkedSSet::flat(SimplicialSet::empty());
  unit.total = MarkedSSet::flat(standard_simplex(0));
  unit.incl.src = unit.sub.set();
  unit.incl.dst = unit.total.set();
  unit.name = "unit";
  SInclusion pu = pushout_product(b1, unit);
  CHECK(isomorphic(pu.sub.set(), b1.sub.set()));
  CHECK(isomorphic(pu.total.set(), b1.total.set()));
}

TEST_CASE("pushout product of bi-inclusions is a monomorphism") {
  auto a = as_bi(make_generator({GeneratorSpec::Family::CofFlat, 1, 0, 0, 3}));
  auto b = as_bi(make_generator({GeneratorSpec::Family::CofFlat, 0, 1, 0, 3}));
  BiInclusion pp = pushout_product(a, b);
  check_bi_mono(pp);
  CHECK(validate_biset(*pp.sub) == "");
  CHECK(validate_biset(*pp.total) == "");
}

TEST_CASE("lifting is stable under pushout of the inclusion leg") {
  Nerve N(FiniteCategory::chain(1), 2);
  auto D0 = standard_simplex(0);
  SimplicialMap to_point;
  to_point.src = N.set();
  to_point.dst = D0;
  for (GenId g = 0; g < N.set()->generator_count(); ++g) {
    Simplex img = Simplex::of(0);
    for (int i = 0; i < N.set()->generator(g).dim; ++i) img = D0->degeneracy(img, 0);
    to_point.img.push_back(img);
  }
  // push the inner horn inclusion out along a collapse of the horn
  auto H = horn(2, 1);
  auto D2 = standard_simplex(2);
  auto D1 = standard_simplex(1);
  SimplicialMap incl = named_inclusion(H, D2);
  // collapse of the horn onto Δ¹ sending vertex 2 to 1
  // generator order in horn(2,1): x0, x1, x2, x01, x12
  SimplicialMap fold{H, D1,
                     {Simplex::of(D1->find_generator("x0")),
                      Simplex::of(D1->find_generator("x1")),
                      Simplex::of(D1->find_generator("x1")),
                      Simplex::of(D1->find_generator("x01")),
                      Simplex{Word({0}), D1->find_generator("x1")}}};
  REQUIRE(fold.validate() == "");
  Pushout P = pushout(incl, fold);
  REQUIRE(P.from_left.is_mono());
  SInclusion pushed;
  pushed.sub = MarkedSSet::flat(D1);
  pushed.total = MarkedSSet::flat(P.set);
  pushed.incl = P.from_left;
  pushed.name = "pushed horn";
  auto base = has_rlp(N.set(), D0, to_point, horn(2, 1), standard_simplex(2));
  auto derived = has_rlp(MarkedSSet::flat(N.set()), MarkedSSet::flat(D0), to_point, pushed);
  CHECK(base.status == LiftVerdict::Status::Holds);
  CHECK(derived.status == LiftVerdict::Status::Holds);
}

TEST_CASE("classification of a groupoid nerve has the lifting property at small scale") {
  Nerve NJ(FiniteCategory::indiscrete(2), 4);
  MarkedSSet natural = natural_marking(NJ.set());
  ClassPtr N = classification_diagram(natural, 2, 2);
  TargetMeta meta = classification_meta(*N);
  CHECK(meta.two_coskeletal);
  CHECK(meta.provenance_bound == 4);

  for (GeneratorSpec spec : {GeneratorSpec{GeneratorSpec::Family::MbeA, 0, 1, 0, 3},
                             GeneratorSpec{GeneratorSpec::Family::MbeA, 1, 1, 1, 3},
                             GeneratorSpec{GeneratorSpec::Family::MbeB, 2, 0, 1, 3}}) {
    auto v = has_rlp_terminal(*N, as_bi(make_generator(spec)), &meta);
    CAPTURE(spec.name());
    CHECK(v.status == LiftVerdict::Status::Holds);
    CHECK(v.exact);
  }

  // D at truncation 2 against the natural marking holds (trivially: sharp)
  auto d = has_rlp_terminal(*N, as_bi(make_generator({GeneratorSpec::Family::MbeD, 0, 0, 0, 2})),
                            &meta);
  CHECK(d.status == LiftVerdict::Status::Holds);

  // flat marking instead: D fails
  ClassPtr Nflat = classification_diagram(MarkedSSet::flat(NJ.set()), 2, 2);
  auto dflat = has_rlp_terminal(
      *Nflat, as_bi(make_generator({GeneratorSpec::Family::MbeD, 0, 0, 0, 2})), &meta);
  CHECK(dflat.status == LiftVerdict::Status::Fails);
  CHECK(!dflat.witness.empty());
}

TEST_CASE("bounds shortfall yields unknown") {
  ClassPtr N = classification_diagram(MarkedSSet::flat(standard_simplex(0)), 1, 1);
  auto v = has_rlp_terminal(*N, as_bi(make_generator({GeneratorSpec::Family::MbeA, 2, 2, 0, 3})));
  CHECK(v.status == LiftVerdict::Status::Unknown);
}
