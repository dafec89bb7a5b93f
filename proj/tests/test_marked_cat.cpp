#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cdiag/category.hpp"
#include "cdiag/marked.hpp"
#include "cdiag/shapes.hpp"
#include "cdiag/simplicial_map.hpp"
#include "cdiag/util.hpp"

using namespace cdiag;

TEST_CASE("flat and sharp markings") {
  auto D1 = standard_simplex(1);
  CHECK(MarkedSSet::flat(D1).nondeg_marked_count() == 0);
  CHECK(MarkedSSet::sharp(D1).nondeg_marked_count() == 1);
  // unmark(flat(X)) = X
  CHECK(MarkedSSet::flat(D1).set().get() == D1.get());
  // degenerate edges always marked
  MarkedSSet flat = MarkedSSet::flat(D1);
  Simplex dv = D1->degeneracy(Simplex::of(D1->find_generator("x0")), 0);
  CHECK(flat.is_marked(dv));
}

TEST_CASE("marked map counts") {
  auto D1 = standard_simplex(1);
  auto sharp = MarkedSSet::sharp(D1);
  auto flat = MarkedSSet::flat(D1);
  CHECK(count_marked_maps(sharp, flat) == 2);  // the two constants
  CHECK(count_marked_maps(sharp, sharp) == 3);
  CHECK(count_marked_maps(flat, sharp) == count_maps(D1, D1));
  // flat adjunction against arbitrary marking
  auto J2 = j_truncated(2);
  MarkedSSet half(J2, {Simplex::of(J2->find_generator("c0_1"))});
  CHECK(count_marked_maps(MarkedSSet::flat(D1), half) == count_maps(D1, J2));
}

TEST_CASE("marked maps are verified and deterministic") {
  auto D1 = standard_simplex(1);
  auto maps = enumerate_marked_maps(MarkedSSet::sharp(D1), MarkedSSet::flat(D1));
  REQUIRE(maps.size() == 2);
  CHECK(maps[0].marking_checked);
  CHECK(std::is_sorted(maps.begin(), maps.end()));
  for (const auto& m : maps) {
    CHECK(preserves_marking(MarkedSSet::sharp(D1), MarkedSSet::flat(D1), m.map));
  }
}

TEST_CASE("marked mapping space") {
  auto D0 = standard_simplex(0);
  auto D1 = standard_simplex(1);
  auto J2 = j_truncated(2);
  // vertex count of Map((Δ0)♭, Y) is the vertex count of Y
  auto M = marked_mapping_space(MarkedSSet::flat(D0), MarkedSSet::flat(J2), 0);
  CHECK(M->count(0) == J2->count(0));
  auto M2 = marked_mapping_space(MarkedSSet::sharp(D1), MarkedSSet::flat(D1), 0);
  CHECK(M2->count(0) == 2);
  auto M3 = marked_mapping_space(MarkedSSet::sharp(D1), MarkedSSet::flat(D1), 2);
  CHECK(M3->count(0) == count_marked_maps(MarkedSSet::sharp(D1), MarkedSSet::flat(D1)));
  CHECK(M3->validate() == "");
}

TEST_CASE("finite category constructions") {
  auto C2 = FiniteCategory::chain(2);
  CHECK(C2.object_count() == 3);
  CHECK(C2.arrow_count() == 6);
  CHECK(C2.validate() == "");

  auto T = FiniteCategory::terminal();
  CHECK(T.object_count() == 1);
  CHECK(T.arrow_count() == 1);

  auto F = FiniteCategory::free_on_graph(3, {{0, 1}, {1, 2}}, {"f", "g"});
  CHECK(F.object_count() == 3);
  CHECK(F.arrow_count() == 6);  // 3 ids, 2 generators, 1 composite
  CHECK_THROWS_AS(FiniteCategory::free_on_graph(2, {{0, 1}, {1, 0}}), Error);

  auto sq = FiniteCategory::square();
  CHECK(sq.object_count() == 4);
  CHECK(sq.arrow_count() == 4 + 4 + 1);  // ids, sides, diagonal
}

TEST_CASE("nerve of a chain is the standard simplex") {
  for (int n = 0; n <= 3; ++n) {
    Nerve N(FiniteCategory::chain(n), std::max(n, 2));
    CHECK(isomorphic(N.set(), standard_simplex(n)));
    CHECK(N.set()->validate() == "");
  }
}

TEST_CASE("nerve of the indiscrete groupoid is the J truncation") {
  for (int d = 1; d <= 4; ++d) {
    Nerve N(FiniteCategory::indiscrete(2), d);
    CHECK(isomorphic(N.set(), j_truncated(d)));
  }
}

TEST_CASE("nerve simplex counts match the chain-count oracle") {
  for (const auto& C : {FiniteCategory::chain(2), FiniteCategory::indiscrete(2),
                        FiniteCategory::square(),
                        FiniteCategory::free_on_graph(3, {{0, 1}, {0, 2}})}) {
    Nerve N(C, 4);
    for (int n = 0; n <= 4; ++n) {
      CHECK(N.set()->count(n) == count_chains(C, n, false));
    }
    std::vector<int> counts = N.set()->nondegenerate_counts();
    for (int n = 0; n < static_cast<int>(counts.size()); ++n) {
      CHECK(counts[n] == count_chains(C, n, true));
    }
  }
}

TEST_CASE("nerve chain round trip") {
  auto C = FiniteCategory::square();
  Nerve N(C, 3);
  for (int n = 0; n <= 3; ++n) {
    for (const Simplex& x : N.set()->simplices(n)) {
      auto [start, chain] = N.chain_of_simplex(x);
      CHECK(N.simplex_of_chain(start, chain) == x);
    }
  }
}

TEST_CASE("functor categories") {
  auto C1 = FiniteCategory::chain(1);
  FunCat F0(0, C1);
  CHECK(F0.cat().object_count() == C1.object_count());
  CHECK(F0.cat().arrow_count() == C1.arrow_count());
  FunCat F1(1, C1);
  CHECK(F1.cat().object_count() == 3);
  FunCat FT(2, FiniteCategory::terminal());
  CHECK(FT.cat().object_count() == 1);
  CHECK(FT.cat().arrow_count() == 1);
  CHECK(F1.cat().validate() == "");
  // objects of Fun([n], C) are the n-simplices of the nerve
  FunCat F2(2, FiniteCategory::square());
  CHECK(F2.cat().object_count() == count_chains(FiniteCategory::square(), 2, false));
}

TEST_CASE("cores") {
  CHECK(core_of(FiniteCategory::chain(2)).cat.arrow_count() == 3);  // discrete
  auto G = FiniteCategory::indiscrete(2);
  CHECK(core_of(G).cat.arrow_count() == G.arrow_count());
  auto F = FiniteCategory::free_on_graph(2, {{0, 1}});
  CHECK(core_of(F).cat.arrow_count() == 2);
  // idempotent, and a groupoid
  auto C = core_of(FiniteCategory::square()).cat;
  CHECK(core_of(C).cat.arrow_count() == C.arrow_count());
  for (int a = 0; a < C.arrow_count(); ++a) CHECK(C.is_iso(a));
}

TEST_CASE("categorical equivalence decisions") {
  auto G = FiniteCategory::indiscrete(2);
  auto T = FiniteCategory::terminal();
  {
    Functor idf{G, G, {0, 1}, {0, 1, 2, 3}};
    CHECK(is_equivalence(idf));
  }
  {
    Functor collapse{G, T, {0, 0}, {0, 0, 0, 0}};
    CHECK(is_equivalence(collapse));
  }
  {
    auto D = FiniteCategory::discrete(2);
    Functor collapse{D, T, {0, 0}, {0, 0}};
    CHECK_FALSE(is_equivalence(collapse));
  }
  {
    // non-functor input is rejected
    auto D = FiniteCategory::discrete(2);
    Functor bad{D, D, {0, 1}, {1, 0}};
    CHECK_THROWS_AS(is_equivalence(bad), Error);
  }
}

TEST_CASE("relative categories") {
  auto C = FiniteCategory::free_on_graph(2, {{0, 1}}, {"f"});
  auto R = RelativeCategory::wide_closure(C, {C.find_arrow("f")});
  CHECK(R.validate() == "");
  CHECK(std::count(R.weak.begin(), R.weak.end(), true) == 3);  // all arrows
  auto sq = FiniteCategory::square();
  auto iso = RelativeCategory::with_isos(sq);
  CHECK(std::count(iso.weak.begin(), iso.weak.end(), true) == 4);  // identities only
}

TEST_CASE("nerve detection") {
  auto detected = detect_nerve(standard_simplex(2));
  REQUIRE(detected.ok);
  CHECK(detected.cat.object_count() == 3);
  CHECK(detected.cat.arrow_count() == 6);

  auto hornfail = detect_nerve(horn(2, 1));
  CHECK_FALSE(hornfail.ok);
  CHECK(!hornfail.failure.empty());

  auto J = detect_nerve(j_truncated(3));
  REQUIRE(J.ok);
  CHECK(J.cat.object_count() == 2);
  CHECK(J.cat.arrow_count() == 4);
  for (int a = 0; a < J.cat.arrow_count(); ++a) CHECK(J.cat.is_iso(a));

  // boundary of a triangle: the composite edge has no filler
  auto bd = detect_nerve(boundary(2));
  CHECK_FALSE(bd.ok);
}

TEST_CASE("nerve detection round trip") {
  for (const auto& C : {FiniteCategory::chain(2), FiniteCategory::square(),
                        FiniteCategory::indiscrete(2)}) {
    Nerve N(C, 3);
    auto detected = detect_nerve(N.set());
    REQUIRE(detected.ok);
    CHECK(detected.cat.object_count() == C.object_count());
    CHECK(detected.cat.arrow_count() == C.arrow_count());
    CHECK(detected.cat.validate() == "");
  }
}

TEST_CASE("natural markings") {
  // poset nerve: only identity isos, so natural = flat
  Nerve P(FiniteCategory::square(), 3);
  CHECK(natural_marking(P.set()).nondeg_marked_count() == 0);
  // indiscrete groupoid: everything is marked
  auto J3 = j_truncated(3);
  auto nat = natural_marking(J3);
  CHECK(nat.nondeg_marked_count() == 2);
  // nerve of [1]
  Nerve C1(FiniteCategory::chain(1), 2);
  CHECK(natural_marking(C1.set()).nondeg_marked_count() == 0);
  // refuses non-nerves
  CHECK_THROWS_AS(natural_marking(horn(2, 1)), Error);
}

TEST_CASE("natural marking satisfies two out of three") {
  for (const auto& C : {FiniteCategory::indiscrete(3), FiniteCategory::square()}) {
    Nerve N(C, 3);
    auto nat = natural_marking(N.set());
    auto det = detect_nerve(N.set());
    REQUIRE(det.ok);
    const auto& cat = det.cat;
    for (int g = 0; g < cat.arrow_count(); ++g) {
      for (int f = 0; f < cat.arrow_count(); ++f) {
        if (!cat.composable(g, f)) continue;
        int c = cat.compose(g, f);
        bool mf = nat.is_marked(det.arrow_edge[f]);
        bool mg = nat.is_marked(det.arrow_edge[g]);
        bool mc = nat.is_marked(det.arrow_edge[c]);
        int marked = int(mf) + int(mg) + int(mc);
        CHECK(marked != 2);  // two imply the third
      }
    }
  }
}
