#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "cdiag/product.hpp"
#include "cdiag/pushout.hpp"
#include "cdiag/shapes.hpp"
#include "cdiag/simplicial_map.hpp"
#include "cdiag/simplicial_set.hpp"
#include "cdiag/util.hpp"
#include "cdiag/word.hpp"

using namespace cdiag;

TEST_CASE("degeneracy word normalization") {
  Word w;
  CHECK(w.to_string() == "");
  Word s0 = w.inserted(0);
  CHECK(s0.indices() == std::vector<int>{0});
  // s_0 s_0 = s_1 s_0
  CHECK(s0.inserted(0).indices() == std::vector<int>{1, 0});
  // s_2 ∘ s_0 is already normal
  CHECK(s0.inserted(2).indices() == std::vector<int>{2, 0});
  // s_1 ∘ s_2 = s_3 s_1
  Word s2{std::vector<int>{2}};
  CHECK(s2.inserted(1).indices() == std::vector<int>{3, 1});
  CHECK(Word::compose(Word({3, 1}), Word({2, 0})).size() == 4);
}

TEST_CASE("face through word identities") {
  // d_1 (s_1 x) = x, d_2 (s_1 x) = x
  auto r = push_face_through(1, Word({1}));
  CHECK(r.absorbed);
  CHECK(r.word.empty());
  r = push_face_through(2, Word({1}));
  CHECK(r.absorbed);
  // d_0 s_1 = s_0 d_0
  r = push_face_through(0, Word({1}));
  CHECK_FALSE(r.absorbed);
  CHECK(r.word.indices() == std::vector<int>{0});
  CHECK(r.face_index == 0);
  // d_3 s_1 = s_1 d_2
  r = push_face_through(3, Word({1}));
  CHECK_FALSE(r.absorbed);
  CHECK(r.word.indices() == std::vector<int>{1});
  CHECK(r.face_index == 2);
}

TEST_CASE("standard simplex action agrees with monotone composition") {
  // In Delta^n a simplex is a monotone map; the presheaf action must be
  // composition. This pins down every orientation convention at once.
  for (int n = 1; n <= 3; ++n) {
    auto D = standard_simplex(n);
    for (int p = 0; p <= n + 1; ++p) {
      for (const Simplex& x : D->simplices(p)) {
        Monotone mx = simplex_as_monotone(*D, n, x);
        for (int q = 0; q <= p + 1 && q <= 3; ++q) {
          for (const Monotone& a : Monotone::all(q, p)) {
            Simplex y = D->act(x, a);
            Monotone my = simplex_as_monotone(*D, n, y);
            CHECK(my == Monotone::compose(mx, a));
          }
        }
      }
    }
  }
}

TEST_CASE("shape nondegenerate counts") {
  CHECK(standard_simplex(2)->nondegenerate_counts() == std::vector<int>{3, 3, 1});
  CHECK(horn(2, 1)->nondegenerate_counts() == std::vector<int>{3, 2});
  CHECK(j_truncated(3)->nondegenerate_counts() == std::vector<int>{2, 2, 2, 2});
  CHECK(boundary(0)->generator_count() == 0);
  CHECK(boundary(3)->nondegenerate_counts() == std::vector<int>{4, 6, 4});
  CHECK_THROWS_AS(horn(2, 5), Error);
}

TEST_CASE("shapes satisfy the simplicial identities exhaustively") {
  for (const SSetPtr& X : {standard_simplex(3), boundary(3), horn(3, 1),
                           j_truncated(3), horn(2, 0), standard_simplex(0)}) {
    CHECK(X->validate() == "");
  }
}

TEST_CASE("degenerate simplex enumeration matches EZ counts") {
  // |Delta^1_n| = n+2, |Delta^2_n| = C(n+3, ...) via monotone map counts.
  auto D1 = standard_simplex(1);
  auto D2 = standard_simplex(2);
  for (int n = 0; n <= 5; ++n) {
    CHECK(D1->count(n) == count_monotone_maps(n, 1));
    CHECK(D2->count(n) == count_monotone_maps(n, 2));
  }
}

TEST_CASE("degeneracy sets") {
  auto D1 = standard_simplex(1);
  // s_1 s_0 v: in the image of s_0 and s_1.
  GenId v = D1->find_generator("x0");
  REQUIRE(v >= 0);
  Simplex x{Word({1, 0}), v};
  CHECK(D1->degeneracy_set(x) == std::vector<int>{0, 1});
  GenId e = D1->find_generator("x01");
  CHECK(D1->degeneracy_set(Simplex{Word({0}), e}) == std::vector<int>{0});
  CHECK(D1->degeneracy_set(Simplex::of(e)).empty());
}

TEST_CASE("skeleton") {
  auto D2 = standard_simplex(2);
  auto sk1 = skeleton(*D2, 1);
  CHECK(sk1.set->nondegenerate_counts() == std::vector<int>{3, 3});
  auto J3 = j_truncated(3);
  CHECK(skeleton(*J3, 1).set->nondegenerate_counts() == std::vector<int>{2, 2});
  CHECK(skeleton(*D2, 2).set->nondegenerate_counts() == D2->nondegenerate_counts());
}

TEST_CASE("map enumeration counts against the monotone oracle") {
  auto D0 = standard_simplex(0);
  auto D1 = standard_simplex(1);
  auto D2 = standard_simplex(2);
  CHECK(count_maps(D1, D1) == 3);
  CHECK(count_maps(D2, D1) == 4);
  CHECK(count_maps(D0, D2) == 3);
  for (int p = 0; p <= 3; ++p) {
    for (int n = 0; n <= 3; ++n) {
      CHECK(count_maps(standard_simplex(p), standard_simplex(n)) ==
            count_monotone_maps(p, n));
    }
  }
}

TEST_CASE("map enumeration is deterministic and validated") {
  auto J2 = j_truncated(2);
  auto maps = enumerate_maps(j_truncated(1), J2);
  for (const auto& f : maps) CHECK(f.validate() == "");
  CHECK(std::is_sorted(maps.begin(), maps.end()));
  auto again = enumerate_maps(j_truncated(1), J2);
  CHECK(maps == again);
}

TEST_CASE("maps out of the empty set") {
  auto E = SimplicialSet::empty();
  CHECK(count_maps(E, standard_simplex(2)) == 1);
  CHECK(count_maps(standard_simplex(0), E) == 0);
}

TEST_CASE("serialization is stable") {
  auto H = horn(2, 1);
  std::string text = H->to_text();
  CHECK(text.find("gen x01 : 1") != std::string::npos);
  CHECK(text == horn(2, 1)->to_text());
}

TEST_CASE("product nondegenerate counts") {
  auto D1 = standard_simplex(1);
  auto D2 = standard_simplex(2);
  ProductSSet P(D1, D1);
  CHECK(P.set()->nondegenerate_counts() == std::vector<int>{4, 5, 2});
  CHECK(P.set()->validate() == "");
  ProductSSet Q(D2, D1);
  CHECK(Q.set()->nondegenerate_counts().back() == 3);
  CHECK(Q.set()->validate() == "");
  ProductSSet unit(D2, standard_simplex(0));
  CHECK(isomorphic(unit.set(), D2));
}

TEST_CASE("product satisfies the mapping-count law") {
  auto D1 = standard_simplex(1);
  auto J1 = j_truncated(1);
  ProductSSet P(D1, J1);
  for (const SSetPtr& Z : {standard_simplex(0), standard_simplex(1), horn(2, 1)}) {
    CHECK(count_maps(Z, P.set()) == count_maps(Z, D1) * count_maps(Z, J1));
  }
}

TEST_CASE("product projections and pairing") {
  auto D1 = standard_simplex(1);
  ProductSSet P(D1, D1);
  auto p1 = P.proj_left();
  auto p2 = P.proj_right();
  CHECK(p1.validate() == "");
  CHECK(p2.validate() == "");
  auto diag = P.pair_map(SimplicialMap::identity(D1), SimplicialMap::identity(D1));
  CHECK(diag.validate() == "");
  CHECK(SimplicialMap::compose(p1, diag) == SimplicialMap::identity(D1));
  CHECK(SimplicialMap::compose(p2, diag) == SimplicialMap::identity(D1));
}

namespace {

// The canonical inclusion between subset shapes (horn/boundary into simplex).
SimplicialMap shape_inclusion(const SSetPtr& sub, const SSetPtr& ambient) {
  SimplicialMap f;
  f.src = sub;
  f.dst = ambient;
  for (GenId g = 0; g < sub->generator_count(); ++g) {
    GenId h = ambient->find_generator(sub->generator(g).name);
    REQUIRE(h >= 0);
    f.img.push_back(Simplex::of(h));
  }
  REQUIRE(f.validate() == "");
  return f;
}

SimplicialMap vertex_map(const SSetPtr& pt, const SSetPtr& X, GenId v) {
  SimplicialMap f;
  f.src = pt;
  f.dst = X;
  f.img.push_back(Simplex::of(v));
  return f;
}

}  // namespace

TEST_CASE("pushout of two edges at a vertex is a wedge") {
  auto D0 = standard_simplex(0);
  auto D1 = standard_simplex(1);
  auto f = vertex_map(D0, D1, D1->find_generator("x0"));
  Pushout P = pushout(f, f);
  CHECK(P.set->nondegenerate_counts() == std::vector<int>{3, 2});
  CHECK(P.set->validate() == "");
  CHECK(P.from_left.validate() == "");
  CHECK(P.from_right.validate() == "");
}

TEST_CASE("pushout along identity returns the other leg") {
  auto H = horn(2, 1);
  auto D2 = standard_simplex(2);
  auto incl = shape_inclusion(H, D2);
  Pushout P = pushout(incl, SimplicialMap::identity(H));
  CHECK(isomorphic(P.set, D2));
}

TEST_CASE("two triangles glued along an inner horn") {
  auto H = horn(2, 1);
  auto D2 = standard_simplex(2);
  auto incl = shape_inclusion(H, D2);
  Pushout P = pushout(incl, incl);
  CHECK(P.set->nondegenerate_counts() == std::vector<int>{3, 4, 2});
  CHECK(P.set->validate() == "");
  // Universal property by hom counting against small targets.
  for (const SSetPtr& T : {standard_simplex(1), j_truncated(2), horn(2, 1)}) {
    long long pairs = 0;
    for (const auto& u : enumerate_maps(D2, T)) {
      for (const auto& v : enumerate_maps(D2, T)) {
        if (SimplicialMap::compose(u, incl) == SimplicialMap::compose(v, incl)) ++pairs;
      }
    }
    CHECK(count_maps(P.set, T) == pairs);
  }
}

TEST_CASE("disjoint union") {
  auto U = disjoint_union(*standard_simplex(1), *boundary(2));
  CHECK(U->nondegenerate_counts() == std::vector<int>{5, 4});
  CHECK(U->validate() == "");
}
