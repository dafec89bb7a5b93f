#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdiag/category.hpp"
#include "cdiag/fundamental.hpp"
#include "cdiag/homology.hpp"
#include "cdiag/shapes.hpp"
#include "cdiag/util.hpp"
#include "cdiag/verdicts.hpp"

using namespace cdiag;

namespace {

HomologyProfile::Level Z(long long r) { return {r, {}}; }

}  // namespace

TEST_CASE("smith normal form basics") {
  auto r = smith_normal_form({{2, 4}, {6, 8}});
  CHECK(r.rank == 2);
  CHECK(r.diagonal == std::vector<long long>{2, 4});
  auto zero = smith_normal_form({{0, 0}, {0, 0}});
  CHECK(zero.rank == 0);
  auto tor = smith_normal_form({{2}});
  CHECK(tor.diagonal == std::vector<long long>{2});
}

TEST_CASE("homology of spheres and disks") {
  HomologyProfile s2 = homology(*boundary(3), 2);
  CHECK(s2.levels == std::vector<HomologyProfile::Level>{Z(1), Z(0), Z(1)});
  HomologyProfile s0 = homology(*boundary(1), 0);
  CHECK(s0.levels == std::vector<HomologyProfile::Level>{Z(2)});
  for (int n = 0; n <= 4; ++n) {
    HomologyProfile d = homology(*standard_simplex(n), std::max(n, 1));
    CHECK(d.point_like());
  }
  HomologyProfile s1 = homology(*boundary(2), 1);
  CHECK(s1.levels == std::vector<HomologyProfile::Level>{Z(1), Z(1)});
}

TEST_CASE("homology of the truncated J is point-like in low degrees") {
  // J is contractible; the truncation is exact below the bound.
  HomologyProfile h = homology(*j_truncated(4), 3);
  CHECK(h.levels == std::vector<HomologyProfile::Level>{Z(1), Z(0), Z(0), Z(0)});
}

TEST_CASE("homology of a disjoint union is the direct sum") {
  auto X = boundary(2);
  auto Y = boundary(3);
  auto U = disjoint_union(*X, *Y);
  HomologyProfile hu = homology(*U, 2);
  HomologyProfile hx = homology(*X, 2);
  HomologyProfile hy = homology(*Y, 2);
  for (int n = 0; n <= 2; ++n) {
    CHECK(hu.levels[n].free_rank == hx.levels[n].free_rank + hy.levels[n].free_rank);
  }
}

TEST_CASE("normalized and unnormalized chains agree") {
  for (const SSetPtr& X : {boundary(2), boundary(3), standard_simplex(2), j_truncated(2)}) {
    int top = std::max(1, X->dim() - 1);
    CHECK(homology(*X, top) == homology_unnormalized(*X, top));
  }
}

TEST_CASE("fundamental group presentations") {
  auto circle = boundary(2);
  auto p = pi1_presentation(circle, 0);
  CHECK(p.generators == 1);
  CHECK(p.relators.empty());
  CHECK(p.verdict == Pi1Result::Verdict::Nontrivial);

  auto disk = pi1_presentation(standard_simplex(2), 0);
  CHECK(disk.verdict == Pi1Result::Verdict::Trivial);

  // sk_2 J: the two triangles kill the loop.
  auto j2 = pi1_presentation(j_truncated(2), 0);
  CHECK(j2.verdict == Pi1Result::Verdict::Trivial);

  CHECK_THROWS_AS(pi1_presentation(disjoint_union(*standard_simplex(0), *standard_simplex(0)), 0),
                  Error);
}

TEST_CASE("H1 rank equals abelianized presentation rank on a corpus") {
  // wedge of two circles via gluing boundaries
  auto X = boundary(2);
  auto p = pi1_presentation(X, 0);
  auto h = homology(*X, 1);
  CHECK(h.levels[1].free_rank == p.generators);  // no relators here
}

TEST_CASE("contractibility verdicts") {
  CHECK(contractibility(standard_simplex(3)).status == Three::Holds);
  CHECK(contractibility(boundary(2)).status == Three::Fails);
  Nerve N(FiniteCategory::square(), 3);
  CHECK(contractibility(N.set()).status == Three::Holds);  // terminal object
  CHECK(contractibility(SimplicialSet::empty()).status == Three::Fails);
  CHECK(contractibility(j_truncated(3)).status == Three::Holds);  // groupoid nerve, terminal
}

TEST_CASE("weak homotopy verdicts") {
  auto D2 = standard_simplex(2);
  auto idm = SimplicialMap::identity(D2);
  auto v = weak_homotopy_verdict(idm, 2);
  CHECK(v.status == EquivalenceVerdict::Status::Equivalent);
  CHECK(v.certificate.find("isomorphism") != std::string::npos);

  // collapse of a simplex onto a point: both contractible
  auto D0 = standard_simplex(0);
  SimplicialMap collapse{D2, D0, {Simplex::of(0), Simplex::of(0), Simplex::of(0),
                                  Simplex{Word({0}), 0}, Simplex{Word({0}), 0},
                                  Simplex{Word({0}), 0},
                                  Simplex{Word({1, 0}), 0}}};
  REQUIRE(collapse.validate() == "");
  CHECK(weak_homotopy_verdict(collapse, 2).status == EquivalenceVerdict::Status::Equivalent);

  // sphere to point: homology obstruction
  SimplicialMap sphere_collapse{boundary(2), D0, {}};
  sphere_collapse.img = {Simplex::of(0), Simplex::of(0), Simplex::of(0),
                         Simplex{Word({0}), 0}, Simplex{Word({0}), 0}, Simplex{Word({0}), 0}};
  REQUIRE(sphere_collapse.validate() == "");
  auto nv = weak_homotopy_verdict(sphere_collapse, 1);
  CHECK(nv.status == EquivalenceVerdict::Status::NotEquivalent);
}

TEST_CASE("categorical verdicts on nerves") {
  Nerve NJ(FiniteCategory::indiscrete(2), 3);
  Nerve NT(FiniteCategory::terminal(), 3);
  // collapse J -> point: an equivalence of categories
  auto ti = std::make_shared<TargetIndex>(NT.set());
  SimplicialMap collapse;
  collapse.src = NJ.set();
  collapse.dst = NT.set();
  for (GenId g = 0; g < NJ.set()->generator_count(); ++g) {
    int d = NJ.set()->generator(g).dim;
    Simplex img = Simplex::of(0);
    for (int i = 0; i < d; ++i) img = NT.set()->degeneracy(img, 0);
    collapse.img.push_back(img);
  }
  REQUIRE(collapse.validate() == "");
  CHECK(categorical_verdict(collapse).status == EquivalenceVerdict::Status::Equivalent);

  // discrete two points -> point: not an equivalence
  auto two = disjoint_union(*standard_simplex(0), *standard_simplex(0));
  SimplicialMap fold{two, NT.set(), {Simplex::of(0), Simplex::of(0)}};
  REQUIRE(fold.validate() == "");
  CHECK(categorical_verdict(fold).status == EquivalenceVerdict::Status::NotEquivalent);
}
