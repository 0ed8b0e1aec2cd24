#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cherednik/reflection_group.hpp"

using namespace cherednik;

namespace {

GroupPtr s3() {
  Cyclo zero(Rat(0));
  CMat rot(2, 2, zero), swp(2, 2, zero);
  rot.at(0, 0) = Cyclo::zeta(3);
  rot.at(1, 1) = Cyclo::zeta(3, 2);
  swp.at(0, 1) = Cyclo(Rat(1));
  swp.at(1, 0) = Cyclo(Rat(1));
  return ReflectionGroup::from_matrices(2, 3, {rot, swp});
}

}  // namespace

TEST_CASE("cyclic group of order 2 on the line") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  CHECK(g->order() == 2);
  CHECK(g->dim() == 1);
  CHECK(g->conductor() == 2);
  CHECK(g->is_abelian());

  REQUIRE(g->reflections().size() == 1);
  const Reflection& r = g->reflections()[0];
  CHECK(r.elem == 1);
  CHECK(r.lambda == Cyclo(Rat(-1)));

  REQUIRE(g->hyperplanes().size() == 1);
  const Hyperplane& h = g->hyperplanes()[0];
  CHECK(h.ell == 2);
  CHECK(h.alpha == std::vector<Cyclo>{Cyclo(Rat(1))});
  CHECK(h.power_of_gen == std::vector<unsigned>{0, 1});
  CHECK(g->orbits().size() == 1);

  // Characters: chi_0 = triv, chi_1 = sgn.
  const auto& chars = g->characters();
  REQUIRE(chars.size() == 2);
  CHECK(g->character_by_name("triv").name == "chi_0");
  CHECK(g->character_by_name("sgn").name == "chi_1");
  CHECK(g->character_by_name("sgn").mats[1].at(0, 0) == Cyclo(Rat(-1)));

  // Action on polynomials: s.x = -x.
  auto syms = SymbolSet::make({"x1"});
  MPoly x = MPoly::var(syms, 0);
  CHECK(g->act_on_polynomial(1, x) == -x);
}

TEST_CASE("cyclic group of order 3: one hyperplane, two reflections") {
  GroupPtr g = ReflectionGroup::cyclic_product({3});
  CHECK(g->order() == 3);
  CHECK(g->conductor() == 3);
  REQUIRE(g->reflections().size() == 2);
  REQUIRE(g->hyperplanes().size() == 1);
  const Hyperplane& h = g->hyperplanes()[0];
  CHECK(h.ell == 3);
  // Canonical generator has eigenvalue zeta_3 on the moving line.
  CHECK(h.power_of_gen.size() == 3);
  unsigned s = h.power_of_gen[1];
  const Reflection& rs = g->reflections()[g->reflection_of(s)];
  CHECK(rs.lambda == Cyclo::zeta(3));

  // x -> zeta_3^{-1} x under the canonical generator.
  CHECK(g->act_covec(s, {Cyclo(Rat(1))}) == std::vector<Cyclo>{Cyclo::zeta(3, 2)});
  // y -> zeta_3 y.
  CHECK(g->act_vec(s, {Cyclo(Rat(1))}) == std::vector<Cyclo>{Cyclo::zeta(3)});
}

TEST_CASE("product group Z/2 x Z/2") {
  GroupPtr g = ReflectionGroup::cyclic_product({2, 2});
  CHECK(g->order() == 4);
  CHECK(g->conductor() == 2);
  CHECK(g->dim() == 2);
  CHECK(g->reflections().size() == 2);
  CHECK(g->hyperplanes().size() == 2);
  CHECK(g->orbits().size() == 2);
  const auto& chars = g->characters();
  REQUIRE(chars.size() == 4);
  CHECK(chars[0].name == "chi_0_0");
  CHECK(chars[3].name == "chi_1_1");
  CHECK(g->character_by_name("triv").name == "chi_0_0");

  // Element indexing: last factor fastest; (1,1) is index 3.
  CHECK(g->mul(1, 2) == 3);
  CHECK(g->inverse(3) == 3);
  CHECK(g->element_order(3) == 2);
}

TEST_CASE("trivial group") {
  GroupPtr g = ReflectionGroup::cyclic_product({1});
  CHECK(g->order() == 1);
  CHECK(g->conductor() == 1);
  CHECK(g->reflections().empty());
  CHECK(g->hyperplanes().empty());
  CHECK(g->characters().size() == 1);
}

TEST_CASE("symmetric group on two coordinates from matrices") {
  GroupPtr g = s3();
  CHECK(g->order() == 6);
  CHECK_FALSE(g->is_abelian());
  // Conductor grows to cover all element orders.
  CHECK(g->conductor() == 6);
  CHECK(g->reflections().size() == 3);
  CHECK(g->hyperplanes().size() == 3);
  REQUIRE(g->orbits().size() == 1);
  CHECK(g->orbits()[0].size() == 3);
  for (const Hyperplane& h : g->hyperplanes()) CHECK(h.ell == 2);
  for (const Reflection& r : g->reflections()) CHECK(r.lambda == Cyclo(Rat(-1)));

  CHECK_THROWS_AS(g->characters(), Error);

  // Group sanity: inverses and associativity spot checks.
  for (unsigned a = 0; a < g->order(); ++a) {
    CHECK(g->mul(a, g->inverse(a)) == 0);
    for (unsigned b = 0; b < g->order(); ++b)
      for (unsigned c = 0; c < g->order(); ++c)
        CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
  }
}

TEST_CASE("explicit irreducible representation for the symmetric group") {
  GroupPtr g = s3();
  // The standard representation is the action itself.
  std::vector<CMat> images;
  for (unsigned gi : g->generators()) images.push_back(g->matrix(gi));
  Irrep rep = g->make_irrep("std", images);
  CHECK(rep.dim == 2);
  CHECK(rep.mats.size() == 6);
  // Invariant form: conj(rho(w))^T F rho(w) = F for all w.
  for (unsigned w = 0; w < g->order(); ++w) {
    CMat ct = rep.mats[w].transpose().map([](const Cyclo& c) { return c.conj(); });
    CHECK(ct * rep.form * rep.mats[w] == rep.form);
  }

  // Violating the relations is rejected.
  CMat id = CMat::identity(2, Cyclo(Rat(0)));
  CHECK_THROWS_AS(g->make_irrep("bad", {g->matrix(g->generators()[0]), id}), Error);

  // A visibly reducible representation is rejected.
  CMat d1(2, 2, Cyclo(Rat(0)));
  d1.at(0, 0) = Cyclo(Rat(1));
  d1.at(1, 1) = Cyclo(Rat(1));
  CHECK_THROWS_AS(g->make_irrep("red", {id, d1}), Error);
}

TEST_CASE("subgroup closure and hyperplane action") {
  GroupPtr g = s3();
  unsigned refl = g->reflections()[0].elem;
  auto sub = g->subgroup_closure({refl});
  CHECK(sub.size() == 2);
  auto sub2 = g->subgroup_closure({g->reflections()[0].elem, g->reflections()[1].elem});
  CHECK(sub2.size() == 6);

  // A 3-cycle permutes the three hyperplanes cyclically.
  unsigned rot = 0;
  for (unsigned e = 1; e < g->order(); ++e)
    if (g->element_order(e) == 3) {
      rot = e;
      break;
    }
  REQUIRE(rot != 0);
  unsigned h0 = 0;
  unsigned h1 = g->act_on_hyperplane(rot, h0);
  unsigned h2 = g->act_on_hyperplane(rot, h1);
  CHECK(h0 != h1);
  CHECK(h1 != h2);
  CHECK(h2 != h0);
  CHECK(g->act_on_hyperplane(rot, h2) == h0);
}
