#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cherednik/pbw.hpp"

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

PBWElement random_element(const AlgebraPtr& alg, std::mt19937& rng, unsigned max_exp) {
  unsigned n = alg->dim();
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  std::uniform_int_distribution<unsigned> elem(0, (unsigned)alg->group()->order() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<unsigned> nterms(1, 3);
  PBWElement r = alg->zero();
  unsigned k = nterms(rng);
  for (unsigned t = 0; t < k; ++t) {
    ExpVec a(n), b(n);
    for (unsigned i = 0; i < n; ++i) {
      a[i] = exp(rng);
      b[i] = exp(rng);
    }
    int c = coeff(rng);
    if (c == 0) c = 1;
    r += alg->monomial(a, elem(rng), b, alg->parameter().rational(Rat(c)));
  }
  return r;
}

}  // namespace

TEST_CASE("commutation relation for the order 2 group on the line") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  Parameter p = make_parameter(g);
  AlgebraPtr alg = CherednikAlgebra::make(p);

  PBWElement x = alg->xgen(0), y = alg->ygen(0), s = alg->ggen(1);
  ParamScalar two = p.rational(Rat(2));
  CHECK(y * x == x * y + alg->one() + s.scaled((p.kappa(0, 1) - p.kappa(0, 0)) * two));

  Parameter p0 = make_parameter(g, {{"k0", Rat(0)}});
  AlgebraPtr alg0 = CherednikAlgebra::make(p0);
  PBWElement x0 = alg0->xgen(0), y0 = alg0->ygen(0), s0 = alg0->ggen(1);
  CHECK(y0 * x0 ==
        x0 * y0 + alg0->one() + s0.scaled(p0.kappa(0, 1) * p0.rational(Rat(2))));
}

TEST_CASE("group elements conjugate the generators by the group action") {
  for (const GroupPtr& g :
       {ReflectionGroup::cyclic_product({3}), ReflectionGroup::cyclic_product({2, 2}), s3()}) {
    AlgebraPtr alg = CherednikAlgebra::make(make_parameter(g));
    unsigned n = g->dim();
    for (unsigned w = 0; w < g->order(); ++w) {
      PBWElement gw = alg->ggen(w), gwi = alg->ggen(g->inverse(w));
      for (unsigned i = 0; i < n; ++i) {
        std::vector<Cyclo> ei(n, Cyclo(Rat(0)));
        ei[i] = Cyclo(Rat(1));

        PBWElement xside = alg->zero();
        std::vector<Cyclo> xa = g->act_covec(w, ei);
        for (unsigned t = 0; t < n; ++t)
          if (!xa[t].is_zero()) xside += alg->xgen(t).scaled(alg->parameter().cyclo(xa[t]));
        CHECK(gw * alg->xgen(i) * gwi == xside);

        PBWElement yside = alg->zero();
        std::vector<Cyclo> yv = g->act_vec(w, ei);
        for (unsigned t = 0; t < n; ++t)
          if (!yv[t].is_zero()) yside += alg->ygen(t).scaled(alg->parameter().cyclo(yv[t]));
        CHECK(gw * alg->ygen(i) * gwi == yside);
      }
    }
  }
}

TEST_CASE("multiplication is associative on random triples") {
  std::mt19937 rng(20240915);
  for (const GroupPtr& g :
       {ReflectionGroup::cyclic_product({2}), ReflectionGroup::cyclic_product({3}),
        ReflectionGroup::cyclic_product({2, 2}), ReflectionGroup::cyclic_product({1})}) {
    AlgebraPtr sym = CherednikAlgebra::make(make_parameter(g));
    std::map<std::string, Rat> spec;
    Parameter shape = make_parameter(g);
    for (unsigned o = 0; o < shape.orbit_count(); ++o)
      for (unsigned i = 0; i < shape.ell(o); ++i)
        spec[shape.slot_name(o, i)] = rat_of((long)(o + 2 * i + 1), 3);
    AlgebraPtr num = CherednikAlgebra::make(make_parameter(g, spec));
    for (const AlgebraPtr& alg : {sym, num}) {
      for (int trial = 0; trial < 5; ++trial) {
        PBWElement a = random_element(alg, rng, 2);
        PBWElement b = random_element(alg, rng, 2);
        PBWElement c = random_element(alg, rng, 2);
        CHECK((a * b) * c == a * (b * c));
      }
    }
  }
}

TEST_CASE("euler element commutators and explicit expansion") {
  for (const GroupPtr& g :
       {ReflectionGroup::cyclic_product({2}), ReflectionGroup::cyclic_product({3}),
        ReflectionGroup::cyclic_product({2, 2}), s3()}) {
    AlgebraPtr alg = CherednikAlgebra::make(make_parameter(g));
    PBWElement eu = alg->euler_element();
    for (unsigned i = 0; i < g->dim(); ++i) {
      PBWElement x = alg->xgen(i), y = alg->ygen(i);
      CHECK(eu * x - x * eu == x);
      CHECK(eu * y - y * eu == -y);
    }
    for (unsigned w : g->generators()) {
      PBWElement gw = alg->ggen(w);
      CHECK(eu * gw == gw * eu);
    }
  }

  GroupPtr z2 = ReflectionGroup::cyclic_product({2});
  Parameter p = make_parameter(z2);
  AlgebraPtr alg = CherednikAlgebra::make(p);
  ParamScalar k0 = p.kappa(0, 0), k1 = p.kappa(0, 1);
  PBWElement expected = alg->xgen(0) * alg->ygen(0) +
                        alg->scalar(k0 * p.rational(Rat(3)) - k1) +
                        alg->ggen(1).scaled(k1 - k0);
  CHECK(alg->euler_element() == expected);
}

TEST_CASE("lowering operators on the polynomial realization of a cyclic group") {
  for (unsigned ell : {2u, 3u, 4u}) {
    GroupPtr g = ReflectionGroup::cyclic_product({ell});
    Parameter p = make_parameter(g);
    AlgebraPtr alg = CherednikAlgebra::make(p);
    for (unsigned m = 1; m <= 2 * ell; ++m) {
      XTermMap mono;
      mono.emplace(ExpVec{m}, p.rational(Rat(1)));
      XTermMap img = dunkl_apply(*alg, 0, mono);
      ParamScalar expect = p.rational(Rat((long)m)) +
                           (p.kappa(0, (long)m) - p.kappa(0, 0)) * p.rational(Rat((long)ell));
      XTermMap want;
      if (!expect.is_zero()) want.emplace(ExpVec{m - 1}, expect);
      CHECK(img == want);
    }
  }
}

TEST_CASE("commutation engine matches the lowering operator formula") {
  CHECK(verify_parameter_dictionary(*CherednikAlgebra::make(make_parameter(
                                        ReflectionGroup::cyclic_product({2}))),
                                    4));
  CHECK(verify_parameter_dictionary(*CherednikAlgebra::make(make_parameter(
                                        ReflectionGroup::cyclic_product({3}))),
                                    6));
  CHECK(verify_parameter_dictionary(*CherednikAlgebra::make(make_parameter(
                                        ReflectionGroup::cyclic_product({4}))),
                                    8));
  CHECK(verify_parameter_dictionary(*CherednikAlgebra::make(make_parameter(
                                        ReflectionGroup::cyclic_product({2, 2}))),
                                    4));
  CHECK(verify_parameter_dictionary(*CherednikAlgebra::make(make_parameter(s3())), 4));
}

TEST_CASE("lowering operators commute in rank 2") {
  for (const GroupPtr& g : {ReflectionGroup::cyclic_product({2, 2}), s3()}) {
    AlgebraPtr alg = CherednikAlgebra::make(make_parameter(g));
    ParamScalar one = alg->parameter().rational(Rat(1));
    for (unsigned d1 = 0; d1 <= 3; ++d1)
      for (unsigned d2 = 0; d2 + d1 <= 4; ++d2) {
        XTermMap mono;
        mono.emplace(ExpVec{d1, d2}, one);
        XTermMap ab = dunkl_apply(*alg, 0, dunkl_apply(*alg, 1, mono));
        XTermMap ba = dunkl_apply(*alg, 1, dunkl_apply(*alg, 0, mono));
        CHECK(ab == ba);
      }
  }
}

TEST_CASE("parameter dictionary between kappa slots and reflection values") {
  GroupPtr z2 = ReflectionGroup::cyclic_product({2});
  Parameter p = make_parameter(z2);
  std::vector<ParamScalar> c = c_of_kappa(p);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == p.kappa(0, 0) - p.kappa(0, 1));

  for (const GroupPtr& g :
       {ReflectionGroup::cyclic_product({3}), ReflectionGroup::cyclic_product({4}),
        ReflectionGroup::cyclic_product({2, 2}), s3()}) {
    Parameter q = make_parameter(g);
    Parameter back = kappa_of_c(g, q.symbols(), c_of_kappa(q));
    for (unsigned o = 0; o < q.orbit_count(); ++o)
      for (unsigned i = 0; i < q.ell(o); ++i)
        CHECK(back.kappa(o, i) == q.kappa(o, i) - q.kappa(o, 0));
  }
}

TEST_CASE("contravariant dual is a conjugate linear antiautomorphism") {
  std::mt19937 rng(7771);
  for (const GroupPtr& g :
       {ReflectionGroup::cyclic_product({3}), ReflectionGroup::cyclic_product({2, 2}), s3()}) {
    AlgebraPtr alg = CherednikAlgebra::make(make_parameter(g));
    for (unsigned i = 0; i < g->dim(); ++i) {
      CHECK(alg->xgen(i).contravariant_dual() == alg->ygen(i));
      CHECK(alg->ygen(i).contravariant_dual() == alg->xgen(i));
    }
    for (unsigned w = 0; w < g->order(); ++w)
      CHECK(alg->ggen(w).contravariant_dual() == alg->ggen(g->inverse(w)));
    for (int trial = 0; trial < 4; ++trial) {
      PBWElement a = random_element(alg, rng, 2);
      PBWElement b = random_element(alg, rng, 2);
      CHECK((a * b).contravariant_dual() ==
            b.contravariant_dual() * a.contravariant_dual());
      CHECK(a.contravariant_dual().contravariant_dual() == a);
    }
  }
}

TEST_CASE("printing of normal forms") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  Parameter p = make_parameter(g);
  AlgebraPtr alg = CherednikAlgebra::make(p);
  CHECK(alg->zero().str() == "0");
  CHECK(alg->one().str() == "1");
  PBWElement e = alg->xgen(0, 2) * alg->ggen(1) * alg->ygen(0);
  CHECK(e.str() == "x1^2*g2*y1");
  CHECK((alg->ygen(0) * alg->xgen(0)).str() == "x1*y1 + 1 + (-2*k0 + 2*k1)*g2");
}
