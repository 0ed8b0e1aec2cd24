#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cherednik/line_module.hpp"
#include "cherednik/verma.hpp"

using namespace cherednik;

namespace {

AlgebraPtr cyclic_algebra(unsigned ell, const std::map<std::string, Rat>& spec = {}) {
  GroupPtr g = ReflectionGroup::cyclic_product({ell});
  return CherednikAlgebra::make(make_parameter(g, spec));
}

Rat third() { return Rat(1) / 3; }
Rat neg_three_halves() { return Rat(-3) / 2; }

template <typename F>
ErrorCode thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InternalError;
}

}  // namespace

TEST_CASE("standard line module matches the Verma construction") {
  for (unsigned ell : {2u, 3u}) {
    AlgebraPtr alg = cyclic_algebra(ell);
    for (unsigned k = 0; k < ell; ++k) {
      LineModule L = LineModule::standard(alg, k);
      VermaModule V(alg, alg->group()->characters()[k]);
      CHECK(L.y_coefficient(0).is_zero());
      for (unsigned m = 1; m <= 6; ++m)
        CHECK(L.y_coefficient((long)m) == V.y_matrix(0, m).at(0, 0));
      CHECK(L.eu_constant() == V.lowest_weight());
    }
  }
}

TEST_CASE("trivial group standard module is the classical polynomial module") {
  AlgebraPtr alg = cyclic_algebra(1);
  LineModule L = LineModule::standard(alg, 0);
  const Parameter& p = alg->parameter();
  for (long i = 0; i <= 8; ++i) CHECK(L.y_coefficient(i) == p.rational(Rat(i)));
  CHECK(L.eu_constant().is_zero());
}

TEST_CASE("residue constants are pinned by the commutation relation") {
  AlgebraPtr alg = cyclic_algebra(2);
  const Parameter& p = alg->parameter();
  std::vector<ParamScalar> bad = {p.rational(Rat(0)), p.rational(Rat(1))};
  CHECK_THROWS_AS(LineModule(alg, 0, LineKind::Localized, 0, bad), Error);
  std::vector<ParamScalar> wrong_size = {p.rational(Rat(0))};
  CHECK_THROWS_AS(LineModule(alg, 0, LineKind::Localized, 0, wrong_size), Error);
  // Polynomial kind needs a structural zero at the bottom.
  LineModule loc = LineModule::standard(alg, 0).localized();
  LineModule tw = loc.twisted(p.rational(Rat(1)), 2);
  CHECK_THROWS_AS(LineModule(alg, 0, LineKind::Polynomial, 0, tw.residue_constants()),
                  Error);
}

TEST_CASE("twists by integer powers relabel the localized module") {
  AlgebraPtr alg = cyclic_algebra(2);
  const Parameter& p = alg->parameter();
  LineModule M = LineModule::standard(alg, 0).localized();

  LineModule M1 = M.twisted(p.rational(Rat(1)), 2);
  for (long i = -6; i <= 6; ++i) CHECK(M1.y_coefficient(i) == M.y_coefficient(i + 2));

  LineModule Ms = M.twisted(p.s(), 2);
  for (long i = -4; i <= 4; ++i) {
    ParamScalar at3 = Ms.y_coefficient(i).subst(p.s_index(), p.rational(Rat(3)));
    CHECK(at3 == M.y_coefficient(i + 6));
  }

  LineModule Msl = M.twisted(p.s() + p.rational(Rat(2)), 2);
  for (long i = -4; i <= 4; ++i) CHECK(Msl.y_coefficient(i) == Ms.y_coefficient(i + 4));

  CHECK(thrown_code([&] { LineModule::standard(alg, 0).twisted(p.s(), 2); }) ==
        ErrorCode::UnsupportedShape);
  CHECK(thrown_code([&] { M.twisted(p.s(), 3); }) == ErrorCode::NotInvariant);
}

TEST_CASE("breaks of localized standard modules") {
  SUBCASE("trivial group") {
    AlgebraPtr alg = cyclic_algebra(1);
    LineModule M = LineModule::standard(alg, 0).localized();
    CHECK(M.breaks() == std::vector<long>{0});
  }
  SUBCASE("Z/2 generic rational") {
    AlgebraPtr alg = cyclic_algebra(2, {{"k0", Rat(0)}, {"k1", third()}});
    LineModule M = LineModule::standard(alg, 0).localized();
    CHECK(M.breaks() == std::vector<long>{0});
  }
  SUBCASE("Z/2 kappa_1 = -3/2 gains the break at 3") {
    AlgebraPtr alg = cyclic_algebra(2, {{"k0", Rat(0)}, {"k1", neg_three_halves()}});
    LineModule M = LineModule::standard(alg, 0).localized();
    CHECK(M.breaks() == std::vector<long>{0, 3});
  }
  SUBCASE("symbolic slots only keep the forced break") {
    AlgebraPtr alg = cyclic_algebra(2);
    LineModule M = LineModule::standard(alg, 0).localized();
    CHECK(M.breaks() == std::vector<long>{0});
  }
}

TEST_CASE("composition series of C[x^{+-1}]") {
  SUBCASE("trivial group: length 2") {
    AlgebraPtr alg = cyclic_algebra(1);
    CompositionSeries s = composition_series_line(LineModule::standard(alg, 0).localized());
    REQUIRE(s.length() == 2);
    CHECK(!s.factors[0].lowest);
    CHECK(*s.factors[0].highest == -1);
    CHECK(*s.factors[1].lowest == 0);
    CHECK(!s.factors[1].highest);
    CHECK(s.certified);
    CHECK(s.window_needed == 0);
  }
  SUBCASE("Z/2 at kappa_1 = 1/3: length 2") {
    AlgebraPtr alg = cyclic_algebra(2, {{"k0", Rat(0)}, {"k1", third()}});
    CompositionSeries s = composition_series_line(LineModule::standard(alg, 0).localized());
    CHECK(s.length() == 2);
  }
  SUBCASE("Z/2 at kappa_1 = -3/2: length 3") {
    AlgebraPtr alg = cyclic_algebra(2, {{"k0", Rat(0)}, {"k1", neg_three_halves()}});
    CompositionSeries s = composition_series_line(LineModule::standard(alg, 0).localized());
    REQUIRE(s.length() == 3);
    CHECK(s.breaks == std::vector<long>{0, 3});
    CHECK(*s.factors[0].highest == -1);
    CHECK(*s.factors[1].lowest == 0);
    CHECK(*s.factors[1].highest == 2);
    CHECK(*s.factors[2].lowest == 3);
    CHECK(s.window_needed == 3);
  }
  SUBCASE("Verma itself at kappa_1 = -3/2 splits at the singular degree") {
    AlgebraPtr alg = cyclic_algebra(2, {{"k0", Rat(0)}, {"k1", neg_three_halves()}});
    LineModule M = LineModule::standard(alg, 0);
    CompositionSeries s = composition_series_line(M);
    REQUIRE(s.length() == 2);
    CHECK(*s.factors[0].lowest == 0);
    CHECK(*s.factors[0].highest == 2);
    CHECK(*s.factors[1].lowest == 3);
    VermaModule V(alg, alg->group()->character_by_name("triv"));
    CHECK(singular_vectors(V, 3).size() == 1);
    CHECK(singular_vectors(V, 1).empty());
  }
}

TEST_CASE("generation of the localization from a single monomial") {
  SUBCASE("generic kappa") {
    AlgebraPtr alg = cyclic_algebra(2, {{"k0", Rat(0)}, {"k1", third()}});
    LineModule M = LineModule::standard(alg, 0).localized();
    CHECK(!M.generated_by(0));
    CHECK(M.generated_by(-1));
    CHECK(M.generated_by(-2));
  }
  SUBCASE("kappa_1 = -3/2") {
    AlgebraPtr alg = cyclic_algebra(2, {{"k0", Rat(0)}, {"k1", neg_three_halves()}});
    LineModule M = LineModule::standard(alg, 0).localized();
    CHECK(!M.generated_by(0));
    CHECK(!M.generated_by(3));
    CHECK(M.generated_by(-1));
    CHECK(M.generated_by(-2));
  }
  SUBCASE("below the bottom of a polynomial module") {
    AlgebraPtr alg = cyclic_algebra(2);
    CHECK(thrown_code([&] { LineModule::standard(alg, 0).generated_by(-1); }) ==
          ErrorCode::IncompatibleElements);
  }
}

TEST_CASE("shift functor re-reads the localized sections at the target parameters") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  Parameter p = make_parameter(g);
  AlgebraPtr alg = CherednikAlgebra::make(p);
  LineModule M = LineModule::standard(alg, 0).localized();

  SUBCASE("identity shift") {
    LineModule S = shift_functor_line(M, p);
    CHECK(S.same_shape(M, -8, 8));
  }
  SUBCASE("shift to a rational point equals the standard module there") {
    Parameter q = p.with_slot(0, 1, p.rational(third()));
    LineModule S = shift_functor_line(M, q);
    LineModule exp = LineModule::standard(S.algebra(), 0).localized();
    CHECK(S.same_shape(exp, -8, 8));
    CHECK(composition_series_line(S).length() == 2);
  }
  SUBCASE("series recomputed at the target") {
    Parameter q = p.with_slot(0, 1, p.rational(neg_three_halves()))
                      .with_slot(0, 0, p.rational(Rat(0)));
    LineModule S = shift_functor_line(M, q);
    CHECK(composition_series_line(S).length() == 3);
  }
  SUBCASE("restricting Omega forbids genuine shifts") {
    Parameter q = p.with_slot(0, 1, p.rational(third()));
    CHECK(thrown_code([&] { shift_functor_line(M, q, false); }) == ErrorCode::IllegalShift);
    LineModule S = shift_functor_line(M, p, false);
    CHECK(S.same_shape(M, -4, 4));
  }
  SUBCASE("targets from another session are rejected") {
    Parameter other = make_parameter(g);
    CHECK(thrown_code([&] { shift_functor_line(M, other); }) == ErrorCode::IllegalShift);
  }
  SUBCASE("exact on split pairs: lengths add") {
    Parameter q = p.with_slot(0, 1, p.rational(neg_three_halves()))
                      .with_slot(0, 0, p.rational(Rat(0)));
    LineModule A = shift_functor_line(M, q);
    LineModule B = shift_functor_line(M.twisted(p.rational(Rat(1)), 2), q);
    size_t total = composition_series_line(A).length() + composition_series_line(B).length();
    CHECK(total == 6);
  }
}

TEST_CASE("jacquet functor at the fixed point") {
  AlgebraPtr alg = cyclic_algebra(2);
  LineModule free = LineModule::standard(alg, 0);

  SUBCASE("the polynomial representation returns the standard module") {
    std::vector<LineModule> out = jacquet_line(alg, {LineSummand::of(free)});
    REQUIRE(out.size() == 1);
    VermaModule V(alg, alg->group()->character_by_name("triv"));
    for (unsigned m = 1; m <= 8; ++m)
      CHECK(out[0].y_coefficient((long)m) == V.y_matrix(0, m).at(0, 0));
    CHECK(out[0].eu_constant() == V.lowest_weight());
    CHECK(out[0].kind() == LineKind::Polynomial);
  }
  SUBCASE("torsion supported away from 0 dies") {
    std::vector<Rat> g = {Rat(-1), Rat(0), Rat(1)};  // x^2 - 1
    CHECK(jacquet_line(alg, {LineSummand::quotient(g)}).empty());
    std::vector<LineModule> out =
        jacquet_line(alg, {LineSummand::of(free), LineSummand::quotient(g)});
    CHECK(out.size() == 1);
  }
  SUBCASE("torsion at 0 has no transported structure") {
    CHECK(thrown_code([&] {
            jacquet_line(alg, {LineSummand::quotient({Rat(0), Rat(1)})});
          }) == ErrorCode::UnsupportedShape);
  }
  SUBCASE("torsion with unstable support is rejected") {
    CHECK(thrown_code([&] {
            jacquet_line(alg, {LineSummand::quotient({Rat(1), Rat(1)})});
          }) == ErrorCode::NotInvariant);
  }
  SUBCASE("zero torsion polynomial is rejected") {
    CHECK(thrown_code([&] { jacquet_line(alg, {LineSummand::quotient({Rat(0)})}); }) ==
          ErrorCode::IncompatibleElements);
  }
  SUBCASE("localized summands are not coherent on the line") {
    CHECK(thrown_code([&] { jacquet_line(alg, {LineSummand::of(free.localized())}); }) ==
          ErrorCode::UnsupportedShape);
  }
  SUBCASE("eu eigenvalues stay in lowest weight + nonnegative integers") {
    std::vector<LineModule> out = jacquet_line(alg, {LineSummand::of(free)});
    VermaModule V(alg, alg->group()->character_by_name("triv"));
    for (long i = 0; i <= 6; ++i)
      CHECK(out[0].eu_eigenvalue(i) ==
            V.lowest_weight() + alg->parameter().rational(Rat(i)));
  }
}

TEST_CASE("describe is stable and readable") {
  AlgebraPtr alg = cyclic_algebra(2, {{"k0", Rat(0)}, {"k1", neg_three_halves()}});
  LineModule M = LineModule::standard(alg, 0);
  CHECK(M.describe() ==
        "basis m_i, i >= 0; ell = 2, character offset 0; "
        "y m_i = (i + c_{i mod 2}) m_{i-1}, c = [0, -3]; eu m_i = (i + 0) m_i");
  LineModule L = M.localized();
  CHECK(L.describe().find("i in Z") != std::string::npos);
}
