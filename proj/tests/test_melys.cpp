#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "cherednik/melys.hpp"

using namespace cherednik;

namespace {

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

// One-dimensional action through the a-th power of the first diagonal entry.
LinearRep character_rep(const GroupPtr& g, unsigned a, const std::string& name) {
  LinearRep rep;
  rep.group = g;
  rep.dim = 1;
  rep.coords = SymbolSet::make({name});
  for (unsigned e = 0; e < g->order(); ++e) {
    CMat m(1, 1, Cyclo(Rat(0)));
    m.at(0, 0) = g->matrix(e).at(0, 0).pow((long)a);
    rep.mats.push_back(std::move(m));
  }
  return rep;
}

// x -> x^r into the defining action of a cyclic group, with the unique source
// character making it equivariant.
EquivariantMap power_map(const GroupPtr& g, unsigned r, const std::string& name = "y1") {
  unsigned ell = (unsigned)g->order();
  unsigned a = 0;
  for (unsigned t = 0; t < ell; ++t)
    if ((t * r) % ell == 1 % ell) {
      a = t;
      break;
    }
  LinearRep src = character_rep(g, a, name);
  std::vector<MPoly> comps{MPoly::var(src.coords, 0, r)};
  return EquivariantMap(std::move(src), defining_rep(g), std::move(comps));
}

bool same_sparam(const SParameter& a, const SParameter& b) {
  if (a.pairs.size() != b.pairs.size() || a.values.size() != b.values.size()) return false;
  for (size_t i = 0; i < a.pairs.size(); ++i)
    if (a.pairs[i].elem != b.pairs[i].elem || !(a.pairs[i].normal == b.pairs[i].normal))
      return false;
  for (size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] != b.values[i]) return false;
  return true;
}

SParameter scaled_sparam(const SParameter& c, long m) {
  SParameter out = c;
  for (ParamScalar& v : out.values) v = v * ParamScalar::constant(c.syms, Rat(m));
  return out;
}

// Re-derives the restriction of c to a subgroup's defining action by matching
// element matrices; used to audit factorizations that restricted the group.
SParameter restrict_sparam(const LinearRep& new_tgt, const GroupPtr& old_g, const SParameter& c) {
  SParameter out;
  out.syms = c.syms;
  out.pairs = reflection_pairs(new_tgt);
  for (const ReflectionPair& pr : out.pairs) {
    unsigned old = old_g->element_index(new_tgt.group->matrix(pr.elem));
    ParamScalar v = ParamScalar::constant(c.syms, Rat(0));
    for (size_t i = 0; i < c.pairs.size(); ++i)
      if (c.pairs[i].elem == old) {
        v = c.values[i];
        break;
      }
    out.values.push_back(v);
  }
  return out;
}

// Pulling back stage by stage must agree with pulling back along the
// composite, and silently certifies that every stage is melys.
void check_factorization_chain(const MelysFactorization& f, const SParameter& c_target) {
  SParameter cp = pullback_parameter(f.projection, c_target);
  SParameter cpw = pullback_parameter(f.power, cp);
  SParameter ce = pullback_parameter(f.embedding, cpw);
  SParameter direct = pullback_parameter(f.composite, c_target);
  CHECK(same_sparam(ce, direct));
}

std::vector<Cyclo> covec_of(const MPoly& p, unsigned n) {
  std::vector<Cyclo> row(n, Cyclo(Rat(0)));
  for (const auto& [e, coeff] : p.terms())
    for (unsigned j = 0; j < e.size(); ++j)
      if (e[j] == 1) row[j] = coeff;
  return row;
}

}  // namespace

TEST_CASE("reflection pairs and the c-presentation on defining actions") {
  GroupPtr z3 = ReflectionGroup::cyclic_product({3});
  std::vector<ReflectionPair> pairs = reflection_pairs(defining_rep(z3));
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].elem == 1);
  CHECK(pairs[1].elem == 2);
  for (const auto& pr : pairs) {
    REQUIRE(pr.normal.size() == 1);
    CHECK(pr.normal[0] == Cyclo(Rat(1)));
  }

  GroupPtr klein = ReflectionGroup::cyclic_product({2, 2});
  pairs = reflection_pairs(defining_rep(klein));
  REQUIRE(pairs.size() == 2);
  for (const auto& pr : pairs) {
    CMat m = klein->matrix(pr.elem);
    unsigned axis = m.at(0, 0) == Cyclo(Rat(-1)) ? 0u : 1u;
    CHECK(m.at(axis, axis) == Cyclo(Rat(-1)));
    CHECK(m.at(1 - axis, 1 - axis) == Cyclo(Rat(1)));
    CHECK(pr.normal[axis] == Cyclo(Rat(1)));
    CHECK(pr.normal[1 - axis].is_zero());
  }

  CHECK(reflection_pairs(defining_rep(ReflectionGroup::cyclic_product({1}))).empty());

  Parameter p = make_parameter(z3);
  SParameter c = defining_sparameter(p);
  std::vector<ParamScalar> oracle = c_of_kappa(p);
  REQUIRE(c.values.size() == 2);
  CHECK(c.syms == p.symbols());
  for (size_t i = 0; i < c.pairs.size(); ++i)
    CHECK(c.values[i] == oracle.at(z3->reflection_of(c.pairs[i].elem)));
}

TEST_CASE("rep_act agrees with the group action on the defining representation") {
  for (GroupPtr g :
       {ReflectionGroup::cyclic_product({3}), ReflectionGroup::cyclic_product({2, 2})}) {
    LinearRep rep = defining_rep(g);
    MPoly p = MPoly::var(rep.coords, 0, 2) + MPoly::var(rep.coords, rep.dim - 1).scaled(
                                                 Cyclo(Rat(5)));
    for (unsigned e = 0; e < g->order(); ++e)
      CHECK(rep_act(rep, e, p) == g->act_on_polynomial(e, p));
  }
}

TEST_CASE("equivariant map construction validates its input") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  LinearRep h = defining_rep(g);
  MPoly x = MPoly::var(h.coords, 0);
  CHECK(thrown_code([&] {
          EquivariantMap(h, h, {x + MPoly::constant(h.coords, Cyclo(Rat(1)))});
        }) == ErrorCode::NotInvariant);
  CHECK(thrown_code([&] { EquivariantMap(h, h, {x, x}); }) == ErrorCode::IncompatibleElements);
  SymbolsPtr other = SymbolSet::make({"z1"});
  CHECK(thrown_code([&] { EquivariantMap(h, h, {MPoly::var(other, 0)}); }) ==
        ErrorCode::IncompatibleElements);
  CHECK(thrown_code([&] {
          direct_sum(h, trivial_rep(ReflectionGroup::cyclic_product({2}), 1));
        }) == ErrorCode::IncompatibleElements);
}

TEST_CASE("identity and composition") {
  GroupPtr g = ReflectionGroup::cyclic_product({3});
  EquivariantMap phi = power_map(g, 2);
  EquivariantMap id_t = identity_map(phi.target());
  EquivariantMap id_s = identity_map(phi.source());
  CHECK(compose(id_t, phi).components() == phi.components());
  CHECK(compose(phi, id_s).components() == phi.components());
  CHECK(thrown_code([&] { compose(phi, id_t); }) == ErrorCode::IncompatibleElements);
}

TEST_CASE("a point maps melys-ly but never strongly when c is non-zero") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  SParameter c = defining_sparameter(make_parameter(g));
  LinearRep point = trivial_rep(g, 0, "z");
  EquivariantMap phi(point, defining_rep(g), {MPoly(point.coords)});
  CHECK(is_melys(phi, c).ok);
  MelysReport rep = is_strongly_melys(phi, c);
  CHECK(!rep.ok);
  REQUIRE(rep.witness.has_value());
  CHECK(*rep.witness == 0);
  CHECK(!rep.detail.empty());
}

TEST_CASE("a stable axis includes melys-ly; a trivially-moved source is not strong") {
  GroupPtr g = ReflectionGroup::cyclic_product({2, 2});
  SParameter c = defining_sparameter(make_parameter(g));
  LinearRep axis = character_rep(g, 1, "y1");
  LinearRep h = defining_rep(g);
  EquivariantMap phi(axis, h, {MPoly::var(axis.coords, 0), MPoly(axis.coords)});
  CHECK(is_melys(phi, c).ok);
  MelysReport rep = is_strongly_melys(phi, c);
  CHECK(!rep.ok);
  REQUIRE(rep.witness.has_value());
  // The witness pair is the reflection acting trivially on the axis.
  CHECK(g->matrix(c.pairs[*rep.witness].elem).at(0, 0) == Cyclo(Rat(1)));
}

TEST_CASE("the diagonal-style projection is not melys") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  SParameter c = defining_sparameter(make_parameter(g));
  LinearRep plane;
  plane.group = g;
  plane.dim = 2;
  plane.coords = SymbolSet::make({"y1", "y2"});
  for (unsigned e = 0; e < g->order(); ++e) {
    CMat m = CMat::identity(2, Cyclo(Rat(0)));
    m.at(0, 0) = g->matrix(e).at(0, 0);
    m.at(1, 1) = g->matrix(e).at(0, 0);
    plane.mats.push_back(std::move(m));
  }
  EquivariantMap phi(plane, defining_rep(g), {MPoly::var(plane.coords, 0)});
  MelysReport rep = is_melys(phi, c);
  CHECK(!rep.ok);
  REQUIRE(rep.witness.has_value());
  CHECK(*rep.witness == 0);
  CHECK(!rep.detail.empty());
  CHECK(thrown_code([&] { pullback_parameter(phi, c); }) == ErrorCode::NotMelys);

  SParameter zero = defining_sparameter(make_parameter(g, {{"k0", Rat(0)}, {"k1", Rat(0)}}));
  CHECK(is_melys(phi, zero).ok);
  CHECK(is_strongly_melys(phi, zero).ok);
  CHECK(pullback_parameter(phi, zero).pairs.empty());
}

TEST_CASE("power maps are strongly melys and pull back by the exponent") {
  const std::vector<std::pair<unsigned, unsigned>> cases{{2, 3}, {3, 2}, {4, 3}, {1, 2}};
  for (auto [ell, r] : cases) {
    GroupPtr g = ReflectionGroup::cyclic_product({ell});
    SParameter c = defining_sparameter(make_parameter(g));
    EquivariantMap phi = power_map(g, r);
    CHECK(is_melys(phi, c).ok);
    CHECK(is_strongly_melys(phi, c).ok);
    SParameter pulled = pullback_parameter(phi, c);
    REQUIRE(pulled.pairs.size() == c.pairs.size());
    for (size_t i = 0; i < pulled.pairs.size(); ++i) {
      CHECK(pulled.pairs[i].elem == c.pairs[i].elem);
      CHECK(pulled.values[i] == c.values[i] * ParamScalar::constant(c.syms, Rat((long)r)));
    }
  }
}

TEST_CASE("pullback along the identity and along a projection") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  SParameter c = defining_sparameter(make_parameter(g));
  LinearRep h = defining_rep(g);
  CHECK(same_sparam(pullback_parameter(identity_map(h), c), c));

  LinearRep src = direct_sum(h, trivial_rep(g, 1));
  EquivariantMap proj(src, h, {MPoly::var(src.coords, 0)});
  CHECK(is_strongly_melys(proj, c).ok);
  SParameter pulled = pullback_parameter(proj, c);
  REQUIRE(pulled.pairs.size() == 1);
  CHECK(pulled.pairs[0].elem == c.pairs[0].elem);
  CHECK(pulled.values[0] == c.values[0]);
}

TEST_CASE("composition of melys maps and pullback functoriality") {
  GroupPtr z2 = ReflectionGroup::cyclic_product({2});
  SParameter c2 = defining_sparameter(make_parameter(z2));
  EquivariantMap cube = power_map(z2, 3);
  EquivariantMap quint(character_rep(z2, 1, "z1"), cube.source(),
                       {MPoly::var(SymbolSet::make({"z1"}), 0, 5)});
  CHECK(is_melys(quint, pullback_parameter(cube, c2)).ok);
  EquivariantMap chain = compose(cube, quint);
  CHECK(is_melys(chain, c2).ok);
  CHECK(same_sparam(pullback_parameter(chain, c2),
                    pullback_parameter(quint, pullback_parameter(cube, c2))));
  CHECK(same_sparam(pullback_parameter(chain, c2), scaled_sparam(c2, 15)));

  GroupPtr z3 = ReflectionGroup::cyclic_product({3});
  SParameter c3 = defining_sparameter(make_parameter(z3));
  EquivariantMap sq = power_map(z3, 2);
  EquivariantMap sq_in(defining_rep(z3), sq.source(),
                       {MPoly::var(defining_rep(z3).coords, 0, 2)});
  EquivariantMap quad = compose(sq, sq_in);
  CHECK(is_melys(quad, c3).ok);
  CHECK(same_sparam(pullback_parameter(quad, c3),
                    pullback_parameter(sq_in, pullback_parameter(sq, c3))));
  CHECK(same_sparam(pullback_parameter(quad, c3), scaled_sparam(c3, 4)));

  LinearRep h2 = defining_rep(z2);
  LinearRep hxline = direct_sum(h2, trivial_rep(z2, 1));
  EquivariantMap proj(hxline, h2, {MPoly::var(hxline.coords, 0)});
  LinearRep line = character_rep(z2, 1, "w1");
  EquivariantMap incl(line, hxline, {MPoly::var(line.coords, 0), MPoly(line.coords)});
  CHECK(is_melys(incl, pullback_parameter(proj, c2)).ok);
  CHECK(same_sparam(pullback_parameter(compose(proj, incl), c2),
                    pullback_parameter(incl, pullback_parameter(proj, c2))));
}

TEST_CASE("classification finds the three shapes") {
  GroupPtr z2 = ReflectionGroup::cyclic_product({2});
  SParameter c2 = defining_sparameter(make_parameter(z2));
  LinearRep h2 = defining_rep(z2);

  EquivariantMap zero(trivial_rep(z2, 1), h2, {MPoly(trivial_rep(z2, 1).coords)});
  CHECK(classify_irreducible_melys(zero, c2).branch == MelysBranch::Zero);

  MelysClassification cls = classify_irreducible_melys(identity_map(h2), c2);
  CHECK(cls.branch == MelysBranch::Projection);
  CHECK(cls.r == 1);
  CHECK(cls.matrix.at(0, 0) == Cyclo(Rat(1)));

  GroupPtr z3 = ReflectionGroup::cyclic_product({3});
  SParameter c3 = defining_sparameter(make_parameter(z3));
  LinearRep src = direct_sum(defining_rep(z3), trivial_rep(z3, 1));
  EquivariantMap proj(src, defining_rep(z3), {MPoly::var(src.coords, 0)});
  cls = classify_irreducible_melys(proj, c3);
  CHECK(cls.branch == MelysBranch::Projection);
  CHECK(cls.matrix.at(0, 0) == Cyclo(Rat(1)));
  CHECK(cls.matrix.at(0, 1).is_zero());

  EquivariantMap sq = power_map(z3, 2);
  cls = classify_irreducible_melys(sq, c3);
  CHECK(cls.branch == MelysBranch::PowerMap);
  CHECK(cls.r == 2);
  CHECK(cls.root == MPoly::var(sq.source().coords, 0));
  CHECK(cls.unit == Cyclo(Rat(1)));

  EquivariantMap scaled(sq.source(), defining_rep(z3),
                        {MPoly::var(sq.source().coords, 0, 2).scaled(Cyclo(Rat(5)))});
  cls = classify_irreducible_melys(scaled, c3);
  CHECK(cls.branch == MelysBranch::PowerMap);
  CHECK(cls.r == 2);
  CHECK(cls.unit == Cyclo(Rat(5)));

  GroupPtr triv = ReflectionGroup::cyclic_product({1});
  SParameter ct = defining_sparameter(make_parameter(triv));
  cls = classify_irreducible_melys(power_map(triv, 2), ct);
  CHECK(cls.branch == MelysBranch::PowerMap);
  CHECK(cls.r == 2);
}

TEST_CASE("classification rejects inputs outside its hypotheses") {
  GroupPtr z2 = ReflectionGroup::cyclic_product({2});
  SParameter c2 = defining_sparameter(make_parameter(z2));

  LinearRep tline = trivial_rep(z2, 1);
  SParameter empty;
  empty.syms = c2.syms;
  CHECK(thrown_code([&] {
          classify_irreducible_melys(identity_map(tline), empty);
        }) == ErrorCode::HypothesesNotMet);

  SParameter zero = defining_sparameter(make_parameter(z2, {{"k0", Rat(0)}, {"k1", Rat(0)}}));
  CHECK(thrown_code([&] {
          classify_irreducible_melys(identity_map(defining_rep(z2)), zero);
        }) == ErrorCode::HypothesesNotMet);

  GroupPtr klein = ReflectionGroup::cyclic_product({2, 2});
  SParameter ck = defining_sparameter(make_parameter(klein));
  CHECK(thrown_code([&] {
          classify_irreducible_melys(identity_map(defining_rep(klein)), ck);
        }) == ErrorCode::HypothesesNotMet);

  LinearRep plane;
  plane.group = z2;
  plane.dim = 2;
  plane.coords = SymbolSet::make({"y1", "y2"});
  for (unsigned e = 0; e < z2->order(); ++e) {
    CMat m = CMat::identity(2, Cyclo(Rat(0)));
    m.at(0, 0) = z2->matrix(e).at(0, 0);
    m.at(1, 1) = z2->matrix(e).at(0, 0);
    plane.mats.push_back(std::move(m));
  }
  EquivariantMap diag(plane, defining_rep(z2), {MPoly::var(plane.coords, 0)});
  CHECK(thrown_code([&] { classify_irreducible_melys(diag, c2); }) ==
        ErrorCode::HypothesesNotMet);
}

TEST_CASE("dimension caps are enforced loudly") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  SParameter c = defining_sparameter(make_parameter(g));
  LinearRep big = direct_sum(defining_rep(g), trivial_rep(g, 3));
  EquivariantMap phi(big, defining_rep(g), {MPoly::var(big.coords, 0)});
  CHECK(thrown_code([&] { is_melys(phi, c); }) == ErrorCode::UnsupportedDimension);
  CHECK(thrown_code([&] { is_strongly_melys(phi, c); }) == ErrorCode::UnsupportedDimension);
  CHECK(thrown_code([&] { pullback_parameter(phi, c); }) == ErrorCode::UnsupportedDimension);

  // Non-diagonal defining action: the swap reflection across x1 = x2.
  CMat swap(2, 2, Cyclo(Rat(0)));
  swap.at(0, 1) = Cyclo(Rat(1));
  swap.at(1, 0) = Cyclo(Rat(1));
  GroupPtr sg = ReflectionGroup::from_matrices(2, 1, {swap});
  SParameter cs = defining_sparameter(make_parameter(sg));
  EquivariantMap ident = identity_map(defining_rep(sg));
  CHECK(is_melys(ident, cs).ok);
  CHECK(thrown_code([&] { factor_linear_melys(ident, cs); }) ==
        ErrorCode::UnsupportedDimension);
}

TEST_CASE("misaligned parameters are rejected") {
  GroupPtr z2 = ReflectionGroup::cyclic_product({2});
  SParameter c3 = defining_sparameter(make_parameter(ReflectionGroup::cyclic_product({3})));
  CHECK(thrown_code([&] { is_melys(identity_map(defining_rep(z2)), c3); }) ==
        ErrorCode::IncompatibleElements);
}

TEST_CASE("factorization of line maps: identity, powers, carried units") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  SParameter c = defining_sparameter(make_parameter(g));
  LinearRep h = defining_rep(g);

  MelysFactorization f = factor_linear_melys(identity_map(h), c);
  CHECK(f.group->order() == 2);
  CHECK(f.exponents == std::vector<unsigned>{1});
  CHECK(f.composite.components() == identity_map(h).components());
  check_factorization_chain(f, c);

  EquivariantMap cube = power_map(g, 3);
  f = factor_linear_melys(cube, c);
  CHECK(f.exponents == std::vector<unsigned>{3});
  CHECK(f.composite.components() == cube.components());
  CHECK(f.embedding.components()[0] == MPoly::var(cube.source().coords, 0));
  SymbolsPtr mid = f.power.source().coords;
  CHECK(f.power.components()[0] == MPoly::var(mid, 0, 3));
  check_factorization_chain(f, c);

  EquivariantMap scaled(cube.source(), h,
                        {MPoly::var(cube.source().coords, 0, 3).scaled(Cyclo(Rat(7)))});
  f = factor_linear_melys(scaled, c);
  CHECK(f.exponents == std::vector<unsigned>{3});
  mid = f.power.source().coords;
  CHECK(f.power.components()[0] == MPoly::var(mid, 0, 3).scaled(Cyclo(Rat(7))));
  CHECK(f.composite.components() == scaled.components());
  check_factorization_chain(f, c);

  GroupPtr z3 = ReflectionGroup::cyclic_product({3});
  SParameter c3 = defining_sparameter(make_parameter(z3));
  EquivariantMap sq = power_map(z3, 2);
  f = factor_linear_melys(sq, c3);
  CHECK(f.exponents == std::vector<unsigned>{2});
  CHECK(f.composite.components() == sq.components());
  check_factorization_chain(f, c3);
}

TEST_CASE("factorization with invariant directions and dropped coordinates") {
  GroupPtr g = ReflectionGroup::cyclic_product({2});
  SParameter c = defining_sparameter(make_parameter(g));
  LinearRep h = defining_rep(g);
  LinearRep src = direct_sum(h, trivial_rep(g, 1));
  EquivariantMap proj(src, h, {MPoly::var(src.coords, 0)});
  MelysFactorization f = factor_linear_melys(proj, c);
  CHECK(f.exponents == std::vector<unsigned>{1});
  REQUIRE(f.embedding.target().dim == 2);
  CHECK(f.embedding.components()[0] == MPoly::var(src.coords, 0));
  CHECK(f.embedding.components()[1] == MPoly::var(src.coords, 1));
  CHECK(f.composite.components() == proj.components());
  check_factorization_chain(f, c);

  GroupPtr klein = ReflectionGroup::cyclic_product({2, 2});
  SParameter ck = defining_sparameter(make_parameter(klein));
  LinearRep axis = character_rep(klein, 1, "y1");
  LinearRep hk = defining_rep(klein);
  EquivariantMap incl(axis, hk, {MPoly::var(axis.coords, 0), MPoly(axis.coords)});
  f = factor_linear_melys(incl, ck);
  CHECK(f.group->order() == 4);
  CHECK((f.exponents == std::vector<unsigned>{1, 1}));
  CHECK(f.embedding.components()[1].is_zero());
  CHECK(f.composite.components() == incl.components());
  check_factorization_chain(f, ck);
}

TEST_CASE("factorization restricts to the subgroup carrying the parameter") {
  GroupPtr klein = ReflectionGroup::cyclic_product({2, 2});
  // Kill the parameter on the orbit of the hyperplane x2 = 0.
  unsigned dead_orbit = 0;
  for (const auto& hp : klein->hyperplanes())
    if (hp.alpha[0].is_zero()) dead_orbit = hp.orbit;
  std::string base = "k" + std::to_string(dead_orbit) + "_";
  Parameter p = make_parameter(klein, {{base + "0", Rat(0)}, {base + "1", Rat(0)}});
  SParameter c = defining_sparameter(p);

  LinearRep axis = character_rep(klein, 1, "y1");
  EquivariantMap incl(axis, defining_rep(klein),
                      {MPoly::var(axis.coords, 0), MPoly(axis.coords)});
  MelysFactorization f = factor_linear_melys(incl, c);
  CHECK(f.group->order() == 2);
  CHECK(f.composite.components() == incl.components());
  SParameter cr = restrict_sparam(f.projection.target(), klein, c);
  check_factorization_chain(f, cr);
}

TEST_CASE("stabilizer strata of product groups") {
  GroupPtr triv = ReflectionGroup::cyclic_product({1});
  std::vector<Stratum> strata = stabilizer_strata(triv);
  REQUIRE(strata.size() == 1);
  CHECK(strata[0].dimension == 1);
  CHECK(strata[0].parabolic == std::vector<unsigned>{0});
  CHECK(strata[0].equations.empty());
  CHECK(strata[0].inequations.empty());
  CHECK(strata[0].orbit_size == 1);

  GroupPtr z3 = ReflectionGroup::cyclic_product({3});
  strata = stabilizer_strata(z3);
  REQUIRE(strata.size() == 2);
  CHECK(strata[0].dimension == 1);
  CHECK(strata[0].parabolic == std::vector<unsigned>{0});
  CHECK(strata[0].equations.empty());
  REQUIRE(strata[0].inequations.size() == 1);
  CHECK(strata[1].dimension == 0);
  CHECK(strata[1].parabolic.size() == 3);
  REQUIRE(strata[1].equations.size() == 1);
  CHECK(strata[1].inequations.empty());

  GroupPtr klein = ReflectionGroup::cyclic_product({2, 2});
  strata = stabilizer_strata(klein);
  REQUIRE(strata.size() == 4);
  CHECK(strata[0].dimension == 2);
  CHECK(strata[0].parabolic.size() == 1);
  CHECK(strata[0].inequations.size() == 2);
  CHECK(strata[1].dimension == 1);
  CHECK(strata[2].dimension == 1);
  CHECK(strata[1].parabolic.size() == 2);
  CHECK(strata[2].parabolic.size() == 2);
  CHECK(strata[3].dimension == 0);
  CHECK(strata[3].parabolic.size() == 4);
  unsigned total = 0;
  for (const Stratum& s : strata) total += s.orbit_size;
  CHECK(total == 4);

  GroupPtr big = ReflectionGroup::cyclic_product({2, 2, 2, 2});
  strata = stabilizer_strata(big);
  REQUIRE(strata.size() == 16);
  std::map<unsigned, unsigned> by_dim;
  for (const Stratum& s : strata) ++by_dim[s.dimension];
  CHECK(by_dim[0] == 1);
  CHECK(by_dim[1] == 4);
  CHECK(by_dim[2] == 6);
  CHECK(by_dim[3] == 4);
  CHECK(by_dim[4] == 1);
}

TEST_CASE("stratum parabolics match generic-point stabilizers") {
  for (GroupPtr g :
       {ReflectionGroup::cyclic_product({1}), ReflectionGroup::cyclic_product({3}),
        ReflectionGroup::cyclic_product({2, 2}), ReflectionGroup::cyclic_product({2, 2, 2, 2})}) {
    unsigned n = g->dim();
    for (const Stratum& s : stabilizer_strata(g)) {
      Matrix<Cyclo> eqs(s.equations.size(), n, Cyclo(Rat(0)));
      for (size_t i = 0; i < s.equations.size(); ++i) {
        std::vector<Cyclo> row = covec_of(s.equations[i], n);
        for (unsigned j = 0; j < n; ++j) eqs.at(i, j) = row[j];
      }
      std::vector<std::vector<Cyclo>> basis = eqs.kernel_basis();
      REQUIRE(basis.size() == s.dimension);
      std::vector<Cyclo> pt(n, Cyclo(Rat(0)));
      for (size_t b = 0; b < basis.size(); ++b)
        for (unsigned j = 0; j < n; ++j)
          pt[j] += Cyclo(Rat((long)(2 * b + 3))) * basis[b][j];
      std::vector<unsigned> oracle;
      for (unsigned e = 0; e < g->order(); ++e)
        if (g->act_vec(e, pt) == pt) oracle.push_back(e);
      CHECK(s.parabolic == oracle);
      for (const MPoly& ineq : s.inequations) {
        std::vector<Cyclo> row = covec_of(ineq, n);
        Cyclo val(Rat(0));
        for (unsigned j = 0; j < n; ++j) val += row[j] * pt[j];
        CHECK(!val.is_zero());
      }
    }
  }
}
