#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cherednik/parameter.hpp"
#include "cherednik/reflection_group.hpp"

namespace cherednik {

// A finite-dimensional linear action of a session group: one matrix per group
// element (in the group's element order) together with coordinate symbols for
// the polynomial ring on the space. The group's own action on h is
// defining_rep; invariant directions are adjoined with trivial_rep/direct_sum.
struct LinearRep {
  GroupPtr group;
  unsigned dim = 0;
  std::vector<CMat> mats;  // indexed by element, dim x dim
  SymbolsPtr coords;
};

LinearRep defining_rep(const GroupPtr& g);
LinearRep trivial_rep(const GroupPtr& g, unsigned n, const std::string& prefix = "t");
// Block sum; coordinate names are concatenated and must not collide.
LinearRep direct_sum(const LinearRep& a, const LinearRep& b);

// w.f for f a polynomial in the rep's coordinates, (w.f)(v) = f(w^{-1} v).
MPoly rep_act(const LinearRep& rep, unsigned g, const MPoly& p);

// (w, Z): an element acting on the rep with fixed space Z of codimension one.
// The normal is the rref-normalized covector cutting Z.
struct ReflectionPair {
  unsigned elem = 0;
  std::vector<Cyclo> normal;
};

// All reflection pairs of the action, in element order.
std::vector<ReflectionPair> reflection_pairs(const LinearRep& rep);

// A parameter on the reflection pairs of one linear action, values aligned
// with the reflection_pairs enumeration of that action. syms is the scalar
// symbol set the values live in, kept even when pairs is empty.
struct SParameter {
  std::vector<ReflectionPair> pairs;
  std::vector<ParamScalar> values;
  SymbolsPtr syms;
};

// The kappa parameter converted to the c-presentation on the defining action.
SParameter defining_sparameter(const Parameter& p);

// Polynomial map phi: source -> target between linear actions of one group,
// stored through its components phi*(coordinate functional of the target).
// Equivariance phi*(w.a) = w.phi*(a) is validated exactly on generators.
class EquivariantMap {
 public:
  EquivariantMap(LinearRep source, LinearRep target, std::vector<MPoly> components);

  const LinearRep& source() const { return src_; }
  const LinearRep& target() const { return tgt_; }
  const std::vector<MPoly>& components() const { return comp_; }

  bool is_zero() const;
  std::string str() const;

 private:
  LinearRep src_, tgt_;
  std::vector<MPoly> comp_;
};

EquivariantMap identity_map(const LinearRep& rep);
// outer o inner; inner's target and outer's source must have equal matrices.
EquivariantMap compose(const EquivariantMap& outer, const EquivariantMap& inner);

struct MelysReport {
  bool ok = false;
  std::optional<size_t> witness;  // index into c.pairs of a violating pair
  std::string detail;
};

// phi is melys for c when phi^{-1}(Z) lies in the fixed space of w for every
// pair (w, Z) on the target with c(w, Z) != 0. The parameter must be aligned
// with reflection_pairs(phi.target()).
MelysReport is_melys(const EquivariantMap& phi, const SParameter& c);

// Melys, plus: whenever phi^{-1}(Z) is non-empty the element w must act
// non-trivially on the source (the source is treated as one component).
MelysReport is_strongly_melys(const EquivariantMap& phi, const SParameter& c);

// Pullback c' on the source pairs: c'(w, Z) = m * c(w, Z') where Z' is the
// hyperplane of w on the target and m the order of vanishing of phi*(alpha_Z')
// along Z; zero when no such Z' exists or Z does not map into Z'.
SParameter pullback_parameter(const EquivariantMap& phi, const SParameter& c);

enum class MelysBranch { Zero, Projection, PowerMap };

struct MelysClassification {
  MelysBranch branch = MelysBranch::Zero;
  unsigned r = 0;   // common homogeneity degree of the components (0 for zero)
  CMat matrix;      // Projection: component matrix, target dim x source dim
  MPoly root;       // PowerMap: linear form with phi*(alpha) = unit * root^r
  Cyclo unit;
};

// Decides which of the three shapes a melys map into an irreducible defining
// action realizes: the zero map, a linear projection onto a copy of the
// target, or (one-dimensional target, cyclic W of order ell) a power map of
// exponent r with gcd(r, ell) = 1. Requires the pairs with c != 0 to generate
// the whole group.
MelysClassification classify_irreducible_melys(const EquivariantMap& phi, const SParameter& c);

struct MelysFactorization {
  GroupPtr group;            // the subgroup generated by pairs with c != 0
  EquivariantMap embedding;  // source -> twisted target x invariants, closed
  EquivariantMap power;      // coordinatewise power maps carrying the units
  EquivariantMap projection; // target x invariants -> target
  std::vector<unsigned> exponents;  // one exponent per target coordinate
  EquivariantMap composite;  // projection o power o embedding, equals phi
};

// Factors a melys map between linear actions with coordinatewise-diagonal
// target into closed embedding, finite coordinate power map and projection.
// The analysis first restricts to the subgroup generated by the pairs with
// c != 0; all emitted maps are equivariant for that subgroup.
MelysFactorization factor_linear_melys(const EquivariantMap& phi, const SParameter& c);

// One stratum of the partition of h by pointwise stabilizer, grouped into one
// entry per W-orbit of flats of the reflection arrangement.
struct Stratum {
  std::vector<unsigned> parabolic;  // stabilizer of a generic point, element indices
  std::vector<MPoly> equations;     // linear forms cutting the representative flat
  std::vector<MPoly> inequations;   // hyperplane forms non-vanishing on the stratum
  unsigned dimension = 0;
  unsigned orbit_size = 1;
};

// Strata ordered by descending dimension, then by canonical flat key.
std::vector<Stratum> stabilizer_strata(const GroupPtr& g);

}  // namespace cherednik
