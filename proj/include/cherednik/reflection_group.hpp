#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cherednik/matrix.hpp"
#include "cherednik/mpoly.hpp"

namespace cherednik {

// Convention for the action: group matrices act on h (column vectors); linear
// forms x in h* transform by x -> x o w^{-1}, so (w.f)(v) = f(w^{-1} v) on
// polynomial functions of h.
//
// For each reflection hyperplane H the pointwise stabilizer W_H is cyclic of
// order ell_H. Writing eta_H = zeta_N^{N / ell_H} for the group conductor N,
// the canonical generator s_H is the unique element of W_H whose determinant
// on h equals eta_H.
struct Hyperplane {
  std::vector<Cyclo> alpha;       // normalized defining covector (first nonzero = 1)
  std::vector<Cyclo> alpha_vee;   // spans the common moving line of W_H in h
  unsigned ell = 1;               // |W_H|
  unsigned orbit = 0;
  std::vector<unsigned> power_of_gen;  // power_of_gen[j] = element index of s_H^j
};

struct Reflection {
  unsigned elem;  // group element index
  unsigned hyp;   // hyperplane index
  Cyclo lambda;   // eigenvalue on the moving line (the nontrivial eigenvalue)
};

// A finite-dimensional representation, given by one matrix per group element,
// together with an invariant hermitian form used by contravariant pairings.
struct Irrep {
  std::string name;
  unsigned dim = 1;
  std::vector<CMat> mats;  // indexed by element
  CMat form;               // conj(v)^T form w is the invariant pairing
};

class ReflectionGroup;
using GroupPtr = std::shared_ptr<const ReflectionGroup>;

class ReflectionGroup {
 public:
  // Direct product of cyclic groups acting on A^r by coordinatewise roots of
  // unity; order 1 factors contribute a coordinate with trivial action.
  // Element index encodes the exponent tuple with the last factor fastest.
  static GroupPtr cyclic_product(const std::vector<unsigned>& orders);

  // Closure of explicit matrix generators over Q(zeta_conductor).
  static GroupPtr from_matrices(unsigned dim, unsigned conductor, std::vector<CMat> gens,
                                size_t order_cap = 10000);

  unsigned dim() const { return dim_; }
  unsigned conductor() const { return conductor_; }
  size_t order() const { return elements_.size(); }
  const CMat& matrix(unsigned g) const { return elements_.at(g); }
  const std::vector<unsigned>& generators() const { return generators_; }

  unsigned mul(unsigned a, unsigned b) const;
  unsigned inverse(unsigned g) const { return inverse_.at(g); }
  unsigned element_order(unsigned g) const;
  unsigned element_index(const CMat& m) const;  // errors if not in the group

  bool is_abelian() const { return abelian_; }
  bool is_cyclic_product() const { return !cyclic_orders_.empty(); }
  const std::vector<unsigned>& cyclic_orders() const { return cyclic_orders_; }

  const std::vector<Reflection>& reflections() const { return reflections_; }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const std::vector<std::vector<unsigned>>& orbits() const { return orbits_; }
  // Reflection index of element g (errors unless g is a reflection).
  unsigned reflection_of(unsigned g) const;

  unsigned act_on_hyperplane(unsigned g, unsigned h) const;

  std::vector<Cyclo> act_vec(unsigned g, const std::vector<Cyclo>& v) const;
  std::vector<Cyclo> act_covec(unsigned g, const std::vector<Cyclo>& a) const;

  // w.f for f a polynomial in the coordinate symbols x_1..x_n of h.
  MPoly act_on_polynomial(unsigned g, const MPoly& p) const;
  MPoly alpha_poly(unsigned h, SymbolsPtr syms) const;

  // Pairing <x, v> of a covector with a vector.
  static Cyclo pair(const std::vector<Cyclo>& covec, const std::vector<Cyclo>& vec);

  // All irreducible characters (abelian groups only; errors otherwise).
  const std::vector<Irrep>& characters() const;
  const Irrep& character_by_name(const std::string& name) const;
  // Builds a validated irrep from generator images (any group); the invariant
  // form is computed by averaging.
  Irrep make_irrep(const std::string& name, const std::vector<CMat>& gen_images) const;

  std::vector<unsigned> subgroup_closure(std::vector<unsigned> seed) const;

  std::string element_name(unsigned g) const { return "g" + std::to_string(g + 1); }

 private:
  ReflectionGroup() = default;
  void finalize();  // reflections, hyperplanes, orbits, tables

  unsigned dim_ = 0;
  unsigned conductor_ = 1;
  std::vector<CMat> elements_;
  std::vector<unsigned> generators_;
  std::vector<unsigned> inverse_;
  std::map<std::string, unsigned> index_;
  mutable std::map<std::pair<unsigned, unsigned>, unsigned> mul_cache_;
  bool abelian_ = false;
  std::vector<unsigned> cyclic_orders_;  // empty unless built by cyclic_product

  std::vector<Reflection> reflections_;
  std::map<unsigned, unsigned> reflection_by_elem_;
  std::vector<Hyperplane> hyperplanes_;
  std::vector<std::vector<unsigned>> orbits_;
  std::vector<std::vector<unsigned>> hyp_action_;  // [g][h]

  mutable std::vector<Irrep> characters_;  // lazy, abelian only
};

std::string matrix_key(const CMat& m);

}  // namespace cherednik
