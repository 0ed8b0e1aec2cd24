#pragma once

#include "cherednik/ratfunc.hpp"
#include "cherednik/reflection_group.hpp"

namespace cherednik {

// Reflection parameters in the kappa normalization: one cyclically indexed
// slot kappa_{orbit, i} per hyperplane orbit, i mod ell_orbit, plus the
// reserved twist symbol "s". Slots may be left symbolic or specialized to
// rationals; the symbol set always contains every slot name so that scalars
// from the same session stay compatible.
//
// Symbol names: a single orbit uses k0, k1, ...; with several orbits the
// slots are k<orbit>_<i>.
class Parameter {
 public:
  Parameter() = default;

  const SymbolsPtr& symbols() const { return syms_; }
  const GroupPtr& group() const { return group_; }
  size_t orbit_count() const { return kappa_.size(); }
  unsigned ell(unsigned orbit) const { return (unsigned)kappa_.at(orbit).size(); }

  // kappa_{orbit, i} with cyclic index.
  const ParamScalar& kappa(unsigned orbit, long i) const {
    long l = (long)kappa_.at(orbit).size();
    long r = ((i % l) + l) % l;
    return kappa_.at(orbit).at((size_t)r);
  }

  ParamScalar s() const { return ParamScalar::var(syms_, s_index_); }
  unsigned s_index() const { return s_index_; }

  bool fully_rational() const {
    for (const auto& orbit : kappa_)
      for (const ParamScalar& v : orbit)
        if (!v.is_constant()) return false;
    return true;
  }

  ParamScalar rational(const Rat& r) const { return ParamScalar::constant(syms_, r); }
  ParamScalar cyclo(const Cyclo& c) const { return ParamScalar::constant(syms_, c); }

  std::string slot_name(unsigned orbit, unsigned i) const;

  // Same group and symbols, slot (orbit, i) replaced by the given value.
  Parameter with_slot(unsigned orbit, unsigned i, const ParamScalar& value) const;

  friend Parameter make_parameter(const GroupPtr& g,
                                  const std::map<std::string, Rat>& specialize);
  friend Parameter kappa_of_c(const GroupPtr& g, const SymbolsPtr& syms,
                              const std::vector<ParamScalar>& c);

 private:
  SymbolsPtr syms_;
  GroupPtr group_;
  std::vector<std::vector<ParamScalar>> kappa_;  // [orbit][i]
  unsigned s_index_ = 0;
};

Parameter make_parameter(const GroupPtr& g, const std::map<std::string, Rat>& specialize = {});

// Dictionary between the kappa slots and the reflection-indexed parameters
// c(w, H). Returns one value per entry of group->reflections().
//
// For a reflection s_H^j on hyperplane H with eta = eta_H:
//   c(s_H^j) = (1/2) (1 - eta^{-j}) sum_m kappa_{H,m} eta^{j m}.
std::vector<ParamScalar> c_of_kappa(const Parameter& p);

// Inverse direction, normalized to kappa_{orbit, 0} = 0. Validates that the
// given values are constant on conjugacy (all hyperplanes of an orbit give
// the same slots); errors with DictionaryMismatch otherwise.
Parameter kappa_of_c(const GroupPtr& g, const SymbolsPtr& syms,
                     const std::vector<ParamScalar>& c);

// Dunkl coefficients d_{H,j} = sum_m kappa_{H,m} eta_H^{j m} = 2 c(s_H^j) / (1 - eta^{-j}).
ParamScalar dunkl_coefficient(const Parameter& p, unsigned hyp, unsigned j);

}  // namespace cherednik
