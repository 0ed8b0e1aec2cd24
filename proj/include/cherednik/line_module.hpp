#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cherednik/pbw.hpp"

namespace cherednik {

enum class LineKind { Polynomial, Localized };

// Monomial modules on the line over the rank-one algebra (W = Z/ell acting on
// A^1; ell = 1 covers the trivial group). The basis m_i satisfies
//
//   x m_i = m_{i+1},   y m_i = (i + c_{i mod ell}) m_{i-1},   s m_i = eta^{k-i} m_i,
//
// where c_0..c_{ell-1} are the residue constants and k the character offset of
// the generator. Polynomial kind: basis i >= lowest, with the y-coefficient at
// the bottom index equal to zero; Localized kind: basis over all of Z
// (sections over x != 0). Standard modules, their localizations, f^{s+l}
// twists and shift-functor images all have this shape; which shape a given
// constant vector is allowed to be is pinned by the commutation relation,
// which forces c_r - ell*kappa_{r-k} to be independent of r.
class LineModule {
 public:
  LineModule(AlgebraPtr alg, unsigned k, LineKind kind, long lowest,
             std::vector<ParamScalar> consts);

  // Standard module of the character chi_k: basis x^i tensor v_k, i >= 0.
  // For k = 0 this is the polynomial representation (y = Dunkl operator).
  static LineModule standard(AlgebraPtr alg, unsigned k);

  const AlgebraPtr& algebra() const { return alg_; }
  unsigned char_offset() const { return k_; }
  LineKind kind() const { return kind_; }
  long lowest() const { return lowest_; }
  unsigned ell() const { return (unsigned)consts_.size(); }
  const std::vector<ParamScalar>& residue_constants() const { return consts_; }

  ParamScalar y_coefficient(long i) const;
  // eu m_i = (i + eu_constant()) m_i; for the standard module the constant is
  // the lowest weight of chi_k.
  ParamScalar eu_constant() const;
  ParamScalar eu_eigenvalue(long i) const;

  // Sections over x != 0 (forgets the lowest bound).
  LineModule localized() const;

  // Tensor by f^t for f = x^fdeg (fdeg a positive multiple of ell); t may
  // involve the twist symbol s. Localized modules only.
  LineModule twisted(const ParamScalar& t, unsigned fdeg) const;

  // Indices where the lowering coefficient vanishes (for Polynomial kind the
  // structural zero at `lowest` is not reported). Solved exactly per residue;
  // symbolic constants never vanish identically away from the forced zeros.
  std::vector<long> breaks() const;

  // Whether m_{i0} generates the whole module (x raises freely; descent is
  // blocked exactly at breaks <= i0).
  bool generated_by(long i0) const;

  bool same_shape(const LineModule& o, long check_from, long check_to) const;

  std::string describe() const;

 private:
  AlgebraPtr alg_;
  unsigned k_ = 0;
  LineKind kind_ = LineKind::Polynomial;
  long lowest_ = 0;
  std::vector<ParamScalar> consts_;
};

struct CompositionFactor {
  std::optional<long> lowest;   // bottom basis index, when bounded below
  std::optional<long> highest;  // top basis index, when bounded above
  unsigned multiplicity = 1;
  std::string describe(const ParamScalar& eu_constant) const;
};

// Composition series read off from the break indices: each break b starts the
// submodule spanned by m_i, i >= b, and consecutive breaks cut out the
// factors. The factors are simple (eu separates the graded pieces, so every
// submodule is spanned by basis vectors), hence the length is breaks + 1.
struct CompositionSeries {
  std::vector<long> breaks;                // ascending
  std::vector<CompositionFactor> factors;  // ascending by index range
  ParamScalar eu_constant;                 // eu m_i = (i + eu_constant) m_i
  bool certified = true;                   // all vanishing conditions solved exactly
  long window_needed = 0;                  // max |break|
  size_t length() const { return factors.size(); }
};

CompositionSeries composition_series_line(const LineModule& m);

// Sections of m over x != 0 with the y-action re-read at the target
// parameters (the localized algebras coincide, so only the lowering
// coefficients change). With omega_all = false the parameters must agree on
// the hyperplane orbit, otherwise IllegalShift.
LineModule shift_functor_line(const LineModule& m, const Parameter& target,
                              bool omega_all = true);

// O-coherent summand on the line: a free monomial module, or a torsion
// quotient C[x]/(g) given by the coefficients of g (ascending degree). A
// torsion summand carries only its O- and W-structure.
struct LineSummand {
  std::optional<LineModule> free;
  std::vector<Rat> torsion;

  static LineSummand of(LineModule m) {
    LineSummand s;
    s.free = std::move(m);
    return s;
  }
  static LineSummand quotient(std::vector<Rat> g) {
    LineSummand s;
    s.torsion = std::move(g);
    return s;
  }
};

// Euler-locally-finite part of the completion at 0, summand by summand. Free
// monomial modules are graded with eu eigenvalues i + const strictly
// increasing, so completion adds no locally finite vectors and the functor
// returns the summand itself. Torsion supported away from 0 completes to 0.
// Torsion supported at 0 carries no compatible y-action datum and is
// rejected (UnsupportedShape), as is a localized summand (not coherent on the
// affine line).
std::vector<LineModule> jacquet_line(const AlgebraPtr& alg,
                                     const std::vector<LineSummand>& parts);

}  // namespace cherednik
