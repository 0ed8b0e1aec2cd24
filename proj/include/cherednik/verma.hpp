#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cherednik/pbw.hpp"

namespace cherednik {

// Standard module with lowest piece a given irreducible representation: as a
// graded vector space, polynomials in the x coordinates tensored with the
// representation. x acts by multiplication, the group diagonally, and the
// lowering operators through the commutation engine. Degree m carries the
// basis x^a tensor v_k in the order (a descending lex, then k).
class VermaModule {
 public:
  VermaModule(AlgebraPtr alg, Irrep lowest);

  const AlgebraPtr& algebra() const { return alg_; }
  const Irrep& lowest() const { return lambda_; }
  // Scalar of the grading element on the lowest piece.
  const ParamScalar& lowest_weight() const { return lw_; }

  const std::vector<std::pair<ExpVec, unsigned>>& basis(unsigned m) const;
  size_t dim(unsigned m) const { return basis(m).size(); }
  unsigned index_of(unsigned m, const ExpVec& a, unsigned k) const;

  PMat x_matrix(unsigned j, unsigned m) const;         // degree m -> m + 1
  const PMat& y_matrix(unsigned j, unsigned m) const;  // degree m -> m - 1
  PMat w_matrix(unsigned w, unsigned m) const;         // degree m -> m

  // Matrix of an element all of whose basis terms shift the grading by the
  // same amount d; maps degree m to degree m + d.
  PMat act_matrix(const PBWElement& z, unsigned m) const;

  // Contravariant form on the degree-m piece, conjugate linear in the first
  // argument: entry (r, c) pairs basis vector r against basis vector c. The
  // pairing on the lowest piece is the invariant form of the representation.
  const PMat& gram(unsigned m) const;

 private:
  AlgebraPtr alg_;
  Irrep lambda_;
  ParamScalar lw_;
  ParamScalar zero_, one_;

  mutable std::vector<std::vector<std::pair<ExpVec, unsigned>>> basis_;
  mutable std::vector<std::map<std::pair<ExpVec, unsigned>, unsigned>> index_;
  mutable std::map<std::pair<unsigned, unsigned>, PMat> ymat_;  // (j, m)
  mutable std::vector<PMat> gram_;
};

// Kernel of all lowering operators on the degree-m piece; each generates a
// proper submodule.
std::vector<std::vector<ParamScalar>> singular_vectors(const VermaModule& M, unsigned m);

// Dimension of the degree-m piece of the simple quotient (rank of the form),
// and of its isotypic component for the trivial character.
unsigned simple_quotient_dim(const VermaModule& M, unsigned m);
unsigned simple_quotient_trivial_dim(const VermaModule& M, unsigned m);

struct TruncatedVerdict {
  bool holds = false;
  std::string witness;  // module or degree information supporting the verdict
  unsigned truncation = 0;
};

// All standard modules simple in degrees 1..N (forms nondegenerate there).
TruncatedVerdict is_regular_truncated(const AlgebraPtr& alg, const std::vector<Irrep>& irreps,
                                      unsigned N);

// Some simple quotient has no trivial isotype in degrees 0..N, so averaging
// over the group kills it.
TruncatedVerdict is_aspherical_truncated(const AlgebraPtr& alg, const std::vector<Irrep>& irreps,
                                         unsigned N);

// Affine forms in the parameters whose vanishing allows a morphism between
// two standard modules in degrees 1..N: lowest weight differences shifted by
// the degree. Deduplicated, sorted by printed form.
std::vector<ParamScalar> aspherical_candidates(const AlgebraPtr& alg,
                                               const std::vector<Irrep>& irreps, unsigned N);

}  // namespace cherednik
