#pragma once

#include <string>
#include <vector>

#include "cherednik/line_module.hpp"

namespace cherednik {

// Solution of the functional equation D(f . m f^s) = b(s) . m f^s in the
// f^s-twisted module, b monic in s.
struct BFunctionResult {
  std::vector<ParamScalar> b;  // b[e] on s^e; monic
  PBWElement D;
  unsigned op_degree = 0;      // total y-order of D
  bool certificate_ok = false;
  std::string certificate;     // one line per verified identity

  ParamScalar b_value(const ParamScalar& s_value) const;
  unsigned b_degree() const { return b.empty() ? 0 : (unsigned)(b.size() - 1); }
};

// b-function of the invariant monomial f = prod_t x_t^{fexp[t]} on the
// polynomial representation with cyclic generator x^gen (gen empty = 1).
// Supported groups: every group matrix diagonal and |W| the product of the
// coordinate cyclic orders (products of Z/ell factors, including the trivial
// group); the per-coordinate homogeneity bookkeeping of the operator ansatz
// is sound exactly there, anything else is UnsupportedShape. The ansatz at
// order d consists of terms x^j y^{fexp + j} s^e with |j| <= d - |fexp| and
// e <= s_degree_cap; orders run d = 1..max_op_degree and the first order
// whose system has a solution with b != 0 wins. Within that order b is the
// minimal-s-degree monic element of the solution space and D the canonical
// (row-echelon particular) operator achieving it.
BFunctionResult bfunction_monomial(const AlgebraPtr& alg, const ExpVec& fexp,
                                   const ExpVec& gen = {}, unsigned max_op_degree = 8,
                                   unsigned s_degree_cap = 8);

// Same equation over a cyclic module on the line with generator m_{i0} and
// f = x^fdeg. The module's residue constants must not already involve the
// twist symbol s.
BFunctionResult bfunction_line(const LineModule& m, long i0, unsigned fdeg,
                               unsigned max_op_degree = 8, unsigned s_degree_cap = 8);

// Action of a PBW element through the polynomial representation: y_j by the
// Dunkl operator, w by the group action, x_j by multiplication.
XTermMap polynomial_rep_apply(const AlgebraPtr& alg, const PBWElement& z,
                              const XTermMap& p);

// Substitute a value for one parameter symbol in every coefficient.
PBWElement pbw_subst(const PBWElement& z, unsigned var, const ParamScalar& value);

// Display form of b: factored into monic linear factors (s + ...) when it
// splits with roots affine in the parameters, expanded otherwise.
std::string b_function_str(const BFunctionResult& r, const Parameter& p);

// Roots of b that are rational constants (symbolic roots, which vanish for
// no rational specialization pattern, are ignored).
std::vector<Rat> b_constant_roots(const BFunctionResult& r, const Parameter& p);

// Generation criterion for localizations: f^{-j} m generates M[f^{-1}] iff
// no root of b lies in {-j-1, -j-2, ...}.
bool generates_localization(const BFunctionResult& r, const Parameter& p, long j);

}  // namespace cherednik
