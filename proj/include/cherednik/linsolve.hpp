#pragma once

#include "cherednik/matrix.hpp"
#include "cherednik/mpoly.hpp"

namespace cherednik {

// Distinct rational roots of a univariate polynomial with rational
// coefficients (dense, entry k on x^k).
std::vector<Rat> rational_roots(const std::vector<Rat>& poly);

// One monic linear factor (v - root) where the root is affine-linear in the
// other symbols with rational coefficients.
struct LinearFactor {
  MPoly root;  // polynomial of degree <= 1 in each symbol, degree 0 in v
  unsigned multiplicity = 0;
};

struct LinearSplit {
  std::vector<LinearFactor> factors;
  MPoly remainder;  // p == remainder * prod (v - root_i)^{mult_i}, exactly
};

// Splits off every monic factor (v - r) of p where r is affine-linear over Q
// in the remaining symbols. Complete for such roots: candidates are read off
// from rational roots of specializations at deterministically chosen sample
// points, then verified by exact substitution and division.
LinearSplit poly_factor_linear(const MPoly& p, unsigned v);

}  // namespace cherednik
