#pragma once

#include <map>
#include <string>
#include <vector>

#include "cherednik/cyclotomic.hpp"
#include "cherednik/symbols.hpp"

namespace cherednik {

using ExpVec = std::vector<unsigned>;

// Descending lexicographic order on exponent vectors: the leading term of a
// polynomial is the first entry of the map.
struct LexGreater {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
      unsigned ea = i < a.size() ? a[i] : 0;
      unsigned eb = i < b.size() ? b[i] : 0;
      if (ea != eb) return ea > eb;
    }
    return false;
  }
};

// Multivariate polynomial over the cyclotomic field, with a fixed shared
// symbol set. Canonical form: map keyed by exponent vector (full length, one
// slot per symbol), zero coefficients never stored.
class MPoly {
 public:
  using TermMap = std::map<ExpVec, Cyclo, LexGreater>;

  MPoly() = default;  // invalid until given a symbol set
  explicit MPoly(SymbolsPtr syms) : syms_(std::move(syms)) {}

  static MPoly constant(SymbolsPtr syms, const Cyclo& c);
  static MPoly constant(SymbolsPtr syms, const Rat& r) { return constant(syms, Cyclo(r)); }
  static MPoly var(SymbolsPtr syms, unsigned i, unsigned exp = 1);
  static MPoly monomial(SymbolsPtr syms, const ExpVec& e, const Cyclo& c);

  const SymbolsPtr& symbols() const { return syms_; }
  const TermMap& terms() const { return t_; }
  size_t term_count() const { return t_.size(); }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Cyclo constant_value() const;  // errors unless constant
  bool uses_var(unsigned i) const;

  int total_degree() const;     // -1 for zero
  int degree_in(unsigned i) const;

  const Cyclo& leading_coeff() const;
  const ExpVec& leading_exp() const;

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scaled(const Cyclo& c) const;
  MPoly pow(unsigned e) const;

  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  // Exact division. try_divide returns false (and leaves q unspecified) when
  // o does not divide *this; div_exact errors instead.
  bool try_divide(const MPoly& o, MPoly& q) const;
  MPoly div_exact(const MPoly& o) const;

  // Dense coefficient list of *this viewed as univariate in variable v;
  // entry k is the coefficient of v^k (a polynomial with v-degree 0).
  std::vector<MPoly> as_univariate(unsigned v) const;
  static MPoly from_univariate(SymbolsPtr syms, unsigned v, const std::vector<MPoly>& coeffs);

  MPoly subst(unsigned v, const MPoly& value) const;
  // Simultaneous substitution of every variable; images live in the target ring.
  MPoly subst_all(SymbolsPtr target, const std::vector<MPoly>& images) const;
  Cyclo eval(const std::vector<Cyclo>& point) const;

  MPoly derivative(unsigned v) const;
  MPoly conj_coeffs() const;  // complex conjugation of every coefficient

  std::string str() const;

 private:
  void add_term(const ExpVec& e, const Cyclo& c);
  void check_compatible(const MPoly& o) const;

  SymbolsPtr syms_;
  TermMap t_;

  friend MPoly mpoly_gcd(const MPoly& a, const MPoly& b);
};

// Monic gcd (leading coefficient 1) via primitive subresultant remainder
// sequences, recursing through the variables. gcd(0, 0) = 0.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

}  // namespace cherednik
