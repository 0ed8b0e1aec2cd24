#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "cherednik/parameter.hpp"

namespace cherednik {

class CherednikAlgebra;
using AlgebraPtr = std::shared_ptr<const CherednikAlgebra>;

// Basis monomial x^a w y^b of the triangular (PBW) decomposition: x-part a,
// group element index w, y-part b. Every element of the algebra is a unique
// scalar combination of these.
struct PBWKey {
  ExpVec a;
  unsigned w = 0;
  ExpVec b;

  bool operator==(const PBWKey& o) const { return a == o.a && w == o.w && b == o.b; }
};

struct PBWKeyLess {
  bool operator()(const PBWKey& p, const PBWKey& q) const {
    LexGreater lg;
    if (p.a != q.a) return lg(p.a, q.a);
    if (p.w != q.w) return p.w < q.w;
    if (p.b != q.b) return lg(p.b, q.b);
    return false;
  }
};

class PBWElement {
 public:
  using TermMap = std::map<PBWKey, ParamScalar, PBWKeyLess>;

  PBWElement() = default;
  explicit PBWElement(AlgebraPtr alg) : alg_(std::move(alg)) {}

  const AlgebraPtr& algebra() const { return alg_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  PBWElement operator-() const;
  PBWElement operator+(const PBWElement& o) const;
  PBWElement operator-(const PBWElement& o) const;
  PBWElement operator*(const PBWElement& o) const;
  PBWElement& operator+=(const PBWElement& o) { return *this = *this + o; }
  PBWElement& operator-=(const PBWElement& o) { return *this = *this - o; }
  PBWElement& operator*=(const PBWElement& o) { return *this = *this * o; }
  PBWElement scaled(const ParamScalar& c) const;
  PBWElement pow(unsigned e) const;

  bool operator==(const PBWElement& o) const;
  bool operator!=(const PBWElement& o) const { return !(*this == o); }

  // Image under the conjugate-linear antiautomorphism that swaps x_i and y_i
  // and inverts group elements; the basis maps to itself term by term.
  PBWElement contravariant_dual() const;

  std::string str() const;

 private:
  friend class CherednikAlgebra;
  void add_term(const PBWKey& k, const ParamScalar& c);

  AlgebraPtr alg_;
  TermMap t_;
};

// Polynomial in the x coordinates with coefficients in the parameter field;
// the value space of Dunkl operators.
using XTermMap = std::map<ExpVec, ParamScalar, LexGreater>;

class CherednikAlgebra : public std::enable_shared_from_this<CherednikAlgebra> {
 public:
  static AlgebraPtr make(const Parameter& p);

  const GroupPtr& group() const { return group_; }
  const Parameter& parameter() const { return param_; }
  unsigned dim() const { return group_->dim(); }
  const SymbolsPtr& coordinate_symbols() const { return xsyms_; }

  PBWElement zero() const;
  PBWElement one() const;
  PBWElement scalar(const ParamScalar& c) const;
  PBWElement xgen(unsigned i, unsigned e = 1) const;
  PBWElement ygen(unsigned i, unsigned e = 1) const;
  PBWElement ggen(unsigned w) const;
  PBWElement monomial(const ExpVec& a, unsigned w, const ExpVec& b,
                      const ParamScalar& c) const;

  // Grading element: [eu, x_i] = x_i, [eu, y_i] = -y_i, [eu, w] = 0. Acts on
  // the degree-m part of a standard module with lowest weight lw(lambda) by
  // lw(lambda) + m.
  PBWElement euler_element() const;

  // Commutator [y_j, x_t] as coefficients on group elements.
  const std::map<unsigned, ParamScalar>& commutator(unsigned j, unsigned t) const {
    return rjt_.at(j).at(t);
  }

 private:
  CherednikAlgebra() = default;

  using NFMap = PBWElement::TermMap;

  // Normal form of y_j x^a; every term has y-degree 0 or 1.
  const NFMap& ysingle(unsigned j, const ExpVec& a) const;
  // Normal form of y^b x^a.
  const NFMap& ycross(const ExpVec& b, const ExpVec& a) const;
  // out += c * (x^{k1.a} w1 y^{k1.b}) (x^{k2.a} w2 y^{k2.b}).
  void accumulate_product(NFMap& out, const PBWKey& k1, const PBWKey& k2,
                          const ParamScalar& c) const;
  const MPoly& acted_monomial(unsigned w, const ExpVec& e) const;
  // (w^{-1} . y)^q expanded as a polynomial in the y basis.
  const MPoly& conj_y_power(unsigned w, const ExpVec& q) const;

  friend class PBWElement;
  friend XTermMap dunkl_apply(const CherednikAlgebra& alg, unsigned j, const XTermMap& p);
  friend XTermMap xterm_act(const CherednikAlgebra& alg, unsigned w, const XTermMap& p);
  friend bool verify_parameter_dictionary(const CherednikAlgebra& alg, unsigned max_deg,
                                          std::string* detail);

  GroupPtr group_;
  Parameter param_;
  SymbolsPtr xsyms_;
  std::vector<std::vector<std::map<unsigned, ParamScalar>>> rjt_;  // [j][t]

  mutable std::map<std::pair<unsigned, ExpVec>, NFMap> ysingle_cache_;
  mutable std::map<std::pair<ExpVec, ExpVec>, NFMap> ycross_cache_;
  mutable std::map<std::pair<unsigned, ExpVec>, MPoly> act_cache_;
  mutable std::map<std::pair<unsigned, ExpVec>, MPoly> conj_y_cache_;
};

// Dunkl operator of the j-th coordinate vector field: the action of y_j on
// the polynomial realization of the standard module of the trivial character,
//   T_j p = d/dx_j p + sum_H alpha_H(y_j) / alpha_H *
//           sum_{m != 0} d_{H,m} (s_H^m p - p).
XTermMap dunkl_apply(const CherednikAlgebra& alg, unsigned j, const XTermMap& p);

// Group action and multiplication helpers on x-polynomials.
XTermMap xterm_act(const CherednikAlgebra& alg, unsigned w, const XTermMap& p);
XTermMap xterm_mul(const XTermMap& p, const XTermMap& q);
std::string xterm_str(const CherednikAlgebra& alg, const XTermMap& p);

// Cross-checks the commutation engine against the Dunkl operator formula on
// all monomials of total degree <= max_deg: both must give the same action on
// the polynomial realization. Returns false and fills detail on mismatch.
bool verify_parameter_dictionary(const CherednikAlgebra& alg, unsigned max_deg,
                                 std::string* detail = nullptr);

}  // namespace cherednik
