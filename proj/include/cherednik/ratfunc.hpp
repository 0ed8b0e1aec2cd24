#pragma once

#include "cherednik/mpoly.hpp"

namespace cherednik {

// Element of the fraction field of the session's polynomial ring. Canonical
// form: gcd(num, den) = 1 and den monic, so structural equality is semantic
// equality. Zero is 0/1.
class ParamScalar {
 public:
  ParamScalar() = default;
  explicit ParamScalar(const MPoly& num)
      : num_(num), den_(MPoly::constant(num.symbols(), Rat(1))) {}
  ParamScalar(MPoly num, MPoly den) { assign(std::move(num), std::move(den)); }

  static ParamScalar constant(SymbolsPtr syms, const Rat& r) {
    return ParamScalar(MPoly::constant(syms, r));
  }
  static ParamScalar constant(SymbolsPtr syms, const Cyclo& c) {
    return ParamScalar(MPoly::constant(syms, c));
  }
  static ParamScalar var(SymbolsPtr syms, unsigned i) {
    return ParamScalar(MPoly::var(syms, i));
  }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  const SymbolsPtr& symbols() const { return num_.symbols(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Cyclo constant_value() const { return num_.constant_value() / den_.constant_value(); }

  ParamScalar operator-() const {
    ParamScalar r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  ParamScalar operator+(const ParamScalar& o) const {
    return ParamScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  ParamScalar operator-(const ParamScalar& o) const {
    return ParamScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  ParamScalar operator*(const ParamScalar& o) const {
    return ParamScalar(num_ * o.num_, den_ * o.den_);
  }
  ParamScalar operator/(const ParamScalar& o) const {
    if (o.is_zero()) fail(ErrorCode::DivisionByZero, "scalar division by zero");
    return ParamScalar(num_ * o.den_, den_ * o.num_);
  }
  ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
  ParamScalar& operator-=(const ParamScalar& o) { return *this = *this - o; }
  ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }
  ParamScalar& operator/=(const ParamScalar& o) { return *this = *this / o; }

  ParamScalar inv() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero scalar");
    return ParamScalar(den_, num_);
  }

  ParamScalar pow(long e) const {
    if (e < 0) return inv().pow(-e);
    ParamScalar r;
    r.num_ = num_.pow((unsigned)e);
    r.den_ = den_.pow((unsigned)e);
    return r;  // already reduced: powers of coprime polys stay coprime
  }

  bool operator==(const ParamScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const ParamScalar& o) const { return !(*this == o); }

  ParamScalar conj() const { return ParamScalar(num_.conj_coeffs(), den_.conj_coeffs()); }

  ParamScalar subst(unsigned v, const ParamScalar& value) const;
  Cyclo eval(const std::vector<Cyclo>& point) const {
    Cyclo d = den_.eval(point);
    if (d.is_zero()) fail(ErrorCode::DivisionByZero, "denominator vanishes at evaluation point");
    return num_.eval(point) / d;
  }

  std::string str() const {
    if (is_polynomial()) {
      Cyclo d = den_.constant_value();
      if (d == Cyclo(Rat(1))) return num_.str();
      return num_.scaled(d.inv()).str();
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  void assign(MPoly num, MPoly den) {
    if (den.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
    if (num.is_zero()) {
      num_ = std::move(num);
      den_ = MPoly::constant(num_.symbols(), Rat(1));
      return;
    }
    MPoly g = mpoly_gcd(num, den);
    if (!g.is_constant() || g.leading_coeff() != Cyclo(Rat(1))) {
      num = num.div_exact(g);
      den = den.div_exact(g);
    }
    Cyclo lead = den.leading_coeff();
    if (lead != Cyclo(Rat(1))) {
      Cyclo li = lead.inv();
      num = num.scaled(li);
      den = den.scaled(li);
    }
    num_ = std::move(num);
    den_ = std::move(den);
  }

  MPoly num_, den_;
};

inline ParamScalar ParamScalar::subst(unsigned v, const ParamScalar& value) const {
  // num(.., v, ..)/den with v := p/q: clear q powers from both sides.
  unsigned dn = (unsigned)std::max(num_.degree_in(v), 0);
  unsigned dd = (unsigned)std::max(den_.degree_in(v), 0);
  unsigned d = std::max(dn, dd);
  auto lift = [&](const MPoly& poly) {
    std::vector<MPoly> cs = poly.as_univariate(v);
    MPoly acc(poly.symbols());
    for (size_t k = 0; k < cs.size(); ++k)
      acc += cs[k] * value.num_.pow((unsigned)k) * value.den_.pow((unsigned)(d - k));
    return acc;
  };
  return ParamScalar(lift(num_), lift(den_));
}

}  // namespace cherednik
