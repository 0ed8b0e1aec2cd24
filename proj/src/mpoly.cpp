#include "cherednik/mpoly.hpp"

#include <sstream>

namespace cherednik {

MPoly MPoly::constant(SymbolsPtr syms, const Cyclo& c) {
  MPoly p(std::move(syms));
  if (!c.is_zero()) p.t_.emplace(ExpVec(p.syms_->size(), 0), c);
  return p;
}

MPoly MPoly::var(SymbolsPtr syms, unsigned i, unsigned exp) {
  if (i >= syms->size()) fail(ErrorCode::IncompatibleScalars, "variable index out of range");
  MPoly p(std::move(syms));
  if (exp == 0) return constant(p.syms_, Cyclo(Rat(1)));
  ExpVec e(p.syms_->size(), 0);
  e[i] = exp;
  p.t_.emplace(std::move(e), Cyclo(Rat(1)));
  return p;
}

MPoly MPoly::monomial(SymbolsPtr syms, const ExpVec& e, const Cyclo& c) {
  if (e.size() != syms->size()) fail(ErrorCode::IncompatibleScalars, "exponent vector size mismatch");
  MPoly p(std::move(syms));
  if (!c.is_zero()) p.t_.emplace(e, c);
  return p;
}

bool MPoly::is_constant() const {
  if (t_.empty()) return true;
  if (t_.size() > 1) return false;
  for (unsigned e : t_.begin()->first)
    if (e) return false;
  return true;
}

Cyclo MPoly::constant_value() const {
  if (t_.empty()) return Cyclo(Rat(0));
  if (!is_constant()) fail(ErrorCode::IncompatibleScalars, "polynomial " + str() + " is not constant");
  return t_.begin()->second;
}

bool MPoly::uses_var(unsigned i) const {
  for (const auto& [e, c] : t_)
    if (e[i]) return true;
  return false;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : t_) {
    int s = 0;
    for (unsigned x : e) s += (int)x;
    if (s > d) d = s;
  }
  return d;
}

int MPoly::degree_in(unsigned i) const {
  int d = -1;
  for (const auto& [e, c] : t_) d = std::max(d, (int)e[i]);
  if (d < 0 && !t_.empty()) d = 0;
  return t_.empty() ? -1 : d;
}

const Cyclo& MPoly::leading_coeff() const {
  if (t_.empty()) fail(ErrorCode::ZeroPolynomial, "leading coefficient of zero");
  return t_.begin()->second;
}

const ExpVec& MPoly::leading_exp() const {
  if (t_.empty()) fail(ErrorCode::ZeroPolynomial, "leading exponent of zero");
  return t_.begin()->first;
}

void MPoly::add_term(const ExpVec& e, const Cyclo& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

void MPoly::check_compatible(const MPoly& o) const {
  if (syms_ == o.syms_) return;
  if (syms_ && o.syms_ && syms_->same_as(*o.syms_)) return;
  fail(ErrorCode::IncompatibleScalars, "polynomials over different symbol sets");
}

MPoly MPoly::operator-() const {
  MPoly r(syms_);
  for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  MPoly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  check_compatible(o);
  MPoly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  MPoly r(syms_);
  for (const auto& [e1, c1] : t_)
    for (const auto& [e2, c2] : o.t_) {
      ExpVec e = e1;
      for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

MPoly MPoly::scaled(const Cyclo& c) const {
  MPoly r(syms_);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : t_) r.t_.emplace(e, x * c);
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly acc = constant(syms_, Rat(1));
  MPoly base = *this;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool MPoly::operator==(const MPoly& o) const {
  check_compatible(o);
  if (t_.size() != o.t_.size()) return false;
  auto it = t_.begin(), jt = o.t_.begin();
  for (; it != t_.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (it->second != jt->second) return false;
  }
  return true;
}

bool MPoly::try_divide(const MPoly& o, MPoly& q) const {
  check_compatible(o);
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  q = MPoly(syms_);
  MPoly rem = *this;
  const ExpVec& de = o.leading_exp();
  const Cyclo& dc = o.leading_coeff();
  while (!rem.is_zero()) {
    const ExpVec& re = rem.leading_exp();
    ExpVec qe(re.size());
    for (size_t i = 0; i < re.size(); ++i) {
      if (re[i] < de[i]) return false;
      qe[i] = re[i] - de[i];
    }
    Cyclo qc = rem.leading_coeff() / dc;
    MPoly qt = monomial(syms_, qe, qc);
    q += qt;
    rem -= qt * o;
  }
  return true;
}

MPoly MPoly::div_exact(const MPoly& o) const {
  MPoly q;
  if (!try_divide(o, q))
    fail(ErrorCode::IncompatibleScalars, "inexact polynomial division of " + str());
  return q;
}

std::vector<MPoly> MPoly::as_univariate(unsigned v) const {
  int d = degree_in(v);
  std::vector<MPoly> out(size_t(d < 0 ? 0 : d + 1), MPoly(syms_));
  for (const auto& [e, c] : t_) {
    ExpVec rest = e;
    unsigned k = rest[v];
    rest[v] = 0;
    out[k].add_term(rest, c);
  }
  return out;
}

MPoly MPoly::from_univariate(SymbolsPtr syms, unsigned v, const std::vector<MPoly>& coeffs) {
  MPoly r(syms);
  for (size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& [e, c] : coeffs[k].t_) {
      ExpVec full = e;
      full[v] += (unsigned)k;
      r.add_term(full, c);
    }
  return r;
}

MPoly MPoly::subst(unsigned v, const MPoly& value) const {
  std::vector<MPoly> coeffs = as_univariate(v);
  MPoly r(syms_);
  MPoly p = constant(syms_, Rat(1));
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (k) p *= value;
    r += coeffs[k] * p;
  }
  return r;
}

MPoly MPoly::subst_all(SymbolsPtr target, const std::vector<MPoly>& images) const {
  if (images.size() != syms_->size())
    fail(ErrorCode::IncompatibleScalars, "substitution image count mismatch");
  MPoly r(target);
  for (const auto& [e, c] : t_) {
    MPoly term = MPoly::constant(target, c);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= images[i].pow(e[i]);
    r += term;
  }
  return r;
}

Cyclo MPoly::eval(const std::vector<Cyclo>& point) const {
  if (point.size() != syms_->size())
    fail(ErrorCode::IncompatibleScalars, "evaluation point size mismatch");
  Cyclo acc(Rat(0));
  for (const auto& [e, c] : t_) {
    Cyclo term = c;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= point[i].pow((long)e[i]);
    acc += term;
  }
  return acc;
}

MPoly MPoly::conj_coeffs() const {
  MPoly r(syms_);
  for (const auto& [e, c] : t_) r.t_.emplace(e, c.conj());
  return r;
}

MPoly MPoly::derivative(unsigned v) const {
  MPoly r(syms_);
  for (const auto& [e, c] : t_) {
    if (!e[v]) continue;
    ExpVec d = e;
    d[v] -= 1;
    r.add_term(d, Cyclo(Rat((long)e[v])) * c);
  }
  return r;
}

std::string MPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t_) {
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += syms_->name((unsigned)i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (c.is_rational()) {
      Rat r = c.to_rat();
      bool neg = r < 0;
      Rat mag = neg ? Rat(-r) : r;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (mono.empty()) {
        os << rat_str(mag);
      } else {
        if (mag != 1) os << rat_str(mag) << "*";
        os << mono;
      }
    } else {
      os << (first ? "" : " + ");
      os << "(" << c.str() << ")";
      if (!mono.empty()) os << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

namespace {

// Helpers for the subresultant gcd, working on dense univariate views.

int udeg(const std::vector<MPoly>& p) {
  for (int i = (int)p.size() - 1; i >= 0; --i)
    if (!p[i].is_zero()) return i;
  return -1;
}

void utrim(std::vector<MPoly>& p) { p.resize(size_t(udeg(p) + 1), MPoly()); }

std::vector<MPoly> udiv_exact(const std::vector<MPoly>& p, const MPoly& f) {
  std::vector<MPoly> r = p;
  for (MPoly& c : r) c = c.div_exact(f);
  return r;
}

// Pseudo-remainder of f by g in the main variable: lc(g)^{deg f - deg g + 1} f mod g.
std::vector<MPoly> uprem(std::vector<MPoly> f, const std::vector<MPoly>& g) {
  int df = udeg(f), dg = udeg(g);
  const MPoly& lg = g[(size_t)dg];
  int e = df - dg + 1;
  while (df >= dg && df >= 0) {
    MPoly lf = f[(size_t)df];
    for (int i = 0; i <= df; ++i) f[(size_t)i] = f[(size_t)i] * lg;
    for (int i = 0; i <= dg; ++i) f[size_t(df - dg + i)] -= lf * g[(size_t)i];
    f[(size_t)df] = MPoly(lf.symbols());
    df = udeg(f);
    --e;
  }
  if (e > 0) {
    MPoly scale = lg.pow((unsigned)e);
    for (MPoly& c : f) c = c * scale;
  }
  utrim(f);
  return f;
}

MPoly content_of(const std::vector<MPoly>& coeffs) {
  MPoly g;
  bool started = false;
  for (const MPoly& c : coeffs) {
    if (c.is_zero()) continue;
    g = started ? mpoly_gcd(g, c) : c;
    started = true;
  }
  return g;
}

}  // namespace

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  SymbolsPtr syms = a.symbols();
  auto monic = [](const MPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading_coeff().inv());
  };
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return MPoly::constant(syms, Rat(1));

  // Main variable: smallest index used by either operand.
  unsigned v = 0;
  while (v < syms->size() && !a.uses_var(v) && !b.uses_var(v)) ++v;

  std::vector<MPoly> F = a.as_univariate(v), G = b.as_univariate(v);
  MPoly contF = content_of(F), contG = content_of(G);
  F = udiv_exact(F, contF);
  G = udiv_exact(G, contG);
  MPoly gcont = mpoly_gcd(contF, contG);

  if (udeg(F) < udeg(G)) std::swap(F, G);
  MPoly one = MPoly::constant(syms, Rat(1));
  MPoly g = one, h = one;
  while (true) {
    int delta = udeg(F) - udeg(G);
    std::vector<MPoly> R = uprem(F, G);
    if (udeg(R) < 0) break;
    if (udeg(R) == 0) {
      G = {one};
      break;
    }
    F = std::move(G);
    // Divide out the accumulated subresultant factor g * h^delta.
    MPoly divisor = g * h.pow((unsigned)delta);
    G = udiv_exact(R, divisor);
    g = F[(size_t)udeg(F)];
    if (delta > 0) {
      MPoly num = g.pow((unsigned)delta);
      h = delta == 1 ? num : num.div_exact(h.pow((unsigned)(delta - 1)));
    }
  }
  MPoly pp = MPoly::from_univariate(syms, v, udiv_exact(G, content_of(G)));
  return monic(gcont * pp);
}

}  // namespace cherednik
