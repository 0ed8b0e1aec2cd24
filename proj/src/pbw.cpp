#include "cherednik/pbw.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cherednik {

namespace {

ExpVec evadd(const ExpVec& a, const ExpVec& b) {
  ExpVec r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

bool evzero(const ExpVec& a) {
  for (unsigned e : a)
    if (e) return false;
  return true;
}

void nf_add(PBWElement::TermMap& m, const PBWKey& k, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = m.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

void xt_add(XTermMap& m, const ExpVec& e, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = m.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

// Exact division of an x-polynomial by the linear form sum_j alpha[j] x_j.
XTermMap xdiv_linear(const XTermMap& q, const std::vector<Cyclo>& alpha) {
  unsigned j0 = 0;
  while (j0 < alpha.size() && alpha[j0].is_zero()) ++j0;
  if (j0 == alpha.size()) fail(ErrorCode::DivisionByZero, "division by the zero linear form");
  XTermMap rem = q, quot;
  while (!rem.empty()) {
    const auto& [e, c] = *rem.begin();
    if (e[j0] == 0)
      fail(ErrorCode::InternalError, "polynomial is not divisible by the hyperplane form");
    ExpVec base = e;
    base[j0] -= 1;
    ParamScalar f = c / ParamScalar::constant(c.symbols(), alpha[j0]);
    xt_add(quot, base, f);
    for (unsigned k = 0; k < alpha.size(); ++k) {
      if (alpha[k].is_zero()) continue;
      ExpVec ek = base;
      ek[k] += 1;
      xt_add(rem, ek, -(f * ParamScalar::constant(c.symbols(), alpha[k])));
    }
  }
  return quot;
}

}  // namespace

AlgebraPtr CherednikAlgebra::make(const Parameter& p) {
  if (!p.group()) fail(ErrorCode::IncompatibleElements, "parameter carries no group");
  auto alg = std::shared_ptr<CherednikAlgebra>(new CherednikAlgebra());
  alg->group_ = p.group();
  alg->param_ = p;
  const ReflectionGroup& g = *alg->group_;
  unsigned n = g.dim();
  std::vector<std::string> xnames;
  for (unsigned i = 0; i < n; ++i) xnames.push_back("x" + std::to_string(i + 1));
  alg->xsyms_ = SymbolSet::make(xnames);

  ParamScalar one = p.rational(Rat(1));
  alg->rjt_.assign(n, std::vector<std::map<unsigned, ParamScalar>>(n));
  for (unsigned j = 0; j < n; ++j) alg->rjt_[j][j].emplace(0u, one);
  for (unsigned hi = 0; hi < g.hyperplanes().size(); ++hi) {
    const Hyperplane& h = g.hyperplanes()[hi];
    Cyclo eta = Cyclo::zeta(g.conductor(), (long)(g.conductor() / h.ell));
    Cyclo pairing = ReflectionGroup::pair(h.alpha, h.alpha_vee);
    if (pairing.is_zero())
      fail(ErrorCode::InternalError, "moving line lies inside its hyperplane");
    for (unsigned m = 1; m < h.ell; ++m) {
      ParamScalar dp = p.rational(Rat(0));
      for (unsigned i = 0; i < h.ell; ++i)
        dp += (p.kappa(h.orbit, (long)i + 1) - p.kappa(h.orbit, (long)i)) *
              p.cyclo(eta.pow((long)i * m));
      if (dp.is_zero()) continue;
      unsigned w = h.power_of_gen[m];
      for (unsigned j = 0; j < n; ++j) {
        if (h.alpha[j].is_zero()) continue;
        for (unsigned t = 0; t < n; ++t) {
          if (h.alpha_vee[t].is_zero()) continue;
          Cyclo factor = h.alpha[j] * h.alpha_vee[t] / pairing;
          auto [it, fresh] = alg->rjt_[j][t].emplace(w, dp * p.cyclo(factor));
          if (!fresh) it->second += dp * p.cyclo(factor);
          if (it->second.is_zero()) alg->rjt_[j][t].erase(it);
        }
      }
    }
  }
  return alg;
}

const MPoly& CherednikAlgebra::acted_monomial(unsigned w, const ExpVec& e) const {
  auto key = std::make_pair(w, e);
  auto it = act_cache_.find(key);
  if (it != act_cache_.end()) return it->second;
  MPoly mono = MPoly::monomial(xsyms_, e, Cyclo(Rat(1)));
  MPoly img = w == 0 ? mono : group_->act_on_polynomial(w, mono);
  return act_cache_.emplace(key, std::move(img)).first->second;
}

const MPoly& CherednikAlgebra::conj_y_power(unsigned w, const ExpVec& q) const {
  auto key = std::make_pair(w, q);
  auto it = conj_y_cache_.find(key);
  if (it != conj_y_cache_.end()) return it->second;
  MPoly out(xsyms_);
  if (w == 0 || evzero(q)) {
    out = MPoly::monomial(xsyms_, q, Cyclo(Rat(1)));
  } else {
    out = MPoly::constant(xsyms_, Rat(1));
    const CMat& mi = group_->matrix(group_->inverse(w));
    for (unsigned j = 0; j < q.size(); ++j) {
      if (q[j] == 0) continue;
      MPoly lin(xsyms_);
      for (unsigned i = 0; i < q.size(); ++i)
        if (!mi.at(i, j).is_zero()) lin += MPoly::var(xsyms_, i).scaled(mi.at(i, j));
      out *= lin.pow(q[j]);
    }
  }
  return conj_y_cache_.emplace(key, std::move(out)).first->second;
}

const CherednikAlgebra::NFMap& CherednikAlgebra::ysingle(unsigned j, const ExpVec& a) const {
  auto key = std::make_pair(j, a);
  auto it = ysingle_cache_.find(key);
  if (it != ysingle_cache_.end()) return it->second;

  unsigned n = group_->dim();
  ExpVec zero(n, 0);
  NFMap out;
  ParamScalar one = param_.rational(Rat(1));
  if (evzero(a)) {
    ExpVec ej(n, 0);
    ej[j] = 1;
    nf_add(out, PBWKey{zero, 0, ej}, one);
  } else {
    unsigned t = 0;
    while (a[t] == 0) ++t;
    ExpVec a2 = a;
    a2[t] -= 1;
    const NFMap& rec = ysingle(j, a2);
    for (const auto& [k, c] : rec) {
      PBWKey k2 = k;
      k2.a[t] += 1;
      nf_add(out, k2, c);
    }
    for (const auto& [w, cw] : rjt_[j][t]) {
      if (w == 0) {
        nf_add(out, PBWKey{a2, 0, zero}, cw);
      } else {
        const MPoly& img = acted_monomial(w, a2);
        for (const auto& [e, cx] : img.terms())
          nf_add(out, PBWKey{e, w, zero}, cw * param_.cyclo(cx));
      }
    }
  }
  return ysingle_cache_.emplace(key, std::move(out)).first->second;
}

const CherednikAlgebra::NFMap& CherednikAlgebra::ycross(const ExpVec& b, const ExpVec& a) const {
  auto key = std::make_pair(b, a);
  auto it = ycross_cache_.find(key);
  if (it != ycross_cache_.end()) return it->second;

  unsigned n = group_->dim();
  ExpVec zero(n, 0);
  NFMap out;
  ParamScalar one = param_.rational(Rat(1));
  if (evzero(b)) {
    nf_add(out, PBWKey{a, 0, zero}, one);
  } else if (evzero(a)) {
    nf_add(out, PBWKey{zero, 0, b}, one);
  } else {
    unsigned j = 0;
    while (b[j] == 0) ++j;
    ExpVec b2 = b;
    b2[j] -= 1;
    const NFMap& inner = ycross(b2, a);
    for (const auto& [k, d] : inner) {
      const NFMap& single = ysingle(j, k.a);
      for (const auto& [k2, e] : single) {
        unsigned w = group_->mul(k2.w, k.w);
        if (evzero(k2.b)) {
          nf_add(out, PBWKey{k2.a, w, k.b}, d * e);
        } else {
          const CMat& mi = group_->matrix(group_->inverse(k.w));
          for (unsigned i = 0; i < n; ++i) {
            if (mi.at(i, j).is_zero()) continue;
            ExpVec bb = k.b;
            bb[i] += 1;
            nf_add(out, PBWKey{k2.a, w, bb}, d * e * param_.cyclo(mi.at(i, j)));
          }
        }
      }
    }
  }
  return ycross_cache_.emplace(key, std::move(out)).first->second;
}

void CherednikAlgebra::accumulate_product(NFMap& out, const PBWKey& k1, const PBWKey& k2,
                                          const ParamScalar& c) const {
  const NFMap& nf = ycross(k1.b, k2.a);
  for (const auto& [k, d] : nf) {
    const MPoly& xp = acted_monomial(k1.w, k.a);
    unsigned w = group_->mul(group_->mul(k1.w, k.w), k2.w);
    const MPoly& yq = conj_y_power(k2.w, k.b);
    ParamScalar cd = c * d;
    for (const auto& [ex, cx] : xp.terms()) {
      ExpVec afull = evadd(k1.a, ex);
      for (const auto& [ey, cy] : yq.terms())
        nf_add(out, PBWKey{afull, w, evadd(ey, k2.b)}, cd * param_.cyclo(cx * cy));
    }
  }
}

PBWElement CherednikAlgebra::zero() const {
  return PBWElement(shared_from_this());
}

PBWElement CherednikAlgebra::one() const {
  return scalar(param_.rational(Rat(1)));
}

PBWElement CherednikAlgebra::scalar(const ParamScalar& c) const {
  unsigned n = group_->dim();
  return monomial(ExpVec(n, 0), 0, ExpVec(n, 0), c);
}

PBWElement CherednikAlgebra::xgen(unsigned i, unsigned e) const {
  unsigned n = group_->dim();
  ExpVec a(n, 0);
  a.at(i) = e;
  return monomial(a, 0, ExpVec(n, 0), param_.rational(Rat(1)));
}

PBWElement CherednikAlgebra::ygen(unsigned i, unsigned e) const {
  unsigned n = group_->dim();
  ExpVec b(n, 0);
  b.at(i) = e;
  return monomial(ExpVec(n, 0), 0, b, param_.rational(Rat(1)));
}

PBWElement CherednikAlgebra::ggen(unsigned w) const {
  if (w >= group_->order()) fail(ErrorCode::UnknownGenerator, "group element index out of range");
  unsigned n = group_->dim();
  return monomial(ExpVec(n, 0), w, ExpVec(n, 0), param_.rational(Rat(1)));
}

PBWElement CherednikAlgebra::monomial(const ExpVec& a, unsigned w, const ExpVec& b,
                                      const ParamScalar& c) const {
  unsigned n = group_->dim();
  if (a.size() != n || b.size() != n)
    fail(ErrorCode::IncompatibleElements, "exponent vector length does not match dim");
  if (w >= group_->order()) fail(ErrorCode::UnknownGenerator, "group element index out of range");
  PBWElement r(shared_from_this());
  nf_add(r.t_, PBWKey{a, w, b}, c);
  return r;
}

PBWElement CherednikAlgebra::euler_element() const {
  unsigned n = group_->dim();
  PBWElement r(shared_from_this());
  ParamScalar one = param_.rational(Rat(1));
  for (unsigned i = 0; i < n; ++i) {
    ExpVec e(n, 0);
    e[i] = 1;
    nf_add(r.t_, PBWKey{e, 0, e}, one);
  }
  const ReflectionGroup& g = *group_;
  ExpVec zero(n, 0);
  for (const Hyperplane& h : g.hyperplanes()) {
    Cyclo eta = Cyclo::zeta(g.conductor(), (long)(g.conductor() / h.ell));
    for (unsigned j = 0; j < h.ell; ++j) {
      ParamScalar coeff = param_.rational(Rat(0));
      for (unsigned i = 0; i < h.ell; ++i)
        coeff += (param_.kappa(h.orbit, 0) * param_.rational(Rat(2)) -
                  param_.kappa(h.orbit, (long)i)) *
                 param_.cyclo(eta.pow((long)i * j));
      nf_add(r.t_, PBWKey{zero, h.power_of_gen[j], zero}, coeff);
    }
  }
  return r;
}

void PBWElement::add_term(const PBWKey& k, const ParamScalar& c) { nf_add(t_, k, c); }

PBWElement PBWElement::operator-() const {
  PBWElement r(alg_);
  for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
  return r;
}

static void check_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a || !b || a != b)
    fail(ErrorCode::IncompatibleElements, "elements belong to different algebras");
}

PBWElement PBWElement::operator+(const PBWElement& o) const {
  check_same_algebra(alg_, o.alg_);
  PBWElement r = *this;
  for (const auto& [k, c] : o.t_) nf_add(r.t_, k, c);
  return r;
}

PBWElement PBWElement::operator-(const PBWElement& o) const {
  check_same_algebra(alg_, o.alg_);
  PBWElement r = *this;
  for (const auto& [k, c] : o.t_) nf_add(r.t_, k, -c);
  return r;
}

PBWElement PBWElement::operator*(const PBWElement& o) const {
  check_same_algebra(alg_, o.alg_);
  PBWElement r(alg_);
  for (const auto& [k1, c1] : t_)
    for (const auto& [k2, c2] : o.t_) alg_->accumulate_product(r.t_, k1, k2, c1 * c2);
  return r;
}

PBWElement PBWElement::scaled(const ParamScalar& c) const {
  PBWElement r(alg_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : t_) r.t_.emplace(k, v * c);
  return r;
}

PBWElement PBWElement::pow(unsigned e) const {
  if (!alg_) fail(ErrorCode::IncompatibleElements, "element has no algebra");
  PBWElement r = alg_->one();
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool PBWElement::operator==(const PBWElement& o) const {
  check_same_algebra(alg_, o.alg_);
  return t_ == o.t_;
}

PBWElement PBWElement::contravariant_dual() const {
  PBWElement r(alg_);
  const ReflectionGroup& g = *alg_->group();
  for (const auto& [k, c] : t_) r.t_.emplace(PBWKey{k.b, g.inverse(k.w), k.a}, c.conj());
  return r;
}

std::string PBWElement::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t_) {
    std::vector<std::string> factors;
    for (unsigned i = 0; i < k.a.size(); ++i)
      if (k.a[i])
        factors.push_back("x" + std::to_string(i + 1) +
                          (k.a[i] > 1 ? "^" + std::to_string(k.a[i]) : ""));
    if (k.w != 0) factors.push_back(alg_->group()->element_name(k.w));
    for (unsigned i = 0; i < k.b.size(); ++i)
      if (k.b[i])
        factors.push_back("y" + std::to_string(i + 1) +
                          (k.b[i] > 1 ? "^" + std::to_string(k.b[i]) : ""));
    std::string cs = c.str();
    std::string term;
    if (factors.empty()) {
      term = cs;
    } else {
      std::string mono = factors[0];
      for (size_t i = 1; i < factors.size(); ++i) mono += "*" + factors[i];
      if (cs == "1") {
        term = mono;
      } else {
        bool parens = cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos;
        term = (parens ? "(" + cs + ")" : cs) + "*" + mono;
      }
    }
    os << (first ? "" : " + ") << term;
    first = false;
  }
  return os.str();
}

XTermMap dunkl_apply(const CherednikAlgebra& alg, unsigned j, const XTermMap& p) {
  const ReflectionGroup& g = *alg.group();
  if (j >= g.dim()) fail(ErrorCode::UnknownGenerator, "coordinate index out of range");
  XTermMap out;
  for (const auto& [e, c] : p) {
    if (e[j] == 0) continue;
    ExpVec e2 = e;
    e2[j] -= 1;
    xt_add(out, e2, c * ParamScalar::constant(c.symbols(), Rat((long)e[j])));
  }
  for (unsigned hi = 0; hi < g.hyperplanes().size(); ++hi) {
    const Hyperplane& h = g.hyperplanes()[hi];
    if (h.alpha[j].is_zero()) continue;
    for (unsigned m = 1; m < h.ell; ++m) {
      ParamScalar dm = dunkl_coefficient(alg.parameter(), hi, m);
      if (dm.is_zero()) continue;
      XTermMap diff = xterm_act(alg, h.power_of_gen[m], p);
      for (const auto& [e, c] : p) xt_add(diff, e, -c);
      if (diff.empty()) continue;
      XTermMap quot = xdiv_linear(diff, h.alpha);
      ParamScalar scale = dm * ParamScalar::constant(dm.symbols(), h.alpha[j]);
      for (const auto& [e, c] : quot) xt_add(out, e, c * scale);
    }
  }
  return out;
}

XTermMap xterm_act(const CherednikAlgebra& alg, unsigned w, const XTermMap& p) {
  XTermMap out;
  for (const auto& [e, c] : p) {
    const MPoly& img = alg.acted_monomial(w, e);
    for (const auto& [e2, c2] : img.terms())
      xt_add(out, e2, c * ParamScalar::constant(c.symbols(), c2));
  }
  return out;
}

XTermMap xterm_mul(const XTermMap& p, const XTermMap& q) {
  XTermMap out;
  for (const auto& [e1, c1] : p)
    for (const auto& [e2, c2] : q) xt_add(out, evadd(e1, e2), c1 * c2);
  return out;
}

std::string xterm_str(const CherednikAlgebra& alg, const XTermMap& p) {
  (void)alg;
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p) {
    std::vector<std::string> factors;
    for (unsigned i = 0; i < e.size(); ++i)
      if (e[i])
        factors.push_back("x" + std::to_string(i + 1) +
                          (e[i] > 1 ? "^" + std::to_string(e[i]) : ""));
    std::string cs = c.str();
    std::string term;
    if (factors.empty()) {
      term = cs;
    } else {
      std::string mono = factors[0];
      for (size_t i = 1; i < factors.size(); ++i) mono += "*" + factors[i];
      if (cs == "1") {
        term = mono;
      } else {
        bool parens = cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos;
        term = (parens ? "(" + cs + ")" : cs) + "*" + mono;
      }
    }
    os << (first ? "" : " + ") << term;
    first = false;
  }
  return os.str();
}

bool verify_parameter_dictionary(const CherednikAlgebra& alg, unsigned max_deg,
                                 std::string* detail) {
  unsigned n = alg.dim();
  std::vector<ExpVec> monos;
  ExpVec cur(n, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
    if (pos == n) {
      monos.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  rec(0, max_deg);

  ParamScalar one = alg.parameter().rational(Rat(1));
  ExpVec zero(n, 0);
  for (const ExpVec& a : monos) {
    for (unsigned j = 0; j < n; ++j) {
      const CherednikAlgebra::NFMap& nf = alg.ycross([&] {
        ExpVec ej(n, 0);
        ej[j] = 1;
        return ej;
      }(), a);
      XTermMap engine;
      for (const auto& [k, c] : nf) {
        if (!evzero(k.b)) continue;
        xt_add(engine, k.a, c);
      }
      XTermMap mono;
      mono.emplace(a, one);
      XTermMap op = dunkl_apply(alg, j, mono);
      if (engine != op) {
        if (detail) {
          std::ostringstream os;
          os << "mismatch on y" << j + 1 << " applied to " << xterm_str(alg, mono)
             << ": commutation gives " << xterm_str(alg, engine) << ", operator gives "
             << xterm_str(alg, op);
          *detail = os.str();
        }
        return false;
      }
    }
  }
  return true;
}

}  // namespace cherednik
