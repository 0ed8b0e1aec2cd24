#include "cherednik/cyclotomic.hpp"

#include <map>
#include <sstream>

namespace cherednik {

namespace {

using Poly = std::vector<Rat>;  // p[k] on x^k, trailing zeros allowed

int pdeg(const Poly& p) {
  for (int i = (int)p.size() - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

// Exact division; remainder must come out zero for the uses below.
Poly pdiv_exact(const Poly& a, const Poly& b) {
  Poly r = a;
  int db = pdeg(b);
  int da = pdeg(r);
  Poly q(da - db + 1 >= 0 ? da - db + 1 : 0);
  while (da >= db) {
    Rat f = r[da] / b[db];
    q[da - db] = f;
    for (int i = 0; i <= db; ++i) r[da - db + i] -= f * b[i];
    da = pdeg(r);
  }
  if (da >= 0) fail(ErrorCode::InternalError, "inexact cyclotomic polynomial division");
  return q;
}

struct Table {
  unsigned n = 1, phi = 1;
  Poly minpoly;
  std::vector<std::vector<Rat>> powers;  // powers[k] = coords of z^k for k in [0, n)
};

const Table& table(unsigned n) {
  static std::map<unsigned, Table> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Table t;
  t.n = n;
  t.minpoly = cyclotomic_poly(n);
  t.phi = (unsigned)(t.minpoly.size() - 1);

  // z^phi in terms of lower powers, then iterate multiplication by z.
  std::vector<Rat> top(t.phi);
  for (unsigned i = 0; i < t.phi; ++i) top[i] = -t.minpoly[i];
  t.powers.resize(n);
  for (unsigned k = 0; k < n && k < t.phi; ++k) {
    t.powers[k].assign(t.phi, Rat(0));
    t.powers[k][k] = 1;
  }
  for (unsigned k = t.phi; k < n; ++k) {
    const std::vector<Rat>& prev = t.powers[k - 1];
    std::vector<Rat> cur(t.phi, Rat(0));
    for (unsigned i = 0; i + 1 < t.phi; ++i) cur[i + 1] = prev[i];
    Rat lead = prev[t.phi - 1];
    if (lead != 0)
      for (unsigned i = 0; i < t.phi; ++i) cur[i] += lead * top[i];
    t.powers[k] = std::move(cur);
  }
  return cache.emplace(n, std::move(t)).first->second;
}

std::vector<Rat> reduce_mod(unsigned n, const Poly& p) {
  const Table& t = table(n);
  std::vector<Rat> out(t.phi, Rat(0));
  for (unsigned k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    const std::vector<Rat>& pw = t.powers[k % n];
    for (unsigned i = 0; i < t.phi; ++i) out[i] += p[k] * pw[i];
  }
  return out;
}

}  // namespace

unsigned euler_phi(unsigned n) { return (unsigned)(cyclotomic_poly(n).size() - 1); }

const std::vector<Rat>& cyclotomic_poly(unsigned n) {
  static std::map<unsigned, Poly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n == 0) fail(ErrorCode::IncompatibleScalars, "conductor must be positive");
  Poly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = pdiv_exact(p, cyclotomic_poly(d));
  p.resize(pdeg(p) + 1);
  return cache.emplace(n, std::move(p)).first->second;
}

Cyclo Cyclo::zeta(unsigned n, long p) {
  if (n == 0) fail(ErrorCode::IncompatibleScalars, "conductor must be positive");
  long k = p % (long)n;
  if (k < 0) k += n;
  Poly mono((size_t)k + 1);
  mono[(size_t)k] = 1;
  return Cyclo(n, reduce_mod(n, mono));
}

bool Cyclo::is_zero() const {
  for (const Rat& r : c_)
    if (r != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyclo::to_rat() const {
  if (!is_rational()) fail(ErrorCode::IncompatibleScalars, "value " + str() + " is not rational");
  return c_[0];
}

Cyclo Cyclo::embedded(unsigned m) const {
  if (m == n_) return *this;
  if (m % n_ != 0)
    fail(ErrorCode::IncompatibleScalars, "cannot embed conductor " + std::to_string(n_) +
                                             " into " + std::to_string(m));
  // z_n = z_m^{m/n}; map basis powers through the target reduction table.
  unsigned long step = m / n_;
  const Table& t = table(m);
  std::vector<Rat> out(t.phi, Rat(0));
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    const std::vector<Rat>& pw = t.powers[(k * step) % m];
    for (unsigned i = 0; i < t.phi; ++i) out[i] += c_[k] * pw[i];
  }
  return Cyclo(m, std::move(out));
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (Rat& x : r.c_) x = -x;
  return r;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  unsigned m = (unsigned)lcm_ul(n_, o.n_);
  Cyclo a = embedded(m), b = o.embedded(m);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
  unsigned m = (unsigned)lcm_ul(n_, o.n_);
  Cyclo a = embedded(m), b = o.embedded(m);
  Poly prod(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Cyclo(m, reduce_mod(m, prod));
}

Cyclo Cyclo::inv() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) {
    std::vector<Rat> cs(c_.size());
    cs[0] = Rat(1) / c_[0];
    return Cyclo(n_, std::move(cs));
  }
  // Extended Euclid in Q[x] against the (irreducible) minimal polynomial:
  // u * this + v * Phi_n = 1, so u is the inverse mod Phi_n.
  Poly r0 = table(n_).minpoly, r1(c_.begin(), c_.end());
  Poly u0{Rat(0)}, u1{Rat(1)};
  while (true) {
    int d1 = pdeg(r1);
    if (d1 < 0) fail(ErrorCode::InternalError, "cyclotomic inverse: unexpected gcd");
    if (d1 == 0) break;
    // r0 = q*r1 + rem
    Poly rem = r0, q(std::max<int>(pdeg(r0) - d1 + 1, 0));
    int dr = pdeg(rem);
    while (dr >= d1) {
      Rat f = rem[dr] / r1[d1];
      q[dr - d1] = f;
      for (int i = 0; i <= d1; ++i) rem[dr - d1 + i] -= f * r1[i];
      dr = pdeg(rem);
    }
    // u_{k+1} = u_{k-1} - q*u_k
    Poly unew = u0;
    unew.resize(std::max(u0.size(), q.size() + u1.size()), Rat(0));
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < u1.size(); ++j) unew[i + j] -= q[i] * u1[j];
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(unew);
  }
  Rat lead = r1[0];
  for (Rat& x : u1) x /= lead;
  return Cyclo(n_, reduce_mod(n_, u1));
}

Cyclo Cyclo::operator/(const Cyclo& o) const { return *this * o.inv(); }

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyclo acc(Rat(1)), base = *this;
  unsigned long k = (unsigned long)e;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

Cyclo Cyclo::subst_power(unsigned long j) const {
  const Table& t = table(n_);
  std::vector<Rat> out(t.phi, Rat(0));
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    const std::vector<Rat>& pw = t.powers[(k * j) % n_];
    for (unsigned i = 0; i < t.phi; ++i) out[i] += c_[k] * pw[i];
  }
  return Cyclo(n_, std::move(out));
}

Cyclo Cyclo::conj() const { return subst_power(n_ == 1 ? 0 : n_ - 1); }

bool Cyclo::operator==(const Cyclo& o) const { return cmp(*this, o) == 0; }

int Cyclo::cmp(const Cyclo& a, const Cyclo& b) {
  unsigned m = (unsigned)lcm_ul(a.n_, b.n_);
  Cyclo ea = a.embedded(m), eb = b.embedded(m);
  for (size_t i = 0; i < ea.c_.size(); ++i) {
    int c = ::cmp(ea.c_[i], eb.c_[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    Rat a = c_[k];
    bool neg = a < 0;
    Rat mag = neg ? Rat(-a) : a;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (k == 0) {
      os << rat_str(mag);
    } else {
      if (mag != 1) os << rat_str(mag) << "*";
      os << "z";
      if (k > 1) os << "^" << k;
    }
  }
  if (first) return "0";
  return os.str();
}

}  // namespace cherednik
