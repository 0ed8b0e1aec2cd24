#include "cherednik/linsolve.hpp"

#include <algorithm>
#include <set>

namespace cherednik {

namespace {

// Divisors of |n| by trial division. Values here come from evaluating small
// products at small sample points, so the naive method is enough; very large
// cofactors are treated as prime, which can only make the candidate root set
// smaller, never wrong.
std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, unsigned>> fac;
  mpz_class d = 2;
  while (d * d <= n && d < 1000000) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) fac.emplace_back(d, e);
    d += (d == 2 ? 1 : 2);
  }
  if (n > 1) fac.emplace_back(n, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : fac) {
    size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Rat horner(const std::vector<Rat>& p, const Rat& x) {
  Rat acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

}  // namespace

std::vector<Rat> rational_roots(const std::vector<Rat>& poly) {
  int deg = -1;
  for (int i = (int)poly.size() - 1; i >= 0; --i)
    if (poly[(size_t)i] != 0) {
      deg = i;
      break;
    }
  if (deg < 0) fail(ErrorCode::ZeroPolynomial, "rational_roots of zero polynomial");
  std::vector<Rat> roots;
  size_t low = 0;
  while ((int)low < deg && poly[low] == 0) ++low;
  if (low > 0) roots.push_back(Rat(0));
  if ((int)low == deg) return roots;

  // Clear denominators to a primitive integer polynomial.
  mpz_class scale = 1;
  for (size_t i = low; i <= (size_t)deg; ++i)
    if (poly[i] != 0) scale = lcm(scale, poly[i].get_den());
  std::vector<mpz_class> ip;
  for (size_t i = low; i <= (size_t)deg; ++i) {
    Rat v = poly[i] * Rat(scale);
    ip.push_back(v.get_num());
  }
  std::vector<mpz_class> ps = positive_divisors(ip.front());
  std::vector<mpz_class> qs = positive_divisors(ip.back());
  std::vector<Rat> tail(poly.begin() + (long)low, poly.end());
  for (const mpz_class& p : ps)
    for (const mpz_class& q : qs)
      for (int sign : {1, -1}) {
        Rat cand(sign * p, q);
        cand.canonicalize();
        if (horner(tail, cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// Specialize every symbol except v at rational values; returns the dense
// univariate coefficient list in v.
std::vector<Rat> specialize(const MPoly& p, unsigned v, const std::vector<Rat>& point) {
  std::vector<MPoly> cs = p.as_univariate(v);
  std::vector<Rat> out;
  std::vector<Cyclo> full;
  for (size_t i = 0; i < p.symbols()->size(); ++i) full.emplace_back(point[i]);
  for (const MPoly& c : cs) {
    Cyclo val = c.eval(full);
    out.push_back(val.to_rat());
  }
  return out;
}

}  // namespace

LinearSplit poly_factor_linear(const MPoly& p, unsigned v) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  SymbolsPtr syms = p.symbols();
  size_t m = syms->size();
  LinearSplit out;
  out.remainder = p;
  if (p.degree_in(v) <= 0) return out;

  // Leading v-coefficient must stay nonzero at the sample point and at each
  // unit offset, so root degrees are preserved under specialization.
  std::vector<MPoly> uni = out.remainder.as_univariate(v);
  MPoly lead = uni.back();
  auto lead_ok = [&](const std::vector<Rat>& pt) {
    std::vector<Cyclo> full;
    for (const Rat& r : pt) full.emplace_back(r);
    if (!lead.eval(full).is_zero()) return true;
    return false;
  };

  // Deterministic grid search for a base point theta with lead(theta) != 0 and
  // lead(theta + e_j) != 0 for all j != v. A nonzero polynomial cannot vanish
  // on a full grid wider than its per-variable degrees, so this terminates.
  unsigned width = 2;
  for (size_t i = 0; i < m; ++i) width += (unsigned)std::max(lead.degree_in((unsigned)i), 0);
  std::vector<Rat> theta(m, Rat(0));
  bool found = false;
  std::vector<unsigned> idx(m, 0);
  while (!found) {
    std::vector<Rat> pt(m);
    for (size_t i = 0; i < m; ++i) pt[i] = Rat((long)idx[i]);
    pt[v] = 0;
    bool ok = lead_ok(pt);
    for (size_t j = 0; ok && j < m; ++j) {
      if (j == v) continue;
      std::vector<Rat> off = pt;
      off[j] += 1;
      ok = lead_ok(off);
    }
    if (ok) {
      theta = pt;
      found = true;
      break;
    }
    // next grid point (positions other than v), bounded odometer
    size_t k = 0;
    while (k < m) {
      if (k == v) {
        ++k;
        continue;
      }
      if (++idx[k] <= width) break;
      idx[k] = 0;
      ++k;
    }
    if (k >= m) fail(ErrorCode::InternalError, "no sample point avoids the leading coefficient");
  }

  // Candidate roots: constant term from roots at theta, slope in symbol j from
  // roots at theta + e_j.
  std::vector<Rat> base_roots = rational_roots(specialize(out.remainder, v, theta));
  std::vector<std::vector<Rat>> offset_roots(m);
  for (size_t j = 0; j < m; ++j) {
    if (j == v) continue;
    std::vector<Rat> off = theta;
    off[j] += 1;
    offset_roots[j] = rational_roots(specialize(out.remainder, v, off));
  }

  std::set<std::string> seen;
  std::vector<MPoly> candidates;
  std::vector<size_t> free_syms;
  for (size_t j = 0; j < m; ++j)
    if (j != v) free_syms.push_back(j);

  // Enumerate slope combinations depth-first.
  std::vector<Rat> slopes(m, Rat(0));
  std::function<void(const Rat&, size_t)> emit = [&](const Rat& rho0, size_t fi) {
    if (fi == free_syms.size()) {
      Rat c0 = rho0;
      for (size_t j : free_syms) c0 -= slopes[j] * theta[j];
      MPoly r = MPoly::constant(syms, c0);
      for (size_t j : free_syms)
        if (slopes[j] != 0)
          r += MPoly::var(syms, (unsigned)j).scaled(Cyclo(slopes[j]));
      std::string key = r.str();
      if (seen.insert(key).second) candidates.push_back(r);
      return;
    }
    size_t j = free_syms[fi];
    for (const Rat& rho : offset_roots[j]) {
      slopes[j] = rho - rho0;
      emit(rho0, fi + 1);
    }
  };
  for (const Rat& rho0 : base_roots) emit(rho0, 0);

  // Verify candidates by substitution; extract with multiplicity.
  std::sort(candidates.begin(), candidates.end(),
            [](const MPoly& a, const MPoly& b) { return a.str() < b.str(); });
  for (const MPoly& r : candidates) {
    unsigned mult = 0;
    while (out.remainder.degree_in(v) >= 1) {
      if (!out.remainder.subst(v, r).is_zero()) break;
      MPoly factor = MPoly::var(syms, v) - r;
      out.remainder = out.remainder.div_exact(factor);
      ++mult;
    }
    if (mult) out.factors.push_back({r, mult});
  }
  return out;
}

}  // namespace cherednik
