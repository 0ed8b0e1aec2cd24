#include "cherednik/verma.hpp"

#include <algorithm>
#include <functional>

namespace cherednik {

namespace {

std::vector<ExpVec> monomials_of_degree(unsigned n, unsigned m) {
  std::vector<ExpVec> out;
  ExpVec cur(n, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
  };
  if (n == 0) {
    if (m == 0) out.push_back(cur);
    return out;
  }
  rec(0, m);
  std::sort(out.begin(), out.end(), LexGreater());
  return out;
}

PMat conj_transpose(const PMat& m) {
  PMat t(m.cols(), m.rows(), m.zero());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j).conj();
  return t;
}

}  // namespace

VermaModule::VermaModule(AlgebraPtr alg, Irrep lowest)
    : alg_(std::move(alg)), lambda_(std::move(lowest)) {
  const Parameter& p = alg_->parameter();
  zero_ = p.rational(Rat(0));
  one_ = p.rational(Rat(1));
  if (lambda_.mats.size() != alg_->group()->order())
    fail(ErrorCode::NotARepresentation, "representation has wrong number of matrices");

  // The group part of the grading element is central, so it acts on the
  // lowest piece by a scalar.
  PMat m(lambda_.dim, lambda_.dim, zero_);
  PBWElement eu = alg_->euler_element();
  for (const auto& [k, c] : eu.terms()) {
    bool group_term = true;
    for (unsigned e : k.a) group_term = group_term && e == 0;
    for (unsigned e : k.b) group_term = group_term && e == 0;
    if (!group_term) continue;
    const CMat& rho = lambda_.mats.at(k.w);
    for (unsigned i = 0; i < lambda_.dim; ++i)
      for (unsigned j = 0; j < lambda_.dim; ++j)
        m.at(i, j) += c * p.cyclo(rho.at(i, j));
  }
  lw_ = m.at(0, 0);
  for (unsigned i = 0; i < lambda_.dim; ++i)
    for (unsigned j = 0; j < lambda_.dim; ++j)
      if (m.at(i, j) != (i == j ? lw_ : zero_))
        fail(ErrorCode::NotARepresentation,
             "grading element is not scalar on the lowest piece; "
             "the representation is not irreducible");
}

const std::vector<std::pair<ExpVec, unsigned>>& VermaModule::basis(unsigned m) const {
  while (basis_.size() <= m) {
    unsigned deg = (unsigned)basis_.size();
    std::vector<std::pair<ExpVec, unsigned>> b;
    for (const ExpVec& e : monomials_of_degree(alg_->dim(), deg))
      for (unsigned k = 0; k < lambda_.dim; ++k) b.emplace_back(e, k);
    std::map<std::pair<ExpVec, unsigned>, unsigned> idx;
    for (unsigned i = 0; i < b.size(); ++i) idx.emplace(b[i], i);
    basis_.push_back(std::move(b));
    index_.push_back(std::move(idx));
  }
  return basis_[m];
}

unsigned VermaModule::index_of(unsigned m, const ExpVec& a, unsigned k) const {
  basis(m);
  auto it = index_[m].find({a, k});
  if (it == index_[m].end()) fail(ErrorCode::InternalError, "basis vector not found");
  return it->second;
}

PMat VermaModule::x_matrix(unsigned j, unsigned m) const {
  const auto& src = basis(m);
  PMat X(dim(m + 1), dim(m), zero_);
  for (unsigned c = 0; c < src.size(); ++c) {
    ExpVec a = src[c].first;
    a[j] += 1;
    X.at(index_of(m + 1, a, src[c].second), c) = one_;
  }
  return X;
}

const PMat& VermaModule::y_matrix(unsigned j, unsigned m) const {
  auto key = std::make_pair(j, m);
  auto it = ymat_.find(key);
  if (it != ymat_.end()) return it->second;
  if (m == 0) fail(ErrorCode::InternalError, "lowering out of degree zero");
  const auto& src = basis(m);
  const Parameter& p = alg_->parameter();
  unsigned n = alg_->dim();
  PMat Y(dim(m - 1), dim(m), zero_);
  for (unsigned c = 0; c < src.size(); ++c) {
    const auto& [b, k] = src[c];
    PBWElement prod = alg_->ygen(j) * alg_->monomial(b, 0, ExpVec(n, 0), one_);
    for (const auto& [pk, cc] : prod.terms()) {
      bool lowest = true;
      for (unsigned e : pk.b) lowest = lowest && e == 0;
      if (!lowest) continue;
      const CMat& rho = lambda_.mats.at(pk.w);
      for (unsigned k2 = 0; k2 < lambda_.dim; ++k2) {
        if (rho.at(k2, k).is_zero()) continue;
        Y.at(index_of(m - 1, pk.a, k2), c) += cc * p.cyclo(rho.at(k2, k));
      }
    }
  }
  return ymat_.emplace(key, std::move(Y)).first->second;
}

PMat VermaModule::w_matrix(unsigned w, unsigned m) const {
  const auto& src = basis(m);
  const Parameter& p = alg_->parameter();
  PMat W(dim(m), dim(m), zero_);
  for (unsigned c = 0; c < src.size(); ++c) {
    const auto& [a, k] = src[c];
    MPoly img = alg_->group()->act_on_polynomial(
        w, MPoly::monomial(alg_->coordinate_symbols(), a, Cyclo(Rat(1))));
    const CMat& rho = lambda_.mats.at(w);
    for (const auto& [e, cx] : img.terms())
      for (unsigned k2 = 0; k2 < lambda_.dim; ++k2) {
        if (rho.at(k2, k).is_zero()) continue;
        W.at(index_of(m, e, k2), c) += p.cyclo(cx * rho.at(k2, k));
      }
  }
  return W;
}

PMat VermaModule::act_matrix(const PBWElement& z, unsigned m) const {
  if (z.algebra() != alg_) fail(ErrorCode::IncompatibleElements, "element of a different algebra");
  long shift = 0;
  bool have_shift = false;
  for (const auto& [k, c] : z.terms()) {
    long d = 0;
    for (unsigned e : k.a) d += e;
    for (unsigned e : k.b) d -= e;
    if (!have_shift) {
      shift = d;
      have_shift = true;
    } else if (d != shift) {
      fail(ErrorCode::IncompatibleElements, "element is not homogeneous for the grading");
    }
  }
  if (!have_shift) shift = 0;
  if (shift + (long)m < 0) return PMat(0, dim(m), zero_);
  unsigned target = (unsigned)(shift + (long)m);

  const auto& src = basis(m);
  const Parameter& p = alg_->parameter();
  unsigned n = alg_->dim();
  PMat A(dim(target), dim(m), zero_);
  for (unsigned c = 0; c < src.size(); ++c) {
    const auto& [a, k] = src[c];
    PBWElement prod = z * alg_->monomial(a, 0, ExpVec(n, 0), one_);
    for (const auto& [pk, cc] : prod.terms()) {
      bool lowest = true;
      for (unsigned e : pk.b) lowest = lowest && e == 0;
      if (!lowest) continue;
      const CMat& rho = lambda_.mats.at(pk.w);
      for (unsigned k2 = 0; k2 < lambda_.dim; ++k2) {
        if (rho.at(k2, k).is_zero()) continue;
        A.at(index_of(target, pk.a, k2), c) += cc * p.cyclo(rho.at(k2, k));
      }
    }
  }
  return A;
}

const PMat& VermaModule::gram(unsigned m) const {
  while (gram_.size() <= m) {
    unsigned deg = (unsigned)gram_.size();
    if (deg == 0) {
      PMat g(lambda_.dim, lambda_.dim, zero_);
      for (unsigned i = 0; i < lambda_.dim; ++i)
        for (unsigned j = 0; j < lambda_.dim; ++j)
          g.at(i, j) = alg_->parameter().cyclo(lambda_.form.at(i, j));
      gram_.push_back(std::move(g));
      continue;
    }
    const auto& src = basis(deg);
    const PMat& prev = gram_[deg - 1];
    PMat g(src.size(), src.size(), zero_);
    for (unsigned r = 0; r < src.size(); ++r) {
      const auto& [a, k] = src[r];
      unsigned i = 0;
      while (a[i] == 0) ++i;
      ExpVec a2 = a;
      a2[i] -= 1;
      unsigned rp = index_of(deg - 1, a2, k);
      const PMat& Y = y_matrix(i, deg);
      for (unsigned c = 0; c < src.size(); ++c) {
        ParamScalar acc = zero_;
        for (unsigned t = 0; t < prev.cols(); ++t) {
          if (Y.at(t, c).is_zero()) continue;
          acc += prev.at(rp, t) * Y.at(t, c);
        }
        g.at(r, c) = acc;
      }
    }
    gram_.push_back(std::move(g));
  }
  return gram_[m];
}

std::vector<std::vector<ParamScalar>> singular_vectors(const VermaModule& M, unsigned m) {
  if (m == 0) fail(ErrorCode::IncompatibleElements, "singular vectors live in positive degree");
  unsigned n = M.algebra()->dim();
  ParamScalar zero = M.algebra()->parameter().rational(Rat(0));
  PMat stacked(n * M.dim(m - 1), M.dim(m), zero);
  for (unsigned j = 0; j < n; ++j) {
    const PMat& Y = M.y_matrix(j, m);
    for (size_t r = 0; r < Y.rows(); ++r)
      for (size_t c = 0; c < Y.cols(); ++c) stacked.at(j * Y.rows() + r, c) = Y.at(r, c);
  }
  return stacked.kernel_basis();
}

unsigned simple_quotient_dim(const VermaModule& M, unsigned m) {
  PMat g = M.gram(m);
  return (unsigned)g.rank();
}

unsigned simple_quotient_trivial_dim(const VermaModule& M, unsigned m) {
  const GroupPtr& g = M.algebra()->group();
  ParamScalar zero = M.algebra()->parameter().rational(Rat(0));
  PMat E(M.dim(m), M.dim(m), zero);
  for (unsigned w = 0; w < g->order(); ++w) {
    PMat W = M.w_matrix(w, m);
    for (size_t r = 0; r < E.rows(); ++r)
      for (size_t c = 0; c < E.cols(); ++c) E.at(r, c) += W.at(r, c);
  }
  ParamScalar inv = M.algebra()->parameter().rational(rat_of(1, (long)g->order()));
  for (size_t r = 0; r < E.rows(); ++r)
    for (size_t c = 0; c < E.cols(); ++c) E.at(r, c) *= inv;
  PMat probe = conj_transpose(E) * M.gram(m) * E;
  return (unsigned)probe.rank();
}

TruncatedVerdict is_regular_truncated(const AlgebraPtr& alg, const std::vector<Irrep>& irreps,
                                      unsigned N) {
  for (const Irrep& lam : irreps) {
    VermaModule M(alg, lam);
    for (unsigned m = 1; m <= N; ++m) {
      if (simple_quotient_dim(M, m) < M.dim(m)) {
        return {false,
                "form of " + lam.name + " degenerates in degree " + std::to_string(m), N};
      }
    }
  }
  return {true, "all forms nondegenerate through degree " + std::to_string(N), N};
}

TruncatedVerdict is_aspherical_truncated(const AlgebraPtr& alg, const std::vector<Irrep>& irreps,
                                         unsigned N) {
  for (const Irrep& lam : irreps) {
    VermaModule M(alg, lam);
    bool all_zero = true;
    for (unsigned m = 0; m <= N && all_zero; ++m)
      all_zero = simple_quotient_trivial_dim(M, m) == 0;
    if (all_zero)
      return {true, "simple quotient of " + lam.name + " has no invariants through degree " +
                        std::to_string(N),
              N};
  }
  return {false, "every simple quotient keeps invariants through degree " + std::to_string(N),
          N};
}

std::vector<ParamScalar> aspherical_candidates(const AlgebraPtr& alg,
                                               const std::vector<Irrep>& irreps, unsigned N) {
  std::vector<std::pair<std::string, ParamScalar>> keyed;
  for (const Irrep& lam : irreps) {
    VermaModule Ml(alg, lam);
    for (const Irrep& mu : irreps) {
      if (lam.name == mu.name) continue;
      VermaModule Mm(alg, mu);
      for (unsigned m = 1; m <= N; ++m) {
        ParamScalar cand = Ml.lowest_weight() - Mm.lowest_weight() +
                           alg->parameter().rational(Rat((long)m));
        std::string key = cand.str();
        bool seen = false;
        for (const auto& [k, v] : keyed) seen = seen || k == key;
        if (!seen) keyed.emplace_back(key, cand);
      }
    }
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ParamScalar> out;
  for (auto& [k, v] : keyed) out.push_back(std::move(v));
  return out;
}

}  // namespace cherednik
