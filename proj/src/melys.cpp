#include "cherednik/melys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "cherednik/errors.hpp"

namespace cherednik {

namespace {

const Cyclo kZero{Rat(0)};
const Cyclo kOne{Rat(1)};

MPoly linear_form(const SymbolsPtr& syms, const std::vector<Cyclo>& covec) {
  MPoly p(syms);
  for (unsigned j = 0; j < covec.size(); ++j)
    if (!covec[j].is_zero()) p += MPoly::var(syms, j).scaled(covec[j]);
  return p;
}

// Generators of the ideal of the fixed space of m, as rref'd covectors.
std::vector<std::vector<Cyclo>> fixed_ideal_rows(const CMat& m) {
  CMat d = m;
  for (size_t i = 0; i < d.rows(); ++i) d.at(i, i) -= kOne;
  size_t rank = d.rref().size();
  std::vector<std::vector<Cyclo>> rows;
  for (size_t i = 0; i < rank; ++i) {
    std::vector<Cyclo> row(d.cols(), kZero);
    for (size_t j = 0; j < d.cols(); ++j) row[j] = d.at(i, j);
    rows.push_back(std::move(row));
  }
  return rows;
}

bool is_identity(const CMat& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!(m.at(i, j) == (i == j ? kOne : kZero))) return false;
  return true;
}

void check_rep(const LinearRep& rep) {
  if (!rep.group) fail(ErrorCode::IncompatibleElements, "linear action without a group");
  if (rep.mats.size() != rep.group->order())
    fail(ErrorCode::NotARepresentation, "one matrix per group element required");
  if (!rep.coords || rep.coords->size() != rep.dim)
    fail(ErrorCode::IncompatibleElements, "coordinate symbols must match the dimension");
  for (const CMat& m : rep.mats)
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      fail(ErrorCode::NotARepresentation, "matrix shape does not match the dimension");
  const ReflectionGroup& g = *rep.group;
  for (unsigned a = 0; a < g.order(); ++a)
    for (unsigned b = 0; b < g.order(); ++b)
      if (!(rep.mats[g.mul(a, b)] == rep.mats[a] * rep.mats[b]))
        fail(ErrorCode::NotARepresentation, "matrices do not respect the multiplication table");
}

unsigned vanishing_order(MPoly g, const MPoly& line) {
  unsigned m = 0;
  MPoly q;
  while (!g.is_zero() && g.try_divide(line, q)) {
    g = q;
    ++m;
  }
  return m;
}

bool homogeneous_of_degree(const MPoly& g, unsigned r) {
  for (const auto& [e, coeff] : g.terms()) {
    (void)coeff;
    unsigned s = 0;
    for (unsigned x : e) s += x;
    if (s != r) return false;
  }
  return true;
}

struct PowerForm {
  unsigned r = 0;
  MPoly root;  // linear, first nonzero coefficient 1
  Cyclo unit;
};

// Writes g as unit * root^r with root linear, when possible. Any nonzero
// (r-1)-fold partial derivative of such a g is proportional to root, so a
// candidate root is read off a derivative and then verified exactly.
std::optional<PowerForm> power_form(const MPoly& g) {
  int deg = g.total_degree();
  if (deg < 2) return std::nullopt;
  unsigned r = (unsigned)deg;
  if (!homogeneous_of_degree(g, r)) return std::nullopt;
  SymbolsPtr syms = g.symbols();
  for (unsigned i = 0; i < syms->size(); ++i) {
    if (!g.uses_var(i)) continue;
    MPoly cand = g;
    for (unsigned k = 1; k < r; ++k) cand = cand.derivative(i);
    if (cand.is_zero()) continue;
    MPoly root = cand.scaled(cand.leading_coeff().inv());
    Cyclo unit = g.leading_coeff() / root.pow(r).leading_coeff();
    if (g == root.pow(r).scaled(unit)) return PowerForm{r, root, unit};
  }
  return std::nullopt;
}

// Basis of the covectors fixed by every element of the action.
std::vector<std::vector<Cyclo>> invariant_covectors(const LinearRep& rep) {
  size_t n = rep.dim;
  Matrix<Cyclo> stack(rep.mats.size() * n, n, kZero);
  for (size_t g = 0; g < rep.mats.size(); ++g)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        stack.at(g * n + i, j) = rep.mats[g].at(j, i) - (i == j ? kOne : kZero);
  return stack.kernel_basis();
}

void check_alignment(const LinearRep& target, const SParameter& c) {
  std::vector<ReflectionPair> expect = reflection_pairs(target);
  bool ok = expect.size() == c.pairs.size() && c.values.size() == c.pairs.size() && c.syms;
  for (size_t i = 0; ok && i < expect.size(); ++i)
    ok = expect[i].elem == c.pairs[i].elem && expect[i].normal == c.pairs[i].normal;
  if (!ok)
    fail(ErrorCode::IncompatibleElements,
         "parameter is not aligned with the reflection pairs of the target action");
}

MPoly pull_covector(const EquivariantMap& phi, const std::vector<Cyclo>& normal) {
  MPoly g(phi.source().coords);
  for (unsigned j = 0; j < phi.target().dim; ++j)
    if (!normal[j].is_zero()) g += phi.components()[j].scaled(normal[j]);
  return g;
}

}  // namespace

LinearRep defining_rep(const GroupPtr& g) {
  LinearRep rep;
  rep.group = g;
  rep.dim = g->dim();
  std::vector<std::string> names;
  for (unsigned i = 0; i < rep.dim; ++i) names.push_back("x" + std::to_string(i + 1));
  rep.coords = SymbolSet::make(names);
  for (unsigned e = 0; e < g->order(); ++e) rep.mats.push_back(g->matrix(e));
  return rep;
}

LinearRep trivial_rep(const GroupPtr& g, unsigned n, const std::string& prefix) {
  LinearRep rep;
  rep.group = g;
  rep.dim = n;
  std::vector<std::string> names;
  for (unsigned i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + 1));
  rep.coords = SymbolSet::make(names);
  CMat id = CMat::identity(n, kZero);
  rep.mats.assign(g->order(), id);
  return rep;
}

LinearRep direct_sum(const LinearRep& a, const LinearRep& b) {
  if (a.group != b.group)
    fail(ErrorCode::IncompatibleElements, "direct sum needs actions of one group");
  LinearRep rep;
  rep.group = a.group;
  rep.dim = a.dim + b.dim;
  std::vector<std::string> names = a.coords->names();
  for (const std::string& nm : b.coords->names()) names.push_back(nm);
  rep.coords = SymbolSet::make(names);
  for (unsigned e = 0; e < a.group->order(); ++e) {
    CMat m(rep.dim, rep.dim, kZero);
    for (unsigned i = 0; i < a.dim; ++i)
      for (unsigned j = 0; j < a.dim; ++j) m.at(i, j) = a.mats[e].at(i, j);
    for (unsigned i = 0; i < b.dim; ++i)
      for (unsigned j = 0; j < b.dim; ++j) m.at(a.dim + i, a.dim + j) = b.mats[e].at(i, j);
    rep.mats.push_back(std::move(m));
  }
  return rep;
}

MPoly rep_act(const LinearRep& rep, unsigned g, const MPoly& p) {
  const CMat& m = rep.mats.at(rep.group->inverse(g));
  std::vector<MPoly> images;
  for (unsigned i = 0; i < rep.dim; ++i) {
    MPoly img(rep.coords);
    for (unsigned j = 0; j < rep.dim; ++j)
      if (!m.at(i, j).is_zero()) img += MPoly::var(rep.coords, j).scaled(m.at(i, j));
    images.push_back(std::move(img));
  }
  return p.subst_all(rep.coords, images);
}

std::vector<ReflectionPair> reflection_pairs(const LinearRep& rep) {
  check_rep(rep);
  std::vector<ReflectionPair> out;
  for (unsigned g = 0; g < rep.mats.size(); ++g) {
    std::vector<std::vector<Cyclo>> rows = fixed_ideal_rows(rep.mats[g]);
    if (rows.size() == 1) out.push_back(ReflectionPair{g, rows[0]});
  }
  return out;
}

SParameter defining_sparameter(const Parameter& p) {
  LinearRep rep = defining_rep(p.group());
  std::vector<ParamScalar> c = c_of_kappa(p);
  SParameter out;
  out.syms = p.symbols();
  out.pairs = reflection_pairs(rep);
  for (const ReflectionPair& pr : out.pairs)
    out.values.push_back(c.at(p.group()->reflection_of(pr.elem)));
  return out;
}

EquivariantMap::EquivariantMap(LinearRep source, LinearRep target, std::vector<MPoly> components)
    : src_(std::move(source)), tgt_(std::move(target)), comp_(std::move(components)) {
  check_rep(src_);
  check_rep(tgt_);
  if (src_.group != tgt_.group)
    fail(ErrorCode::IncompatibleElements, "source and target must carry the same group");
  if (comp_.size() != tgt_.dim)
    fail(ErrorCode::IncompatibleElements, "one component per target coordinate required");
  for (const MPoly& f : comp_)
    if (!f.symbols() || !(f.symbols() == src_.coords || f.symbols()->same_as(*src_.coords)))
      fail(ErrorCode::IncompatibleElements, "components must live in the source coordinates");
  for (unsigned g = 0; g < src_.group->order(); ++g) {
    const CMat& minv = tgt_.mats[src_.group->inverse(g)];
    for (unsigned t = 0; t < tgt_.dim; ++t) {
      MPoly lhs(src_.coords);
      for (unsigned j = 0; j < tgt_.dim; ++j)
        if (!minv.at(t, j).is_zero()) lhs += comp_[j].scaled(minv.at(t, j));
      if (!(lhs == rep_act(src_, g, comp_[t])))
        fail(ErrorCode::NotInvariant,
             "map is not equivariant at coordinate " + tgt_.coords->name(t) + " under " +
                 src_.group->element_name(g));
    }
  }
}

bool EquivariantMap::is_zero() const {
  for (const MPoly& f : comp_)
    if (!f.is_zero()) return false;
  return true;
}

std::string EquivariantMap::str() const {
  std::string s = "(";
  for (size_t i = 0; i < comp_.size(); ++i) {
    if (i) s += ", ";
    s += comp_[i].str();
  }
  return s + ")";
}

EquivariantMap identity_map(const LinearRep& rep) {
  std::vector<MPoly> comps;
  for (unsigned i = 0; i < rep.dim; ++i) comps.push_back(MPoly::var(rep.coords, i));
  return EquivariantMap(rep, rep, std::move(comps));
}

EquivariantMap compose(const EquivariantMap& outer, const EquivariantMap& inner) {
  if (outer.source().group != inner.target().group || outer.source().dim != inner.target().dim ||
      !(outer.source().mats == inner.target().mats))
    fail(ErrorCode::IncompatibleElements, "composition needs matching middle actions");
  std::vector<MPoly> comps;
  for (const MPoly& f : outer.components())
    comps.push_back(f.subst_all(inner.source().coords, inner.components()));
  return EquivariantMap(inner.source(), outer.target(), std::move(comps));
}

MelysReport is_melys(const EquivariantMap& phi, const SParameter& c) {
  check_alignment(phi.target(), c);
  if (phi.source().dim > 3)
    fail(ErrorCode::UnsupportedDimension, "melys analysis supports source dimension at most 3");
  const LinearRep& src = phi.source();
  MelysReport rep;
  rep.ok = true;
  for (size_t i = 0; i < c.pairs.size(); ++i) {
    if (c.values[i].is_zero()) continue;
    const ReflectionPair& pr = c.pairs[i];
    MPoly g = pull_covector(phi, pr.normal);
    std::vector<std::vector<Cyclo>> rows = fixed_ideal_rows(src.mats[pr.elem]);
    std::string why;
    if (g.is_zero()) {
      if (!rows.empty())
        why = "the source maps into the hyperplane but " + src.group->element_name(pr.elem) +
              " moves the source";
    } else if (!g.is_constant()) {
      // V(g) lies in the hyperplane of a linear form L exactly when g is a
      // scalar times a power of L; apply this to every ideal generator.
      for (const auto& row : rows) {
        MPoly line = linear_form(src.coords, row);
        MPoly q = g, quot;
        while (!q.is_zero() && q.try_divide(line, quot)) q = quot;
        if (!q.is_constant()) {
          why = "the preimage of V(" + linear_form(phi.target().coords, pr.normal).str() +
                ") is not contained in V(" + line.str() + ")";
          break;
        }
      }
    }
    if (!why.empty()) {
      rep.ok = false;
      rep.witness = i;
      rep.detail = "(" + src.group->element_name(pr.elem) + ", V(" +
                   linear_form(phi.target().coords, pr.normal).str() + ")): " + why;
      return rep;
    }
  }
  return rep;
}

MelysReport is_strongly_melys(const EquivariantMap& phi, const SParameter& c) {
  MelysReport rep = is_melys(phi, c);
  if (!rep.ok) return rep;
  const LinearRep& src = phi.source();
  for (size_t i = 0; i < c.pairs.size(); ++i) {
    if (c.values[i].is_zero()) continue;
    const ReflectionPair& pr = c.pairs[i];
    MPoly g = pull_covector(phi, pr.normal);
    bool empty_preimage = !g.is_zero() && g.is_constant();
    if (empty_preimage || !is_identity(src.mats[pr.elem])) continue;
    rep.ok = false;
    rep.witness = i;
    rep.detail = "(" + src.group->element_name(pr.elem) + ", V(" +
                 linear_form(phi.target().coords, pr.normal).str() + ")): " +
                 src.group->element_name(pr.elem) +
                 " fixes the source pointwise while the preimage of the hyperplane is non-empty";
    return rep;
  }
  return rep;
}

SParameter pullback_parameter(const EquivariantMap& phi, const SParameter& c) {
  MelysReport chk = is_melys(phi, c);
  if (!chk.ok) fail(ErrorCode::NotMelys, "pullback needs a melys map: " + chk.detail);
  SParameter out;
  out.syms = c.syms;
  out.pairs = reflection_pairs(phi.source());
  ParamScalar zero = ParamScalar::constant(c.syms, Rat(0));
  for (const ReflectionPair& pr : out.pairs) {
    ParamScalar val = zero;
    for (size_t i = 0; i < c.pairs.size(); ++i) {
      if (c.pairs[i].elem != pr.elem) continue;
      // A reflection fixes a single hyperplane on the target, so the first
      // (only) match decides. A zero pullback of the cutting form means the
      // preimage is the whole source, of which Z is not a component.
      MPoly g = pull_covector(phi, c.pairs[i].normal);
      if (!g.is_zero()) {
        unsigned m = vanishing_order(g, linear_form(phi.source().coords, pr.normal));
        if (m > 0) val = c.values[i] * ParamScalar::constant(c.syms, Rat((long)m));
      }
      break;
    }
    out.values.push_back(val);
  }
  return out;
}

MelysClassification classify_irreducible_melys(const EquivariantMap& phi, const SParameter& c) {
  check_alignment(phi.target(), c);
  const LinearRep& tgt = phi.target();
  const GroupPtr& G = tgt.group;
  for (unsigned g = 0; g < G->order(); ++g)
    if (tgt.mats[g] != G->matrix(g))
      fail(ErrorCode::HypothesesNotMet, "target must be the defining action of the group");
  std::vector<unsigned> seed;
  for (size_t i = 0; i < c.pairs.size(); ++i)
    if (!c.values[i].is_zero()) seed.push_back(c.pairs[i].elem);
  if (G->subgroup_closure(seed).size() != G->order())
    fail(ErrorCode::HypothesesNotMet, "pairs with non-zero parameter do not generate the group");
  Cyclo norm(Rat(0));
  for (unsigned g = 0; g < G->order(); ++g) {
    Cyclo tr(Rat(0));
    for (unsigned i = 0; i < tgt.dim; ++i) tr += tgt.mats[g].at(i, i);
    norm += tr * tr.conj();
  }
  if (norm != Cyclo(Rat((long)G->order())))
    fail(ErrorCode::HypothesesNotMet, "target action is not irreducible");
  MelysReport chk = is_melys(phi, c);
  if (!chk.ok) fail(ErrorCode::HypothesesNotMet, "map is not melys: " + chk.detail);

  MelysClassification out;
  if (phi.is_zero()) return out;

  int maxdeg = 0;
  for (const MPoly& f : phi.components()) maxdeg = std::max(maxdeg, f.total_degree());
  if (maxdeg == 1) {
    CMat m(tgt.dim, phi.source().dim, kZero);
    for (unsigned t = 0; t < tgt.dim; ++t) {
      if (!phi.components()[t].is_zero() && !homogeneous_of_degree(phi.components()[t], 1))
        fail(ErrorCode::ClassificationFailure, "components are not homogeneous of one degree");
      for (const auto& [e, coeff] : phi.components()[t].terms())
        for (unsigned j = 0; j < e.size(); ++j)
          if (e[j] == 1) m.at(t, j) = coeff;
    }
    if (m.rank() != tgt.dim)
      fail(ErrorCode::ClassificationFailure,
           "linear components do not restrict to an isomorphism onto the target");
    out.branch = MelysBranch::Projection;
    out.r = 1;
    out.matrix = m;
    return out;
  }

  if (tgt.dim != 1)
    fail(ErrorCode::ClassificationFailure,
         "non-linear map into a target of dimension greater than one");
  std::optional<PowerForm> pf = power_form(phi.components()[0]);
  if (!pf)
    fail(ErrorCode::ClassificationFailure,
         "component is not a scalar multiple of a power of a linear form");
  unsigned ell = (unsigned)G->order();
  if (std::gcd(pf->r, ell) != 1)
    fail(ErrorCode::ClassificationFailure,
         "power exponent " + std::to_string(pf->r) + " shares a factor with the group order " +
             std::to_string(ell));
  out.branch = MelysBranch::PowerMap;
  out.r = pf->r;
  out.root = pf->root;
  out.unit = pf->unit;
  return out;
}

MelysFactorization factor_linear_melys(const EquivariantMap& phi, const SParameter& c) {
  check_alignment(phi.target(), c);
  {
    MelysReport chk = is_melys(phi, c);
    if (!chk.ok) fail(ErrorCode::NotMelys, "factorization needs a melys map: " + chk.detail);
  }
  GroupPtr G = phi.target().group;
  for (unsigned g = 0; g < G->order(); ++g)
    if (phi.target().mats[g] != G->matrix(g))
      fail(ErrorCode::HypothesesNotMet, "target must be the defining action of the group");

  // Restrict to the subgroup generated by the pairs carrying the parameter.
  std::vector<unsigned> seed;
  for (size_t i = 0; i < c.pairs.size(); ++i)
    if (!c.values[i].is_zero()) seed.push_back(c.pairs[i].elem);
  std::vector<unsigned> closure = G->subgroup_closure(seed);

  LinearRep src = phi.source();
  LinearRep tgt = phi.target();
  std::vector<MPoly> comps = phi.components();
  SParameter cc = c;
  if (closure.size() != G->order()) {
    std::vector<CMat> gens;
    for (unsigned e : seed) gens.push_back(G->matrix(e));
    GroupPtr G2 = ReflectionGroup::from_matrices(G->dim(), G->conductor(), gens);
    LinearRep src2{G2, src.dim, {}, src.coords};
    for (unsigned e = 0; e < G2->order(); ++e)
      src2.mats.push_back(src.mats[G->element_index(G2->matrix(e))]);
    LinearRep tgt2 = defining_rep(G2);
    SParameter c2;
    c2.syms = c.syms;
    c2.pairs = reflection_pairs(tgt2);
    for (const ReflectionPair& pr : c2.pairs) {
      unsigned old = G->element_index(G2->matrix(pr.elem));
      ParamScalar v = ParamScalar::constant(c.syms, Rat(0));
      for (size_t i = 0; i < c.pairs.size(); ++i)
        if (c.pairs[i].elem == old) {
          v = c.values[i];
          break;
        }
      c2.values.push_back(v);
    }
    G = G2;
    src = std::move(src2);
    tgt = std::move(tgt2);
    cc = std::move(c2);
  }

  for (unsigned g = 0; g < G->order(); ++g)
    for (unsigned i = 0; i < tgt.dim; ++i)
      for (unsigned j = 0; j < tgt.dim; ++j)
        if (i != j && !tgt.mats[g].at(i, j).is_zero())
          fail(ErrorCode::UnsupportedDimension,
               "factorization supports coordinatewise-diagonal target actions only");

  unsigned n = tgt.dim;
  std::vector<unsigned> ell(n, 1);
  for (unsigned t = 0; t < n; ++t) {
    std::set<std::string> seen;
    for (unsigned g = 0; g < G->order(); ++g) seen.insert(tgt.mats[g].at(t, t).str());
    ell[t] = (unsigned)seen.size();
  }

  std::vector<unsigned> exps(n, 1);
  std::vector<Cyclo> units(n, kOne);
  std::vector<std::vector<Cyclo>> mid_src_diag(G->order());
  for (unsigned g = 0; g < G->order(); ++g) {
    mid_src_diag[g].resize(n, kOne);
    for (unsigned t = 0; t < n; ++t) mid_src_diag[g][t] = tgt.mats[g].at(t, t);
  }

  std::vector<MPoly> ecomp;
  for (unsigned t = 0; t < n; ++t) {
    const MPoly& g_t = comps[t];
    if (ell[t] == 1 || g_t.is_zero()) {
      ecomp.push_back(g_t);
      continue;
    }
    if (g_t.total_degree() == 1) {
      if (!homogeneous_of_degree(g_t, 1))
        fail(ErrorCode::ClassificationFailure,
             "component " + g_t.str() + " is not homogeneous of one degree");
      ecomp.push_back(g_t);
      continue;
    }
    std::optional<PowerForm> pf = power_form(g_t);
    if (!pf)
      fail(ErrorCode::ClassificationFailure,
           "component " + g_t.str() + " is not a scalar multiple of a power of a linear form");
    if (std::gcd(pf->r, ell[t]) != 1)
      fail(ErrorCode::ClassificationFailure,
           "power exponent " + std::to_string(pf->r) + " shares a factor with the cyclic order " +
               std::to_string(ell[t]));
    exps[t] = pf->r;
    units[t] = pf->unit;
    // The twisted middle coordinate carries the character of the root, so
    // that both the embedding and the power map stay equivariant.
    for (unsigned g = 0; g < G->order(); ++g) {
      MPoly moved = rep_act(src, g, pf->root);
      Cyclo lam = moved.leading_coeff() / pf->root.leading_coeff();
      if (!(moved == pf->root.scaled(lam)))
        fail(ErrorCode::ClassificationFailure,
             "root of the power component is not an eigenvector of the source action");
      mid_src_diag[g][t] = lam.inv();
    }
    ecomp.push_back(pf->root);
  }

  std::vector<std::vector<Cyclo>> inv = invariant_covectors(src);
  unsigned q = (unsigned)inv.size();
  unsigned m = n + q;

  {
    // Closed-embedding certificate: the linear components separate the source.
    std::vector<std::vector<Cyclo>> rows;
    for (unsigned t = 0; t < n; ++t) {
      if (ell[t] == 1 || comps[t].is_zero()) continue;
      std::vector<Cyclo> row(src.dim, kZero);
      for (const auto& [e, coeff] : ecomp[t].terms())
        for (unsigned j = 0; j < e.size(); ++j)
          if (e[j] == 1) row[j] = coeff;
      rows.push_back(std::move(row));
    }
    for (const auto& r : inv) rows.push_back(r);
    Matrix<Cyclo> a(rows.size(), src.dim, kZero);
    for (size_t i = 0; i < rows.size(); ++i)
      for (unsigned j = 0; j < src.dim; ++j) a.at(i, j) = rows[i][j];
    if (a.rank() != src.dim)
      fail(ErrorCode::ClassificationFailure,
           "embedding is not closed: linear components do not separate the source");
  }

  std::vector<std::string> mid_names;
  for (unsigned t = 0; t < m; ++t) mid_names.push_back("u" + std::to_string(t + 1));
  SymbolsPtr mid_syms = SymbolSet::make(mid_names);
  LinearRep mid_src{G, m, {}, mid_syms};
  LinearRep mid_dst{G, m, {}, mid_syms};
  for (unsigned g = 0; g < G->order(); ++g) {
    CMat a(m, m, kZero), b(m, m, kZero);
    for (unsigned t = 0; t < n; ++t) {
      a.at(t, t) = mid_src_diag[g][t];
      b.at(t, t) = tgt.mats[g].at(t, t);
    }
    for (unsigned j = 0; j < q; ++j) {
      a.at(n + j, n + j) = kOne;
      b.at(n + j, n + j) = kOne;
    }
    mid_src.mats.push_back(std::move(a));
    mid_dst.mats.push_back(std::move(b));
  }

  for (const auto& row : inv) ecomp.push_back(linear_form(src.coords, row));

  std::vector<MPoly> pcomp;
  for (unsigned t = 0; t < m; ++t) {
    if (t < n && exps[t] > 1)
      pcomp.push_back(MPoly::var(mid_syms, t, exps[t]).scaled(units[t]));
    else
      pcomp.push_back(MPoly::var(mid_syms, t));
  }
  std::vector<MPoly> prcomp;
  for (unsigned t = 0; t < n; ++t) prcomp.push_back(MPoly::var(mid_syms, t));

  EquivariantMap embedding(src, mid_src, std::move(ecomp));
  EquivariantMap power(mid_src, mid_dst, std::move(pcomp));
  EquivariantMap projection(mid_dst, tgt, std::move(prcomp));
  EquivariantMap composite = compose(projection, compose(power, embedding));
  for (unsigned t = 0; t < n; ++t)
    if (!(composite.components()[t] == comps[t]))
      fail(ErrorCode::ClassificationFailure, "factorization does not compose to the input map");
  return MelysFactorization{G,          std::move(embedding),  std::move(power),
                            std::move(projection), exps, std::move(composite)};
}

std::vector<Stratum> stabilizer_strata(const GroupPtr& gp) {
  const ReflectionGroup& G = *gp;
  if (G.dim() > 3 && !G.is_abelian())
    fail(ErrorCode::UnsupportedDimension,
         "strata enumeration needs dimension at most 3 or an abelian group");
  if (G.hyperplanes().size() > 16)
    fail(ErrorCode::UnsupportedDimension, "too many hyperplanes for flat enumeration");
  unsigned n = G.dim();
  std::vector<std::string> names;
  for (unsigned i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  SymbolsPtr syms = SymbolSet::make(names);

  struct Flat {
    CMat normals;  // rref'd covector stack cutting the flat
    unsigned codim = 0;
  };
  auto reduce = [&](const std::vector<std::vector<Cyclo>>& rows) {
    Matrix<Cyclo> a(rows.size(), n, kZero);
    for (size_t i = 0; i < rows.size(); ++i)
      for (unsigned j = 0; j < n; ++j) a.at(i, j) = rows[i][j];
    size_t rank = a.rref().size();
    CMat out((unsigned)rank, n, kZero);
    for (size_t i = 0; i < rank; ++i)
      for (unsigned j = 0; j < n; ++j) out.at(i, j) = a.at(i, j);
    return out;
  };
  auto rows_of = [&](const CMat& a) {
    std::vector<std::vector<Cyclo>> rows(a.rows(), std::vector<Cyclo>(n, kZero));
    for (size_t i = 0; i < a.rows(); ++i)
      for (unsigned j = 0; j < n; ++j) rows[i][j] = a.at(i, j);
    return rows;
  };

  // Intersection lattice: close the set of flats under cutting by hyperplanes.
  std::map<std::string, Flat> flats;
  std::vector<std::string> work;
  {
    CMat whole = reduce({});
    std::string k = matrix_key(whole);
    flats.emplace(k, Flat{whole, 0});
    work.push_back(k);
  }
  while (!work.empty()) {
    std::string key = work.back();
    work.pop_back();
    std::vector<std::vector<Cyclo>> base = rows_of(flats.at(key).normals);
    for (unsigned h = 0; h < G.hyperplanes().size(); ++h) {
      std::vector<std::vector<Cyclo>> rows = base;
      rows.push_back(G.hyperplanes()[h].alpha);
      CMat cut = reduce(rows);
      if (cut.rows() == flats.at(key).normals.rows()) continue;
      std::string k = matrix_key(cut);
      if (flats.count(k)) continue;
      flats.emplace(k, Flat{cut, (unsigned)cut.rows()});
      work.push_back(k);
    }
  }

  // Group the flats into orbits of the group action.
  std::map<std::string, std::string> orbit_rep;
  std::map<std::string, unsigned> orbit_count;
  for (const auto& [key, flat] : flats) {
    if (orbit_rep.count(key)) continue;
    std::vector<std::string> members{key};
    orbit_rep[key] = key;
    for (size_t i = 0; i < members.size(); ++i) {
      std::vector<std::vector<Cyclo>> rows = rows_of(flats.at(members[i]).normals);
      for (unsigned g = 0; g < G.order(); ++g) {
        std::vector<std::vector<Cyclo>> moved;
        for (const auto& row : rows) moved.push_back(G.act_covec(g, row));
        std::string k = matrix_key(reduce(moved));
        if (!orbit_rep.count(k)) {
          orbit_rep[k] = key;
          members.push_back(k);
        }
      }
    }
    orbit_count[key] = (unsigned)members.size();
  }

  std::vector<Stratum> out;
  for (const auto& [key, flat] : flats) {
    if (orbit_rep.at(key) != key) continue;
    Stratum s;
    s.dimension = n - flat.codim;
    s.orbit_size = orbit_count.at(key);
    for (const auto& row : rows_of(flat.normals)) s.equations.push_back(linear_form(syms, row));
    for (unsigned h = 0; h < G.hyperplanes().size(); ++h) {
      std::vector<std::vector<Cyclo>> rows = rows_of(flat.normals);
      rows.push_back(G.hyperplanes()[h].alpha);
      if (reduce(rows).rows() > flat.codim) s.inequations.push_back(G.alpha_poly(h, syms));
    }
    std::vector<std::vector<Cyclo>> basis = flat.normals.kernel_basis();
    for (unsigned g = 0; g < G.order(); ++g) {
      bool fixes = true;
      for (const auto& b : basis)
        if (!(G.act_vec(g, b) == b)) {
          fixes = false;
          break;
        }
      if (fixes) s.parabolic.push_back(g);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Stratum& a, const Stratum& b) {
    if (a.dimension != b.dimension) return a.dimension > b.dimension;
    std::string ka, kb;
    for (const MPoly& e : a.equations) ka += e.str() + ";";
    for (const MPoly& e : b.equations) kb += e.str() + ";";
    return ka < kb;
  });
  return out;
}

}  // namespace cherednik
