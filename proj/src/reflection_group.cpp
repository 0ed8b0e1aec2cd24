#include "cherednik/reflection_group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cherednik {

namespace {

CMat embed_matrix(const CMat& m, unsigned conductor) {
  CMat out = m;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).embedded(conductor);
  return out;
}

std::vector<Cyclo> normalize_line(std::vector<Cyclo> v) {
  for (const Cyclo& c : v)
    if (!c.is_zero()) {
      Cyclo inv = c.inv();
      for (Cyclo& x : v) x *= inv;
      return v;
    }
  fail(ErrorCode::InternalError, "normalizing the zero line");
}

std::string covec_key(const std::vector<Cyclo>& v, unsigned conductor) {
  std::ostringstream os;
  for (const Cyclo& c : v) os << c.embedded(conductor).str() << ";";
  return os.str();
}

}  // namespace

std::string matrix_key(const CMat& m) {
  std::ostringstream os;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) os << m.at(i, j).str() << ";";
  return os.str();
}

GroupPtr ReflectionGroup::cyclic_product(const std::vector<unsigned>& orders) {
  if (orders.empty()) fail(ErrorCode::IncompatibleElements, "need at least one cyclic factor");
  for (unsigned o : orders)
    if (o == 0) fail(ErrorCode::IncompatibleElements, "cyclic factor of order 0");
  auto g = std::shared_ptr<ReflectionGroup>(new ReflectionGroup());
  g->dim_ = (unsigned)orders.size();
  unsigned long n = 1;
  for (unsigned o : orders) n = lcm_ul(n, o);
  g->conductor_ = (unsigned)n;
  g->cyclic_orders_ = orders;
  g->abelian_ = true;

  size_t total = 1;
  for (unsigned o : orders) total *= o;
  Cyclo zero(Rat(0));
  std::vector<unsigned> e(orders.size(), 0);
  for (size_t idx = 0; idx < total; ++idx) {
    CMat m(g->dim_, g->dim_, zero);
    for (unsigned t = 0; t < g->dim_; ++t)
      m.at(t, t) = Cyclo::zeta(orders[t], (long)e[t]).embedded(g->conductor_);
    g->index_.emplace(matrix_key(m), (unsigned)g->elements_.size());
    g->elements_.push_back(std::move(m));
    for (size_t t = orders.size(); t-- > 0;) {
      if (++e[t] < orders[t]) break;
      e[t] = 0;
    }
  }
  for (unsigned t = 0; t < g->dim_; ++t) {
    if (orders[t] < 2) continue;
    std::vector<unsigned> tup(orders.size(), 0);
    tup[t] = 1;
    size_t idx = 0;
    for (size_t u = 0; u < orders.size(); ++u) idx = idx * orders[u] + tup[u];
    g->generators_.push_back((unsigned)idx);
  }
  g->finalize();
  return g;
}

GroupPtr ReflectionGroup::from_matrices(unsigned dim, unsigned conductor, std::vector<CMat> gens,
                                        size_t order_cap) {
  if (dim == 0) fail(ErrorCode::IncompatibleElements, "matrix group needs positive dimension");
  if (conductor == 0) fail(ErrorCode::IncompatibleScalars, "conductor must be positive");
  auto g = std::shared_ptr<ReflectionGroup>(new ReflectionGroup());
  g->dim_ = dim;
  g->conductor_ = conductor;
  Cyclo zero(Rat(0));
  for (CMat& m : gens) {
    if (m.rows() != dim || m.cols() != dim)
      fail(ErrorCode::IncompatibleElements, "generator matrix has wrong shape");
    m = embed_matrix(m, conductor);
    if (m.det().is_zero())
      fail(ErrorCode::NotARepresentation, "generator matrix is singular");
  }

  CMat id = CMat::identity(dim, zero);
  id = embed_matrix(id, conductor);
  g->index_.emplace(matrix_key(id), 0);
  g->elements_.push_back(id);
  std::vector<unsigned> work{0};
  std::vector<int> gen_index(gens.size(), -1);
  while (!work.empty()) {
    unsigned cur = work.back();
    work.pop_back();
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      CMat prod = embed_matrix(g->elements_[cur] * gens[gi], conductor);
      std::string key = matrix_key(prod);
      auto it = g->index_.find(key);
      unsigned idx;
      if (it == g->index_.end()) {
        if (g->elements_.size() >= order_cap)
          fail(ErrorCode::GroupTooLarge,
               "group closure exceeded cap of " + std::to_string(order_cap) + " elements");
        idx = (unsigned)g->elements_.size();
        g->index_.emplace(key, idx);
        g->elements_.push_back(prod);
        work.push_back(idx);
      } else {
        idx = it->second;
      }
      if (cur == 0) gen_index[gi] = (int)idx;
    }
  }
  for (int gi : gen_index)
    if (gi > 0) g->generators_.push_back((unsigned)gi);

  // Enlarge the conductor so that all element orders (hence all eigenvalues
  // and character values that can arise downstream) live in the field.
  unsigned long n = conductor;
  for (unsigned e = 0; e < g->elements_.size(); ++e) n = lcm_ul(n, g->element_order(e));
  if (n != g->conductor_) {
    g->conductor_ = (unsigned)n;
    g->index_.clear();
    g->mul_cache_.clear();
    for (unsigned e = 0; e < g->elements_.size(); ++e) {
      g->elements_[e] = embed_matrix(g->elements_[e], g->conductor_);
      g->index_.emplace(matrix_key(g->elements_[e]), e);
    }
  }

  g->abelian_ = true;
  for (unsigned a : g->generators_)
    for (unsigned b : g->generators_)
      if (g->mul(a, b) != g->mul(b, a)) g->abelian_ = false;

  g->finalize();
  return g;
}

unsigned ReflectionGroup::mul(unsigned a, unsigned b) const {
  auto it = mul_cache_.find({a, b});
  if (it != mul_cache_.end()) return it->second;
  CMat prod = embed_matrix(elements_.at(a) * elements_.at(b), conductor_);
  unsigned idx = element_index(prod);
  mul_cache_.emplace(std::make_pair(a, b), idx);
  return idx;
}

unsigned ReflectionGroup::element_index(const CMat& m) const {
  auto it = index_.find(matrix_key(embed_matrix(m, conductor_)));
  if (it == index_.end())
    fail(ErrorCode::InternalError, "matrix does not belong to the group");
  return it->second;
}

unsigned ReflectionGroup::element_order(unsigned g) const {
  unsigned cur = g, k = 1;
  while (cur != 0) {
    cur = mul(cur, g);
    ++k;
    if (k > elements_.size())
      fail(ErrorCode::InternalError, "element order exceeds group order");
  }
  return k;
}

unsigned ReflectionGroup::reflection_of(unsigned g) const {
  auto it = reflection_by_elem_.find(g);
  if (it == reflection_by_elem_.end())
    fail(ErrorCode::IncompatibleElements, element_name(g) + " is not a reflection");
  return it->second;
}

void ReflectionGroup::finalize() {
  Cyclo zero(Rat(0)), one(Rat(1));
  size_t n = elements_.size();

  inverse_.assign(n, 0);
  for (unsigned a = 0; a < n; ++a) {
    unsigned ord = element_order(a);
    unsigned inv = 0, cur = 0;
    for (unsigned k = 0; k + 1 < ord; ++k) cur = mul(cur, a);
    inv = cur;
    if (mul(a, inv) != 0) fail(ErrorCode::InternalError, "inverse computation failed");
    inverse_[a] = inv;
  }

  // Reflections: elements whose fixed space is a hyperplane.
  std::map<std::string, unsigned> hyp_index;
  for (unsigned g = 1; g < n; ++g) {
    CMat m = elements_[g] - CMat::identity(dim_, zero);
    CMat r = m;
    std::vector<size_t> pivots = r.rref();
    if (pivots.size() != 1) continue;
    std::vector<Cyclo> alpha(dim_);
    for (unsigned j = 0; j < dim_; ++j) alpha[j] = r.at(0, j);

    std::string key = covec_key(alpha, conductor_);
    auto it = hyp_index.find(key);
    unsigned hidx;
    if (it == hyp_index.end()) {
      hidx = (unsigned)hyperplanes_.size();
      hyp_index.emplace(key, hidx);
      Hyperplane h;
      h.alpha = alpha;
      hyperplanes_.push_back(std::move(h));
    } else {
      hidx = it->second;
    }

    // Moving line and eigenvalue.
    std::vector<Cyclo> av;
    for (unsigned j = 0; j < dim_ && av.empty(); ++j) {
      std::vector<Cyclo> col(dim_);
      bool nonzero = false;
      for (unsigned i = 0; i < dim_; ++i) {
        col[i] = m.at(i, j);
        if (!col[i].is_zero()) nonzero = true;
      }
      if (nonzero) av = normalize_line(col);
    }
    std::vector<Cyclo> img = act_vec(g, av);
    Cyclo lambda = zero;
    for (unsigned i = 0; i < dim_; ++i)
      if (!av[i].is_zero()) {
        lambda = img[i] / av[i];
        break;
      }
    for (unsigned i = 0; i < dim_; ++i)
      if (img[i] != lambda * av[i])
        fail(ErrorCode::InternalError, "moving line is not an eigenline");
    reflection_by_elem_.emplace(g, (unsigned)reflections_.size());
    reflections_.push_back({g, hidx, lambda});
  }

  // Pointwise stabilizers, canonical generators, moving lines.
  for (unsigned hi = 0; hi < hyperplanes_.size(); ++hi) {
    Hyperplane& h = hyperplanes_[hi];
    CMat arow(1, dim_, zero);
    for (unsigned j = 0; j < dim_; ++j) arow.at(0, j) = h.alpha[j];
    std::vector<std::vector<Cyclo>> hbasis = arow.kernel_basis();
    std::vector<unsigned> stab;
    for (unsigned g = 0; g < n; ++g) {
      bool fixes = true;
      for (const auto& v : hbasis) {
        if (act_vec(g, v) != v) {
          fixes = false;
          break;
        }
      }
      if (fixes) stab.push_back(g);
    }
    h.ell = (unsigned)stab.size();
    if (conductor_ % h.ell != 0)
      fail(ErrorCode::InternalError, "stabilizer order does not divide the conductor");
    Cyclo eta = Cyclo::zeta(conductor_, (long)(conductor_ / h.ell));
    unsigned canonical = 0;
    bool found = false;
    for (unsigned g : stab) {
      if (g == 0) continue;
      const Reflection& r = reflections_[reflection_of(g)];
      if (r.lambda == eta) {
        canonical = g;
        found = true;
        break;
      }
    }
    if (!found) fail(ErrorCode::InternalError, "no canonical generator for hyperplane");
    h.power_of_gen.assign(h.ell, 0);
    unsigned cur = 0;
    for (unsigned j = 0; j < h.ell; ++j) {
      h.power_of_gen[j] = cur;
      cur = mul(cur, canonical);
    }
    if (cur != 0) fail(ErrorCode::InternalError, "canonical generator has wrong order");
    // All stabilizer elements must be powers of the canonical generator.
    std::set<unsigned> powers(h.power_of_gen.begin(), h.power_of_gen.end());
    for (unsigned g : stab)
      if (!powers.count(g))
        fail(ErrorCode::InternalError, "pointwise stabilizer is not cyclic");

    // Common moving line, shared by every nontrivial element of W_H.
    CMat m = elements_[canonical] - CMat::identity(dim_, zero);
    std::vector<Cyclo> av;
    for (unsigned j = 0; j < dim_ && av.empty(); ++j) {
      std::vector<Cyclo> col(dim_);
      bool nonzero = false;
      for (unsigned i = 0; i < dim_; ++i) {
        col[i] = m.at(i, j);
        if (!col[i].is_zero()) nonzero = true;
      }
      if (nonzero) av = normalize_line(col);
    }
    h.alpha_vee = av;
    if (pair(h.alpha, h.alpha_vee).is_zero())
      fail(ErrorCode::InternalError, "moving line lies inside its hyperplane");
    for (unsigned j = 1; j < h.ell; ++j) {
      unsigned g = h.power_of_gen[j];
      const Reflection& r = reflections_[reflection_of(g)];
      std::vector<Cyclo> img = act_vec(g, av);
      for (unsigned i = 0; i < dim_; ++i)
        if (img[i] != r.lambda * av[i])
          fail(ErrorCode::InternalError, "stabilizer does not share the moving line");
    }
  }

  // Orbit structure and the action of W on hyperplanes.
  hyp_action_.assign(n, std::vector<unsigned>(hyperplanes_.size(), 0));
  for (unsigned g = 0; g < n; ++g)
    for (unsigned hi = 0; hi < hyperplanes_.size(); ++hi) {
      std::vector<Cyclo> moved = normalize_line(act_covec(g, hyperplanes_[hi].alpha));
      auto it = hyp_index.find(covec_key(moved, conductor_));
      if (it == hyp_index.end())
        fail(ErrorCode::InternalError, "hyperplane image is not a hyperplane");
      hyp_action_[g][hi] = it->second;
    }
  std::vector<int> orbit_of(hyperplanes_.size(), -1);
  for (unsigned hi = 0; hi < hyperplanes_.size(); ++hi) {
    if (orbit_of[hi] >= 0) continue;
    unsigned oid = (unsigned)orbits_.size();
    std::vector<unsigned> members;
    std::vector<unsigned> work{hi};
    orbit_of[hi] = (int)oid;
    while (!work.empty()) {
      unsigned cur = work.back();
      work.pop_back();
      members.push_back(cur);
      for (unsigned g = 0; g < n; ++g) {
        unsigned img = hyp_action_[g][cur];
        if (orbit_of[img] < 0) {
          orbit_of[img] = (int)oid;
          work.push_back(img);
        }
      }
    }
    std::sort(members.begin(), members.end());
    orbits_.push_back(std::move(members));
  }
  for (unsigned hi = 0; hi < hyperplanes_.size(); ++hi)
    hyperplanes_[hi].orbit = (unsigned)orbit_of[hi];
}

std::vector<Cyclo> ReflectionGroup::act_vec(unsigned g, const std::vector<Cyclo>& v) const {
  const CMat& m = elements_.at(g);
  std::vector<Cyclo> out(dim_, Cyclo(Rat(0)));
  for (unsigned i = 0; i < dim_; ++i)
    for (unsigned j = 0; j < dim_; ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

std::vector<Cyclo> ReflectionGroup::act_covec(unsigned g, const std::vector<Cyclo>& a) const {
  const CMat& m = elements_.at(inverse_.at(g));
  std::vector<Cyclo> out(dim_, Cyclo(Rat(0)));
  for (unsigned j = 0; j < dim_; ++j)
    for (unsigned i = 0; i < dim_; ++i) out[j] += a[i] * m.at(i, j);
  return out;
}

MPoly ReflectionGroup::act_on_polynomial(unsigned g, const MPoly& p) const {
  SymbolsPtr syms = p.symbols();
  if (syms->size() != dim_)
    fail(ErrorCode::IncompatibleElements, "polynomial symbol count does not match dim");
  const CMat& m = elements_.at(inverse_.at(g));
  std::vector<MPoly> images;
  for (unsigned i = 0; i < dim_; ++i) {
    MPoly img(syms);
    for (unsigned j = 0; j < dim_; ++j)
      if (!m.at(i, j).is_zero()) img += MPoly::var(syms, j).scaled(m.at(i, j));
    images.push_back(std::move(img));
  }
  return p.subst_all(syms, images);
}

MPoly ReflectionGroup::alpha_poly(unsigned h, SymbolsPtr syms) const {
  const Hyperplane& hp = hyperplanes_.at(h);
  MPoly p(syms);
  for (unsigned j = 0; j < dim_; ++j)
    if (!hp.alpha[j].is_zero()) p += MPoly::var(syms, j).scaled(hp.alpha[j]);
  return p;
}

Cyclo ReflectionGroup::pair(const std::vector<Cyclo>& covec, const std::vector<Cyclo>& vec) {
  Cyclo acc(Rat(0));
  for (size_t i = 0; i < covec.size(); ++i) acc += covec[i] * vec[i];
  return acc;
}

unsigned ReflectionGroup::act_on_hyperplane(unsigned g, unsigned h) const {
  return hyp_action_.at(g).at(h);
}

const std::vector<Irrep>& ReflectionGroup::characters() const {
  if (!characters_.empty()) return characters_;
  if (!abelian_)
    fail(ErrorCode::NeedExplicitIrreps,
         "group is nonabelian; supply irreducible representations explicitly");
  size_t n = elements_.size();
  Cyclo zero(Rat(0));

  std::vector<std::vector<Cyclo>> tables;
  if (is_cyclic_product()) {
    // Dual tuples (a_1, ..., a_r), a_t mod order_t, last index fastest.
    size_t total = 1;
    for (unsigned o : cyclic_orders_) total *= o;
    std::vector<unsigned> a(cyclic_orders_.size(), 0);
    for (size_t ci = 0; ci < total; ++ci) {
      std::vector<Cyclo> vals(n, Cyclo(Rat(1)));
      std::vector<unsigned> e(cyclic_orders_.size(), 0);
      for (size_t gi = 0; gi < n; ++gi) {
        Cyclo v(Rat(1));
        for (size_t t = 0; t < cyclic_orders_.size(); ++t)
          if (cyclic_orders_[t] > 1)
            v *= Cyclo::zeta(cyclic_orders_[t], (long)(a[t] * e[t]));
        vals[gi] = v.embedded(conductor_);
        for (size_t t = cyclic_orders_.size(); t-- > 0;) {
          if (++e[t] < cyclic_orders_[t]) break;
          e[t] = 0;
        }
      }
      std::string name = "chi";
      for (size_t t = 0; t < cyclic_orders_.size(); ++t)
        name += "_" + std::to_string(a[t]);
      Irrep ir;
      ir.name = name;
      ir.dim = 1;
      for (const Cyclo& v : vals) {
        CMat m(1, 1, zero);
        m.at(0, 0) = v;
        ir.mats.push_back(std::move(m));
      }
      ir.form = CMat::identity(1, zero);
      characters_.push_back(std::move(ir));
      for (size_t t = cyclic_orders_.size(); t-- > 0;) {
        if (++a[t] < cyclic_orders_[t]) break;
        a[t] = 0;
      }
    }
    return characters_;
  }

  // General abelian group: try every assignment of root-of-unity values to
  // the generators and keep those that extend to a homomorphism.
  std::vector<unsigned> gens = generators_;
  if (gens.empty()) gens.push_back(0);
  std::vector<unsigned> orders;
  for (unsigned g : gens) orders.push_back(element_order(g));
  size_t total = 1;
  for (unsigned o : orders) total *= o;
  std::set<std::string> seen;
  std::vector<unsigned> a(gens.size(), 0);
  for (size_t ci = 0; ci < total; ++ci) {
    std::vector<Cyclo> vals(n, zero);
    std::vector<bool> defined(n, false);
    vals[0] = Cyclo(Rat(1));
    defined[0] = true;
    std::vector<unsigned> work{0};
    bool ok = true;
    while (!work.empty() && ok) {
      unsigned cur = work.back();
      work.pop_back();
      for (size_t t = 0; t < gens.size(); ++t) {
        unsigned nxt = mul(cur, gens[t]);
        Cyclo v = vals[cur] * Cyclo::zeta(orders[t], (long)a[t]);
        if (!defined[nxt]) {
          defined[nxt] = true;
          vals[nxt] = v;
          work.push_back(nxt);
        } else if (vals[nxt] != v) {
          ok = false;
          break;
        }
      }
    }
    for (size_t gi = 0; gi < n && ok; ++gi) ok = defined[gi];
    if (ok) {
      std::ostringstream key;
      for (const Cyclo& v : vals) key << v.embedded(conductor_).str() << ";";
      if (seen.insert(key.str()).second) {
        Irrep ir;
        ir.dim = 1;
        for (const Cyclo& v : vals) {
          CMat m(1, 1, zero);
          m.at(0, 0) = v.embedded(conductor_);
          ir.mats.push_back(std::move(m));
        }
        ir.form = CMat::identity(1, zero);
        characters_.push_back(std::move(ir));
      }
    }
    for (size_t t = gens.size(); t-- > 0;) {
      if (++a[t] < orders[t]) break;
      a[t] = 0;
    }
  }
  if (characters_.size() != n)
    fail(ErrorCode::InternalError, "abelian character count mismatch");
  // Deterministic naming: trivial first, then by value table.
  std::sort(characters_.begin(), characters_.end(), [](const Irrep& x, const Irrep& y) {
    auto is_triv = [](const Irrep& ir) {
      for (const CMat& m : ir.mats)
        if (m.at(0, 0) != Cyclo(Rat(1))) return false;
      return true;
    };
    bool tx = is_triv(x), ty = is_triv(y);
    if (tx != ty) return tx;
    std::string kx, ky;
    for (const CMat& m : x.mats) kx += m.at(0, 0).str() + ";";
    for (const CMat& m : y.mats) ky += m.at(0, 0).str() + ";";
    return kx < ky;
  });
  for (size_t i = 0; i < characters_.size(); ++i)
    characters_[i].name = "chi_" + std::to_string(i);
  return characters_;
}

const Irrep& ReflectionGroup::character_by_name(const std::string& name) const {
  const std::vector<Irrep>& chars = characters();
  std::string wanted = name;
  if (name == "triv") {
    for (const Irrep& ir : chars) {
      bool triv = true;
      for (const CMat& m : ir.mats)
        if (m.at(0, 0) != Cyclo(Rat(1))) triv = false;
      if (triv) return ir;
    }
    fail(ErrorCode::InternalError, "no trivial character");
  }
  if (name == "sgn") {
    if (cyclic_orders_.size() == 1 && cyclic_orders_[0] == 2) wanted = "chi_1";
    else
      fail(ErrorCode::IncompatibleElements,
           "'sgn' is only defined for the two-element cyclic group on a line");
  }
  for (const Irrep& ir : chars)
    if (ir.name == wanted) return ir;
  fail(ErrorCode::IncompatibleElements, "unknown character '" + name + "'");
}

Irrep ReflectionGroup::make_irrep(const std::string& name,
                                  const std::vector<CMat>& gen_images) const {
  if (gen_images.size() != generators_.size())
    fail(ErrorCode::NotARepresentation, "need one matrix per group generator");
  unsigned d = gen_images.empty() ? 1 : (unsigned)gen_images[0].rows();
  Cyclo zero(Rat(0));
  for (const CMat& m : gen_images)
    if (m.rows() != d || m.cols() != d)
      fail(ErrorCode::NotARepresentation, "representation matrices have mixed shapes");

  size_t n = elements_.size();
  std::vector<CMat> mats(n, CMat(d, d, zero));
  std::vector<bool> defined(n, false);
  mats[0] = CMat::identity(d, zero);
  defined[0] = true;
  std::vector<unsigned> work{0};
  while (!work.empty()) {
    unsigned cur = work.back();
    work.pop_back();
    for (size_t t = 0; t < generators_.size(); ++t) {
      unsigned nxt = mul(cur, generators_[t]);
      CMat v = mats[cur] * gen_images[t];
      if (!defined[nxt]) {
        defined[nxt] = true;
        mats[nxt] = v;
        work.push_back(nxt);
      } else if (!(mats[nxt] == v)) {
        fail(ErrorCode::NotARepresentation,
             "generator images do not satisfy the group relations");
      }
    }
  }
  for (size_t gi = 0; gi < n; ++gi)
    if (!defined[gi]) fail(ErrorCode::NotARepresentation, "generators do not generate the group");

  // Irreducibility via the commutant: solve rho(g) X = X rho(g).
  size_t dd = (size_t)d * d;
  CMat sys(generators_.size() * dd, dd, zero);
  for (size_t t = 0; t < generators_.size(); ++t) {
    const CMat& r = mats[generators_[t]];
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j)
        for (unsigned k = 0; k < d; ++k) {
          // row (i,j): sum_k r[i][k] X[k][j] - X[i][k] r[k][j] = 0
          sys.at(t * dd + i * d + j, (size_t)k * d + j) += r.at(i, k);
          sys.at(t * dd + i * d + j, (size_t)i * d + k) -= r.at(k, j);
        }
  }
  size_t commutant_dim = dd - sys.rank();
  if (commutant_dim != 1)
    fail(ErrorCode::NotARepresentation,
         "representation is not irreducible (commutant dimension " +
             std::to_string(commutant_dim) + ")");

  Irrep ir;
  ir.name = name;
  ir.dim = d;
  ir.mats = std::move(mats);
  // Invariant hermitian form by averaging conj(rho(w))^T rho(w).
  CMat form(d, d, zero);
  for (size_t gi = 0; gi < n; ++gi) {
    CMat ct = ir.mats[gi].transpose().map([](const Cyclo& c) { return c.conj(); });
    form = form + ct * ir.mats[gi];
  }
  if (form.det().is_zero()) fail(ErrorCode::InternalError, "invariant form is degenerate");
  ir.form = std::move(form);
  return ir;
}

std::vector<unsigned> ReflectionGroup::subgroup_closure(std::vector<unsigned> seed) const {
  std::set<unsigned> out{0};
  for (unsigned s : seed) out.insert(s);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<unsigned> cur(out.begin(), out.end());
    for (unsigned a : cur)
      for (unsigned b : cur)
        if (out.insert(mul(a, b)).second) grew = true;
  }
  return std::vector<unsigned>(out.begin(), out.end());
}

}  // namespace cherednik
