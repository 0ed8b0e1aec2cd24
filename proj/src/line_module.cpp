#include "cherednik/line_module.hpp"

#include <algorithm>
#include <sstream>

namespace cherednik {

namespace {

unsigned line_order(const CherednikAlgebra& alg) {
  const auto& hyps = alg.group()->hyperplanes();
  return hyps.empty() ? 1u : hyps[0].ell;
}

ParamScalar kappa_diff(const CherednikAlgebra& alg, long i, long j) {
  // ell * (kappa_i - kappa_j), zero for the trivial group.
  if (alg.group()->hyperplanes().empty())
    return ParamScalar::constant(alg.parameter().symbols(), Rat(0));
  const Parameter& p = alg.parameter();
  long ell = (long)p.ell(0);
  return (p.kappa(0, i) - p.kappa(0, j)) * p.rational(Rat(ell));
}

long mod_residue(long i, unsigned ell) { return ((i % (long)ell) + (long)ell) % (long)ell; }

}  // namespace

LineModule::LineModule(AlgebraPtr alg, unsigned k, LineKind kind, long lowest,
                       std::vector<ParamScalar> consts)
    : alg_(std::move(alg)), kind_(kind), lowest_(lowest), consts_(std::move(consts)) {
  if (alg_->dim() != 1)
    fail(ErrorCode::UnsupportedShape, "line modules require a one-dimensional space");
  unsigned ell = line_order(*alg_);
  k_ = (unsigned)mod_residue((long)k, ell);
  if (consts_.size() != ell)
    fail(ErrorCode::IncompatibleElements, "need one residue constant per character");
  for (unsigned r = 0; r < ell; ++r) {
    ParamScalar want = kappa_diff(*alg_, (long)r + 1 - (long)k_, (long)r - (long)k_);
    ParamScalar got = consts_[(r + 1) % ell] - consts_[r];
    if (got != want)
      fail(ErrorCode::IncompatibleElements,
           "residue constants violate the commutation relation at residue " +
               std::to_string(r));
  }
  if (kind_ == LineKind::Polynomial && !y_coefficient(lowest_).is_zero())
    fail(ErrorCode::IncompatibleElements,
         "lowering coefficient at the bottom index must vanish");
}

LineModule LineModule::standard(AlgebraPtr alg, unsigned k) {
  unsigned ell = line_order(*alg);
  k = (unsigned)mod_residue((long)k, ell);
  std::vector<ParamScalar> consts;
  consts.reserve(ell);
  for (unsigned r = 0; r < ell; ++r)
    consts.push_back(kappa_diff(*alg, (long)r - (long)k, -(long)k));
  return LineModule(std::move(alg), k, LineKind::Polynomial, 0, std::move(consts));
}

ParamScalar LineModule::y_coefficient(long i) const {
  return alg_->parameter().rational(Rat(i)) + consts_[(size_t)mod_residue(i, ell())];
}

ParamScalar LineModule::eu_constant() const {
  // eu m_i = (i + c_{i mod ell} + ell(2 kappa_0 - kappa_{i-k})) m_i; the
  // relation makes the non-i part independent of the residue, so read it at 0.
  ParamScalar e = consts_[0] - kappa_diff(*alg_, -(long)k_, 0);
  if (!alg_->group()->hyperplanes().empty()) {
    const Parameter& p = alg_->parameter();
    e += p.kappa(0, 0) * p.rational(Rat((long)p.ell(0)));
  }
  return e;
}

ParamScalar LineModule::eu_eigenvalue(long i) const {
  return eu_constant() + alg_->parameter().rational(Rat(i));
}

LineModule LineModule::localized() const {
  return LineModule(alg_, k_, LineKind::Localized, 0, consts_);
}

LineModule LineModule::twisted(const ParamScalar& t, unsigned fdeg) const {
  if (kind_ != LineKind::Localized)
    fail(ErrorCode::UnsupportedShape, "twist by f^t needs the localized module");
  if (fdeg == 0 || fdeg % ell() != 0)
    fail(ErrorCode::NotInvariant, "x^" + std::to_string(fdeg) + " is not W-invariant");
  ParamScalar shift = t * alg_->parameter().rational(Rat((long)fdeg));
  std::vector<ParamScalar> consts = consts_;
  for (ParamScalar& c : consts) c += shift;
  return LineModule(alg_, k_, LineKind::Localized, 0, std::move(consts));
}

std::vector<long> LineModule::breaks() const {
  std::vector<long> out;
  unsigned ell = this->ell();
  for (unsigned r = 0; r < ell; ++r) {
    const ParamScalar& c = consts_[r];
    if (!c.is_constant()) continue;  // symbolic constants have no identical zero
    Cyclo v = c.constant_value();
    if (!v.is_rational()) continue;
    Rat root = -v.to_rat();
    if (!rat_is_integer(root)) continue;
    long i = rat_to_long(root);
    if (mod_residue(i, ell) != (long)r) continue;
    if (kind_ == LineKind::Polynomial && i <= lowest_) continue;
    out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool LineModule::generated_by(long i0) const {
  if (kind_ == LineKind::Polynomial && i0 < lowest_)
    fail(ErrorCode::IncompatibleElements, "generator index below the bottom of the module");
  for (long b : breaks())
    if (b <= i0) return false;
  return true;
}

bool LineModule::same_shape(const LineModule& o, long check_from, long check_to) const {
  if (kind_ != o.kind_ || k_ != o.k_ || ell() != o.ell()) return false;
  if (kind_ == LineKind::Polynomial && lowest_ != o.lowest_) return false;
  for (long i = check_from; i <= check_to; ++i)
    if (y_coefficient(i) != o.y_coefficient(i)) return false;
  return eu_constant() == o.eu_constant();
}

std::string LineModule::describe() const {
  std::ostringstream os;
  os << "basis m_i, ";
  if (kind_ == LineKind::Polynomial)
    os << "i >= " << lowest_;
  else
    os << "i in Z";
  os << "; ell = " << ell() << ", character offset " << k_;
  os << "; y m_i = (i + c_{i mod " << ell() << "}) m_{i-1}, c = [";
  for (size_t r = 0; r < consts_.size(); ++r) {
    if (r) os << ", ";
    os << consts_[r].str();
  }
  os << "]; eu m_i = (i + " << eu_constant().str() << ") m_i";
  return os.str();
}

std::string CompositionFactor::describe(const ParamScalar& eu_constant) const {
  std::ostringstream os;
  os << "span{m_i : ";
  if (lowest && highest)
    os << *lowest << " <= i <= " << *highest;
  else if (lowest)
    os << "i >= " << *lowest;
  else if (highest)
    os << "i <= " << *highest;
  else
    os << "i in Z";
  os << "}";
  if (lowest)
    os << ", lowest eu weight " << (eu_constant + ParamScalar::constant(eu_constant.symbols(), Rat(*lowest))).str();
  else if (highest)
    os << ", highest eu weight " << (eu_constant + ParamScalar::constant(eu_constant.symbols(), Rat(*highest))).str();
  return os.str();
}

CompositionSeries composition_series_line(const LineModule& m) {
  CompositionSeries s;
  s.breaks = m.breaks();
  s.eu_constant = m.eu_constant();
  s.certified = true;
  for (long b : s.breaks) s.window_needed = std::max(s.window_needed, b < 0 ? -b : b);

  std::optional<long> bottom;
  if (m.kind() == LineKind::Polynomial) bottom = m.lowest();
  for (long b : s.breaks) {
    CompositionFactor f;
    f.lowest = bottom;
    f.highest = b - 1;
    s.factors.push_back(f);
    bottom = b;
  }
  CompositionFactor top;
  top.lowest = bottom;
  s.factors.push_back(top);
  return s;
}

LineModule shift_functor_line(const LineModule& m, const Parameter& target, bool omega_all) {
  const Parameter& src = m.algebra()->parameter();
  if (target.symbols() != src.symbols() || target.group() != src.group())
    fail(ErrorCode::IllegalShift, "shift target must share the group and parameter session");
  if (!omega_all) {
    for (unsigned o = 0; o < src.orbit_count(); ++o)
      for (unsigned i = 0; i < src.ell(o); ++i)
        if (src.kappa(o, i) != target.kappa(o, i))
          fail(ErrorCode::IllegalShift,
               "parameters differ at a hyperplane outside Omega (slot " +
                   src.slot_name(o, i) + ")");
  }
  AlgebraPtr dest = CherednikAlgebra::make(target);
  unsigned ell = m.ell();
  long k = (long)m.char_offset();
  std::vector<ParamScalar> consts = m.residue_constants();
  if (!src.group()->hyperplanes().empty()) {
    ParamScalar scale = src.rational(Rat((long)ell));
    for (unsigned r = 0; r < ell; ++r) {
      ParamScalar delta = (target.kappa(0, (long)r - k) - target.kappa(0, 0)) -
                          (src.kappa(0, (long)r - k) - src.kappa(0, 0));
      consts[r] += delta * scale;
    }
  }
  return LineModule(dest, m.char_offset(), LineKind::Localized, 0, std::move(consts));
}

std::vector<LineModule> jacquet_line(const AlgebraPtr& alg,
                                     const std::vector<LineSummand>& parts) {
  std::vector<LineModule> out;
  unsigned ell = line_order(*alg);
  for (const LineSummand& part : parts) {
    if (part.free) {
      if (part.free->algebra() != alg)
        fail(ErrorCode::IncompatibleElements, "summand over a different algebra");
      if (part.free->kind() != LineKind::Polynomial)
        fail(ErrorCode::UnsupportedShape,
             "localized sections are not coherent on the affine line");
      out.push_back(*part.free);
      continue;
    }
    std::vector<Rat> g = part.torsion;
    while (!g.empty() && g.back() == Rat(0)) g.pop_back();
    if (g.empty())
      fail(ErrorCode::IncompatibleElements, "torsion polynomial must be nonzero");
    long res = -1;
    for (size_t i = 0; i < g.size(); ++i) {
      if (g[i] == Rat(0)) continue;
      long r = mod_residue((long)i, ell);
      if (res < 0) res = r;
      if (r != res)
        fail(ErrorCode::NotInvariant, "torsion support is not W-stable");
    }
    if (g[0] == Rat(0))
      fail(ErrorCode::UnsupportedShape,
           "torsion at the fixed point carries no compatible lowering action");
    // g(0) != 0: supported away from 0, completes to zero.
  }
  return out;
}

}  // namespace cherednik
