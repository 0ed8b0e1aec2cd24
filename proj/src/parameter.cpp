#include "cherednik/parameter.hpp"

namespace cherednik {

std::string Parameter::slot_name(unsigned orbit, unsigned i) const {
  if (kappa_.size() == 1) return "k" + std::to_string(i);
  return "k" + std::to_string(orbit) + "_" + std::to_string(i);
}

Parameter Parameter::with_slot(unsigned orbit, unsigned i, const ParamScalar& value) const {
  Parameter q = *this;
  q.kappa_.at(orbit).at(i) = value;
  return q;
}

Parameter make_parameter(const GroupPtr& g, const std::map<std::string, Rat>& specialize) {
  Parameter p;
  p.group_ = g;
  const auto& orbits = g->orbits();
  std::vector<unsigned> ells;
  for (const auto& orbit : orbits) {
    unsigned ell = g->hyperplanes()[orbit.front()].ell;
    for (unsigned hi : orbit)
      if (g->hyperplanes()[hi].ell != ell)
        fail(ErrorCode::InternalError, "orbit mixes stabilizer orders");
    ells.push_back(ell);
  }

  std::vector<std::string> names;
  for (unsigned o = 0; o < ells.size(); ++o)
    for (unsigned i = 0; i < ells[o]; ++i)
      names.push_back(orbits.size() == 1 ? "k" + std::to_string(i)
                                         : "k" + std::to_string(o) + "_" + std::to_string(i));
  names.push_back("s");
  p.syms_ = SymbolSet::make(names);
  p.s_index_ = (unsigned)(names.size() - 1);

  std::map<std::string, Rat> pending = specialize;
  unsigned idx = 0;
  for (unsigned o = 0; o < ells.size(); ++o) {
    std::vector<ParamScalar> slots;
    for (unsigned i = 0; i < ells[o]; ++i, ++idx) {
      auto it = pending.find(names[idx]);
      if (it != pending.end()) {
        slots.push_back(ParamScalar::constant(p.syms_, it->second));
        pending.erase(it);
      } else {
        slots.push_back(ParamScalar::var(p.syms_, idx));
      }
    }
    p.kappa_.push_back(std::move(slots));
  }
  if (!pending.empty())
    fail(ErrorCode::IncompatibleScalars,
         "unknown parameter slot '" + pending.begin()->first + "'");
  return p;
}

ParamScalar dunkl_coefficient(const Parameter& p, unsigned hyp, unsigned j) {
  const GroupPtr& g = p.group();
  const Hyperplane& h = g->hyperplanes().at(hyp);
  Cyclo eta = Cyclo::zeta(g->conductor(), (long)(g->conductor() / h.ell));
  ParamScalar acc = p.rational(Rat(0));
  for (unsigned m = 0; m < h.ell; ++m)
    acc += p.kappa(h.orbit, (long)m) * p.cyclo(eta.pow((long)j * m));
  return acc;
}

std::vector<ParamScalar> c_of_kappa(const Parameter& p) {
  const GroupPtr& g = p.group();
  std::vector<ParamScalar> out;
  for (const Reflection& r : g->reflections()) {
    const Hyperplane& h = g->hyperplanes()[r.hyp];
    Cyclo eta = Cyclo::zeta(g->conductor(), (long)(g->conductor() / h.ell));
    unsigned j = 0;
    for (unsigned k = 0; k < h.ell; ++k)
      if (h.power_of_gen[k] == r.elem) j = k;
    ParamScalar factor =
        p.cyclo((Cyclo(Rat(1)) - eta.pow(-(long)j)) * Cyclo(rat_of(1, 2)));
    out.push_back(factor * dunkl_coefficient(p, r.hyp, j));
  }
  return out;
}

Parameter kappa_of_c(const GroupPtr& g, const SymbolsPtr& syms,
                     const std::vector<ParamScalar>& c) {
  if (c.size() != g->reflections().size())
    fail(ErrorCode::DictionaryMismatch, "need one c value per reflection");
  std::vector<std::vector<ParamScalar>> per_orbit(g->orbits().size());
  for (unsigned oi = 0; oi < g->orbits().size(); ++oi) {
    const auto& orbit = g->orbits()[oi];
    std::vector<ParamScalar> slots;
    bool first_h = true;
    for (unsigned hi : orbit) {
      const Hyperplane& h = g->hyperplanes()[hi];
      Cyclo eta = Cyclo::zeta(g->conductor(), (long)(g->conductor() / h.ell));
      // d_j = 2 c_j / (1 - eta^{-j}); kappa_m = (1/ell) sum_j d_j (eta^{-jm} - 1).
      std::vector<ParamScalar> d;
      d.push_back(ParamScalar::constant(syms, Rat(0)));
      for (unsigned j = 1; j < h.ell; ++j) {
        unsigned elem = h.power_of_gen[j];
        const ParamScalar& cj = c.at(g->reflection_of(elem));
        Cyclo denom = Cyclo(Rat(1)) - eta.pow(-(long)j);
        d.push_back(cj * ParamScalar::constant(syms, denom.inv() * Cyclo(Rat(2))));
      }
      std::vector<ParamScalar> slots_h;
      for (unsigned m = 0; m < h.ell; ++m) {
        ParamScalar am = ParamScalar::constant(syms, Rat(0));
        for (unsigned j = 1; j < h.ell; ++j)
          am += d[j] *
                ParamScalar::constant(syms, eta.pow(-(long)j * (long)m) - Cyclo(Rat(1)));
        slots_h.push_back(am * ParamScalar::constant(syms, rat_of(1, (long)h.ell)));
      }
      if (first_h) {
        slots = slots_h;
        first_h = false;
      } else if (slots != slots_h) {
        fail(ErrorCode::DictionaryMismatch,
             "c values are not constant on a hyperplane orbit");
      }
    }
    per_orbit[oi] = std::move(slots);
  }

  Parameter q;
  q.syms_ = syms;
  q.group_ = g;
  q.kappa_ = std::move(per_orbit);
  auto si = syms->find("s");
  if (!si) fail(ErrorCode::DictionaryMismatch, "symbol set lacks the reserved symbol 's'");
  q.s_index_ = *si;
  return q;
}

}  // namespace cherednik
