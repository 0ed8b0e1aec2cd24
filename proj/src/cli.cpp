#include "cherednik/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cherednik/bfunction.hpp"
#include "cherednik/expr.hpp"
#include "cherednik/line_module.hpp"
#include "cherednik/melys.hpp"
#include "cherednik/pbw.hpp"
#include "cherednik/verma.hpp"

namespace cherednik {
namespace {

using json = nlohmann::ordered_json;
using K = ConfigValue::Kind;

// ---------------------------------------------------------------------------
// Command table. Every key a command accepts is listed here; anything else in
// [command] or [options] is rejected with its position. `def` is the default
// in override syntax, filled into the canonical echo so that serialized jobs
// do not depend on the environment.

struct KeyDef {
  const char* section;
  const char* key;
  K kind;
  bool required = false;
  const char* def = nullptr;
};

struct CommandDef {
  const char* name;
  std::vector<KeyDef> keys;
  bool uses_truncation = false;  // [options] truncation, default from the environment
  bool allows_irreps = false;    // [options] irrep.<name> = [generator matrices]
  bool allows_target = false;    // [options] target.<slot> = rational
  bool needs_line = false;       // group must act on a one-dimensional space
};

const std::vector<CommandDef> kCommands = {
    {"reflections", {}},
    {"normal-form", {{"command", "expr", K::String, true}}},
    {"dunkl", {{"command", "p", K::String, true}, {"command", "j", K::Number, false, "1"}}},
    {"verma", {{"command", "lowest", K::String, false, "\"triv\""}}, true, true},
    {"gram", {{"command", "lowest", K::String, false, "\"triv\""}}, true, true},
    {"singular",
     {{"command", "lowest", K::String, false, "\"triv\""},
      {"command", "degree", K::Number, false}},
     true, true},
    {"regular", {}, true, true},
    {"aspherical", {}, true, true},
    {"bfunction",
     {{"command", "f", K::String, true},
      {"command", "gen", K::String, false},
      {"options", "max-op-degree", K::Number, false, "8"},
      {"options", "s-degree-cap", K::Number, false, "8"}}},
    {"localize", {{"command", "k", K::Number, false, "0"}}, false, false, false, true},
    {"series",
     {{"command", "k", K::Number, false, "0"},
      {"command", "localized", K::Bool, false, "true"}},
     true, false, false, true},
    {"shift",
     {{"command", "k", K::Number, false, "0"},
      {"options", "omega-all", K::Bool, false, "true"}},
     false, false, true, true},
    {"jacquet",
     {{"command", "standard", K::List, false, "[0]"},
      {"command", "torsion", K::List, false, "[]"}},
     false, false, false, true},
    {"melys-check",
     {{"command", "source", K::String, false, "\"defining\""},
      {"command", "source-dim", K::Number, false, "1"},
      {"command", "source-power", K::Number, false, "1"},
      {"command", "map", K::List, true},
      {"command", "classify", K::Bool, false, "false"}}},
    {"melys-factor",
     {{"command", "source", K::String, false, "\"defining\""},
      {"command", "source-dim", K::Number, false, "1"},
      {"command", "source-power", K::Number, false, "1"},
      {"command", "map", K::List, true}}},
    {"strata", {}},
};

const CommandDef& command_def(const std::string& name, int line, int col) {
  for (const auto& c : kCommands)
    if (name == c.name) return c;
  std::string all;
  for (const auto& c : kCommands) {
    if (!all.empty()) all += ", ";
    all += c.name;
  }
  throw ConfigError("unknown command '" + name + "' (expected one of: " + all + ")", line, col);
}

const char* kind_word(K k) {
  switch (k) {
    case K::String: return "string";
    case K::Number: return "number";
    case K::Bool: return "boolean";
    case K::List: return "list";
  }
  return "value";
}

[[noreturn]] void bad_value(const std::string& key, const std::string& want,
                            const ConfigValue& v) {
  throw ConfigError("key '" + key + "' expects a " + want + ", got a " + v.describe(), v.line,
                    v.col);
}

long int_of(const ConfigValue& v, const std::string& key) {
  if (v.kind != K::Number || !rat_is_integer(v.num))
    throw ConfigError("key '" + key + "' expects an integer", v.line, v.col);
  return rat_to_long(v.num);
}

// ---------------------------------------------------------------------------
// Evaluation contexts for the shared expression grammar.

Rat rat_pow(const Rat& b, long e) {
  if (e < 0) {
    if (b == 0) fail(ErrorCode::DivisionByZero, "zero raised to a negative power");
    return rat_pow(Rat(1) / b, -e);
  }
  Rat r(1), p(b);
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) r *= p;
    p *= p;
  }
  return r;
}

struct RatCtx {
  using Value = Rat;
  Value number(const Rat& r) { return r; }
  Value symbol(const std::string& s, int line, int col) {
    throw ConfigError("expected a rational constant, found symbol '" + s + "'", line, col);
  }
  Value add(const Value& a, const Value& b) { return Rat(a + b); }
  Value sub(const Value& a, const Value& b) { return Rat(a - b); }
  Value mul(const Value& a, const Value& b) { return Rat(a * b); }
  Value div(const Value& a, const Value& b) {
    if (b == 0) fail(ErrorCode::DivisionByZero, "division by zero in a config value");
    return Rat(a / b);
  }
  Value neg(const Value& a) { return Rat(-a); }
  Value pow(const Value& a, long e) { return rat_pow(a, e); }
};

struct CycloCtx {
  unsigned conductor = 1;
  using Value = Cyclo;
  Value number(const Rat& r) { return Cyclo(r); }
  Value symbol(const std::string& s, int line, int col) {
    if (s == "z") {
      if (conductor <= 1)
        throw ConfigError("'z' needs a conductor > 1 to mean a root of unity", line, col);
      return Cyclo::zeta(conductor, 1);
    }
    throw ConfigError("unknown symbol '" + s + "' (entries allow rationals and z)", line, col);
  }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value div(const Value& a, const Value& b) {
    if (b.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero in a config value");
    return a * b.inv();
  }
  Value neg(const Value& a) { return -a; }
  Value pow(const Value& a, long e) {
    if (e >= 0) return a.pow(e);
    if (a.is_zero()) fail(ErrorCode::DivisionByZero, "zero raised to a negative power");
    return a.inv().pow(-e);
  }
};

struct PolyCtx {
  SymbolsPtr syms;
  unsigned conductor = 1;
  using Value = MPoly;
  Value number(const Rat& r) { return MPoly::constant(syms, r); }
  Value symbol(const std::string& s, int line, int col) {
    if (auto i = syms->find(s)) return MPoly::var(syms, *i);
    if (s == "z") {
      if (conductor <= 1)
        throw ConfigError("'z' needs a group conductor > 1", line, col);
      return MPoly::constant(syms, Cyclo::zeta(conductor, 1));
    }
    std::string all;
    for (const std::string& n : syms->names()) {
      if (!all.empty()) all += ", ";
      all += n;
    }
    throw ConfigError("unknown coordinate '" + s + "' (expected one of: " + all + ")", line, col);
  }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value div(const Value& a, const Value& b) {
    if (!b.is_constant() || b.terms().empty())
      fail(ErrorCode::DivisionByZero, "polynomials may only be divided by nonzero constants");
    return a.scaled(b.constant_value().inv());
  }
  Value neg(const Value& a) { return -a; }
  Value pow(const Value& a, long e) {
    if (e >= 0) return a.pow((unsigned)e);
    if (!a.is_constant() || a.terms().empty())
      fail(ErrorCode::DivisionByZero, "negative powers need a nonzero constant base");
    return MPoly::constant(syms, a.constant_value().inv().pow(-e));
  }
};

struct PBWCtx {
  AlgebraPtr alg;
  using Value = PBWElement;

  ParamScalar pconst(const Rat& r) const {
    return ParamScalar::constant(alg->parameter().symbols(), r);
  }
  std::optional<ParamScalar> as_scalar(const PBWElement& z) const {
    if (z.is_zero()) return pconst(Rat(0));
    if (z.terms().size() != 1) return std::nullopt;
    const auto& [k, c] = *z.terms().begin();
    if (k.w != 0) return std::nullopt;
    for (unsigned e : k.a)
      if (e) return std::nullopt;
    for (unsigned e : k.b)
      if (e) return std::nullopt;
    return c;
  }

  Value number(const Rat& r) { return alg->scalar(pconst(r)); }
  Value symbol(const std::string& s, int line, int col) {
    if (s.size() >= 2 && (s[0] == 'x' || s[0] == 'y' || s[0] == 'g')) {
      bool digits = true;
      for (size_t i = 1; i < s.size(); ++i)
        digits = digits && std::isdigit((unsigned char)s[i]);
      if (digits) {
        unsigned long idx = std::stoul(s.substr(1));
        if (s[0] == 'g') {
          if (idx < 1 || idx > alg->group()->order())
            throw ConfigError("group element '" + s + "' out of range (order " +
                                  std::to_string(alg->group()->order()) + ")",
                              line, col);
          return alg->ggen((unsigned)(idx - 1));
        }
        if (idx < 1 || idx > alg->dim())
          throw ConfigError("generator '" + s + "' out of range (dimension " +
                                std::to_string(alg->dim()) + ")",
                            line, col);
        return s[0] == 'x' ? alg->xgen((unsigned)(idx - 1)) : alg->ygen((unsigned)(idx - 1));
      }
    }
    if (s == "eu") return alg->euler_element();
    if (s == "z") {
      unsigned n = alg->group()->conductor();
      if (n <= 1) throw ConfigError("'z' needs a group conductor > 1", line, col);
      return alg->scalar(ParamScalar::constant(alg->parameter().symbols(), Cyclo::zeta(n, 1)));
    }
    if (auto i = alg->parameter().symbols()->find(s))
      return alg->scalar(ParamScalar::var(alg->parameter().symbols(), *i));
    throw ConfigError("unknown identifier '" + s +
                          "' (coordinates x<i>, duals y<i>, elements g<k>, parameter slots, "
                          "s, eu)",
                      line, col);
  }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value div(const Value& a, const Value& b) {
    auto c = as_scalar(b);
    if (!c || c->is_zero())
      fail(ErrorCode::DivisionByZero, "algebra elements may only be divided by nonzero scalars");
    return a.scaled(c->inv());
  }
  Value neg(const Value& a) { return -a; }
  Value pow(const Value& a, long e) {
    if (e >= 0) return a.pow((unsigned)e);
    auto c = as_scalar(a);
    if (!c || c->is_zero())
      fail(ErrorCode::DivisionByZero, "negative powers need a nonzero scalar base");
    return alg->scalar(c->inv().pow(-e));
  }
};

template <class Ctx>
typename Ctx::Value eval_text(const ConfigValue& v, Ctx& ctx) {
  return eval_expr(parse_expr(v.text, v.line, v.col), ctx);
}

// ---------------------------------------------------------------------------
// Small shared renderers.

std::string fnv1a_hex(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

SymbolsPtr coordinate_names(unsigned n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (unsigned i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return SymbolSet::make(std::move(names));
}

MPoly linear_form(const SymbolsPtr& syms, const std::vector<Cyclo>& covec) {
  MPoly f = MPoly::constant(syms, Rat(0));
  for (unsigned i = 0; i < covec.size(); ++i)
    if (!covec[i].is_zero()) f = f + MPoly::var(syms, i).scaled(covec[i]);
  return f;
}

std::string group_desc(const GroupPtr& g) {
  if (g->is_cyclic_product()) {
    std::string s;
    for (unsigned o : g->cyclic_orders()) {
      if (!s.empty()) s += " x ";
      s += "Z/" + std::to_string(o);
    }
    return s;
  }
  return "matrix group of order " + std::to_string(g->order());
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::string tuple_str(const std::vector<MPoly>& comps) {
  std::vector<std::string> parts;
  parts.reserve(comps.size());
  for (const MPoly& c : comps) parts.push_back(c.str());
  return "(" + join(parts, ", ") + ")";
}

std::optional<std::pair<unsigned, unsigned>> slot_index(const Parameter& p,
                                                        const std::string& name) {
  for (unsigned o = 0; o < p.orbit_count(); ++o)
    for (unsigned i = 0; i < p.ell(o); ++i)
      if (p.slot_name(o, i) == name) return std::make_pair(o, i);
  return std::nullopt;
}

std::string slot_list(const Parameter& p) {
  std::string all;
  for (unsigned o = 0; o < p.orbit_count(); ++o)
    for (unsigned i = 0; i < p.ell(o); ++i) {
      if (!all.empty()) all += ", ";
      all += p.slot_name(o, i);
    }
  return all;
}

// ---------------------------------------------------------------------------
// [group] and [parameters].

struct GroupBuild {
  GroupPtr group;
  std::string type;
  std::vector<unsigned> orders;                       // cyclic_product
  unsigned conductor = 1;                             // matrix
  std::vector<std::vector<std::vector<Cyclo>>> gens;  // matrix: [gen][row][col]
};

GroupBuild build_group(const Config& cfg) {
  const auto* sec = cfg.section("group");
  if (!sec || sec->empty())
    throw ConfigError("missing [group] section with type = \"cyclic_product\" or \"matrix\"", 1,
                      1);
  const ConfigValue *type = nullptr, *orders = nullptr, *conductor = nullptr,
                    *generators = nullptr;
  for (const auto& [key, v] : *sec) {
    if (key == "type")
      type = &v;
    else if (key == "orders")
      orders = &v;
    else if (key == "conductor")
      conductor = &v;
    else if (key == "generators")
      generators = &v;
    else
      throw ConfigError("unknown [group] key '" + key + "'", v.line, v.col);
  }
  if (!type)
    throw ConfigError("[group] needs type = \"cyclic_product\" or \"matrix\"",
                      sec->front().second.line, sec->front().second.col);
  if (type->kind != K::String) bad_value("type", "string", *type);

  GroupBuild gb;
  gb.type = type->text;
  if (gb.type == "cyclic_product") {
    if (conductor || generators) {
      const ConfigValue* extra = conductor ? conductor : generators;
      throw ConfigError("cyclic_product groups take only 'orders'", extra->line, extra->col);
    }
    if (!orders)
      throw ConfigError("group type \"cyclic_product\" needs orders = [l1, l2, ...]", type->line,
                        type->col);
    if (orders->kind != K::List || orders->items.empty())
      throw ConfigError("orders must be a non-empty list of integers", orders->line, orders->col);
    for (const ConfigValue& it : orders->items) {
      if (it.kind != K::Number || !rat_is_integer(it.num))
        throw ConfigError("orders must be integers", it.line, it.col);
      long l = rat_to_long(it.num);
      if (l < 1) throw ConfigError("orders must be >= 1", it.line, it.col);
      gb.orders.push_back((unsigned)l);
    }
    gb.group = ReflectionGroup::cyclic_product(gb.orders);
    return gb;
  }
  if (gb.type == "matrix") {
    if (orders)
      throw ConfigError("matrix groups take 'conductor' and 'generators', not 'orders'",
                        orders->line, orders->col);
    if (conductor) {
      long c = int_of(*conductor, "conductor");
      if (c < 1) throw ConfigError("conductor must be >= 1", conductor->line, conductor->col);
      gb.conductor = (unsigned)c;
    }
    if (!generators)
      throw ConfigError("group type \"matrix\" needs generators = [[[...], ...], ...]",
                        type->line, type->col);
    if (generators->kind != K::List || generators->items.empty())
      throw ConfigError("generators must be a non-empty list of square matrices",
                        generators->line, generators->col);
    unsigned dim = 0;
    std::vector<CMat> mats;
    CycloCtx cctx{gb.conductor};
    for (const ConfigValue& gm : generators->items) {
      if (gm.kind != K::List || gm.items.empty())
        throw ConfigError("each generator is a list of rows", gm.line, gm.col);
      unsigned n = (unsigned)gm.items.size();
      if (dim == 0) dim = n;
      if (n != dim)
        throw ConfigError("generator matrices must share one dimension", gm.line, gm.col);
      CMat m(n, n, Cyclo(Rat(0)));
      std::vector<std::vector<Cyclo>> rows;
      for (unsigned r = 0; r < n; ++r) {
        const ConfigValue& row = gm.items[r];
        if (row.kind != K::List || row.items.size() != n)
          throw ConfigError("each row needs " + std::to_string(n) + " entries", row.line,
                            row.col);
        std::vector<Cyclo> rv;
        for (unsigned c = 0; c < n; ++c) {
          const ConfigValue& entry = row.items[c];
          Cyclo val;
          if (entry.kind == K::Number)
            val = Cyclo(entry.num);
          else if (entry.kind == K::String)
            val = eval_text(entry, cctx);
          else
            bad_value("generators", "matrix entry (number or quoted expression)", entry);
          m.at(r, c) = val;
          rv.push_back(val);
        }
        rows.push_back(std::move(rv));
      }
      mats.push_back(std::move(m));
      gb.gens.push_back(std::move(rows));
    }
    gb.group = ReflectionGroup::from_matrices(dim, gb.conductor, mats);
    return gb;
  }
  throw ConfigError("unknown group type '" + gb.type + "' (cyclic_product or matrix)", type->line,
                    type->col);
}

Parameter build_parameter(const GroupPtr& g, const Config& cfg) {
  Parameter probe = make_parameter(g);
  std::map<std::string, Rat> spec;
  if (const auto* sec = cfg.section("parameters")) {
    std::set<std::string> valid;
    for (unsigned o = 0; o < probe.orbit_count(); ++o)
      for (unsigned i = 0; i < probe.ell(o); ++i) valid.insert(probe.slot_name(o, i));
    for (const auto& [key, v] : *sec) {
      if (!valid.count(key)) {
        std::string hint = valid.empty() ? " (this group has no reflections)"
                                         : " (expected one of: " + slot_list(probe) + ")";
        throw ConfigError("unknown parameter slot '" + key + "'" + hint, v.line, v.col);
      }
      Rat val;
      if (v.kind == K::Number) {
        val = v.num;
      } else if (v.kind == K::String) {
        RatCtx rctx;
        val = eval_text(v, rctx);
      } else {
        bad_value(key, "rational", v);
      }
      spec[key] = val;
    }
  }
  return make_parameter(g, spec);
}

// ---------------------------------------------------------------------------
// Melys sources and irreducible lowest pieces, shared by parse-time validation
// and the handlers.

LinearRep build_melys_source(const Job& job, const std::string& kind, long extra, long power) {
  const GroupPtr& g = job.group;
  if (kind == "defining") return defining_rep(g);
  if (kind == "trivial") return trivial_rep(g, (unsigned)extra);
  if (kind == "defining+trivial")
    return direct_sum(defining_rep(g), trivial_rep(g, (unsigned)extra));
  if (kind == "defining+defining") {
    LinearRep second = defining_rep(g);
    std::vector<std::string> names;
    for (unsigned i = 0; i < second.dim; ++i) names.push_back("u" + std::to_string(i + 1));
    second.coords = SymbolSet::make(std::move(names));
    return direct_sum(defining_rep(g), second);
  }
  if (kind == "character") {
    LinearRep rep;
    rep.group = g;
    rep.dim = 1;
    rep.coords = SymbolSet::make({"y1"});
    Cyclo zero{Rat(0)};
    for (unsigned e = 0; e < g->order(); ++e) {
      CMat m(1, 1, zero);
      m.at(0, 0) = g->matrix(e).at(0, 0).pow(power);
      rep.mats.push_back(std::move(m));
    }
    return rep;
  }
  fail(ErrorCode::ConfigError,
       "unknown source '" + kind +
           "' (defining, trivial, character, defining+trivial, defining+defining)");
}

Irrep irrep_from_config(const Job& job, const std::string& name, const ConfigValue& v) {
  CycloCtx cctx{job.group->conductor()};
  std::vector<CMat> gens;
  for (const ConfigValue& gm : v.items) {
    if (gm.kind != K::List || gm.items.empty())
      throw ConfigError("irrep generator image must be a matrix (list of rows)", gm.line, gm.col);
    unsigned n = (unsigned)gm.items.size();
    CMat m(n, n, Cyclo(Rat(0)));
    for (unsigned r = 0; r < n; ++r) {
      const ConfigValue& row = gm.items[r];
      if (row.kind != K::List || row.items.size() != n)
        throw ConfigError("irrep matrices must be square", row.line, row.col);
      for (unsigned c = 0; c < n; ++c) {
        const ConfigValue& entry = row.items[c];
        if (entry.kind == K::Number)
          m.at(r, c) = Cyclo(entry.num);
        else if (entry.kind == K::String)
          m.at(r, c) = eval_text(entry, cctx);
        else
          bad_value("irrep." + name, "matrix entry (number or quoted expression)", entry);
      }
    }
    gens.push_back(std::move(m));
  }
  return job.group->make_irrep(name, gens);
}

Irrep resolve_lowest(const Job& job, const std::string& name) {
  if (const ConfigValue* v = job.config.find("options", "irrep." + name))
    return irrep_from_config(job, name, *v);
  if (!job.group->is_abelian())
    fail(ErrorCode::NeedExplicitIrreps,
         "group is not abelian: provide [options] irrep." + name + " = [generator matrices]");
  return job.group->character_by_name(name);
}

std::vector<Irrep> resolve_irrep_list(const Job& job) {
  std::vector<std::pair<std::string, const ConfigValue*>> given;
  if (const auto* sec = job.config.section("options"))
    for (const auto& [key, v] : *sec)
      if (key.rfind("irrep.", 0) == 0) given.emplace_back(key.substr(6), &v);
  if (!given.empty()) {
    std::sort(given.begin(), given.end());
    std::vector<Irrep> out;
    out.reserve(given.size());
    for (const auto& [name, v] : given) out.push_back(irrep_from_config(job, name, *v));
    return out;
  }
  if (!job.group->is_abelian())
    fail(ErrorCode::NeedExplicitIrreps,
         "group is not abelian: provide the irreducibles as [options] irrep.<name> entries");
  return job.group->characters();
}

// ---------------------------------------------------------------------------
// Canonical config accessors used by the handlers. The echo always carries the
// keys the command declares (defaults filled), so lookups cannot miss.

const ConfigValue& cval(const Job& job, const char* sec, const char* key) {
  const ConfigValue* v = job.config.find(sec, key);
  if (!v)
    fail(ErrorCode::InternalError,
         std::string("canonical config lost key ") + sec + "." + key);
  return *v;
}

long cint(const Job& job, const char* sec, const char* key) {
  return rat_to_long(cval(job, sec, key).num);
}
bool cbool(const Job& job, const char* sec, const char* key) {
  return cval(job, sec, key).flag;
}
const std::string& cstr(const Job& job, const char* sec, const char* key) {
  return cval(job, sec, key).text;
}

Parameter shift_target(const Job& job) {
  Parameter target = job.param;
  std::vector<std::pair<std::string, const ConfigValue*>> slots;
  if (const auto* sec = job.config.section("options"))
    for (const auto& [key, v] : *sec)
      if (key.rfind("target.", 0) == 0) slots.emplace_back(key.substr(7), &v);
  for (const auto& [name, v] : slots) {
    auto oi = slot_index(job.param, name);
    if (!oi)
      throw ConfigError("unknown parameter slot '" + name + "' (expected one of: " +
                            slot_list(job.param) + ")",
                        v->line, v->col);
    Rat val;
    if (v->kind == K::Number) {
      val = v->num;
    } else {
      RatCtx rctx;
      val = eval_text(*v, rctx);
    }
    target = target.with_slot(oi->first, oi->second, job.param.rational(val));
  }
  return target;
}

// ---------------------------------------------------------------------------
// Handlers. Each appends human-readable lines and returns the result payload.

json h_reflections(const Job& job, std::vector<std::string>& lines) {
  const ReflectionGroup& g = *job.group;
  SymbolsPtr syms = coordinate_names(g.dim());
  json hyps = json::array();
  for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
    const Hyperplane& H = g.hyperplanes()[h];
    std::string alpha = g.alpha_poly((unsigned)h, syms).str();
    hyps.push_back({{"index", h}, {"alpha", alpha}, {"order", H.ell}, {"orbit", H.orbit}});
    lines.push_back("hyperplane " + std::to_string(h) + ": alpha = " + alpha + ", order " +
                    std::to_string(H.ell) + ", orbit " + std::to_string(H.orbit));
  }
  json refs = json::array();
  for (const Reflection& r : g.reflections()) {
    refs.push_back({{"element", g.element_name(r.elem)},
                    {"hyperplane", r.hyp},
                    {"eigenvalue", r.lambda.str()}});
    lines.push_back("reflection " + g.element_name(r.elem) + ": hyperplane " +
                    std::to_string(r.hyp) + ", eigenvalue " + r.lambda.str());
  }
  json chars = json::array();
  if (g.is_abelian())
    for (const Irrep& c : g.characters()) chars.push_back(c.name);
  lines.push_back("parameter slots: " +
                  (job.param.orbit_count() ? slot_list(job.param) : std::string("(none)")));
  json out;
  out["order"] = g.order();
  out["dim"] = g.dim();
  out["conductor"] = g.conductor();
  out["abelian"] = g.is_abelian();
  out["hyperplanes"] = hyps;
  out["reflections"] = refs;
  out["characters"] = chars;
  out["parameter_slots"] = json::array();
  for (unsigned o = 0; o < job.param.orbit_count(); ++o)
    for (unsigned i = 0; i < job.param.ell(o); ++i)
      out["parameter_slots"].push_back(job.param.slot_name(o, i));
  return out;
}

json h_normal_form(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  PBWCtx ctx{alg};
  const ConfigValue& v = cval(job, "command", "expr");
  PBWElement z = eval_text(v, ctx);
  lines.push_back("input: " + v.text);
  lines.push_back("normal form: " + z.str());
  json out;
  out["input"] = v.text;
  out["normal_form"] = z.str();
  out["terms"] = z.terms().size();
  return out;
}

json h_dunkl(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  PolyCtx pctx{alg->coordinate_symbols(), job.group->conductor()};
  const ConfigValue& pv = cval(job, "command", "p");
  MPoly p = eval_text(pv, pctx);
  XTermMap m;
  for (const auto& [e, c] : p.terms()) m[e] = ParamScalar::constant(job.param.symbols(), c);
  long j = cint(job, "command", "j");
  XTermMap out = dunkl_apply(*alg, (unsigned)(j - 1), m);
  std::string res = xterm_str(*alg, out);
  lines.push_back("T_" + std::to_string(j) + "(" + p.str() + ") = " + res);
  json payload;
  payload["p"] = p.str();
  payload["j"] = j;
  payload["result"] = res;
  return payload;
}

json h_verma(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  Irrep low = resolve_lowest(job, cstr(job, "command", "lowest"));
  VermaModule M(alg, low);
  unsigned N = job.truncation;
  lines.push_back("standard module over lowest piece '" + low.name + "' (dim " +
                  std::to_string(low.dim) + ")");
  lines.push_back("lowest weight: " + M.lowest_weight().str());
  json dims = json::array();
  std::string dimline = "graded dims 0.." + std::to_string(N) + ":";
  for (unsigned m = 0; m <= N; ++m) {
    dims.push_back(M.dim(m));
    dimline += " " + std::to_string(M.dim(m));
  }
  lines.push_back(dimline);
  json eus = json::array();
  for (unsigned m = 0; m <= N; ++m)
    eus.push_back((M.lowest_weight() + job.param.rational(Rat((long)m))).str());
  lines.push_back("euler eigenvalue on degree m: " + M.lowest_weight().str() + " + m");
  json out;
  out["lowest"] = low.name;
  out["lowest_dim"] = low.dim;
  out["lowest_weight"] = M.lowest_weight().str();
  out["truncation"] = N;
  out["graded_dims"] = dims;
  out["euler_eigenvalues"] = eus;
  return out;
}

json h_gram(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  Irrep low = resolve_lowest(job, cstr(job, "command", "lowest"));
  VermaModule M(alg, low);
  unsigned N = job.truncation;
  lines.push_back("contravariant form on the standard module over '" + low.name + "'");
  json dets = json::array();
  for (unsigned m = 0; m <= N; ++m) {
    ParamScalar d = M.gram(m).det();
    dets.push_back({{"degree", m}, {"dim", M.dim(m)}, {"det", d.str()}});
    lines.push_back("degree " + std::to_string(m) + ": dim " + std::to_string(M.dim(m)) +
                    ", gram det = " + d.str());
  }
  json out;
  out["lowest"] = low.name;
  out["truncation"] = N;
  out["gram_dets"] = dets;
  return out;
}

json h_singular(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  Irrep low = resolve_lowest(job, cstr(job, "command", "lowest"));
  VermaModule M(alg, low);
  std::vector<unsigned> degrees;
  if (const ConfigValue* dv = job.config.find("command", "degree")) {
    degrees.push_back((unsigned)rat_to_long(dv->num));
  } else {
    for (unsigned m = 1; m <= job.truncation; ++m) degrees.push_back(m);
  }
  json out_degrees = json::array();
  for (unsigned m : degrees) {
    auto vecs = singular_vectors(M, m);
    json basis = json::array();
    std::vector<std::string> labels;
    for (const auto& [e, k] : M.basis(m)) {
      std::string mono = MPoly::monomial(alg->coordinate_symbols(), e, Cyclo(Rat(1))).str();
      labels.push_back(mono + "*v" + std::to_string(k));
      basis.push_back(labels.back());
    }
    json jvecs = json::array();
    std::vector<std::string> rendered;
    for (const auto& vec : vecs) {
      json coords = json::array();
      std::string combo;
      for (size_t i = 0; i < vec.size(); ++i) {
        coords.push_back(vec[i].str());
        if (!vec[i].is_zero()) {
          if (!combo.empty()) combo += " + ";
          combo += "(" + vec[i].str() + ")*" + labels[i];
        }
      }
      if (combo.empty()) combo = "0";
      rendered.push_back(combo);
      jvecs.push_back(coords);
    }
    out_degrees.push_back({{"degree", m},
                           {"count", vecs.size()},
                           {"basis", basis},
                           {"vectors", jvecs},
                           {"rendered", rendered}});
    lines.push_back("degree " + std::to_string(m) + ": " + std::to_string(vecs.size()) +
                    " singular vector(s)");
    for (const std::string& r : rendered) lines.push_back("  " + r);
  }
  json out;
  out["lowest"] = low.name;
  out["degrees"] = out_degrees;
  return out;
}

json h_regular(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  std::vector<Irrep> irreps = resolve_irrep_list(job);
  unsigned N = job.truncation;
  TruncatedVerdict v = is_regular_truncated(alg, irreps, N);
  std::string caveat = "up to degree " + std::to_string(v.truncation);
  lines.push_back(std::string("regular ") + caveat + ": " + (v.holds ? "yes" : "no"));
  if (!v.witness.empty()) lines.push_back("witness: " + v.witness);
  lines.push_back("caveat: the verdict is truncated, " + caveat);
  json out;
  out["holds"] = v.holds;
  out["witness"] = v.witness;
  out["truncation"] = v.truncation;
  out["caveat"] = caveat;
  return out;
}

json h_aspherical(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  std::vector<Irrep> irreps = resolve_irrep_list(job);
  unsigned N = job.truncation;
  TruncatedVerdict v = is_aspherical_truncated(alg, irreps, N);
  std::string caveat = "up to degree " + std::to_string(v.truncation);
  lines.push_back(std::string("aspherical ") + caveat + ": " + (v.holds ? "yes" : "no"));
  if (!v.witness.empty()) lines.push_back("witness: " + v.witness);
  json cands = json::array();
  for (const ParamScalar& c : aspherical_candidates(alg, irreps, N)) {
    cands.push_back(c.str());
    lines.push_back("candidate locus: " + c.str() + " = 0");
  }
  lines.push_back("caveat: the verdict is truncated, " + caveat);
  json out;
  out["holds"] = v.holds;
  out["witness"] = v.witness;
  out["truncation"] = v.truncation;
  out["caveat"] = caveat;
  out["candidates"] = cands;
  return out;
}

ExpVec monomial_exponents(const Job& job, const AlgebraPtr& alg, const ConfigValue& v) {
  PolyCtx pctx{alg->coordinate_symbols(), job.group->conductor()};
  MPoly f = eval_text(v, pctx);
  if (f.terms().size() != 1 || !(f.leading_coeff() == Cyclo(Rat(1))))
    throw ConfigError("expected a monomial with coefficient 1, got " + f.str(), v.line, v.col);
  return f.leading_exp();
}

json h_bfunction(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  const ConfigValue& fv = cval(job, "command", "f");
  ExpVec fexp = monomial_exponents(job, alg, fv);
  ExpVec gen;
  if (const ConfigValue* gv = job.config.find("command", "gen"))
    gen = monomial_exponents(job, alg, *gv);
  long d = cint(job, "options", "max-op-degree");
  long sc = cint(job, "options", "s-degree-cap");
  BFunctionResult r = bfunction_monomial(alg, fexp, gen, (unsigned)d, (unsigned)sc);
  if (!r.certificate_ok)
    fail(ErrorCode::InternalError, "functional equation certificate failed for f = " + fv.text);
  std::string b = b_function_str(r, job.param);
  lines.push_back("f = " + fv.text);
  lines.push_back("b(s) = " + b);
  lines.push_back("operator degree: " + std::to_string(r.op_degree));
  lines.push_back("certificate: ok (fnv1a " + fnv1a_hex(r.certificate) + ")");
  json roots = json::array();
  std::string rootline;
  for (const Rat& root : b_constant_roots(r, job.param)) {
    roots.push_back(rat_str(root));
    if (!rootline.empty()) rootline += ", ";
    rootline += rat_str(root);
  }
  if (!rootline.empty()) lines.push_back("rational roots: " + rootline);
  json coeffs = json::array();
  for (const ParamScalar& c : r.b) coeffs.push_back(c.str());
  json out;
  out["f"] = fv.text;
  out["b"] = b;
  out["b_degree"] = r.b_degree();
  out["b_coefficients"] = coeffs;
  out["operator"] = r.D.str();
  out["operator_degree"] = r.op_degree;
  out["certificate_ok"] = r.certificate_ok;
  out["certificate_fnv1a"] = fnv1a_hex(r.certificate);
  out["rational_roots"] = roots;
  return out;
}

json line_module_json(const LineModule& m) {
  json out;
  out["kind"] = m.kind() == LineKind::Localized ? "localized" : "polynomial";
  out["module"] = m.describe();
  out["eu_constant"] = m.eu_constant().str();
  json br = json::array();
  for (long b : m.breaks()) br.push_back(b);
  out["breaks"] = br;
  return out;
}

json h_localize(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  long k = cint(job, "command", "k");
  LineModule M = LineModule::standard(alg, (unsigned)k);
  LineModule L = M.localized();
  lines.push_back("standard module: " + M.describe());
  lines.push_back("localized module: " + L.describe());
  lines.push_back("eu eigenvalue on m_i: i + " + L.eu_constant().str());
  std::string br;
  for (long b : L.breaks()) {
    if (!br.empty()) br += ", ";
    br += std::to_string(b);
  }
  lines.push_back("breaks: " + (br.empty() ? "(none)" : br));
  json out;
  out["k"] = k;
  out["standard"] = M.describe();
  out["localized"] = line_module_json(L);
  return out;
}

json h_series(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  long k = cint(job, "command", "k");
  bool localized = cbool(job, "command", "localized");
  LineModule M = LineModule::standard(alg, (unsigned)k);
  if (localized) M = M.localized();
  CompositionSeries S = composition_series_line(M);
  unsigned N = job.truncation;
  bool within = S.certified && S.window_needed <= (long)N;
  std::string status = within ? "certified" : "window-truncated";
  std::string caveat = "up to degree " + std::to_string(N);
  if (within)
    caveat += " (all break points lie in the window)";
  else
    caveat += " (break points reach |i| = " + std::to_string(S.window_needed) + ")";
  lines.push_back("module: " + M.describe());
  lines.push_back("composition series length " + std::to_string(S.length()) + " (" + status +
                  ")");
  json factors = json::array();
  for (const CompositionFactor& f : S.factors) {
    factors.push_back(f.describe(S.eu_constant));
    lines.push_back("  factor: " + f.describe(S.eu_constant));
  }
  lines.push_back("caveat: " + caveat);
  json br = json::array();
  for (long b : S.breaks) br.push_back(b);
  json out;
  out["k"] = k;
  out["localized"] = localized;
  out["module"] = M.describe();
  out["length"] = S.length();
  out["breaks"] = br;
  out["eu_constant"] = S.eu_constant.str();
  out["factors"] = factors;
  out["status"] = status;
  out["caveat"] = caveat;
  return out;
}

json h_shift(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  long k = cint(job, "command", "k");
  bool omega_all = cbool(job, "options", "omega-all");
  Parameter target = shift_target(job);
  LineModule M = LineModule::standard(alg, (unsigned)k).localized();
  LineModule S = shift_functor_line(M, target, omega_all);
  lines.push_back("source: " + M.describe());
  json tslots = json::object();
  std::string tline;
  for (unsigned o = 0; o < target.orbit_count(); ++o)
    for (unsigned i = 0; i < target.ell(o); ++i) {
      tslots[target.slot_name(o, i)] = target.kappa(o, (long)i).str();
      if (!tline.empty()) tline += ", ";
      tline += target.slot_name(o, i) + " = " + target.kappa(o, (long)i).str();
    }
  lines.push_back("target parameters: " + (tline.empty() ? "(none)" : tline));
  lines.push_back("shifted: " + S.describe());
  json out;
  out["k"] = k;
  out["omega_all"] = omega_all;
  out["source"] = M.describe();
  out["target_parameters"] = tslots;
  out["shifted"] = line_module_json(S);
  return out;
}

json h_jacquet(const Job& job, std::vector<std::string>& lines) {
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  std::vector<LineSummand> parts;
  json jstd = json::array();
  for (const ConfigValue& it : cval(job, "command", "standard").items) {
    long k = rat_to_long(it.num);
    parts.push_back(LineSummand::of(LineModule::standard(alg, (unsigned)k)));
    jstd.push_back(k);
  }
  json jtor = json::array();
  PolyCtx pctx{alg->coordinate_symbols(), job.group->conductor()};
  for (const ConfigValue& it : cval(job, "command", "torsion").items) {
    MPoly g = eval_text(it, pctx);
    if (g.terms().empty())
      throw ConfigError("torsion polynomial must be nonzero", it.line, it.col);
    std::vector<Rat> co((size_t)g.total_degree() + 1, Rat(0));
    for (const auto& [e, c] : g.terms()) {
      if (!c.is_rational())
        throw ConfigError("torsion coefficients must be rational", it.line, it.col);
      co[e[0]] = c.to_rat();
    }
    parts.push_back(LineSummand::quotient(std::move(co)));
    jtor.push_back(g.str());
  }
  std::vector<LineModule> survivors = jacquet_line(alg, parts);
  lines.push_back("summands in: " + std::to_string(parts.size()) + ", locally finite parts out: " +
                  std::to_string(survivors.size()));
  json jout = json::array();
  for (const LineModule& m : survivors) {
    jout.push_back(m.describe());
    lines.push_back("  " + m.describe());
  }
  if (survivors.size() < parts.size())
    lines.push_back("dropped " + std::to_string(parts.size() - survivors.size()) +
                    " summand(s) supported away from 0");
  json out;
  out["standard"] = jstd;
  out["torsion"] = jtor;
  out["survivors"] = jout;
  out["dropped"] = parts.size() - survivors.size();
  return out;
}

struct MelysInput {
  LinearRep source;
  EquivariantMap phi;
  SParameter c;
};

MelysInput build_melys_input(const Job& job) {
  LinearRep source =
      build_melys_source(job, cstr(job, "command", "source"), cint(job, "command", "source-dim"),
                         cint(job, "command", "source-power"));
  LinearRep target = defining_rep(job.group);
  const ConfigValue& mv = cval(job, "command", "map");
  PolyCtx pctx{source.coords, job.group->conductor()};
  std::vector<MPoly> comps;
  for (const ConfigValue& it : mv.items) {
    if (it.kind != K::String) bad_value("map", "list of component strings", it);
    comps.push_back(eval_text(it, pctx));
  }
  if (comps.size() != job.group->dim())
    throw ConfigError("map needs " + std::to_string(job.group->dim()) +
                          " components (one per target coordinate), got " +
                          std::to_string(comps.size()),
                      mv.line, mv.col);
  EquivariantMap phi(source, target, std::move(comps));
  return MelysInput{std::move(source), std::move(phi), defining_sparameter(job.param)};
}

json pair_json(const LinearRep& rep, const ReflectionPair& pr, const ParamScalar& value) {
  json out;
  out["element"] = rep.group->element_name(pr.elem);
  out["hyperplane"] = linear_form(rep.coords, pr.normal).str();
  out["value"] = value.str();
  return out;
}

json h_melys_check(const Job& job, std::vector<std::string>& lines) {
  MelysInput in = build_melys_input(job);
  MelysReport rm = is_melys(in.phi, in.c);
  MelysReport rs = is_strongly_melys(in.phi, in.c);
  lines.push_back("map: " + tuple_str(in.phi.components()));
  lines.push_back(std::string("melys: ") + (rm.ok ? "yes" : "no"));
  json out;
  out["source"] = cstr(job, "command", "source");
  out["source_coordinates"] = json::array();
  for (const std::string& n : in.source.coords->names()) out["source_coordinates"].push_back(n);
  out["map"] = json::array();
  for (const MPoly& c : in.phi.components()) out["map"].push_back(c.str());
  out["melys"] = rm.ok;
  out["strongly_melys"] = rs.ok;
  if (!rm.ok) {
    const ReflectionPair& pr = in.c.pairs[*rm.witness];
    json w;
    w["element"] = job.group->element_name(pr.elem);
    w["hyperplane"] = linear_form(defining_rep(job.group).coords, pr.normal).str();
    w["detail"] = rm.detail;
    out["witness"] = w;
    lines.push_back("witness: " + rm.detail);
  } else if (!rs.ok) {
    const ReflectionPair& pr = in.c.pairs[*rs.witness];
    json w;
    w["element"] = job.group->element_name(pr.elem);
    w["hyperplane"] = linear_form(defining_rep(job.group).coords, pr.normal).str();
    w["detail"] = rs.detail;
    out["strong_witness"] = w;
    lines.push_back("strongly melys: no (" + rs.detail + ")");
  } else {
    lines.push_back("strongly melys: yes");
  }
  if (rm.ok) {
    SParameter pc = pullback_parameter(in.phi, in.c);
    json pulls = json::array();
    for (size_t i = 0; i < pc.pairs.size(); ++i) {
      pulls.push_back(pair_json(in.source, pc.pairs[i], pc.values[i]));
      lines.push_back("pullback on (" + job.group->element_name(pc.pairs[i].elem) + ", " +
                      linear_form(in.source.coords, pc.pairs[i].normal).str() +
                      " = 0): " + pc.values[i].str());
    }
    out["pullback"] = pulls;
  }
  if (cbool(job, "command", "classify") && rm.ok) {
    try {
      MelysClassification mc = classify_irreducible_melys(in.phi, in.c);
      json jc;
      switch (mc.branch) {
        case MelysBranch::Zero: jc["branch"] = "zero"; break;
        case MelysBranch::Projection: jc["branch"] = "projection"; break;
        case MelysBranch::PowerMap: jc["branch"] = "power-map"; break;
      }
      jc["r"] = mc.r;
      if (mc.branch == MelysBranch::Projection) {
        json rows = json::array();
        for (size_t r = 0; r < mc.matrix.rows(); ++r) {
          json row = json::array();
          for (size_t c = 0; c < mc.matrix.cols(); ++c) row.push_back(mc.matrix.at(r, c).str());
          rows.push_back(row);
        }
        jc["matrix"] = rows;
      }
      if (mc.branch == MelysBranch::PowerMap) {
        jc["root"] = mc.root.str();
        jc["unit"] = mc.unit.str();
      }
      out["classification"] = jc;
      lines.push_back("classification: " + std::string(jc["branch"].get<std::string>()) +
                      (mc.branch == MelysBranch::PowerMap
                           ? " of exponent " + std::to_string(mc.r)
                           : ""));
    } catch (const Error& e) {
      json jc;
      jc["code"] = code_name(e.code());
      jc["message"] = e.what();
      out["classification"] = jc;
      lines.push_back(std::string("classification unavailable: ") + e.what());
    }
  }
  return out;
}

json map_json(const EquivariantMap& m) {
  json out;
  out["source_coordinates"] = json::array();
  for (const std::string& n : m.source().coords->names())
    out["source_coordinates"].push_back(n);
  out["components"] = json::array();
  for (const MPoly& c : m.components()) out["components"].push_back(c.str());
  return out;
}

json h_melys_factor(const Job& job, std::vector<std::string>& lines) {
  MelysInput in = build_melys_input(job);
  MelysFactorization f = factor_linear_melys(in.phi, in.c);
  lines.push_back("map: " + tuple_str(in.phi.components()));
  bool restricted = f.group->order() != job.group->order();
  if (restricted)
    lines.push_back("restricted to the subgroup generated by pairs with c != 0 (order " +
                    std::to_string(f.group->order()) + ")");
  std::vector<std::string> src_names = in.source.coords->names();
  lines.push_back("source coordinates: (" + join(src_names, ", ") + ")");
  lines.push_back("embedding:  -> " + tuple_str(f.embedding.components()));
  lines.push_back("power:      -> " + tuple_str(f.power.components()));
  lines.push_back("projection: -> " + tuple_str(f.projection.components()));
  std::string exps;
  for (unsigned e : f.exponents) {
    if (!exps.empty()) exps += ", ";
    exps += std::to_string(e);
  }
  lines.push_back("coordinate exponents: [" + exps + "]");
  lines.push_back("composite equals the input map");
  json out;
  out["map"] = json::array();
  for (const MPoly& c : in.phi.components()) out["map"].push_back(c.str());
  out["subgroup_order"] = f.group->order();
  out["restricted"] = restricted;
  out["exponents"] = json::array();
  for (unsigned e : f.exponents) out["exponents"].push_back(e);
  out["embedding"] = map_json(f.embedding);
  out["power"] = map_json(f.power);
  out["projection"] = map_json(f.projection);
  out["composite"] = map_json(f.composite);
  out["matches_input"] = true;
  return out;
}

json h_strata(const Job& job, std::vector<std::string>& lines) {
  std::vector<Stratum> strata = stabilizer_strata(job.group);
  lines.push_back(std::to_string(strata.size()) + " orbit(s) of stabilizer strata");
  json out = json::array();
  for (size_t i = 0; i < strata.size(); ++i) {
    const Stratum& s = strata[i];
    json js;
    js["dimension"] = s.dimension;
    js["orbit_size"] = s.orbit_size;
    js["stabilizer_order"] = s.parabolic.size();
    js["parabolic"] = json::array();
    std::string pnames;
    for (unsigned g : s.parabolic) {
      js["parabolic"].push_back(job.group->element_name(g));
      if (!pnames.empty()) pnames += ", ";
      pnames += job.group->element_name(g);
    }
    js["equations"] = json::array();
    std::string eqs;
    for (const MPoly& e : s.equations) {
      js["equations"].push_back(e.str());
      if (!eqs.empty()) eqs += ", ";
      eqs += e.str() + " = 0";
    }
    js["inequations"] = json::array();
    std::string ineqs;
    for (const MPoly& e : s.inequations) {
      js["inequations"].push_back(e.str());
      if (!ineqs.empty()) ineqs += ", ";
      ineqs += e.str() + " != 0";
    }
    out.push_back(js);
    lines.push_back("stratum " + std::to_string(i) + ": dim " + std::to_string(s.dimension) +
                    ", orbit size " + std::to_string(s.orbit_size) + ", stabilizer order " +
                    std::to_string(s.parabolic.size()) +
                    (eqs.empty() ? "" : ", " + eqs) + (ineqs.empty() ? "" : ", " + ineqs) +
                    ", stabilizer {" + pnames + "}");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parse-time semantic validation beyond the key table: ranges, grammars and
// representation-theoretic inputs, reported with config positions.

void validate_semantics(const Job& job, const CommandDef& cd, const Config& raw) {
  const std::string& cmd = job.command;
  if (cd.needs_line && job.group->dim() != 1)
    fail(ErrorCode::ConfigError, "command '" + cmd +
                                     "' needs a group acting on a line (dimension 1, got " +
                                     std::to_string(job.group->dim()) + ")");

  auto int_key = [&](const char* sec, const char* key, long lo,
                     const char* what) -> std::optional<long> {
    const ConfigValue* v = raw.find(sec, key);
    if (!v) return std::nullopt;
    long x = int_of(*v, key);
    if (x < lo)
      throw ConfigError(std::string(what) + " must be >= " + std::to_string(lo), v->line, v->col);
    return x;
  };

  if (cmd == "dunkl") {
    if (auto j = int_key("command", "j", 1, "j"))
      if (*j > (long)job.group->dim())
        throw ConfigError("j must be at most the dimension " + std::to_string(job.group->dim()),
                          raw.find("command", "j")->line, raw.find("command", "j")->col);
    AlgebraPtr alg = CherednikAlgebra::make(job.param);
    PolyCtx pctx{alg->coordinate_symbols(), job.group->conductor()};
    eval_text(*raw.find("command", "p"), pctx);
  }
  if (cmd == "normal-form") {
    AlgebraPtr alg = CherednikAlgebra::make(job.param);
    PBWCtx ctx{alg};
    eval_text(*raw.find("command", "expr"), ctx);
  }
  if (cmd == "verma" || cmd == "gram" || cmd == "singular") {
    const ConfigValue* lv = raw.find("command", "lowest");
    std::string name = lv ? lv->text : "triv";
    try {
      resolve_lowest(job, name);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      if (lv) throw ConfigError(e.what(), lv->line, lv->col);
      throw;
    }
    int_key("command", "degree", 1, "degree");
  }
  if (cmd == "regular" || cmd == "aspherical") resolve_irrep_list(job);
  if (cmd == "bfunction") {
    AlgebraPtr alg = CherednikAlgebra::make(job.param);
    monomial_exponents(job, alg, *raw.find("command", "f"));
    if (const ConfigValue* gv = raw.find("command", "gen"))
      monomial_exponents(job, alg, *gv);
    int_key("options", "max-op-degree", 1, "max-op-degree");
    int_key("options", "s-degree-cap", 0, "s-degree-cap");
  }
  if (cmd == "localize" || cmd == "series" || cmd == "shift" || cmd == "jacquet")
    int_key("command", "k", 0, "k");
  if (cmd == "series") {
    for (unsigned o = 0; o < job.param.orbit_count(); ++o)
      for (unsigned i = 0; i < job.param.ell(o); ++i)
        if (!job.param.kappa(o, (long)i).is_constant())
          fail(ErrorCode::ConfigError,
               "command 'series' needs rational parameters: slot " + job.param.slot_name(o, i) +
                   " of orbit " + std::to_string(o) + " is symbolic");
  }
  if (cmd == "jacquet") {
    if (const ConfigValue* sv = raw.find("command", "standard"))
      for (const ConfigValue& it : sv->items) {
        if (it.kind != K::Number || !rat_is_integer(it.num))
          throw ConfigError("standard summands are integers k >= 0", it.line, it.col);
        if (rat_to_long(it.num) < 0)
          throw ConfigError("standard summands are integers k >= 0", it.line, it.col);
      }
    if (const ConfigValue* tv = raw.find("command", "torsion")) {
      AlgebraPtr alg = CherednikAlgebra::make(job.param);
      PolyCtx pctx{alg->coordinate_symbols(), job.group->conductor()};
      for (const ConfigValue& it : tv->items) {
        if (it.kind != K::String) bad_value("torsion", "list of polynomial strings", it);
        MPoly g = eval_text(it, pctx);
        if (g.terms().empty())
          throw ConfigError("torsion polynomial must be nonzero", it.line, it.col);
        for (const auto& [e, c] : g.terms())
          if (!c.is_rational())
            throw ConfigError("torsion coefficients must be rational", it.line, it.col);
      }
    }
  }
  if (cmd == "melys-check" || cmd == "melys-factor") {
    const ConfigValue* sv = raw.find("command", "source");
    std::string kind = sv ? sv->text : "defining";
    static const std::set<std::string> kinds{"defining", "trivial", "character",
                                             "defining+trivial", "defining+defining"};
    if (!kinds.count(kind)) {
      std::string msg = "unknown source '" + kind +
                        "' (defining, trivial, character, defining+trivial, defining+defining)";
      if (sv) throw ConfigError(msg, sv->line, sv->col);
      fail(ErrorCode::ConfigError, msg);
    }
    int_key("command", "source-dim", 0, "source-dim");
    if (const ConfigValue* pv = raw.find("command", "source-power")) int_of(*pv, "source-power");
    const ConfigValue* mv = raw.find("command", "map");
    long extra = 1, power = 1;
    if (const ConfigValue* dv = raw.find("command", "source-dim")) extra = rat_to_long(dv->num);
    if (const ConfigValue* pv = raw.find("command", "source-power")) power = rat_to_long(pv->num);
    LinearRep source = build_melys_source(job, kind, extra, power);
    PolyCtx pctx{source.coords, job.group->conductor()};
    std::vector<MPoly> comps;
    for (const ConfigValue& it : mv->items) {
      if (it.kind != K::String) bad_value("map", "list of component strings", it);
      comps.push_back(eval_text(it, pctx));
    }
    if (comps.size() != job.group->dim())
      throw ConfigError("map needs " + std::to_string(job.group->dim()) +
                            " components (one per target coordinate), got " +
                            std::to_string(comps.size()),
                        mv->line, mv->col);
    EquivariantMap check(source, defining_rep(job.group), std::move(comps));
  }
  if (cd.uses_truncation)
    if (const ConfigValue* tv = raw.find("options", "truncation")) {
      long t = int_of(*tv, "truncation");
      if (t < 0) throw ConfigError("truncation must be >= 0", tv->line, tv->col);
    }
}

ConfigValue str_value(const std::string& s) {
  ConfigValue v;
  v.kind = K::String;
  v.text = s;
  return v;
}

ConfigValue num_value(const Rat& r) {
  ConfigValue v;
  v.kind = K::Number;
  v.num = r;
  v.text = rat_str(r);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

Job parse_job(const std::string& command, const std::string& config_text,
              const std::vector<std::string>& overrides, unsigned default_truncation) {
  Config raw = parse_config_text(config_text);
  for (const std::string& o : overrides) {
    size_t dot = o.find('.');
    size_t eq = o.find('=');
    if (dot == std::string::npos || eq == std::string::npos || dot == 0 || dot + 1 >= eq)
      fail(ErrorCode::ConfigError,
           "override '" + o + "' must look like section.key=value");
    std::string sec = o.substr(0, dot);
    std::string key = o.substr(dot + 1, eq - dot - 1);
    std::string val = o.substr(eq + 1);
    if (sec != "group" && sec != "parameters" && sec != "command" && sec != "options")
      fail(ErrorCode::ConfigError, "override '" + o + "' names unknown section '" + sec + "'");
    try {
      raw.set(sec, key, parse_config_value(val));
    } catch (const ConfigError& e) {
      fail(ErrorCode::ConfigError, "override '" + o + "': " + e.what());
    }
  }

  std::string cmd = command;
  const ConfigValue* cname = raw.find("command", "name");
  if (cname) {
    if (cname->kind != K::String) bad_value("name", "string", *cname);
    if (cmd.empty())
      cmd = cname->text;
    else if (cmd != cname->text)
      throw ConfigError("command-line command '" + cmd + "' disagrees with [command] name \"" +
                            cname->text + "\"",
                        cname->line, cname->col);
  }
  if (cmd.empty())
    fail(ErrorCode::ConfigError, "no command given (argument or [command] name = \"...\")");
  const CommandDef& cd = command_def(cmd, cname ? cname->line : 1, cname ? cname->col : 1);

  GroupBuild gb = build_group(raw);
  Job job;
  job.command = cmd;
  job.group = gb.group;
  job.param = build_parameter(gb.group, raw);
  job.truncation = default_truncation;

  auto def_of = [&](const std::string& section, const std::string& key) -> const KeyDef* {
    for (const auto& kd : cd.keys)
      if (key == kd.key && section == kd.section) return &kd;
    return nullptr;
  };
  if (const auto* sec = raw.section("command"))
    for (const auto& [key, v] : *sec) {
      if (key == "name") continue;
      const KeyDef* kd = def_of("command", key);
      if (!kd)
        throw ConfigError("command '" + cmd + "' does not take command key '" + key + "'", v.line,
                          v.col);
      if (v.kind != kd->kind) bad_value(key, kind_word(kd->kind), v);
    }
  if (const auto* sec = raw.section("options"))
    for (const auto& [key, v] : *sec) {
      if (cd.uses_truncation && key == "truncation") {
        if (v.kind != K::Number) bad_value(key, "number", v);
        continue;
      }
      if (cd.allows_target && key.rfind("target.", 0) == 0) {
        std::string slot = key.substr(7);
        if (!slot_index(job.param, slot))
          throw ConfigError("unknown parameter slot '" + slot + "' (expected one of: " +
                                slot_list(job.param) + ")",
                            v.line, v.col);
        if (v.kind == K::String) {
          RatCtx rctx;
          eval_text(v, rctx);
        } else if (v.kind != K::Number) {
          bad_value(key, "rational", v);
        }
        continue;
      }
      if (cd.allows_irreps && key.rfind("irrep.", 0) == 0) {
        if (v.kind != K::List) bad_value(key, "list", v);
        continue;
      }
      const KeyDef* kd = def_of("options", key);
      if (!kd)
        throw ConfigError("command '" + cmd + "' does not take option '" + key + "'", v.line,
                          v.col);
      if (v.kind != kd->kind) bad_value(key, kind_word(kd->kind), v);
    }
  for (const auto& kd : cd.keys)
    if (kd.required && !raw.find(kd.section, kd.key))
      fail(ErrorCode::ConfigError,
           "command '" + cmd + "' requires [" + kd.section + "] " + kd.key);

  validate_semantics(job, cd, raw);

  if (cd.uses_truncation)
    if (const ConfigValue* tv = raw.find("options", "truncation"))
      job.truncation = (unsigned)rat_to_long(tv->num);

  Config canon;
  {
    std::vector<std::pair<std::string, ConfigValue>> g;
    g.emplace_back("type", str_value(gb.type));
    if (gb.type == "cyclic_product") {
      ConfigValue l;
      l.kind = K::List;
      for (unsigned o : gb.orders) l.items.push_back(num_value(Rat((long)o)));
      g.emplace_back("orders", l);
    } else {
      g.emplace_back("conductor", num_value(Rat((long)gb.conductor)));
      ConfigValue gl;
      gl.kind = K::List;
      for (const auto& gen : gb.gens) {
        ConfigValue gm;
        gm.kind = K::List;
        for (const auto& row : gen) {
          ConfigValue rv;
          rv.kind = K::List;
          for (const Cyclo& c : row) rv.items.push_back(str_value(c.str()));
          gm.items.push_back(std::move(rv));
        }
        gl.items.push_back(std::move(gm));
      }
      g.emplace_back("generators", gl);
    }
    canon.sections.emplace_back("group", std::move(g));
  }
  {
    std::vector<std::pair<std::string, ConfigValue>> ps;
    for (unsigned o = 0; o < job.param.orbit_count(); ++o)
      for (unsigned i = 0; i < job.param.ell(o); ++i) {
        const ParamScalar& v = job.param.kappa(o, (long)i);
        if (v.is_constant())
          ps.emplace_back(job.param.slot_name(o, i), num_value(v.constant_value().to_rat()));
      }
    if (!ps.empty()) canon.sections.emplace_back("parameters", std::move(ps));
  }
  {
    std::vector<std::pair<std::string, ConfigValue>> cs;
    cs.emplace_back("name", str_value(cmd));
    for (const auto& kd : cd.keys) {
      if (std::string(kd.section) != "command") continue;
      if (const ConfigValue* v = raw.find("command", kd.key))
        cs.emplace_back(kd.key, *v);
      else if (kd.def)
        cs.emplace_back(kd.key, parse_config_value(kd.def));
    }
    canon.sections.emplace_back("command", std::move(cs));
  }
  {
    std::vector<std::pair<std::string, ConfigValue>> os;
    for (const auto& kd : cd.keys) {
      if (std::string(kd.section) != "options") continue;
      if (const ConfigValue* v = raw.find("options", kd.key))
        os.emplace_back(kd.key, *v);
      else if (kd.def)
        os.emplace_back(kd.key, parse_config_value(kd.def));
    }
    if (cd.uses_truncation) os.emplace_back("truncation", num_value(Rat((long)job.truncation)));
    if (cd.allows_target || cd.allows_irreps) {
      std::vector<std::pair<std::string, ConfigValue>> extra;
      if (const auto* sec = raw.section("options"))
        for (const auto& [key, v] : *sec) {
          if (cd.allows_target && key.rfind("target.", 0) == 0) extra.emplace_back(key, v);
          if (cd.allows_irreps && key.rfind("irrep.", 0) == 0) extra.emplace_back(key, v);
        }
      std::sort(extra.begin(), extra.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [k, v] : extra) os.emplace_back(k, std::move(v));
    }
    if (!os.empty()) canon.sections.emplace_back("options", std::move(os));
  }
  job.config = std::move(canon);
  return job;
}

std::string serialize_job(const Job& job) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, keys] : job.config.sections) {
    if (!first) out << "\n";
    first = false;
    out << "[" << name << "]\n";
    for (const auto& [k, v] : keys) out << k << " = " << v.canonical() << "\n";
  }
  return out.str();
}

RunResult run_job(const Job& job) {
  std::vector<std::string> lines;
  lines.push_back("command: " + job.command);
  lines.push_back("group: " + group_desc(job.group) + " (order " +
                  std::to_string(job.group->order()) + ", dim " +
                  std::to_string(job.group->dim()) + ")");
  std::string pline;
  for (unsigned o = 0; o < job.param.orbit_count(); ++o)
    for (unsigned i = 0; i < job.param.ell(o); ++i) {
      if (!pline.empty()) pline += ", ";
      pline += job.param.slot_name(o, i) + " = " + job.param.kappa(o, (long)i).str();
    }
  lines.push_back("parameters: " + (pline.empty() ? "(none)" : pline));

  json payload;
  if (job.command == "reflections")
    payload = h_reflections(job, lines);
  else if (job.command == "normal-form")
    payload = h_normal_form(job, lines);
  else if (job.command == "dunkl")
    payload = h_dunkl(job, lines);
  else if (job.command == "verma")
    payload = h_verma(job, lines);
  else if (job.command == "gram")
    payload = h_gram(job, lines);
  else if (job.command == "singular")
    payload = h_singular(job, lines);
  else if (job.command == "regular")
    payload = h_regular(job, lines);
  else if (job.command == "aspherical")
    payload = h_aspherical(job, lines);
  else if (job.command == "bfunction")
    payload = h_bfunction(job, lines);
  else if (job.command == "localize")
    payload = h_localize(job, lines);
  else if (job.command == "series")
    payload = h_series(job, lines);
  else if (job.command == "shift")
    payload = h_shift(job, lines);
  else if (job.command == "jacquet")
    payload = h_jacquet(job, lines);
  else if (job.command == "melys-check")
    payload = h_melys_check(job, lines);
  else if (job.command == "melys-factor")
    payload = h_melys_factor(job, lines);
  else if (job.command == "strata")
    payload = h_strata(job, lines);
  else
    fail(ErrorCode::InternalError, "unhandled command '" + job.command + "'");

  json rec;
  rec["status"] = "ok";
  rec["command"] = job.command;
  rec["config"] = serialize_job(job);
  rec["result"] = payload;

  RunResult r;
  r.human = join(lines, "\n");
  r.record = rec.dump();
  return r;
}

int exit_code_of(ErrorCode c) {
  switch (classify(c)) {
    case ErrorClass::InvalidInput: return 2;
    case ErrorClass::CapExceeded: return 3;
    case ErrorClass::Internal: return 4;
  }
  return 4;
}

int cli_main(int argc, char** argv) {
  auto t0 = std::chrono::steady_clock::now();
  auto emit_error = [](const Error& e) {
    int code = exit_code_of(e.code());
    json rec;
    rec["status"] = "error";
    rec["code"] = code_name(e.code());
    rec["message"] = e.what();
    rec["exit"] = code;
    std::cout << rec.dump() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return code;
  };
  try {
    const std::string usage =
        "usage: cherednik <command> --config <file> [--override section.key=value ...]";
    if (argc < 2) fail(ErrorCode::ConfigError, usage);
    std::string command = argv[1];
    if (!command.empty() && command[0] == '-') fail(ErrorCode::ConfigError, usage);
    std::string config_path;
    std::vector<std::string> overrides;
    for (int i = 2; i < argc; ++i) {
      std::string a = argv[i];
      if (a == "--config" && i + 1 < argc)
        config_path = argv[++i];
      else if (a == "--override" && i + 1 < argc)
        overrides.push_back(argv[++i]);
      else
        fail(ErrorCode::ConfigError, "unknown argument '" + a + "'; " + usage);
    }
    if (config_path.empty()) fail(ErrorCode::ConfigError, usage);
    std::ifstream in(config_path);
    if (!in) fail(ErrorCode::ConfigError, "cannot read config file '" + config_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();

    unsigned trunc = 12;
    if (const char* env = std::getenv("CHEREDNIK_TRUNCATION")) {
      std::string s = env;
      bool ok = !s.empty();
      for (char c : s) ok = ok && std::isdigit((unsigned char)c);
      if (!ok)
        fail(ErrorCode::ConfigError,
             "CHEREDNIK_TRUNCATION must be a non-negative integer, got '" + s + "'");
      trunc = (unsigned)std::stoul(s);
    }

    Job job = parse_job(command, buf.str(), overrides, trunc);
    RunResult r = run_job(job);
    std::cout << r.human << "\n" << r.record << "\n";
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr << "elapsed: " << ms << " ms\n";
    return 0;
  } catch (const Error& e) {
    return emit_error(e);
  } catch (const std::exception& e) {
    return emit_error(Error(ErrorCode::InternalError, e.what()));
  }
}

}  // namespace cherednik
