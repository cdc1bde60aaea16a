#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "catquot/comprehension.hpp"
#include "catquot/equivalence.hpp"
#include "catquot/error.hpp"
#include "catquot/fib.hpp"
#include "catquot/filters.hpp"
#include "catquot/germ.hpp"
#include "catquot/model.hpp"
#include "catquot/parser.hpp"
#include "catquot/quotient.hpp"
#include "catquot/universes.hpp"

namespace catquot::cli {

std::string Report::render(Format f) const {
  const bool comment = !body_.empty();
  std::string out;
  for (const auto& [k, v] : entries_) {
    if (comment) out += "# ";
    out += k;
    out += f == Format::Kv ? "=" : ": ";
    out += v;
    out += '\n';
  }
  out += body_;
  return out;
}

namespace {

struct Context {
  const RunConfig& cfg;
  Report& report;
  bool pass = true;

  const std::string& input() const {
    if (cfg.inputs.empty()) throw std::invalid_argument(cfg.command + ": missing input");
    return cfg.inputs.front();
  }
  std::string option(const std::string& key) const {
    auto it = cfg.options.find(key);
    return it == cfg.options.end() ? std::string() : it->second;
  }
  void verdict(const std::string& key, bool ok) {
    report.add(key, ok ? "pass" : "fail");
    pass = pass && ok;
  }
};

Workspace load(const std::string& path) { return Workspace(parse_document(read_file(path))); }

// The block called name, or the only block of its kind when name is empty.
template <class Raw>
const Raw& pick(const std::vector<Raw>& blocks, const std::string& name, const std::string& kind) {
  if (name.empty()) {
    if (blocks.size() == 1) return blocks.front();
    throw Error(ErrorKind::UnknownId, blocks.empty() ? "no " + kind + " block"
                                                     : "several " + kind + " blocks; pass --" + kind);
  }
  for (const auto& b : blocks)
    if (b.name == name) return b;
  throw Error(ErrorKind::UnknownId, kind + " " + name);
}

CategoryRef category_of(const Workspace& ws, const std::string& name) {
  return ws.category(pick(ws.document().categories, name, "category").name);
}

ModelData model_of(const Workspace& ws, const std::string& name) {
  const auto& raw = pick(ws.document().models, name, "model");
  return resolve_model(ws.category(raw.category), raw);
}

// Elements of an explicit filter block, validated against its category.
std::vector<Obj> filter_objects(const Workspace& ws, const std::string& name, const CategoryRef& c) {
  const auto& raw = ws.filter(name);
  if (raw.frechet) throw Error(ErrorKind::SymbolicFilter, "frechet(" + raw.index_set + ")");
  if (raw.category != c->name())
    throw Error(ErrorKind::UnknownId, "filter " + name + " is on " + raw.category + ", not " + c->name());
  std::vector<Obj> out;
  for (const auto& e : raw.elements) out.push_back(c->obj(e));
  auto r = validate_filter(*c, subterminal_poset(*c), out);
  if (!r.ok()) throw Error(r.violations.front().kind, "filter " + name + ": " + describe(r.violations));
  return out;
}

std::string join(const std::vector<std::string>& xs, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

// "wfs(C, F) llp" -> "wfs(C,F)_llp"
std::string key_of(const std::string& name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] != ' ') {
      out += name[i];
    } else if (i == 0 || name[i - 1] != ',') {
      out += '_';
    }
  }
  return out;
}

void put_clauses(Context& cx, const std::string& prefix, const ModelReport& r) {
  for (const auto& cl : r.clauses) {
    cx.verdict(prefix + key_of(cl.name), cl.ok);
    if (!cl.ok && !cl.witness.empty()) cx.report.add(prefix + key_of(cl.name) + ".witness", cl.witness);
  }
}

int parse_count(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size() && v >= 0) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::ParseError, what + ": expected a non-negative integer, got `" + s + "`");
}

std::vector<int> parse_counts(const std::vector<std::string>& xs, const std::string& what) {
  std::vector<int> out;
  for (const auto& x : xs) out.push_back(parse_count(x, what));
  return out;
}

std::vector<int> parse_tuple(const std::string& s, const std::string& what) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  for (std::string p; std::getline(in, p, ',');) parts.push_back(p);
  return parse_counts(parts, what);
}

// --- commands ---------------------------------------------------------------

void cmd_check(Context& cx) {
  auto ws = load(cx.input());
  const auto& doc = ws.document();
  cx.report.add("categories", doc.categories.size());
  for (const auto& raw : doc.categories) {
    auto c = ws.category(raw.name);
    cx.report.add("category." + raw.name + ".objects", c->object_count());
    cx.report.add("category." + raw.name + ".morphisms", c->morphism_count());
  }
  for (const auto& f : doc.functors) {
    ws.functor(f.name);
    cx.report.add("functor." + f.name, "ok");
  }
  for (const auto& n : doc.nats) {
    ws.nat(n.name);
    cx.report.add("nat." + n.name, "ok");
  }
  for (const auto& f : doc.filters) {
    if (f.frechet) {
      cx.report.add("filter." + f.name, "frechet(" + f.index_set + ")");
      continue;
    }
    filter_objects(ws, f.name, ws.category(f.category));
    cx.report.add("filter." + f.name, "ok");
  }
  for (const auto& m : doc.models) {
    resolve_model(ws.category(m.category), m);
    cx.report.add("model." + m.name, "ok");
  }
  for (const auto& ix : doc.indexed) {
    auto vs = check_indexed(resolve_indexed(ws, ix));
    cx.verdict("indexed." + ix.name, vs.empty());
    if (!vs.empty()) cx.report.add("indexed." + ix.name + ".witness", describe(vs));
  }
  for (const auto& w : doc.comprehensions) {
    resolve_comprehension(ws, w);
    cx.report.add("comprehension." + w.name, "ok");
  }
  for (const auto& s : doc.schemes) {
    resolve_scheme(s);
    cx.report.add("scheme." + s.name, "ok");
  }
}

void cmd_subterminals(Context& cx) {
  auto ws = load(cx.input());
  auto c = category_of(ws, cx.option("category"));
  auto p = subterminal_poset(*c);
  cx.report.add("category", c->name());
  cx.report.add("subterminals", p.size());
  for (int i = 0; i < p.size(); ++i) {
    const auto name = c->obj_name(p.elements[i]);
    std::vector<std::string> up;
    for (int j = 0; j < p.size(); ++j)
      if (p.leq(i, j)) up.push_back(c->obj_name(p.elements[j]));
    // the principal filter at i
    cx.report.add("subterminal." + name + ".above", join(up));
  }
}

void cmd_quotient(Context& cx) {
  auto ws = load(cx.input());
  const auto& raw = ws.filter(cx.option("filter"));
  auto c = ws.category(raw.category);
  auto q = filter_quotient(c, filter_objects(ws, raw.name, c));
  auto germ_check = check_germ_composition(q);
  cx.report.add("category", c->name());
  cx.report.add("filter", raw.name);
  cx.report.add("minimum", c->obj_name(q.minimum));
  cx.report.add("objects", q.cat->object_count());
  cx.report.add("morphisms", q.cat->morphism_count());
  cx.verdict("germ_composition", germ_check.empty());
  cx.report.set_body(to_text(*q.cat));
}

void cmd_preserve(Context& cx) {
  auto ws = load(cx.input());
  const auto& raw = ws.filter(cx.option("filter"));
  auto c = ws.category(raw.category);
  auto q = filter_quotient(c, filter_objects(ws, raw.name, c));
  std::vector<Property> props;
  const auto which = cx.option("property");
  if (which.empty() || which == "all") {
    props = {Property::FiniteLimits, Property::FiniteColimits, Property::Monos, Property::Exponentials,
             Property::SubobjectClassifier, Property::NnoProbe};
  } else {
    std::stringstream in(which);
    for (std::string p; std::getline(in, p, ',');) {
      auto prop = parse_property(p);
      if (!prop) throw Error(ErrorKind::ParseError, "unknown property `" + p + "`");
      props.push_back(*prop);
    }
  }
  cx.report.add("category", c->name());
  cx.report.add("filter", raw.name);
  using V = PreservationInstance::Verdict;
  for (Property p : props) {
    auto r = verify_preservation(q, p);
    const auto key = "property." + to_string(p);
    cx.verdict(key, r.ok());
    cx.report.add(key + ".evidence", to_string(r.evidence));
    cx.report.add(key + ".passed", r.count(V::Pass));
    cx.report.add(key + ".failed", r.count(V::Fail));
    cx.report.add(key + ".skipped", r.count(V::Skipped));
    for (const auto& inst : r.instances)
      if (inst.verdict == V::Fail) {
        cx.report.add(key + ".witness", inst.what);
        break;
      }
  }
}

void put_properties(Context& cx, const ModelData& m) {
  const std::pair<const char*, PropertyVerdict (*)(const ModelData&)> props[] = {
      {"right_proper", check_right_properness}, {"cim", check_cim}, {"cem", check_cem},
      {"tcp", check_tcp},                       {"cl", check_cl},   {"fe", check_fe}};
  for (const auto& [name, fn] : props) cx.report.add(std::string("property.") + name, fn(m).ok);
}

void put_classes(Context& cx, const std::string& prefix, const ModelData& m) {
  cx.report.add(prefix + "fib", bits(m.fib));
  cx.report.add(prefix + "cof", bits(m.cof));
  cx.report.add(prefix + "weq", bits(m.weq));
}

void cmd_model_check(Context& cx) {
  auto ws = load(cx.input());
  auto m = model_of(ws, cx.option("model"));
  cx.report.add("category", m.cat->name());
  put_classes(cx, "", m);
  put_clauses(cx, "clause.", check_model_structure(m));
  if (cx.pass) put_properties(cx, m);
}

void cmd_model_quotient(Context& cx) {
  auto ws = load(cx.input());
  auto m = model_of(ws, cx.option("model"));
  auto phi = filter_objects(ws, cx.option("filter"), m.cat);
  cx.report.add("category", m.cat->name());
  try {
    auto r = validate_filter(*m.cat, subterminal_poset(*m.cat), phi);
    check_model_filter(m, *r.filter);
    cx.verdict("model_filter", true);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFibrant && e.kind() != ErrorKind::NotStable) throw;
    cx.verdict("model_filter", false);
    cx.report.add("model_filter.witness", std::string(to_string(e.kind())) + ": " + e.detail());
    return;
  }
  auto qm = quotient_model_structure(m, phi);
  cx.report.add("minimum", m.cat->obj_name(qm.quotient.minimum));
  cx.report.add("quotient.objects", qm.quotient.cat->object_count());
  cx.report.add("quotient.morphisms", qm.quotient.cat->morphism_count());
  put_classes(cx, "quotient.", qm.model);
  put_clauses(cx, "clause.", qm.report);
}

void cmd_enum_models(Context& cx) {
  auto ws = load(cx.input());
  auto c = category_of(ws, cx.option("category"));
  SearchBudget budget(cx.cfg.cap);
  auto ms = enumerate_model_structures(c, &budget);
  cx.report.add("category", c->name());
  cx.report.add("models", ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) put_classes(cx, "model." + std::to_string(i) + ".", ms[i]);
  cx.report.add("candidates", budget.used());
}

void cmd_fib_check(Context& cx) {
  auto ws = load(cx.input());
  auto F = ws.functor(pick(ws.document().functors, cx.option("functor"), "functor").name);
  Fibration p(F);
  cx.report.add("total", p.total().name());
  cx.report.add("base", p.base().name());
  cx.verdict("grothendieck", p.grothendieck());
  if (const auto& miss = p.missing_lift())
    cx.report.add("missing_lift", p.base().mor_name(miss->first) + " at " + p.total().obj_name(miss->second));
  cx.report.add("discrete", p.discrete());
  const auto& cart = p.cartesian_table();
  cx.report.add("cartesian", std::count(cart.begin(), cart.end(), true));
  for (Obj b : p.base().objects())
    cx.report.add("fiber." + p.base().obj_name(b), p.fiber(b).cat->object_count());
}

void cmd_groth(Context& cx) {
  auto ws = load(cx.input());
  auto ix = resolve_indexed(ws, pick(ws.document().indexed, cx.option("indexed"), "indexed"));
  auto vs = check_indexed(ix);
  cx.report.add("indexed", ix.name);
  cx.verdict("coherent", vs.empty());
  if (!vs.empty()) {
    cx.report.add("coherent.witness", describe(vs));
    return;
  }
  auto g = grothendieck_construction(ix);
  cx.report.add("objects", g.fibration.total().object_count());
  cx.report.add("morphisms", g.fibration.total().morphism_count());
  cx.verdict("fibration", g.fibration.grothendieck());
  for (Obj b : ix.base->objects()) {
    auto fib = g.fibration.fiber(b);
    cx.verdict("fiber." + ix.base->obj_name(b), find_isomorphism(fib.cat, ix.fibers[b.v]).has_value());
  }
  cx.report.set_body(to_text(g.fibration.total()));
}

StructureFilter structure_of(const Context& cx, const Comprehension& w) {
  const auto s = cx.option("structure");
  if (s.empty() || s == "all") return {};
  if (s == "identity-types") return identity_types(w);
  throw Error(ErrorKind::ParseError, "unknown structure `" + s + "`");
}

void cmd_fcoswp(Context& cx) {
  auto ws = load(cx.input());
  const auto& raw_scheme = pick(ws.document().schemes, cx.option("scheme"), "scheme");
  auto w = resolve_comprehension(ws, pick(ws.document().comprehensions, raw_scheme.comprehension, "comprehension"));
  auto f = make_fcoswp(w, resolve_scheme(raw_scheme), structure_of(cx, w));
  cx.report.add("scheme", raw_scheme.name);
  cx.report.add("base", w.base().name());
  cx.report.add("structure.objects", f.structure.total().object_count());
  put_clauses(cx, "clause.", check_fcoswp(f));
  const auto filter = cx.option("quotient");
  if (filter.empty()) return;
  auto q = fcoswp_filter_quotient(f, filter_objects(ws, filter, ws.category(w.base().name())));
  cx.report.add("quotient.filter", filter);
  cx.report.add("quotient.minimum", w.base().obj_name(q.minimum));
  cx.report.add("quotient.base_equivalent", q.base_equivalent);
  cx.report.add("quotient.structure.objects", q.result().structure.total().object_count());
  put_clauses(cx, "quotient.clause.", check_fcoswp(q.result()));
  cx.verdict("quotient.instantiation", q.instantiation.iso);
  if (!q.instantiation.iso && !q.instantiation.witness.empty())
    cx.report.add("quotient.instantiation.witness", q.instantiation.witness);
}

// --- universes --------------------------------------------------------------

struct FiniteUniverse {
  ModelData model;
  Obj carrier;
  Mor family;
};

struct SetsUniverse {
  SetPower power;
  SetUniverse universe;
  SetCofibrations cof;
  std::vector<int> fibres;
};

using ResolvedUniverse = std::variant<FiniteUniverse, SetsUniverse>;

// `sets` or `sets<k>`; 0 otherwise.
int sets_arity(const std::string& model) {
  if (model == "sets") return 1;
  if (model.rfind("sets<", 0) == 0 && model.back() == '>') {
    const int k = parse_count(model.substr(5, model.size() - 6), "sets<k>");
    if (k == 0) throw Error(ErrorKind::ParseError, "sets<0> has no components");
    return k;
  }
  return 0;
}

ResolvedUniverse resolve_universe(const Workspace& ws, const RawUniverse& raw, const std::vector<int>& probes) {
  const auto at = "universe " + raw.name + " (line " + std::to_string(raw.line) + ")";
  if (const int k = sets_arity(raw.model)) {
    if (raw.carrier.size() < 2 || raw.carrier[0] != 'S')
      throw Error(ErrorKind::ParseError, at + ": carrier must be S<n> over sets");
    const int n = parse_count(raw.carrier.substr(1), at + ": carrier");
    auto fibres = parse_counts(raw.family, at + ": family");
    if (static_cast<int>(fibres.size()) != n)
      throw Error(ErrorKind::ParseError, at + ": family must give one fibre size per carrier element");
    SetPower c(k, probes);
    FibreBound bound{raw.bound ? *raw.bound : -1};
    for (int s : fibres)
      if (!bound.admits(s)) throw Error(ErrorKind::ParseError, at + ": fibre size above the bound");
    auto cof = raw.cofibrations == "all" ? SetCofibrations::All : SetCofibrations::Monos;
    auto u = fibred_universe(c, fibres, bound);
    return SetsUniverse{std::move(c), std::move(u), cof, std::move(fibres)};
  }
  if (raw.bound || !raw.cofibrations.empty())
    throw Error(ErrorKind::ParseError, at + ": bound and cofibrations apply to sets only");
  auto m = model_of(ws, raw.model);
  if (raw.family.size() != 1) throw Error(ErrorKind::ParseError, at + ": family must name one morphism");
  Mor family = m.cat->mor(raw.family.front());
  Obj carrier = m.cat->obj(raw.carrier);
  if (m.cat->tgt(family) != carrier)
    throw Error(ErrorKind::MismatchedEndpoints, at + ": family does not end at " + raw.carrier);
  return FiniteUniverse{std::move(m), carrier, family};
}

bool classify_line(const ResolvedUniverse& u, const RawUniverse::Classify& line) {
  const auto at = "classify (line " + std::to_string(line.line) + ")";
  if (const auto* s = std::get_if<SetsUniverse>(&u))
    return classifies(s->fibres, parse_counts(line.map, at), parse_counts(line.target, at));
  const auto& f = std::get<FiniteUniverse>(u);
  if (line.map.size() != 1 || line.target.size() != 1)
    throw Error(ErrorKind::ParseError, at + ": expected `classify <mor> = <mor>`");
  const auto& c = *f.model.cat;
  Mor a = c.mor(line.map.front()), p = c.mor(line.target.front());
  if (!f.model.fib.test(p.v)) return false;
  return classifies(c, f.family, a, p);
}

const char* const kClauseKeys[] = {"discrete_fibration", "small_fibres", "representable", "image", "acyclic"};

void put_verdicts(Context& cx, const std::string& prefix, const UniverseVerdicts& v) {
  cx.report.add(prefix + "universe", v.universe);
  cx.report.add(prefix + "fibrant", v.fibrant);
  cx.report.add(prefix + "univalent", v.univalent);
  for (std::size_t i = 0; i < v.lparanofscaf.size() && i < std::size(kClauseKeys); ++i)
    cx.report.add(prefix + "lparanofscaf." + kClauseKeys[i], static_cast<bool>(v.lparanofscaf[i]));
  if (!v.note.empty()) cx.report.add(prefix + "note", v.note);
}

bool required(const Context& cx, const UniverseVerdicts& v) {
  std::stringstream in(cx.option("require").empty() ? "universe" : cx.option("require"));
  bool ok = true;
  for (std::string r; std::getline(in, r, ',');) {
    if (r == "universe")
      ok = ok && v.universe;
    else if (r == "fibrant")
      ok = ok && v.fibrant;
    else if (r == "univalent")
      ok = ok && v.univalent;
    else if (r == "lparanofscaf")
      ok = ok && std::all_of(v.lparanofscaf.begin(), v.lparanofscaf.end(), [](bool b) { return b; });
    else
      throw Error(ErrorKind::ParseError, "unknown requirement `" + r + "`");
  }
  return ok;
}

// Members of the principal filter above a 0/1 tuple.
std::vector<SetPower::Obj> principal_above(const SetPower& c, const std::vector<int>& minimum) {
  if (static_cast<int>(minimum.size()) != c.arity())
    throw Error(ErrorKind::ParseError, "quotient tuple needs " + std::to_string(c.arity()) + " entries");
  for (int x : minimum)
    if (x > 1) throw Error(ErrorKind::NotSubterminal, "quotient tuple entries must be 0 or 1");
  std::vector<SetPower::Obj> out;
  for (const auto& u : subterminal_poset(c).elements) {
    bool above = true;
    for (int k = 0; k < c.arity(); ++k) above = above && u.sizes[k] >= minimum[k];
    if (above) out.push_back(u);
  }
  return out;
}

void cmd_universe(Context& cx) {
  auto ws = load(cx.input());
  const auto& raw = pick(ws.document().universes, cx.option("universe"), "universe");
  auto u = resolve_universe(ws, raw, cx.cfg.probes);
  cx.report.add("block", raw.name);
  cx.report.add("model", raw.model);
  for (std::size_t i = 0; i < raw.classify.size(); ++i)
    cx.verdict("classify." + std::to_string(i), classify_line(u, raw.classify[i]));
  const auto quotient = cx.option("quotient");

  if (auto* s = std::get_if<SetsUniverse>(&u)) {
    const auto& c = s->power;
    cx.report.add("probes", c.probe_description());
    cx.report.add("cofibrations", s->cof == SetCofibrations::Monos ? "monos" : "all");
    cx.report.add("structure", s->universe.structure.name());
    auto eq = eq_object(c, s->universe.family);
    cx.report.add("carrier", c.name(s->universe.carrier));
    cx.report.add("eq", c.name(eq.object));
    cx.verdict("eq_object", check_eq_object(c, s->universe.family, eq).empty());
    put_clauses(cx, "clause.", check_universe(c, s->universe, s->cof));
    if (quotient.empty()) {
      auto v = universe_verdicts(c, s->universe, s->cof);
      put_verdicts(cx, "verdict.", v);
      cx.pass = cx.pass && required(cx, v);
      return;
    }
    auto members = principal_above(c, parse_tuple(quotient, "--quotient"));
    auto r = validate_filter(c, subterminal_poset(c), members);
    if (!r.ok()) throw Error(r.violations.front().kind, describe(r.violations));
    auto q = filter_quotient(c, *r.filter);
    cx.report.add("quotient.minimum", c.name(q.minimum));
    auto suite = quotient_universe_suite(q, s->universe, s->cof);
    put_verdicts(cx, "verdict.", suite.before);
    put_verdicts(cx, "quotient.verdict.", suite.after);
    cx.verdict("preserved", suite.preserved());
    cx.pass = cx.pass && required(cx, suite.before) && required(cx, suite.after);
    return;
  }

  auto& f = std::get<FiniteUniverse>(u);
  const auto& c = *f.model.cat;
  cx.report.add("carrier", c.obj_name(f.carrier));
  cx.report.add("family", c.mor_name(f.family));
  try {
    auto eq = eq_object(f.model, f.family);
    cx.report.add("eq", c.obj_name(eq.object));
    cx.report.add("eq.elements", eq.elements);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoExponentials) throw;
    cx.report.add("eq", "unrepresentable");
  }
  auto fp = fibrations_pseudofunctor(f.model);
  const auto& F = fp.fibrations;
  for (Obj y : F.total().objects())
    if (F.family[y.v] == f.family) put_clauses(cx, "clause.", check_universe(F, f.carrier, y, f.model.cof));
  if (quotient.empty()) {
    auto v = universe_verdicts(f.model, f.family);
    put_verdicts(cx, "verdict.", v);
    cx.pass = cx.pass && required(cx, v);
    return;
  }
  auto suite = quotient_universe_suite(f.model, filter_objects(ws, quotient, f.model.cat), f.family);
  put_verdicts(cx, "verdict.", suite.before);
  put_verdicts(cx, "quotient.verdict.", suite.after);
  cx.verdict("preserved", suite.preserved());
  cx.pass = cx.pass && required(cx, suite.before) && required(cx, suite.after);
}

// --- germs ------------------------------------------------------------------

const char* to_text(ConstantIso::Verdict v) {
  switch (v) {
    case ConstantIso::Verdict::Yes:
      return "yes";
    case ConstantIso::Verdict::No:
      return "no";
    default:
      return "unknown";
  }
}

void cmd_germ(Context& cx) {
  const auto& expr = cx.input();
  if (expr.rfind("germ obj", 0) == 0) {
    auto x = parse_germ_object(expr);
    cx.report.add("object", to_string(x));
    for (int a : cx.cfg.probes) {
      auto iso = is_constant_iso(x, a);
      cx.report.add("constant_iso.S" + std::to_string(a), to_text(iso.verdict));
      if (iso.certificate) cx.report.add("constant_iso.S" + std::to_string(a) + ".replay", replay(*iso.certificate, 100));
    }
    return;
  }
  if (expr.rfind("germ mor", 0) != 0) throw Error(ErrorKind::ParseError, "expected `germ obj ...` or `germ mor ...`");
  auto src = parse_germ_object(cx.option("src").empty() ? "germ obj {} tail const S1" : cx.option("src"));
  auto tgt = parse_germ_object(cx.option("tgt").empty() ? "germ obj {} tail const SN" : cx.option("tgt"));
  auto f = parse_germ_morphism(expr, src, tgt);
  cx.report.add("morphism", to_string(f));
  auto vs = validate(f);
  cx.verdict("valid", vs.empty());
  if (!vs.empty()) {
    cx.report.add("valid.witness", describe(vs));
    return;
  }
  const bool point = germ_equal(src, GermObject::of(SetDesc::finite(1))) &&
                     germ_equal(tgt, GermObject::of(SetDesc::naturals()));
  if (!point) return;
  auto pv = nonstandard_point_certificate(f);
  if (pv.standard) {
    cx.report.add("point", "standard");
    cx.report.add("point.value", *pv.standard);
  } else if (pv.certificate) {
    cx.report.add("point", "nonstandard");
    cx.report.add("point.reason", pv.certificate->reason);
    cx.verdict("point.replay", replay(*pv.certificate, 100));
  } else {
    cx.report.add("point", "unknown");
  }
}

using Command = void (*)(Context&);

const std::vector<std::pair<std::string, Command>>& table() {
  static const std::vector<std::pair<std::string, Command>> t{
      {"check", cmd_check},
      {"subterminals", cmd_subterminals},
      {"quotient", cmd_quotient},
      {"preserve", cmd_preserve},
      {"model-check", cmd_model_check},
      {"model-quotient", cmd_model_quotient},
      {"enum-models", cmd_enum_models},
      {"fib-check", cmd_fib_check},
      {"groth", cmd_groth},
      {"fcoswp", cmd_fcoswp},
      {"universe", cmd_universe},
      {"germ", cmd_germ},
  };
  return t;
}

Status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::SearchExhausted:
      return CapExceeded;
    case ErrorKind::ParseError:
    case ErrorKind::UnknownId:
    case ErrorKind::MismatchedEndpoints:
    case ErrorKind::MissingComposite:
    case ErrorKind::ConflictingComposite:
    case ErrorKind::NonAssociative:
    case ErrorKind::NotAFunctor:
    case ErrorKind::Empty:
    case ErrorKind::NotUpwardClosed:
    case ErrorKind::NotDirected:
    case ErrorKind::NotSubterminal:
    case ErrorKind::SymbolicFilter:
    case ErrorKind::EndpointMismatch:
    case ErrorKind::IllTypedParameter:
    case ErrorKind::IncoherentTransitions:
      return InputError;
    default:
      return CheckFailed;
  }
}

const char* status_name(Status s) {
  switch (s) {
    case Pass:
      return "pass";
    case CheckFailed:
      return "fail";
    case InputError:
      return "input-error";
    default:
      return "cap-exceeded";
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : table()) out.push_back(name);
    return out;
  }();
  return names;
}

RunResult run(const RunConfig& config) {
  if (config.cap == 0) throw std::invalid_argument("search cap must be positive");
  if (config.probes.empty()) throw std::invalid_argument("probe set must be non-empty");
  auto it = std::find_if(table().begin(), table().end(), [&](const auto& e) { return e.first == config.command; });
  if (it == table().end()) throw std::invalid_argument("unknown command `" + config.command + "`");

  Report report;
  report.add("command", config.command);
  for (const auto& in : config.inputs) report.add("input", in);
  Context cx{config, report};
  Status status = Pass;
  try {
    it->second(cx);
    status = cx.pass ? Pass : CheckFailed;
  } catch (const Error& e) {
    status = status_of(e.kind());
    report.add("error", std::string(to_string(e.kind())));
    report.add("error.detail", e.detail());
    report.set_body({});
  }
  report.add("status", status_name(status));
  return {status, report.render(config.format)};
}

}  // namespace catquot::cli
