#include "catquot/comprehension.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <tuple>

#include "catquot/equivalence.hpp"
#include "catquot/generic.hpp"
#include "catquot/limits.hpp"

namespace catquot {

namespace {

std::optional<Mor> inverse(const FinCategory& c, Mor f) {
  for (Mor g : c.hom(c.tgt(f), c.src(f)))
    if (c.is_identity(c.compose(g, f)) && c.is_identity(c.compose(f, g))) return g;
  return std::nullopt;
}

template <class T>
std::vector<int> indices(const std::vector<T>& xs) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.v);
  return out;
}

Clause clause(std::string name, std::string witness) {
  const bool ok = witness.empty();
  return {std::move(name), ok, std::move(witness)};
}

// Position of each value in a table of Obj / Mor, as a map.
template <class T>
std::map<int, int> invert(const std::vector<T>& table) {
  std::map<int, int> out;
  for (std::size_t i = 0; i < table.size(); ++i) out.emplace(table[i].v, static_cast<int>(i));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Comprehensions

Comprehension arrows_comprehension(const CategoryRef& c) {
  auto ac = arrow_category(c);
  Fibration fib(ac.cod);
  auto chi = identity_functor(ac.cat);
  return {std::move(fib), std::move(ac), std::move(chi)};
}

Comprehension monos_comprehension(const CategoryRef& c) {
  auto ac = arrow_category(c);
  auto sub = full_subcategory(
      ac.cat, [&](Obj x) { return is_mono(*c, ac.arrow[x.v]); }, c->name() + "^mono");
  Fibration fib(compose(ac.cod, sub.inclusion));
  return {std::move(fib), std::move(ac), std::move(sub.inclusion)};
}

Comprehension resolve_comprehension(const Workspace& ws, const RawComprehension& raw) {
  auto c = ws.category(raw.category);
  if (raw.kind == "arrows") return arrows_comprehension(c);
  if (raw.kind == "monos") return monos_comprehension(c);
  throw Error(ErrorKind::ParseError, std::to_string(raw.line) + ": unknown comprehension kind " + raw.kind);
}

ModelReport check_comprehension(const Comprehension& w) {
  ModelReport r;
  const auto& t = w.total();
  const auto& ac = *w.arrows.cat;
  std::string fib;
  if (const auto& miss = w.fibration.missing_lift())
    fib = "no lift of " + w.base().mor_name(miss->first) + " at " + t.obj_name(miss->second);
  r.clauses.push_back(clause("fibration", fib));

  std::string over;
  if (w.chi.src.get() != &t || w.chi.tgt.get() != &ac) over = "comparison has the wrong endpoints";
  if (over.empty()) {
    auto vs = check_functor(w.chi);
    if (!vs.empty()) over = describe(vs);
  }
  const auto& p = w.fibration.proj();
  for (Obj x : t.objects())
    if (over.empty() && w.arrows.cod(w.chi(x)) != p(x)) over = "object " + t.obj_name(x);
  for (Mor m : t.morphisms())
    if (over.empty() && w.arrows.cod(w.chi(m)) != p(m)) over = "morphism " + t.mor_name(m);
  r.clauses.push_back(clause("over base", over));

  std::string cart;
  if (over.empty()) {
    Fibration cod(w.arrows.cod);
    for (Mor m : t.morphisms())
      if (cart.empty() && w.fibration.cartesian(m) && !cod.cartesian(w.chi(m)))
        cart = t.mor_name(m) + " goes to the non-pullback square " + ac.mor_name(w.chi(m));
  } else {
    cart = "skipped";
  }
  r.clauses.push_back(clause("cartesian", cart));
  return r;
}

// ---------------------------------------------------------------------------
// Display data

namespace {

DisplayCategory from_subcategory(const Subcategory& s, const ArrowCategory& ac) {
  return {s.cat, compose(ac.cod, s.inclusion), s.inclusion.fobj, {}, s.inclusion.fmor};
}

DisplayCategory pointed_category(const ArrowCategory& ac, const std::vector<bool>& is_display,
                                 const std::function<bool(Mor)>& keep, const std::string& name) {
  const auto& a = *ac.cat;
  const auto& c = *ac.cod.tgt;
  using Key = std::tuple<int, int, int>;
  KeyedBuilder<Key> kb(name);
  DisplayCategory out;
  for (Obj x : a.objects()) {
    if (!is_display[x.v]) continue;
    const Mor d = ac.arrow[x.v];
    for (Mor s : c.hom(c.tgt(d), c.src(d))) {
      if (!c.is_identity(c.compose(d, s))) continue;
      kb.object(a.obj_name(x) + "|" + c.mor_name(s));
      out.arrow.push_back(x);
      out.section.push_back(s);
    }
  }
  const int n = static_cast<int>(out.arrow.size());
  int counter = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (Mor m : a.hom(out.arrow[i], out.arrow[j])) {
        if (!keep(m)) continue;
        const auto& [top, bottom] = ac.square[m.v];
        if (c.compose(top, out.section[i]) != c.compose(out.section[j], bottom)) continue;
        if (i == j && a.is_identity(m))
          kb.identity(Obj{i}, {i, j, m.v});
        else
          kb.morphism("s" + std::to_string(counter++), Obj{i}, Obj{j}, {i, j, m.v});
      }
  auto keys = kb.keys();
  out.cat = share(std::move(kb).build([&](const Key& g, const Key& f) {
    return Key{std::get<0>(f), std::get<1>(g), a.compose(Mor{std::get<2>(g)}, Mor{std::get<2>(f)}).v};
  }));
  out.proj = Functor{name + "_cod", out.cat, ac.cod.tgt, {}, {}};
  for (Obj x : out.arrow) out.proj.fobj.push_back(ac.cod(x));
  for (const auto& k : keys) {
    out.square.push_back(Mor{std::get<2>(k)});
    out.proj.fmor.push_back(ac.cod(Mor{std::get<2>(k)}));
  }
  return out;
}

}  // namespace

DisplayData display_data(const Comprehension& w) {
  const auto& ac = w.arrows;
  Fibration cod(ac.cod);
  std::vector<bool> is_display(ac.cat->object_count(), false);
  for (Obj x : w.total().objects()) is_display[w.chi(x).v] = true;

  auto disp = subcategory(
      ac.cat, [&](Obj x) { return is_display[x.v]; }, [&](Mor m) { return cod.cartesian(m); }, "D");
  DisplayData dd{from_subcategory(disp, ac),
                 pointed_category(ac, is_display, [&](Mor m) { return cod.cartesian(m); }, "D1"),
                 pointed_category(ac, is_display, [](Mor) { return true; }, "D1*"),
                 {},
                 {},
                 {}};
  auto t = w.fibration.proj().src;
  dd.cartesian = subcategory(
      t, [](Obj) { return true; }, [&](Mor m) { return w.fibration.cartesian(m); }, t->name() + "_iso");
  dd.cartesian_proj = compose(w.fibration.proj(), dd.cartesian.inclusion);

  const auto obj_at = invert(dd.display.arrow);
  const auto mor_at = invert(dd.display.square);
  Functor forget{"forget", dd.pointed.cat, dd.display.cat, {}, {}};
  for (Obj x : dd.pointed.arrow) forget.fobj.push_back(Obj{obj_at.at(x.v)});
  for (Mor m : dd.pointed.square) forget.fmor.push_back(Mor{mor_at.at(m.v)});
  dd.forget_section = std::move(forget);
  return dd;
}

namespace {

// Objects matched by (arrow image, section image), morphisms by endpoints
// and square image.
Functor display_functor(const DisplayCategory& from, const DisplayCategory& to, const Functor& arrows,
                        const Functor& base, const std::string& name) {
  std::map<std::pair<int, int>, Obj> obj_at;
  for (std::size_t i = 0; i < to.arrow.size(); ++i)
    obj_at.emplace(std::pair{to.arrow[i].v, to.section.empty() ? -1 : to.section[i].v}, Obj{static_cast<int>(i)});
  std::map<std::tuple<int, int, int>, Mor> mor_at;
  for (std::size_t i = 0; i < to.square.size(); ++i) {
    const Mor m{static_cast<int>(i)};
    mor_at.emplace(std::tuple{to.cat->src(m).v, to.cat->tgt(m).v, to.square[i].v}, m);
  }
  Functor K{name, from.cat, to.cat, {}, {}};
  for (std::size_t i = 0; i < from.arrow.size(); ++i) {
    const int s = from.section.empty() ? -1 : base(from.section[i]).v;
    auto it = obj_at.find({arrows(from.arrow[i]).v, s});
    if (it == obj_at.end())
      throw Error(ErrorKind::NotAFunctor, name + ": no image for " + from.cat->obj_name(Obj{static_cast<int>(i)}));
    K.fobj.push_back(it->second);
  }
  for (std::size_t i = 0; i < from.square.size(); ++i) {
    const Mor m{static_cast<int>(i)};
    auto it = mor_at.find({K(from.cat->src(m)).v, K(from.cat->tgt(m)).v, arrows(from.square[i]).v});
    if (it == mor_at.end()) throw Error(ErrorKind::NotAFunctor, name + ": no image for " + from.cat->mor_name(m));
    K.fmor.push_back(it->second);
  }
  return K;
}

}  // namespace

// ---------------------------------------------------------------------------
// Functor helpers

Functor arrow_functor(const Functor& P, const ArrowCategory& from, const ArrowCategory& to) {
  const auto& a = *from.cat;
  const auto& b = *to.cat;
  std::map<std::tuple<int, int, int, int>, Mor> at;
  for (Mor m : b.morphisms())
    at.emplace(std::tuple{b.src(m).v, b.tgt(m).v, to.square[m.v].first.v, to.square[m.v].second.v}, m);
  Functor F{P.name + "^->", from.cat, to.cat, {}, {}};
  for (Obj x : a.objects()) {
    auto o = to.object_of(P(from.arrow[x.v]));
    if (!o) throw Error(ErrorKind::NotAFunctor, "no arrow object for " + a.obj_name(x));
    F.fobj.push_back(*o);
  }
  for (Mor m : a.morphisms()) {
    const auto& [top, bottom] = from.square[m.v];
    auto it = at.find({F(a.src(m)).v, F(a.tgt(m)).v, P(top).v, P(bottom).v});
    if (it == at.end()) throw Error(ErrorKind::NotAFunctor, "no square for " + a.mor_name(m));
    F.fmor.push_back(it->second);
  }
  return F;
}

Functor quotient_projection(const FibrationQuotient& fq) {
  const auto& e = *fq.restriction.right.src;
  const auto& q = *fq.total;
  const auto& R = fq.restriction.right;
  const auto& incl = fq.restriction.below.total.inclusion;
  Functor P{"P_" + e.name(), fq.restriction.right.src, fq.total, {}, {}};
  for (Obj x : e.objects()) P.fobj.push_back(x);
  for (Mor t : e.morphisms()) {
    const Mor rep = incl(R(t));
    std::optional<Mor> found;
    for (Mor k : q.hom(e.src(t), e.tgt(t)))
      if (fq.representative[k.v] == rep) found = k;
    if (!found) throw Error(ErrorKind::NotAFunctor, "no class for " + e.mor_name(t));
    P.fmor.push_back(*found);
  }
  return P;
}

Functor transport(const Functor& K, const FibrationQuotient& fq) {
  const auto& q = *fq.total;
  const auto& d = *K.tgt;
  const auto& counit = fq.restriction.adjunction.counit.components;
  std::vector<Mor> back;  // K(counit_x)^-1
  for (Obj x : q.objects()) {
    auto inv = inverse(d, K(counit[x.v]));
    if (!inv) throw Error(ErrorKind::NotAFunctor, K.name + ": image of the counit at " + q.obj_name(x) + " is not invertible");
    back.push_back(*inv);
  }
  Functor out{K.name + "_phi", fq.total, K.tgt, {}, {}};
  for (Obj x : q.objects()) out.fobj.push_back(K(x));
  for (Mor k : q.morphisms()) {
    const Obj x = q.src(k), y = q.tgt(k);
    out.fmor.push_back(d.compose(K(counit[y.v]), d.compose(K(fq.representative[k.v]), back[x.v])));
  }
  return out;
}

Functor pair_into(const StrictPullback& sp, const Functor& L, const Functor& R) {
  const auto& p = *sp.cat;
  std::map<std::pair<int, int>, Obj> obj_at;
  for (Obj o : p.objects()) obj_at.emplace(std::pair{sp.left(o).v, sp.right(o).v}, o);
  std::map<std::pair<int, int>, Mor> mor_at;
  for (Mor m : p.morphisms()) mor_at.emplace(std::pair{sp.left(m).v, sp.right(m).v}, m);
  const auto& s = *L.src;
  Functor out{"<" + L.name + "," + R.name + ">", L.src, sp.cat, {}, {}};
  for (Obj x : s.objects()) {
    auto it = obj_at.find({L(x).v, R(x).v});
    if (it == obj_at.end()) throw Error(ErrorKind::NotAFunctor, "pair leaves the pullback at " + s.obj_name(x));
    out.fobj.push_back(it->second);
  }
  for (Mor m : s.morphisms()) {
    auto it = mor_at.find({L(m).v, R(m).v});
    if (it == mor_at.end()) throw Error(ErrorKind::NotAFunctor, "pair leaves the pullback at " + s.mor_name(m));
    out.fmor.push_back(it->second);
  }
  return out;
}

ComparisonVerdict classify_comparison(const Functor& K) {
  const auto& s = *K.src;
  const auto& t = *K.tgt;
  ComparisonVerdict v;
  v.faithful = is_faithful(K);
  v.full = is_full(K);
  v.iso = is_isomorphism(K);
  v.essentially_surjective = true;
  for (Obj y : t.objects()) {
    bool hit = false;
    for (Obj x : s.objects()) hit = hit || isomorphic(t, K(x), y);
    if (!hit) {
      v.essentially_surjective = false;
      if (v.witness.empty()) v.witness = "no object near " + t.obj_name(y);
    }
  }
  if (!v.faithful || !v.full) {
    for (Obj a : s.objects())
      for (Obj b : s.objects()) {
        if (!v.witness.empty()) break;
        auto h = s.hom(a, b);
        auto image = t.hom(K(a), K(b));
        std::vector<int> seen;
        for (Mor m : h) seen.push_back(K(m).v);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
          v.witness = "two morphisms " + s.obj_name(a) + " -> " + s.obj_name(b) + " with one image";
        for (Mor m : image)
          if (v.witness.empty() && !std::binary_search(seen.begin(), seen.end(), m.v))
            v.witness = t.mor_name(m) + " : " + t.obj_name(K(a)) + " -> " + t.obj_name(K(b)) + " is not hit";
      }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Pullback of a comprehension

PulledComprehension pullback_comprehension(const Comprehension& w, const Functor& F) {
  Fibration along(F);
  if (!along.discrete()) throw Error(ErrorKind::NotDiscrete, F.name);
  auto pulled = pullback_fibration(w.fibration, F);
  auto arrows = arrow_category(F.src);
  const auto& top = *pulled.square.cat;
  const auto& ab = *arrows.cat;
  const auto& L = pulled.square.left;
  const auto& R = pulled.square.right;

  Functor chi{"chi_" + F.name, pulled.square.cat, arrows.cat, {}, {}};
  for (Obj z : top.objects()) {
    const Mor e = along.lift(w.display(L(z)), R(z));
    chi.fobj.push_back(*arrows.object_of(e));
  }
  for (Mor m : top.morphisms()) {
    const Mor t = w.arrows.square[w.chi(L(m)).v].first;
    std::optional<Mor> found;
    for (Mor k : ab.hom(chi(top.src(m)), chi(top.tgt(m))))
      if (arrows.square[k.v].second == R(m) && F(arrows.square[k.v].first) == t) found = k;
    if (!found) throw Error(ErrorKind::NotAFunctor, "no lifted square for " + top.mor_name(m));
    chi.fmor.push_back(*found);
  }
  Comprehension out{pulled.fibration, std::move(arrows), std::move(chi)};
  Functor origin = L;
  return {std::move(out), std::move(pulled), std::move(origin)};
}

// ---------------------------------------------------------------------------
// Schemes and instantiation

namespace {

const std::regex kContext{R"(ctx|ext(\d+))"};
const std::regex kType{R"(type(\d+))"};

Error ill_typed(std::size_t position, const std::string& why) {
  return Error(ErrorKind::IllTypedParameter, "parameter " + std::to_string(position) + ": " + why);
}

}  // namespace

Scheme resolve_scheme(const RawScheme& raw) {
  Scheme s;
  s.name = raw.name;
  for (std::size_t i = 0; i < raw.params.size(); ++i) {
    const auto& p = raw.params[i];
    if (p.refs.empty() || !std::regex_match(p.refs[0], kContext))
      throw ill_typed(i, "context ref must be ctx or ext<k>");
    Scheme::Param q{p.term, p.refs[0], -1};
    if (p.term) {
      std::smatch m;
      if (p.refs.size() != 2 || !std::regex_match(p.refs[1], m, kType)) throw ill_typed(i, "type ref must be type<k>");
      q.type = std::stoi(m[1]);
    }
    s.params.push_back(std::move(q));
  }
  return s;
}

namespace {

// Context ref check against the parameters already consumed.
int extension_of(const Instantiation& inst, const std::string& ref, std::size_t position) {
  std::smatch m;
  if (!std::regex_match(ref, m, kContext)) throw ill_typed(position, "bad context ref " + ref);
  if (!m[1].matched) return -1;
  const auto k = static_cast<std::size_t>(std::stoi(m[1]));
  if (k >= inst.slot.size() || inst.is_term[k]) throw ill_typed(position, ref + " is not an earlier type parameter");
  return k;
}

}  // namespace

Functor context_functor(const Instantiation& inst, const Comprehension& w, const std::string& ref) {
  const int k = extension_of(inst, ref, inst.slot.size());
  if (k < 0) return inst.fibration.proj();
  const int s = inst.slot[k];
  const auto& c = inst.cat();
  Functor G{ref, inst.fibration.proj().src, w.arrows.cod.tgt, {}, {}};
  for (Obj x : c.objects()) G.fobj.push_back(w.arrows.dom(w.chi(inst.types[x.v][s])));
  for (Mor m : c.morphisms()) G.fmor.push_back(w.arrows.dom(w.chi(inst.type_maps[m.v][s])));
  return G;
}

Instantiation instantiate(const Scheme& scheme, const Comprehension& w) {
  return instantiate(scheme, w, display_data(w));
}

Instantiation instantiate(const Scheme& scheme, const Comprehension& w, const DisplayData& dd) {
  auto base = w.fibration.proj().tgt;
  Instantiation inst{Fibration(identity_functor(base)), {}, {}, {}, {}, {}};
  inst.types.assign(base->object_count(), {});
  inst.terms.assign(base->object_count(), {});
  inst.type_maps.assign(base->morphism_count(), {});
  const auto display_at = invert(dd.display.arrow);
  const auto square_at = invert(dd.display.square);

  for (std::size_t i = 0; i < scheme.params.size(); ++i) {
    const auto& param = scheme.params[i];
    const auto& cur = inst.cat();
    StrictPullback sp;
    if (!param.term) {
      extension_of(inst, param.context, i);
      sp = strict_pullback(context_functor(inst, w, param.context), dd.cartesian_proj);
    } else {
      const auto k = static_cast<std::size_t>(param.type);
      if (param.type < 0 || k >= i || scheme.params[k].term)
        throw ill_typed(i, "type" + std::to_string(param.type) + " is not an earlier type parameter");
      if (scheme.params[k].context != param.context)
        throw ill_typed(i, "context " + param.context + " differs from the context " + scheme.params[k].context +
                               " of type" + std::to_string(k));
      const int s = inst.slot[k];
      Functor D{"type" + std::to_string(k), inst.fibration.proj().src, dd.display.cat, {}, {}};
      for (Obj x : cur.objects()) D.fobj.push_back(Obj{display_at.at(w.chi(inst.types[x.v][s]).v)});
      for (Mor m : cur.morphisms()) {
        auto it = square_at.find(w.chi(inst.type_maps[m.v][s]).v);
        if (it == square_at.end()) throw ill_typed(i, "type component is not a pullback square");
        D.fmor.push_back(Mor{it->second});
      }
      sp = strict_pullback(D, dd.forget_section);
    }

    const auto& next = *sp.cat;
    Instantiation grown{Fibration(compose(inst.fibration.proj(), sp.left)), inst.slot, inst.is_term, {}, {}, {}};
    for (Obj z : next.objects()) {
      const Obj prev = sp.left(z);
      auto types = inst.types[prev.v];
      auto terms = inst.terms[prev.v];
      if (param.term)
        terms.push_back(dd.pointed.section[sp.right(z).v]);
      else
        types.push_back(dd.cartesian.inclusion(sp.right(z)));
      grown.types.push_back(std::move(types));
      grown.terms.push_back(std::move(terms));
    }
    for (Mor m : next.morphisms()) {
      auto maps = inst.type_maps[sp.left(m).v];
      if (!param.term) maps.push_back(dd.cartesian.inclusion(sp.right(m)));
      grown.type_maps.push_back(std::move(maps));
    }
    int slot = 0;
    for (std::size_t j = 0; j < i; ++j) slot += inst.is_term[j] == param.term;
    grown.slot.push_back(slot);
    grown.is_term.push_back(param.term);
    inst = std::move(grown);
  }
  return inst;
}

// ---------------------------------------------------------------------------
// FCoSwP

StrictPullback instantiation_target(const Instantiation& inst, const Comprehension& w) {
  return strict_pullback(inst.fibration.proj(), w.arrows.cod, "Inst*" + w.arrows.cat->name());
}

FCoSwP make_fcoswp(Comprehension w, Scheme scheme, const StructureFilter& keep) {
  auto inst = instantiate(scheme, w);
  auto target = instantiation_target(inst, w);
  auto sub = full_subcategory(
      target.cat,
      [&](Obj x) { return !keep || keep(inst, target.left(x), w.arrows.arrow[target.right(x).v]); }, "S");
  Fibration structure(compose(compose(inst.fibration.proj(), target.left), sub.inclusion));
  return make_fcoswp(std::move(w), std::move(scheme), std::move(inst), std::move(target), std::move(structure),
                     std::move(sub.inclusion));
}

StructureFilter identity_types(const Comprehension& w) {
  return [w](const Instantiation& inst, Obj i, Mor) {
    for (Obj t : inst.types[i.v])
      if (!w.base().is_identity(w.display(t))) return false;
    return true;
  };
}

FCoSwP make_fcoswp(Comprehension w, Scheme scheme, Instantiation inst, StrictPullback target, Fibration structure,
                   Functor comparison) {
  return {std::move(w), std::move(scheme), std::move(inst), std::move(target), std::move(structure),
          std::move(comparison)};
}

ModelReport check_fcoswp(const FCoSwP& w) {
  ModelReport r;
  {
    auto c = check_comprehension(w.comprehension);
    const Clause* bad = c.first_failure();
    r.clauses.push_back(clause("comprehension", bad ? bad->name + ": " + bad->witness : ""));
  }
  const auto& s = w.structure.total();
  const auto& t = *w.target.cat;
  const auto& K = w.comparison;
  {
    std::string why;
    if (!w.inst.fibration.grothendieck()) why = "instantiation is not a fibration";
    if (why.empty() && !w.structure.grothendieck()) why = "structure is not a fibration";
    if (why.empty() && (K.src.get() != &s || K.tgt.get() != &t)) why = "comparison has the wrong endpoints";
    if (why.empty()) {
      auto vs = check_functor(K);
      if (!vs.empty()) why = describe(vs);
    }
    if (why.empty()) {
      Fibration target(compose(w.inst.fibration.proj(), w.target.left));
      const auto& ps = w.structure.proj();
      for (Obj x : s.objects())
        if (why.empty() && target.proj()(K(x)) != ps(x)) why = "not over the base at " + s.obj_name(x);
      for (Mor m : s.morphisms()) {
        if (!why.empty()) break;
        if (target.proj()(K(m)) != ps(m))
          why = "not over the base at " + s.mor_name(m);
        else if (w.structure.cartesian(m) && !target.cartesian(K(m)))
          why = "cartesian " + s.mor_name(m) + " is not sent to a cartesian morphism";
      }
    }
    r.clauses.push_back(clause("fibration", why));
  }
  const bool typed = r.clauses.back().ok;
  {
    std::string why;
    if (typed)
      for (Obj a : s.objects())
        for (Obj b : s.objects()) {
          if (!why.empty()) break;
          auto h = s.hom(a, b);
          for (std::size_t i = 0; i < h.size() && why.empty(); ++i)
            for (std::size_t j = i + 1; j < h.size() && why.empty(); ++j)
              if (K(h[i]) == K(h[j])) why = s.mor_name(h[i]) + " and " + s.mor_name(h[j]) + " have one image";
        }
    r.clauses.push_back(clause("faithful", typed ? why : "skipped"));
  }
  {
    std::string why;
    if (typed)
      for (Obj x : s.objects())
        for (Mor i : t.morphisms()) {
          if (!why.empty()) break;
          if (t.src(i) != K(x) || !is_iso(t, i)) continue;
          bool lifted = false;
          for (Mor j : s.morphisms()) lifted = lifted || (s.src(j) == x && K(j) == i && is_iso(s, j));
          if (!lifted) why = "iso " + t.mor_name(i) + " at " + s.obj_name(x) + " has no lift";
        }
    r.clauses.push_back(clause("isofibration", typed ? why : "skipped"));
  }
  {
    std::string why;
    if (typed)
      for (Mor j : s.morphisms())
        if (why.empty() && !s.is_identity(j) && t.is_identity(K(j)) && is_iso(s, j))
          why = "iso " + s.mor_name(j) + " lies over an identity";
    r.clauses.push_back(clause("amnestic", typed ? why : "skipped"));
  }
  return r;
}

namespace {

// Lookup of instantiation objects and morphisms by their data after
// translating type components and sections.
class SignatureIndex {
 public:
  using ObjKey = std::tuple<int, std::vector<int>, std::vector<int>>;
  using MorKey = std::tuple<int, int, int, std::vector<int>>;

  // ctx and proj are kept native; tr_total / tr_base translate components.
  SignatureIndex(const Instantiation& inst, const std::function<Obj(Obj)>& obj_total,
                 const std::function<Mor(Mor)>& mor_total, const std::function<Mor(Mor)>& mor_base,
                 const std::function<Obj(Obj)>& ctx_map, const std::function<Mor(Mor)>& proj_map) {
    const auto& c = inst.cat();
    const auto& p = inst.fibration.proj();
    for (Obj x : c.objects()) {
      std::vector<int> ty, tm;
      for (Obj o : inst.types[x.v]) ty.push_back(obj_total(o).v);
      for (Mor s : inst.terms[x.v]) tm.push_back(mor_base(s).v);
      objs_.emplace(ObjKey{ctx_map(p(x)).v, std::move(ty), std::move(tm)}, x);
    }
    for (Mor m : c.morphisms()) {
      std::vector<int> ty;
      for (Mor t : inst.type_maps[m.v]) ty.push_back(mor_total(t).v);
      mors_.emplace(MorKey{c.src(m).v, c.tgt(m).v, proj_map(p(m)).v, std::move(ty)}, m);
    }
  }

  std::optional<Obj> find(const ObjKey& k) const {
    auto it = objs_.find(k);
    if (it == objs_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Mor> find(const MorKey& k) const {
    auto it = mors_.find(k);
    if (it == mors_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::map<ObjKey, Obj> objs_;
  std::map<MorKey, Mor> mors_;
};

SignatureIndex native_index(const Instantiation& inst) {
  auto o = [](Obj x) { return x; };
  auto m = [](Mor f) { return f; };
  return SignatureIndex(inst, o, m, m, o, m);
}

// Functor from an instantiation into another one, matching translated data.
Functor instantiation_map(const Instantiation& from, const SignatureIndex& to_index, const CategoryRef& to,
                          const Functor& total, const Functor& base, const std::string& name) {
  const auto& c = from.cat();
  const auto& p = from.fibration.proj();
  Functor out{name, from.fibration.proj().src, to, {}, {}};
  for (Obj x : c.objects()) {
    std::vector<int> ty, tm;
    for (Obj o : from.types[x.v]) ty.push_back(total(o).v);
    for (Mor s : from.terms[x.v]) tm.push_back(base(s).v);
    auto y = to_index.find(SignatureIndex::ObjKey{base(p(x)).v, std::move(ty), std::move(tm)});
    if (!y) throw Error(ErrorKind::NotAFunctor, name + ": no image for " + c.obj_name(x));
    out.fobj.push_back(*y);
  }
  for (Mor m : c.morphisms()) {
    std::vector<int> ty;
    for (Mor t : from.type_maps[m.v]) ty.push_back(total(t).v);
    auto k = to_index.find(
        SignatureIndex::MorKey{out(c.src(m)).v, out(c.tgt(m)).v, base(p(m)).v, std::move(ty)});
    if (!k) throw Error(ErrorKind::NotAFunctor, name + ": no image for " + c.mor_name(m));
    out.fmor.push_back(*k);
  }
  return out;
}

}  // namespace

FCoSwPPullback pullback_fcoswp(const Functor& F, const FCoSwP& w) {
  auto pc = pullback_comprehension(w.comprehension, F);
  const auto& origin = pc.total_origin;
  auto inst = instantiate(w.scheme, pc.comprehension);
  auto target = instantiation_target(inst, pc.comprehension);
  auto sp = strict_pullback(w.structure.proj(), F, "S*" + F.src->name());
  Fibration structure(sp.right);
  Fibration along(F);

  // Inst(F*P) indexed by (native context, old type components, old sections).
  auto obj_o = [&](Obj x) { return origin(x); };
  auto mor_o = [&](Mor m) { return origin(m); };
  auto mor_f = [&](Mor m) { return F(m); };
  auto id_o = [](Obj x) { return x; };
  auto id_m = [](Mor m) { return m; };
  SignatureIndex pulled_index(inst, obj_o, mor_o, mor_f, id_o, id_m);

  const auto& s = *sp.cat;
  const auto& old = w.inst;
  const auto& ab = *pc.comprehension.arrows.cat;
  const auto& arrows_b = pc.comprehension.arrows;
  Functor L{"inst", sp.cat, inst.fibration.proj().src, {}, {}};
  Functor R{"arrow", sp.cat, arrows_b.cat, {}, {}};
  for (Obj z : s.objects()) {
    const Obj cz = w.comparison(sp.left(z));
    const Obj i = w.target.left(cz);
    const Obj b = sp.right(z);
    std::vector<int> ty = indices(old.types[i.v]), tm = indices(old.terms[i.v]);
    auto y = pulled_index.find(SignatureIndex::ObjKey{b.v, ty, tm});
    if (!y) throw Error(ErrorKind::NotAFunctor, "no pulled instantiation object for " + s.obj_name(z));
    L.fobj.push_back(*y);
    const Mor a = w.comprehension.arrows.arrow[w.target.right(cz).v];
    R.fobj.push_back(*arrows_b.object_of(along.lift(a, b)));
  }
  for (Mor m : s.morphisms()) {
    const Mor cm = w.comparison(sp.left(m));
    const Mor im = w.target.left(cm);
    const Mor beta = sp.right(m);
    auto k = pulled_index.find(
        SignatureIndex::MorKey{L(s.src(m)).v, L(s.tgt(m)).v, beta.v, indices(old.type_maps[im.v])});
    if (!k) throw Error(ErrorKind::NotAFunctor, "no pulled instantiation morphism for " + s.mor_name(m));
    L.fmor.push_back(*k);
    const Mor top = w.comprehension.arrows.square[w.target.right(cm).v].first;
    std::optional<Mor> found;
    for (Mor q : ab.hom(R(s.src(m)), R(s.tgt(m))))
      if (arrows_b.square[q.v].second == beta && F(arrows_b.square[q.v].first) == top) found = q;
    if (!found) throw Error(ErrorKind::NotAFunctor, "no lifted square for " + s.mor_name(m));
    R.fmor.push_back(*found);
  }
  auto comparison = pair_into(target, L, R);

  FCoSwPPullback out{make_fcoswp(pc.comprehension, w.scheme, inst, target, structure, comparison), {}, {}};

  // Inst(F*P) -> F*Inst(P).
  auto fi = strict_pullback(old.fibration.proj(), F);
  auto to_old = instantiation_map(inst, native_index(old), old.fibration.proj().src, origin, F, "origin");
  auto K = pair_into(fi, to_old, inst.fibration.proj());
  if (is_isomorphism(K)) out.instantiation_iso = std::move(K);

  // D(F*T) -> F*D(T).
  auto dd = display_data(w.comprehension);
  auto dp = display_data(pc.comprehension);
  auto Fa = arrow_functor(F, arrows_b, w.comprehension.arrows);
  auto fd = strict_pullback(dd.display.proj, F);
  auto D = pair_into(fd, display_functor(dp.display, dd.display, Fa, F, "D(F)"), dp.display.proj);
  if (is_isomorphism(D)) out.display_iso = std::move(D);
  return out;
}

// ---------------------------------------------------------------------------
// Filter quotients

namespace {

struct QuotientComprehension {
  FibrationQuotient fq;
  Comprehension comprehension;
  Functor arrows;  // C^-> -> C_phi^->
};

QuotientComprehension quotient_comprehension(const Comprehension& w, const Filter<FinCategory>& phi) {
  auto fq = fibration_filter_quotient(w.fibration, phi);
  auto arrows = arrow_category(fq.base.cat);
  auto Pa = arrow_functor(fq.base.projection, w.arrows, arrows);
  auto chi = transport(compose(Pa, w.chi), fq);
  chi.name = "chi_phi";
  Comprehension c{fq.fibration, std::move(arrows), std::move(chi)};
  return {std::move(fq), std::move(c), std::move(Pa)};
}

// Same fibration, with the base replaced by an equal copy.
Fibration rebase(const Fibration& p, const CategoryRef& base) {
  Functor f = p.proj();
  if (f.tgt->object_count() != base->object_count() || f.tgt->morphism_count() != base->morphism_count())
    throw Error(ErrorKind::MismatchedEndpoints, "quotient bases differ");
  f.tgt = base;
  return Fibration(std::move(f));
}

Filter<FinCategory> as_filter(const FinCategory& c, const std::vector<Obj>& phi) {
  auto poset = subterminal_poset(c);
  auto r = validate_filter(c, poset, phi);
  if (!r.ok()) throw Error(r.violations.front().kind, describe(r.violations));
  return *r.filter;
}

}  // namespace

namespace {

void require_terminals(const FCoSwP& w) {
  if (!terminal_object(w.comprehension.total())) throw Error(ErrorKind::NoTerminalInT, w.comprehension.total().name());
  if (!terminal_object(w.structure.total())) throw Error(ErrorKind::NoTerminalInS, w.structure.total().name());
}

}  // namespace

FCoSwPQuotient fcoswp_filter_quotient(const FCoSwP& w, const std::vector<Obj>& phi) {
  require_terminals(w);
  return fcoswp_filter_quotient(w, as_filter(w.comprehension.base(), phi));
}

FCoSwPQuotient fcoswp_filter_quotient(const FCoSwP& w, const Filter<FinCategory>& phi) {
  require_terminals(w);

  auto qc = quotient_comprehension(w.comprehension, phi);
  const auto base_q = qc.fq.base;
  const auto& P = base_q.projection;
  const Obj u0 = base_q.minimum;

  auto below = slice(w.comprehension.fibration.proj().tgt, u0);
  auto restricted = pullback_fcoswp(below.proj, w);
  const bool equivalent = find_equivalence(below.cat, base_q.cat).has_value();

  auto inst_q = instantiate(w.scheme, qc.comprehension);
  auto target_q = instantiation_target(inst_q, qc.comprehension);
  auto PT = quotient_projection(qc.fq);

  // Inst(P) -> Inst(P_phi).
  auto iota = instantiation_map(w.inst, native_index(inst_q), inst_q.fibration.proj().src, PT, P, "iota");

  auto fqs = fibration_filter_quotient(w.structure, phi);
  auto K = pair_into(target_q, compose(iota, compose(w.target.left, w.comparison)),
                     compose(qc.arrows, compose(w.target.right, w.comparison)));
  auto comparison = transport(K, fqs);
  comparison.name = "comparison_phi";
  auto structure = rebase(fqs.fibration, base_q.cat);

  auto fqi = fibration_filter_quotient(w.inst.fibration, phi);
  auto inst_cmp = transport(iota, fqi);
  auto verdict = classify_comparison(inst_cmp);

  FCoSwP same = make_fcoswp(qc.comprehension, w.scheme, std::move(inst_q), std::move(target_q),
                            std::move(structure), std::move(comparison));
  return {u0,   base_q,          std::move(restricted), equivalent, std::move(same), std::move(inst_cmp),
          std::move(verdict)};
}

std::vector<ComparisonVerdict> display_quotient_comparison(const Comprehension& w, const std::vector<Obj>& phi) {
  auto filter = as_filter(w.base(), phi);
  auto qc = quotient_comprehension(w, filter);
  const auto& P = qc.fq.base.projection;
  auto dd = display_data(w);
  auto dq = display_data(qc.comprehension);
  std::vector<ComparisonVerdict> out;
  auto compare = [&](const DisplayCategory& a, const DisplayCategory& b, const std::string& name) {
    auto K = display_functor(a, b, qc.arrows, P, name);
    auto fq = fibration_filter_quotient(Fibration(a.proj), filter);
    out.push_back(classify_comparison(transport(K, fq)));
  };
  compare(dd.display, dq.display, "D");
  compare(dd.pointed, dq.pointed, "D1");
  compare(dd.pointed_all, dq.pointed_all, "D1*");

  auto PT = quotient_projection(qc.fq);
  const auto at = invert(dq.cartesian.inclusion.fmor);
  Functor K{"T_iso", dd.cartesian.cat, dq.cartesian.cat, {}, {}};
  for (Obj x : dd.cartesian.cat->objects()) K.fobj.push_back(x);
  for (Mor m : dd.cartesian.cat->morphisms()) {
    auto it = at.find(PT(dd.cartesian.inclusion(m)).v);
    if (it == at.end()) throw Error(ErrorKind::NotAFunctor, "cartesian morphism not preserved");
    K.fmor.push_back(Mor{it->second});
  }
  auto fq = fibration_filter_quotient(Fibration(dd.cartesian_proj), filter);
  out.push_back(classify_comparison(transport(K, fq)));
  return out;
}

}  // namespace catquot
