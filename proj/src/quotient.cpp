#include "catquot/quotient.hpp"

#include <map>
#include <numeric>
#include <tuple>

#include "catquot/constructions.hpp"

namespace catquot {

namespace {

const FinCone& product_with(const Products& p, Obj x, Obj u) {
  if (auto c = p.get(x, u)) return *c;
  const auto& c = p.category();
  throw Error(ErrorKind::MissingProducts, "(" + c.obj_name(u) + ", " + c.obj_name(x) + ")");
}

Mor unique(const FinCategory& c, Obj a, Obj b) {
  const auto& h = c.hom(a, b);
  if (h.size() != 1) throw Error(ErrorKind::NotSubterminal, c.obj_name(a) + " -> " + c.obj_name(b));
  return h.front();
}

// f : X * U -> Y restricted to W <= U.
Mor restrict(const Products& p, Obj x, Obj u, Obj w, Mor f) {
  const auto& c = p.category();
  const auto& xu = product_with(p, x, u);
  const auto& xw = product_with(p, x, w);
  auto m = mediate(c, xu, xw.apex, {xw.legs[0], c.compose(unique(c, w, u), xw.legs[1])});
  return c.compose(f, *m);
}

Mor pair_over(const Products& p, Obj x, Obj u, Mor f) {
  const auto& c = p.category();
  const auto& xu = product_with(p, x, u);
  const auto& yu = product_with(p, c.tgt(f), u);
  return *mediate(c, yu, xu.apex, {f, xu.legs[1]});
}

struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Mor over_filter_element(const QuotientCategory& q, Obj x, Obj u, Mor f) {
  return pair_over(*q.products, x, u, f);
}

QuotientCategory filter_quotient(const CategoryRef& cp, const std::vector<Obj>& phi) {
  auto p = subterminal_poset(*cp);
  auto r = validate_filter(*cp, p, phi);
  if (!r.ok()) throw Error(r.violations.front().kind, describe(r.violations));
  return filter_quotient(cp, *r.filter);
}

QuotientCategory filter_quotient(const CategoryRef& cp, const Filter<FinCategory>& phi) {
  const auto& c = *cp;
  QuotientCategory q;
  q.base = cp;
  q.filter = phi;
  auto min = filter_minimum(phi);
  if (!min) throw Error(ErrorKind::SymbolicFilter, "filter without a least element");
  q.minimum = *min;
  q.products = std::make_shared<const Products>(c);
  const auto& prods = *q.products;
  const Obj u0 = q.minimum;
  const auto us = phi.objects();
  for (Obj u : us)
    for (Obj x : c.objects()) product_with(prods, x, u);

  // Germ construction: every (U, f : X * U -> Y), identified along restrictions.
  struct Rec {
    Obj x, y, u;
    Mor f;
  };
  std::vector<Rec> recs;
  std::map<std::tuple<int, int, int>, int> index;  // (x, u, f)
  UnionFind uf;
  for (Obj x : c.objects())
    for (Obj u : us) {
      Obj xu = product_with(prods, x, u).apex;
      for (Obj y : c.objects())
        for (Mor f : c.hom(xu, y)) {
          index[{x.v, u.v, f.v}] = uf.add();
          recs.push_back({x, y, u, f});
        }
    }
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const auto& m = recs[k];
    for (Obj w : us)
      if (w != m.u && !c.hom(w, m.u).empty())
        uf.unite(static_cast<int>(k), index.at({m.x.v, w.v, restrict(prods, m.x, m.u, w, m.f).v}));
  }
  std::map<int, int> class_of_root;
  std::vector<std::vector<int>> classes;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    int root = uf.find(static_cast<int>(k));
    auto [it, fresh] = class_of_root.emplace(root, static_cast<int>(classes.size()));
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(static_cast<int>(k));
  }
  auto class_of = [&](Obj x, Obj u, Mor f) { return class_of_root.at(uf.find(index.at({x.v, u.v, f.v}))); };
  auto at_minimum = [&](int cls) -> const Rec& {
    const Rec* found = nullptr;
    for (int k : classes[cls])
      if (recs[k].u == u0) {
        if (found) throw Error(ErrorKind::OptimizationMismatch, "two representatives at the minimum");
        found = &recs[k];
      }
    if (!found) throw Error(ErrorKind::OptimizationMismatch, "class without a representative at the minimum");
    return *found;
  };
  auto label = [&](Mor f) { return c.mor_name(f) + "@" + c.obj_name(u0); };

  const std::string qname = c.name() + "_" + c.obj_name(u0);
  {
    KeyedBuilder<int> gb(qname + "_germ");
    for (Obj x : c.objects()) gb.object(c.obj_name(x));
    std::vector<bool> is_id(classes.size(), false);
    for (Obj x : c.objects()) {
      int k = class_of(x, u0, product_with(prods, x, u0).legs[0]);
      gb.identity(x, k);
      is_id[k] = true;
    }
    for (std::size_t k = 0; k < classes.size(); ++k) {
      if (is_id[k]) continue;
      const auto& r = at_minimum(static_cast<int>(k));
      gb.morphism(label(r.f), r.x, r.y, static_cast<int>(k));
    }
    auto keys = gb.keys();
    q.germ_cat = share(std::move(gb).build([&](int g, int f) {
      // compose first members at a common lower bound in the filter
      const auto& a = recs[classes[f].front()];
      const auto& b = recs[classes[g].front()];
      Obj w = u0;
      for (Obj v : us)
        if (!c.hom(v, a.u).empty() && !c.hom(v, b.u).empty()) {
          w = v;
          break;
        }
      Mor fa = restrict(prods, a.x, a.u, w, a.f);
      Mor gb2 = restrict(prods, b.x, b.u, w, b.f);
      return class_of(a.x, w, c.compose(gb2, pair_over(prods, a.x, w, fa)));
    }));
    for (int k : keys) {
      std::vector<QuotientCategory::Member> ms;
      for (int r : classes[k]) ms.push_back({recs[r].u, recs[r].f});
      q.germs.push_back(std::move(ms));
    }
  }

  // Minimum construction: hom(X, Y) = C(X * U0, Y).
  using Key = std::pair<int, int>;  // (f, x)
  KeyedBuilder<Key> mb(qname);
  for (Obj x : c.objects()) mb.object(c.obj_name(x));
  for (Obj x : c.objects()) mb.identity(x, {product_with(prods, x, u0).legs[0].v, x.v});
  for (Obj x : c.objects()) {
    Obj xu = product_with(prods, x, u0).apex;
    Mor pi = product_with(prods, x, u0).legs[0];
    for (Obj y : c.objects())
      for (Mor f : c.hom(xu, y))
        if (f != pi) mb.morphism(label(f), x, y, {f.v, x.v});
  }
  auto mkeys = mb.keys();
  q.cat = share(std::move(mb).build([&](const Key& g, const Key& f) {
    Obj x{f.second};
    return Key{c.compose(Mor{g.first}, pair_over(prods, x, u0, Mor{f.first})).v, x.v};
  }));
  for (const auto& k : mkeys) q.representative.push_back(Mor{k.first});
  auto find_key = [&](Mor f, Obj x) {
    for (Mor m : q.cat->hom(x, c.tgt(f)))
      if (q.representative[m.v] == f) return m;
    throw Error(ErrorKind::OptimizationMismatch, "no quotient morphism for " + c.mor_name(f));
  };

  q.projection = Functor{"P", cp, q.cat, c.objects(), {}};
  for (Mor f : c.morphisms()) {
    Obj x = c.src(f);
    q.projection.fmor.push_back(find_key(c.compose(f, product_with(prods, x, u0).legs[0]), x));
  }

  q.comparison = Functor{"cmp", q.germ_cat, q.cat, c.objects(), {}};
  for (Mor m : q.germ_cat->morphisms()) {
    Obj x = q.germ_cat->src(m);
    const QuotientCategory::Member* at0 = nullptr;
    for (const auto& mem : q.germs[m.v])
      if (mem.u == u0) at0 = &mem;
    q.comparison.fmor.push_back(find_key(at0->f, x));
  }
  if (!check_functor(q.comparison).empty() || !is_isomorphism(q.comparison))
    throw Error(ErrorKind::OptimizationMismatch, "germ and minimum constructions differ");
  if (!check_functor(q.projection).empty())
    throw Error(ErrorKind::OptimizationMismatch, "projection is not a functor");
  return q;
}

std::vector<Violation> check_germ_composition(const QuotientCategory& q) {
  const auto& c = *q.base;
  const auto& g = *q.germ_cat;
  const auto& prods = *q.products;
  const auto us = q.filter.objects();
  std::vector<Violation> out;
  auto member_class = [&](Obj x, Obj u, Mor f) -> std::optional<Mor> {
    for (Mor m : g.morphisms())
      if (g.src(m) == x)
        for (const auto& mem : q.germs[m.v])
          if (mem.u == u && mem.f == f) return m;
    return std::nullopt;
  };
  for (Mor f : g.morphisms())
    for (Mor h : g.out(g.tgt(f))) {
      Mor expected = g.compose(h, f);
      Obj x = g.src(f);
      for (const auto& a : q.germs[f.v])
        for (const auto& b : q.germs[h.v])
          for (Obj w : us) {
            if (c.hom(w, a.u).empty() || c.hom(w, b.u).empty()) continue;
            Mor fa = restrict(prods, x, a.u, w, a.f);
            Mor hb = restrict(prods, g.tgt(f), b.u, w, b.f);
            auto got = member_class(x, w, c.compose(hb, pair_over(prods, x, w, fa)));
            if (got != expected)
              out.push_back({ErrorKind::OptimizationMismatch,
                             "composite " + g.mor_name(h) + " . " + g.mor_name(f) + " at " + c.obj_name(w)});
          }
    }
  return out;
}

Functor quotient_comparison(const QuotientCategory& phi, const QuotientCategory& psi) {
  const auto& c = *phi.base;
  const auto& prods = *phi.products;
  Functor F{"cmp", phi.cat, psi.cat, c.objects(), {}};
  for (Mor m : phi.cat->morphisms()) {
    Obj x = phi.cat->src(m);
    Mor r = restrict(prods, x, phi.minimum, psi.minimum, phi.representative[m.v]);
    std::optional<Mor> found;
    for (Mor n : psi.cat->hom(x, phi.cat->tgt(m)))
      if (psi.representative[n.v] == r) found = n;
    if (!found) throw Error(ErrorKind::OptimizationMismatch, "comparison of " + phi.cat->mor_name(m));
    F.fmor.push_back(*found);
  }
  return F;
}

void require_product_stable(const QuotientCategory& q, const MorClass& s) {
  const auto& c = *q.base;
  for (Mor f : c.morphisms()) {
    if (!s.test(f.v)) continue;
    for (Obj u : q.filter.objects()) {
      Mor fu = q.products->times(f, c.id(u));
      if (!s.test(fu.v))
        throw Error(ErrorKind::NotProductStable, "(" + c.mor_name(f) + ", " + c.obj_name(u) + ")");
    }
  }
}

MorClass transfer_class(const QuotientCategory& q, const MorClass& s) {
  require_product_stable(q, s);
  const auto& Q = *q.cat;
  std::vector<Obj> order{q.minimum};
  for (Obj u : q.filter.objects())
    if (u != q.minimum) order.push_back(u);
  std::vector<Mor> germ_of(Q.morphism_count());
  for (Mor g : q.germ_cat->morphisms()) germ_of[q.comparison(g).v] = g;
  MorClass out(Q.morphism_count());
  for (Mor m : Q.morphisms()) {
    Obj x = Q.src(m);
    Mor germ = germ_of[m.v];
    for (Obj v : order) {
      for (const auto& mem : q.germs[germ.v])
        if (mem.u == v && s.test(pair_over(*q.products, x, v, mem.f).v)) out.set(m.v);
      if (out.test(m.v)) break;
    }
  }
  return out;
}

// --- preservation -----------------------------------------------------------

std::string to_string(Property p) {
  switch (p) {
    case Property::FiniteLimits:
      return "finite-limits";
    case Property::FiniteColimits:
      return "finite-colimits";
    case Property::Monos:
      return "monos";
    case Property::Exponentials:
      return "exponentials";
    case Property::SubobjectClassifier:
      return "subobject-classifier";
    case Property::NnoProbe:
      return "nno-probe";
  }
  return "?";
}

std::optional<Property> parse_property(const std::string& s) {
  for (auto p : {Property::FiniteLimits, Property::FiniteColimits, Property::Monos, Property::Exponentials,
                 Property::SubobjectClassifier, Property::NnoProbe})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

bool PreservationReport::ok() const { return count(PreservationInstance::Verdict::Fail) == 0; }

int PreservationReport::count(PreservationInstance::Verdict v) const {
  return static_cast<int>(std::count_if(instances.begin(), instances.end(),
                                        [v](const PreservationInstance& i) { return i.verdict == v; }));
}

namespace {

using Verdict = PreservationInstance::Verdict;

// Recursion property of (n, zero, succ) against every object and every
// (x : 1 -> X, f : X -> X).
template <CategoryLike C>
bool is_nno(const C& c, const typename C::Obj& one, const typename C::Obj& n, const typename C::Mor& zero,
            const typename C::Mor& succ) {
  for (const auto& x : c.objects())
    for (const auto& pt : c.hom(one, x))
      for (const auto& f : c.hom(x, x)) {
        int found = 0;
        for (const auto& r : c.hom(n, x))
          if (c.compose(r, zero) == pt && c.compose(r, succ) == c.compose(f, r)) ++found;
        if (found != 1) return false;
      }
  return true;
}

template <CategoryLike C, class Map>
Diagram<C> map_diagram(const Diagram<C>& d, Map&& P) {
  Diagram<C> out;
  for (const auto& n : d.nodes) out.nodes.push_back(P(n));
  for (const auto& e : d.edges) out.edges.push_back({e.from, e.to, P(e.mor)});
  return out;
}

template <CategoryLike C, class Map>
Cone<C> map_cone(const Cone<C>& k, Map&& P) {
  Cone<C> out{P(k.apex), {}};
  for (const auto& l : k.legs) out.legs.push_back(P(l));
  return out;
}

}  // namespace

PreservationReport verify_preservation(const QuotientCategory& q, Property p) {
  const auto& c = *q.base;
  const auto& Q = *q.cat;
  const auto& P = q.projection;
  auto Pobj = [&](Obj x) { return P(x); };
  auto Pmap = [&](auto v) { return P(v); };
  PreservationReport rep{p, Evidence::Exhaustive, {}};
  auto add = [&](std::string what, Verdict v) { rep.instances.push_back({std::move(what), v}); };
  auto limit_instance = [&](const std::string& what, const FinDiagram& d, bool co) {
    auto k = co ? colimit(c, d) : limit(c, d);
    if (!k) return add(what, Verdict::Skipped);
    auto img = map_diagram<FinCategory>(d, Pmap);
    auto cone = map_cone<FinCategory>(*k, Pmap);
    bool ok = co ? is_colimit(Q, img, cone) : is_limit(Q, img, cone);
    add(what, ok ? Verdict::Pass : Verdict::Fail);
  };
  (void)Pobj;
  switch (p) {
    case Property::FiniteLimits:
    case Property::FiniteColimits: {
      const bool co = p == Property::FiniteColimits;
      limit_instance(co ? "initial" : "terminal", FinDiagram{}, co);
      for (Obj x : c.objects())
        for (Obj y : c.objects()) {
          if (y < x) continue;
          limit_instance((co ? "coproduct " : "product ") + c.obj_name(x) + ", " + c.obj_name(y),
                         discrete_diagram<FinCategory>({x, y}), co);
          for (Mor f : c.hom(x, y))
            for (Mor g : c.hom(x, y))
              if (f < g)
                limit_instance((co ? "coequalizer " : "equalizer ") + c.mor_name(f) + ", " + c.mor_name(g),
                               parallel_diagram(c, f, g), co);
        }
      for (Mor f : c.morphisms())
        for (Mor g : c.morphisms()) {
          if (g < f) continue;
          if (!co && c.tgt(f) == c.tgt(g))
            limit_instance("pullback " + c.mor_name(f) + ", " + c.mor_name(g), cospan_diagram(c, f, g), co);
          if (co && c.src(f) == c.src(g))
            limit_instance("pushout " + c.mor_name(f) + ", " + c.mor_name(g), span_diagram(c, f, g), co);
        }
      break;
    }
    case Property::Monos:
      for (Mor f : c.morphisms())
        if (is_mono(c, f)) add("mono " + c.mor_name(f), is_mono(Q, P(f)) ? Verdict::Pass : Verdict::Fail);
      break;
    case Property::Exponentials: {
      Products qp(Q);
      for (Obj x : c.objects())
        for (Obj y : c.objects()) {
          std::string what = "exponential " + c.obj_name(y) + "^" + c.obj_name(x);
          std::optional<Exponential> e;
          try {
            e = exponential(c, x, y);
          } catch (const Error&) {
            e.reset();
          }
          if (!e) {
            add(what, Verdict::Skipped);
            continue;
          }
          auto cone = map_cone<FinCategory>(q.products->require(e->object, x), Pmap);
          bool ok = is_exponential(Q, qp, cone, x, y, P(e->eval));
          add(what, ok ? Verdict::Pass : Verdict::Fail);
        }
      break;
    }
    case Property::SubobjectClassifier: {
      auto s = subobject_classifier(c);
      auto one = terminal_object(c);
      if (!s || !one) {
        add("subobject classifier", Verdict::Skipped);
        break;
      }
      bool ok = is_subobject_classifier(Q, P(*one), {P(s->omega), P(s->truth)});
      add("subobject classifier " + c.obj_name(s->omega), ok ? Verdict::Pass : Verdict::Fail);
      break;
    }
    case Property::NnoProbe: {
      auto one = terminal_object(c);
      std::optional<std::tuple<Obj, Mor, Mor>> nno;
      if (one)
        for (Obj n : c.objects()) {
          for (Mor z : c.hom(*one, n))
            for (Mor s : c.hom(n, n))
              if (!nno && is_nno(c, *one, n, z, s)) nno = {n, z, s};
          if (nno) break;
        }
      if (!nno) {
        add("natural number object", Verdict::Skipped);
        break;
      }
      auto [n, z, s] = *nno;
      bool ok = is_nno(Q, P(*one), P(n), P(z), P(s));
      add("natural number object " + c.obj_name(n), ok ? Verdict::Pass : Verdict::Fail);
      break;
    }
  }
  return rep;
}

// --- finite-set powers ------------------------------------------------------

SetPowerQuotient filter_quotient(const SetPower& c, const Filter<SetPower>& phi) {
  auto min = filter_minimum(phi);
  if (!min) throw Error(ErrorKind::SymbolicFilter, "filter without a least element");
  std::vector<bool> keep(c.arity());
  for (int i = 0; i < c.arity(); ++i) {
    if (c.active(i) && min->sizes[i] > 1) throw Error(ErrorKind::NotSubterminal, c.name(*min));
    keep[i] = min->sizes[i] == 1;
  }
  SetPowerQuotient q{c, c.restricted(keep), *min};
  for (const auto& x : c.objects())
    for (const auto& y : c.objects()) {
      auto xu = c.product(x, *min).apex;
      if (q.cat.hom_size(x, y) != c.hom_size(xu, y))
        throw Error(ErrorKind::OptimizationMismatch, "hom(" + c.name(x) + ", " + c.name(y) + ")");
    }
  return q;
}

SetPower::Mor SetPowerQuotient::over_minimum(const SetPower::Mor& f) const {
  auto xu = base.product(f.src, minimum);
  SetPower::Mor g{xu.apex, f.tgt, std::vector<std::vector<int>>(base.arity())};
  for (int i = 0; i < base.arity(); ++i) {
    if (!base.active(i)) continue;
    for (int a : xu.legs[0].maps[i]) g.maps[i].push_back(f.maps[i][a]);
  }
  return base.pair(f.tgt, minimum, g, xu.legs[1]);
}

PreservationReport verify_preservation(const SetPowerQuotient& q, Property p) {
  const auto& c = q.base;
  const auto& Q = q.cat;
  PreservationReport rep{p, Evidence::ProbeVerified, {}};
  auto add = [&](std::string what, Verdict v) { rep.instances.push_back({std::move(what), v}); };
  auto P = [&](const SetPower::Mor& f) { return q.project(f); };
  auto Pobj = [](const SetPower::Obj& x) { return x; };
  auto small = [&](const SetPower::Obj& x) {
    for (int s : x.sizes)
      if (s > 2) return false;
    return true;
  };
  auto image = [&](const Diagram<SetPower>& d) {
    Diagram<SetPower> out{d.nodes, {}};
    for (const auto& e : d.edges) out.edges.push_back({e.from, e.to, P(e.mor)});
    return out;
  };
  auto image_cone = [&](const Cone<SetPower>& k) {
    Cone<SetPower> out{Pobj(k.apex), {}};
    for (const auto& l : k.legs) out.legs.push_back(P(l));
    return out;
  };
  auto limit_instance = [&](const std::string& what, const Diagram<SetPower>& d, bool co) {
    auto k = co ? c.colimit(d) : c.limit(d);
    bool ok = co ? is_colimit(Q, image(d), image_cone(k)) : is_limit(Q, image(d), image_cone(k));
    add(what, ok ? Verdict::Pass : Verdict::Fail);
  };
  switch (p) {
    case Property::FiniteLimits:
    case Property::FiniteColimits: {
      const bool co = p == Property::FiniteColimits;
      limit_instance(co ? "initial" : "terminal", Diagram<SetPower>{}, co);
      for (const auto& x : c.objects())
        for (const auto& y : c.objects()) {
          if (!small(x) || !small(y) || y < x) continue;
          limit_instance((co ? "coproduct " : "product ") + c.name(x) + ", " + c.name(y),
                         discrete_diagram<SetPower>({x, y}), co);
          auto hs = c.hom(x, y);
          for (std::size_t i = 0; i + 1 < hs.size() && i < 2; ++i)
            limit_instance((co ? "coequalizer " : "equalizer ") + c.name(hs[i]) + ", " + c.name(hs.back()),
                           parallel_diagram(c, hs[i], hs.back()), co);
        }
      break;
    }
    case Property::Monos:
      for (const auto& x : c.objects())
        for (const auto& y : c.objects()) {
          if (!small(x) || !small(y)) continue;
          for (const auto& f : c.hom(x, y))
            if (is_mono(c, f)) add("mono " + c.name(f), is_mono(Q, P(f)) ? Verdict::Pass : Verdict::Fail);
        }
      break;
    case Property::Exponentials:
      for (const auto& x : c.objects())
        for (const auto& y : c.objects()) {
          if (!small(x) || !small(y)) continue;
          auto e = c.exponential(x, y);
          bool ok = is_exponential(Q, x, y, SetPower::Exponential{e.object, P(e.eval)});
          add("exponential " + c.name(y) + "^" + c.name(x), ok ? Verdict::Pass : Verdict::Fail);
        }
      break;
    case Property::SubobjectClassifier: {
      auto s = c.subobject_classifier();
      bool ok = is_subobject_classifier(Q, SetPower::Classifier{s.omega, P(s.truth)});
      add("subobject classifier " + c.name(s.omega), ok ? Verdict::Pass : Verdict::Fail);
      break;
    }
    case Property::NnoProbe:
      add("natural number object (none among finite sets)", Verdict::Skipped);
      break;
  }
  return rep;
}

}  // namespace catquot
