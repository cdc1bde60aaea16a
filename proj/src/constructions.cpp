#include "catquot/constructions.hpp"

#include <array>

namespace catquot {

CategoryRef share(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

FinCategory poset_category(const std::string& name, const std::vector<std::string>& elems,
                           const std::function<bool(int, int)>& leq) {
  KeyedBuilder<std::pair<int, int>> b(name);
  const int n = static_cast<int>(elems.size());
  std::vector<Obj> xs;
  for (int i = 0; i < n; ++i) xs.push_back(b.object(elems[i]));
  for (int i = 0; i < n; ++i) b.identity(xs[i], {i, i});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq(i, j)) b.morphism(elems[i] + "<=" + elems[j], xs[i], xs[j], {i, j});
  return std::move(b).build([](const auto& g, const auto& f) { return std::make_pair(f.first, g.second); });
}

FinCategory terminal_category(const std::string& name) {
  CategoryBuilder b(name);
  b.add_object("*");
  return std::move(b).build();
}

ProductCategory product_category(const CategoryRef& a, const CategoryRef& b, std::string name) {
  if (name.empty()) name = a->name() + "x" + b->name();
  KeyedBuilder<std::pair<int, int>> kb(name);
  const int nb = b->object_count();
  std::vector<Obj> objs;
  for (Obj x : a->objects())
    for (Obj y : b->objects())
      objs.push_back(kb.object("(" + a->obj_name(x) + "," + b->obj_name(y) + ")"));
  auto at = [&](Obj x, Obj y) { return objs[x.v * nb + y.v]; };
  for (Obj x : a->objects())
    for (Obj y : b->objects()) kb.identity(at(x, y), {a->id(x).v, b->id(y).v});
  for (Mor f : a->morphisms())
    for (Mor g : b->morphisms()) {
      if (a->is_identity(f) && b->is_identity(g)) continue;
      kb.morphism("(" + a->mor_name(f) + "," + b->mor_name(g) + ")", at(a->src(f), b->src(g)),
                  at(a->tgt(f), b->tgt(g)), {f.v, g.v});
    }
  auto keys = kb.keys();
  auto cat = share(std::move(kb).build([&](const auto& g, const auto& f) {
    return std::make_pair(a->compose(Mor{g.first}, Mor{f.first}).v,
                          b->compose(Mor{g.second}, Mor{f.second}).v);
  }));
  ProductCategory p{cat, {"pr1", cat, a, {}, {}}, {"pr2", cat, b, {}, {}}};
  for (Obj x : a->objects())
    for (Obj y : b->objects()) {
      p.first.fobj.push_back(x);
      p.second.fobj.push_back(y);
    }
  for (const auto& k : keys) {
    p.first.fmor.push_back(Mor{k.first});
    p.second.fmor.push_back(Mor{k.second});
  }
  return p;
}

FinCategory opposite(const FinCategory& c) {
  KeyedBuilder<int> b(c.name() + "^op");
  for (Obj x : c.objects()) b.object(c.obj_name(x));
  for (Obj x : c.objects()) b.identity(x, c.id(x).v);
  for (Mor f : c.morphisms())
    if (!c.is_identity(f)) b.morphism(c.mor_name(f) + "^op", c.tgt(f), c.src(f), f.v);
  return std::move(b).build([&](int g, int f) { return c.compose(Mor{f}, Mor{g}).v; });
}

Slice slice(const CategoryRef& cp, Obj x) {
  const auto& c = *cp;
  KeyedBuilder<std::array<int, 3>> b(c.name() + "/" + c.obj_name(x));  // (k, from, to)
  std::vector<Mor> over;
  for (Obj a : c.objects())
    for (Mor f : c.hom(a, x)) over.push_back(f);
  std::vector<Obj> objs;
  for (Mor f : over) objs.push_back(b.object(c.mor_name(f)));
  for (std::size_t i = 0; i < over.size(); ++i)
    b.identity(objs[i], {c.id(c.src(over[i])).v, static_cast<int>(i), static_cast<int>(i)});
  for (std::size_t i = 0; i < over.size(); ++i)
    for (std::size_t j = 0; j < over.size(); ++j)
      for (Mor k : c.hom(c.src(over[i]), c.src(over[j]))) {
        if (c.compose(over[j], k) != over[i]) continue;
        if (i == j && c.is_identity(k)) continue;
        b.morphism(c.mor_name(k) + ":" + c.mor_name(over[i]) + ">" + c.mor_name(over[j]), objs[i],
                   objs[j], {k.v, static_cast<int>(i), static_cast<int>(j)});
      }
  auto keys = b.keys();
  auto cat = share(std::move(b).build(
      [&](const auto& g, const auto& f) {
        return std::array<int, 3>{c.compose(Mor{g[0]}, Mor{f[0]}).v, f[1], g[2]};
      }));
  Slice s{cat, {"proj", cat, cp, {}, {}}, over};
  for (Mor f : over) s.proj.fobj.push_back(c.src(f));
  for (const auto& k : keys) s.proj.fmor.push_back(Mor{k[0]});
  return s;
}

std::optional<Obj> ArrowCategory::object_of(Mor f) const {
  for (std::size_t i = 0; i < arrow.size(); ++i)
    if (arrow[i] == f) return Obj{static_cast<int>(i)};
  return std::nullopt;
}

ArrowCategory arrow_category(const CategoryRef& cp) {
  const auto& c = *cp;
  struct Key {
    int top, bottom, from, to;
    auto operator<=>(const Key&) const = default;
  };
  KeyedBuilder<Key> b(c.name() + "^->");
  auto arrows = c.morphisms();
  std::vector<Obj> objs;
  for (Mor f : arrows) objs.push_back(b.object(c.mor_name(f)));
  for (Mor f : arrows)
    b.identity(objs[f.v], {c.id(c.src(f)).v, c.id(c.tgt(f)).v, f.v, f.v});
  for (Mor f : arrows)
    for (Mor g : arrows)
      for (Mor t : c.hom(c.src(f), c.src(g)))
        for (Mor u : c.hom(c.tgt(f), c.tgt(g))) {
          if (c.compose(g, t) != c.compose(u, f)) continue;
          if (f == g && c.is_identity(t) && c.is_identity(u)) continue;
          b.morphism("[" + c.mor_name(t) + "|" + c.mor_name(u) + "]:" + c.mor_name(f) + ">" +
                         c.mor_name(g),
                     objs[f.v], objs[g.v], {t.v, u.v, f.v, g.v});
        }
  auto keys = b.keys();
  auto cat = share(std::move(b).build([&](const Key& g, const Key& f) {
    return Key{c.compose(Mor{g.top}, Mor{f.top}).v, c.compose(Mor{g.bottom}, Mor{f.bottom}).v, f.from, g.to};
  }));
  ArrowCategory a{cat, {"dom", cat, cp, {}, {}}, {"cod", cat, cp, {}, {}}, arrows, {}};
  for (Mor f : arrows) {
    a.dom.fobj.push_back(c.src(f));
    a.cod.fobj.push_back(c.tgt(f));
  }
  for (const auto& k : keys) {
    a.dom.fmor.push_back(Mor{k.top});
    a.cod.fmor.push_back(Mor{k.bottom});
    a.square.emplace_back(Mor{k.top}, Mor{k.bottom});
  }
  return a;
}

Subcategory subcategory(const CategoryRef& cp, const std::function<bool(Obj)>& keep,
                        const std::function<bool(Mor)>& keep_mor, std::string name) {
  const auto& c = *cp;
  if (name.empty()) name = c.name() + "|sub";
  KeyedBuilder<int> b(name);
  std::vector<Obj> kept;
  for (Obj x : c.objects())
    if (keep(x)) {
      b.object(c.obj_name(x));
      kept.push_back(x);
    }
  std::vector<int> pos(c.object_count(), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) pos[kept[i].v] = static_cast<int>(i);
  for (std::size_t i = 0; i < kept.size(); ++i) b.identity(Obj{static_cast<int>(i)}, c.id(kept[i]).v);
  for (Mor f : c.morphisms()) {
    if (c.is_identity(f) || pos[c.src(f).v] < 0 || pos[c.tgt(f).v] < 0 || !keep_mor(f)) continue;
    b.morphism(c.mor_name(f), Obj{pos[c.src(f).v]}, Obj{pos[c.tgt(f).v]}, f.v);
  }
  auto keys = b.keys();
  auto cat = share(std::move(b).build([&](int g, int f) { return c.compose(Mor{g}, Mor{f}).v; }));
  Subcategory s{cat, {"incl", cat, cp, kept, {}}};
  for (int k : keys) s.inclusion.fmor.push_back(Mor{k});
  return s;
}

Subcategory full_subcategory(const CategoryRef& c, const std::function<bool(Obj)>& keep, std::string name) {
  return subcategory(c, keep, [](Mor) { return true; }, std::move(name));
}

StrictPullback strict_pullback(const Functor& F, const Functor& G, std::string name) {
  const auto& X = *F.src;
  const auto& Y = *G.src;
  if (name.empty()) name = X.name() + "x_" + F.tgt->name() + Y.name();
  KeyedBuilder<std::pair<int, int>> b(name);
  std::vector<std::pair<Obj, Obj>> objs;
  std::map<std::pair<int, int>, Obj> at;
  for (Obj x : X.objects())
    for (Obj y : Y.objects())
      if (F(x) == G(y)) {
        at[{x.v, y.v}] = b.object("(" + X.obj_name(x) + "," + Y.obj_name(y) + ")");
        objs.emplace_back(x, y);
      }
  for (const auto& [x, y] : objs) b.identity(at[{x.v, y.v}], {X.id(x).v, Y.id(y).v});
  for (Mor f : X.morphisms())
    for (Mor g : Y.morphisms()) {
      if (F(f) != G(g)) continue;
      if (X.is_identity(f) && Y.is_identity(g)) continue;
      auto s = at.find({X.src(f).v, Y.src(g).v});
      auto t = at.find({X.tgt(f).v, Y.tgt(g).v});
      if (s == at.end() || t == at.end()) continue;
      b.morphism("(" + X.mor_name(f) + "," + Y.mor_name(g) + ")", s->second, t->second, {f.v, g.v});
    }
  auto keys = b.keys();
  auto cat = share(std::move(b).build([&](const auto& g, const auto& f) {
    return std::make_pair(X.compose(Mor{g.first}, Mor{f.first}).v, Y.compose(Mor{g.second}, Mor{f.second}).v);
  }));
  StrictPullback p{cat, {"pl", cat, F.src, {}, {}}, {"pr", cat, G.src, {}, {}}};
  for (const auto& [x, y] : objs) {
    p.left.fobj.push_back(x);
    p.right.fobj.push_back(y);
  }
  for (const auto& k : keys) {
    p.left.fmor.push_back(Mor{k.first});
    p.right.fmor.push_back(Mor{k.second});
  }
  return p;
}

}  // namespace catquot
