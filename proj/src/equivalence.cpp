#include "catquot/equivalence.hpp"

#include "catquot/constructions.hpp"

namespace catquot {

namespace {

std::optional<Functor> match_morphisms(const CategoryRef& cp, const CategoryRef& dp,
                                       const std::vector<Obj>& omap, SearchBudget& budget) {
  const auto& c = *cp;
  const auto& d = *dp;
  for (Obj x : c.objects())
    for (Obj y : c.objects())
      if (c.hom(x, y).size() != d.hom(omap[x.v], omap[y.v]).size()) return std::nullopt;
  std::vector<Mor> mmap(c.morphism_count());
  std::vector<bool> used(d.morphism_count(), false);
  std::vector<Mor> order;
  for (Mor f : c.morphisms()) {
    if (c.is_identity(f)) {
      Mor g = d.id(omap[c.src(f).v]);
      mmap[f.v] = g;
      used[g.v] = true;
    } else {
      order.push_back(f);
    }
  }
  auto consistent = [&](Mor m) {
    for (Mor a : c.morphisms()) {
      if (!mmap[a.v].valid()) continue;
      if (c.composable(a, m)) {
        Mor h = c.compose(a, m);
        if (mmap[h.v].valid() && d.compose(mmap[a.v], mmap[m.v]) != mmap[h.v]) return false;
      }
      if (c.composable(m, a)) {
        Mor h = c.compose(m, a);
        if (mmap[h.v].valid() && d.compose(mmap[m.v], mmap[a.v]) != mmap[h.v]) return false;
      }
    }
    return true;
  };
  Functor F{"iso", cp, dp, omap, {}};
  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == order.size()) {
      F.fmor = mmap;
      return check_functor(F).empty();
    }
    Mor f = order[k];
    for (Mor g : d.hom(omap[c.src(f).v], omap[c.tgt(f).v])) {
      if (used[g.v]) continue;
      budget.tick();
      mmap[f.v] = g;
      used[g.v] = true;
      if (consistent(f) && go(k + 1)) return true;
      used[g.v] = false;
      mmap[f.v] = Mor{};
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return F;
}

}  // namespace

std::optional<Functor> find_isomorphism(const CategoryRef& cp, const CategoryRef& dp,
                                        const std::optional<std::vector<Obj>>& objects,
                                        SearchBudget* budget) {
  SearchBudget local;
  SearchBudget& b = budget ? *budget : local;
  const auto& c = *cp;
  const auto& d = *dp;
  if (c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count())
    return std::nullopt;
  if (objects) return match_morphisms(cp, dp, *objects, b);
  const int n = c.object_count();
  std::vector<Obj> omap(n);
  std::vector<bool> used(n, false);
  std::optional<Functor> found;
  std::function<bool(int)> go = [&](int k) -> bool {
    if (k == n) {
      found = match_morphisms(cp, dp, omap, b);
      return found.has_value();
    }
    for (Obj y : d.objects()) {
      if (used[y.v]) continue;
      b.tick();
      omap[k] = y;
      bool ok = true;
      for (int j = 0; j <= k && ok; ++j)
        ok = c.hom(Obj{j}, Obj{k}).size() == d.hom(omap[j], y).size() &&
             c.hom(Obj{k}, Obj{j}).size() == d.hom(y, omap[j]).size();
      if (!ok) continue;
      used[y.v] = true;
      if (go(k + 1)) return true;
      used[y.v] = false;
    }
    return false;
  };
  go(0);
  return found;
}

std::optional<Functor> find_identity_on_objects_iso(const CategoryRef& c, const CategoryRef& d,
                                                    SearchBudget* budget) {
  if (c->object_count() != d->object_count()) return std::nullopt;
  return find_isomorphism(c, d, c->objects(), budget);
}

namespace {

struct Skeleton {
  Subcategory sub;
  std::vector<Obj> rep;    // object -> index of its representative in sub
  std::vector<Mor> to_rep;  // object -> iso x -> rep(x) in the ambient category
};

Skeleton skeleton(const CategoryRef& cp) {
  const auto& c = *cp;
  std::vector<Obj> reps;
  std::vector<Obj> rep(c.object_count());
  std::vector<Mor> to_rep(c.object_count());
  for (Obj x : c.objects()) {
    bool placed = false;
    for (std::size_t i = 0; i < reps.size() && !placed; ++i)
      for (Mor f : c.hom(x, reps[i]))
        if (is_iso(c, f)) {
          rep[x.v] = Obj{static_cast<int>(i)};
          to_rep[x.v] = f;
          placed = true;
          break;
        }
    if (!placed) {
      rep[x.v] = Obj{static_cast<int>(reps.size())};
      to_rep[x.v] = c.id(x);
      reps.push_back(x);
    }
  }
  auto sub = full_subcategory(
      cp, [&](Obj x) { return reps[rep[x.v].v] == x; }, c.name() + "|skel");
  return {std::move(sub), rep, to_rep};
}

// Morphism of the full subcategory with the given ambient image.
Mor in_sub(const Subcategory& s, Mor ambient) {
  for (Mor m : s.cat->morphisms())
    if (s.inclusion(m) == ambient) return m;
  throw Error(ErrorKind::UnknownId, "morphism outside the skeleton");
}

// Transports along an isomorphism of skeleta: x -> K(rep x).
Functor transport(const CategoryRef& cp, const Skeleton& sc, const Skeleton& sd, const Functor& K,
                  std::string name) {
  const auto& c = *cp;
  Functor F{std::move(name), cp, sd.sub.inclusion.tgt, {}, {}};
  for (Obj x : c.objects()) F.fobj.push_back(sd.sub.inclusion(K(sc.rep[x.v])));
  for (Mor f : c.morphisms()) {
    Obj x = c.src(f), y = c.tgt(f);
    Mor back = *find_inverse(c, sc.to_rep[x.v]);
    Mor core = c.compose(sc.to_rep[y.v], c.compose(f, back));
    F.fmor.push_back(sd.sub.inclusion(K(in_sub(sc.sub, core))));
  }
  return F;
}

Functor inverse_functor(const Functor& K) {
  Functor I{K.name + "^-1", K.tgt, K.src, std::vector<Obj>(K.tgt->object_count()),
            std::vector<Mor>(K.tgt->morphism_count())};
  for (Obj x : K.src->objects()) I.fobj[K(x).v] = x;
  for (Mor f : K.src->morphisms()) I.fmor[K(f).v] = f;
  return I;
}

}  // namespace

std::optional<Equivalence> find_equivalence(const CategoryRef& cp, const CategoryRef& dp,
                                            SearchBudget* budget) {
  auto sc = skeleton(cp);
  auto sd = skeleton(dp);
  auto K = find_isomorphism(sc.sub.cat, sd.sub.cat, std::nullopt, budget);
  if (!K) return std::nullopt;
  Equivalence e;
  e.forward = transport(cp, sc, sd, *K, "E");
  e.backward = transport(dp, sd, sc, inverse_functor(*K), "E^-1");
  const auto& d = *dp;
  for (Obj x : cp->objects()) e.unit.components.push_back(sc.to_rep[x.v]);
  for (Obj y : d.objects()) e.counit.components.push_back(*find_inverse(d, sd.to_rep[y.v]));
  return e;
}

std::vector<Violation> check_equivalence(const Equivalence& e) {
  std::vector<Violation> out;
  for (auto& v : check_functor(e.forward)) out.push_back(v);
  for (auto& v : check_functor(e.backward)) out.push_back(v);
  if (!out.empty()) return out;
  for (auto& v : check_natural(identity_functor(e.forward.src), compose(e.backward, e.forward), e.unit))
    out.push_back(v);
  for (auto& v : check_natural(compose(e.forward, e.backward), identity_functor(e.forward.tgt), e.counit))
    out.push_back(v);
  for (Mor m : e.unit.components)
    if (!is_iso(*e.forward.src, m)) out.push_back({ErrorKind::NotAFunctor, "unit component not iso"});
  for (Mor m : e.counit.components)
    if (!is_iso(*e.forward.tgt, m)) out.push_back({ErrorKind::NotAFunctor, "counit component not iso"});
  return out;
}

}  // namespace catquot
