#include "catquot/functor.hpp"

#include <set>

namespace catquot {

std::vector<Violation> check_functor(const Functor& F) {
  std::vector<Violation> out;
  const auto& A = *F.src;
  const auto& B = *F.tgt;
  if (F.fobj.size() != static_cast<std::size_t>(A.object_count()) ||
      F.fmor.size() != static_cast<std::size_t>(A.morphism_count())) {
    out.push_back({ErrorKind::NotAFunctor, F.name + ": incomplete object or morphism map"});
    return out;
  }
  for (Mor f : A.morphisms()) {
    Mor g = F(f);
    if (!g.valid() || g.v >= B.morphism_count()) {
      out.push_back({ErrorKind::NotAFunctor, F.name + ": " + A.mor_name(f) + " unmapped"});
      continue;
    }
    if (B.src(g) != F(A.src(f)) || B.tgt(g) != F(A.tgt(f)))
      out.push_back({ErrorKind::NotAFunctor, F.name + ": endpoints of " + A.mor_name(f)});
  }
  if (!out.empty()) return out;
  for (Obj x : A.objects())
    if (F(A.id(x)) != B.id(F(x)))
      out.push_back({ErrorKind::NotAFunctor, F.name + ": identity of " + A.obj_name(x)});
  for (Mor f : A.morphisms())
    for (Mor g : A.out(A.tgt(f)))
      if (F(A.compose(g, f)) != B.compose(F(g), F(f)))
        out.push_back({ErrorKind::NotAFunctor,
                       F.name + ": composite " + A.mor_name(g) + " . " + A.mor_name(f)});
  return out;
}

Functor identity_functor(const CategoryRef& c) {
  Functor F{"id_" + c->name(), c, c, c->objects(), c->morphisms()};
  return F;
}

Functor compose(const Functor& G, const Functor& F) {
  Functor H{G.name + "." + F.name, F.src, G.tgt, {}, {}};
  for (Obj x : F.src->objects()) H.fobj.push_back(G(F(x)));
  for (Mor f : F.src->morphisms()) H.fmor.push_back(G(F(f)));
  return H;
}

Functor resolve_functor(const RawFunctor& raw, const CategoryRef& src, const CategoryRef& tgt) {
  Functor F{raw.name, src, tgt, std::vector<Obj>(src->object_count()),
            std::vector<Mor>(src->morphism_count())};
  for (const auto& [a, b] : raw.fobj) F.fobj[src->obj(a).v] = tgt->obj(b);
  for (Obj x : src->objects()) {
    if (!F.fobj[x.v].valid())
      throw Error(ErrorKind::NotAFunctor, raw.name + ": object " + src->obj_name(x) + " unmapped");
    F.fmor[src->id(x).v] = tgt->id(F.fobj[x.v]);
  }
  for (const auto& [f, g] : raw.fmor) F.fmor[src->mor(f).v] = tgt->mor(g);
  return F;
}

std::vector<Violation> check_natural(const Functor& F, const Functor& G, const NatTrans& a) {
  std::vector<Violation> out;
  const auto& A = *F.src;
  const auto& B = *F.tgt;
  for (Obj x : A.objects()) {
    Mor c = a.components[x.v];
    if (B.src(c) != F(x) || B.tgt(c) != G(x))
      out.push_back({ErrorKind::NotAFunctor, "component at " + A.obj_name(x) + " has wrong type"});
  }
  if (!out.empty()) return out;
  for (Mor f : A.morphisms()) {
    Mor lhs = B.compose(a.components[A.tgt(f).v], F(f));
    Mor rhs = B.compose(G(f), a.components[A.src(f).v]);
    if (lhs != rhs) out.push_back({ErrorKind::NotAFunctor, "naturality at " + A.mor_name(f)});
  }
  return out;
}

bool is_faithful(const Functor& F) {
  const auto& A = *F.src;
  for (Obj x : A.objects())
    for (Obj y : A.objects()) {
      std::set<Mor> seen;
      for (Mor f : A.hom(x, y))
        if (!seen.insert(F(f)).second) return false;
    }
  return true;
}

bool is_full(const Functor& F) {
  const auto& A = *F.src;
  const auto& B = *F.tgt;
  for (Obj x : A.objects())
    for (Obj y : A.objects()) {
      std::set<Mor> seen;
      for (Mor f : A.hom(x, y)) seen.insert(F(f));
      if (seen.size() != B.hom(F(x), F(y)).size()) return false;
    }
  return true;
}

bool is_isomorphism(const Functor& F) {
  std::set<Obj> hit(F.fobj.begin(), F.fobj.end());
  return hit.size() == static_cast<std::size_t>(F.src->object_count()) &&
         hit.size() == static_cast<std::size_t>(F.tgt->object_count()) && is_full(F) &&
         is_faithful(F);
}

}  // namespace catquot
