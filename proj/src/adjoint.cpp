#include "catquot/adjoint.hpp"

#include <set>

namespace catquot {

namespace {

// Terminal object of (left | d): (r, e : L r -> d) such that every
// (c, k : L c -> d) factors uniquely through it.
std::optional<std::pair<Obj, Mor>> comma_terminal(const Functor& L, Obj d) {
  const auto& C = *L.src;
  const auto& D = *L.tgt;
  for (Obj r : C.objects())
    for (Mor e : D.hom(L(r), d)) {
      bool ok = true;
      for (Obj c : C.objects()) {
        for (Mor k : D.hom(L(c), d)) {
          int n = 0;
          for (Mor h : C.hom(c, r))
            if (D.compose(e, L(h)) == k) ++n;
          if (n != 1) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) return std::make_pair(r, e);
    }
  return std::nullopt;
}

Mor factor(const Functor& L, Obj c, Obj r, Mor e, Mor k) {
  for (Mor h : L.src->hom(c, r))
    if (L.tgt->compose(e, L(h)) == k) return h;
  throw Error(ErrorKind::NoAdjoint, "factorisation vanished");
}

}  // namespace

std::optional<Adjunction> try_right_adjoint(const Functor& L) {
  const auto& C = *L.src;
  const auto& D = *L.tgt;
  Adjunction a{L, {"R_" + L.name, L.tgt, L.src, {}, {}}, {}, {}};
  for (Obj d : D.objects()) {
    auto t = comma_terminal(L, d);
    if (!t) return std::nullopt;
    a.right.fobj.push_back(t->first);
    a.counit.components.push_back(t->second);
  }
  for (Mor g : D.morphisms()) {
    Obj d = D.src(g), d2 = D.tgt(g);
    a.right.fmor.push_back(factor(L, a.right(d), a.right(d2), a.counit.components[d2.v],
                                  D.compose(g, a.counit.components[d.v])));
  }
  for (Obj c : C.objects()) {
    Obj fc = L(c);
    a.unit.components.push_back(factor(L, c, a.right(fc), a.counit.components[fc.v], D.id(fc)));
  }
  return a;
}

Adjunction right_adjoint(const Functor& L) {
  if (auto a = try_right_adjoint(L)) return *a;
  for (Obj d : L.tgt->objects())
    if (!comma_terminal(L, d))
      throw Error(ErrorKind::NoAdjoint, "no terminal object in (" + L.name + " | " + L.tgt->obj_name(d) + ")");
  throw Error(ErrorKind::NoAdjoint, L.name);
}

std::vector<Violation> check_adjunction(const Adjunction& a) {
  const auto& L = a.left;
  const auto& R = a.right;
  const auto& C = *L.src;
  const auto& D = *L.tgt;
  std::vector<Violation> out;
  for (auto& v : check_functor(R)) out.push_back(v);
  if (!out.empty()) return out;
  for (auto& v : check_natural(identity_functor(L.src), compose(R, L), a.unit)) out.push_back(v);
  for (auto& v : check_natural(compose(L, R), identity_functor(L.tgt), a.counit)) out.push_back(v);
  if (!out.empty()) return out;
  for (Obj c : C.objects()) {
    Mor t = D.compose(a.counit.components[L(c).v], L(a.unit.components[c.v]));
    if (t != D.id(L(c))) out.push_back({ErrorKind::NoAdjoint, "triangle at " + C.obj_name(c)});
  }
  for (Obj d : D.objects()) {
    Mor t = C.compose(R(a.counit.components[d.v]), a.unit.components[R(d).v]);
    if (t != C.id(R(d))) out.push_back({ErrorKind::NoAdjoint, "triangle at " + D.obj_name(d)});
  }
  for (Obj c : C.objects())
    for (Obj d : D.objects()) {
      std::set<Mor> image;
      for (Mor h : C.hom(c, R(d))) image.insert(D.compose(a.counit.components[d.v], L(h)));
      if (image.size() != C.hom(c, R(d)).size() || image.size() != D.hom(L(c), d).size())
        out.push_back({ErrorKind::NoAdjoint, "hom bijection at " + C.obj_name(c) + ", " + D.obj_name(d)});
    }
  return out;
}

std::optional<PullbackFunctor> pullback_functor(const CategoryRef& cp, Mor f) {
  const auto& c = *cp;
  PullbackFunctor p{slice(cp, c.tgt(f)), slice(cp, c.src(f)), {}};
  const auto& Y = *p.over_target.cat;
  const auto& X = *p.over_source.cat;
  auto object_over = [&](const Slice& s, Mor m) -> Obj {
    for (std::size_t i = 0; i < s.map.size(); ++i)
      if (s.map[i] == m) return Obj{static_cast<int>(i)};
    throw Error(ErrorKind::UnknownId, "not an object of the slice");
  };
  std::vector<FinCone> chosen;
  Functor F{"pullback_" + c.mor_name(f), p.over_target.cat, p.over_source.cat, {}, {}};
  for (Obj g : Y.objects()) {
    auto pb = pullback(c, f, p.over_target.map[g.v]);
    if (!pb) return std::nullopt;
    F.fobj.push_back(object_over(p.over_source, pb->legs[0]));
    chosen.push_back(*pb);
  }
  for (Mor k : Y.morphisms()) {
    const auto& s = chosen[Y.src(k).v];
    const auto& t = chosen[Y.tgt(k).v];
    Mor under = p.over_target.proj(k);
    auto m = mediate(c, t, s.apex, {s.legs[0], c.compose(under, s.legs[1]), s.legs[2]});
    if (!m) return std::nullopt;
    std::optional<Mor> found;
    for (Mor h : X.hom(F(Y.src(k)), F(Y.tgt(k))))
      if (p.over_source.proj(h) == *m) found = h;
    if (!found) return std::nullopt;
    F.fmor.push_back(*found);
  }
  p.functor = std::move(F);
  return p;
}

LccReport is_locally_cartesian_closed(const CategoryRef& cp) {
  const auto& c = *cp;
  LccReport r;
  for (Mor f : c.morphisms()) {
    auto p = pullback_functor(cp, f);
    if (!p) {
      r = {false, f, "no pullback functor along " + c.mor_name(f), Evidence::Exhaustive};
      return r;
    }
    auto a = try_right_adjoint(p->functor);
    if (!a) {
      r = {false, f, "pullback along " + c.mor_name(f) + " has no right adjoint", Evidence::Exhaustive};
      return r;
    }
  }
  return r;
}

LccReport is_locally_cartesian_closed(const SetPower& c, int max_size) {
  LccReport r;
  r.evidence = Evidence::ProbeVerified;
  auto small = [&](const SetPower::Obj& x) {
    for (int s : x.sizes)
      if (s > max_size) return false;
    return true;
  };
  for (const auto& x : c.objects()) {
    if (!small(x)) continue;
    for (const auto& y : c.objects()) {
      if (!small(y)) continue;
      for (const auto& f : c.hom(x, y))
        for (const auto& e : c.objects()) {
          if (!small(e)) continue;
          for (const auto& fam : c.hom(e, x)) {
            auto p = dependent_product(c, f, fam);
            if (!verify_dependent_product(c, f, fam, p)) {
              r.ok = false;
              r.reason = "dependent product along " + c.name(f) + " of " + c.name(fam);
              return r;
            }
          }
        }
    }
  }
  r.reason = c.probe_description();
  return r;
}

}  // namespace catquot
