#include "catquot/universes.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "catquot/limits.hpp"

namespace catquot {

namespace {

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

Clause clause(std::string name, bool ok, std::string witness = {}) {
  return Clause{std::move(name), ok, std::move(witness)};
}

std::map<int, int> inverse_of(const std::vector<Obj>& v) {
  std::map<int, int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out[v[i].v] = static_cast<int>(i);
  return out;
}
std::map<int, int> inverse_of(const std::vector<Mor>& v) {
  std::map<int, int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out[v[i].v] = static_cast<int>(i);
  return out;
}

// F followed by the inverse of an injective inclusion. Throws NotAFunctor
// when F leaves the image.
Functor corestrict(const Functor& F, const Functor& inclusion, const std::string& name) {
  const auto objs = inverse_of(inclusion.fobj);
  const auto mors = inverse_of(inclusion.fmor);
  Functor out{name, F.src, inclusion.src, {}, {}};
  for (Obj x : F.src->objects()) {
    auto it = objs.find(F(x).v);
    if (it == objs.end()) throw Error(ErrorKind::NotAFunctor, name + ": " + F.src->obj_name(x) + " outside the image");
    out.fobj.push_back(Obj{it->second});
  }
  for (Mor m : F.src->morphisms()) {
    auto it = mors.find(F(m).v);
    if (it == mors.end()) throw Error(ErrorKind::NotAFunctor, name + ": " + F.src->mor_name(m) + " outside the image");
    out.fmor.push_back(Mor{it->second});
  }
  return out;
}

void require_over(const PseudoFunctor& from, const PseudoFunctor& to, const Functor& map) {
  const auto& p = from.fibration.proj();
  const auto& q = to.fibration.proj();
  if (map.fobj.size() != static_cast<std::size_t>(from.total().object_count()) ||
      map.fmor.size() != static_cast<std::size_t>(from.total().morphism_count()))
    throw Error(ErrorKind::NotAFunctor, map.name + ": wrong source");
  for (Obj x : from.total().objects())
    if (q(map(x)) != p(x)) throw Error(ErrorKind::NotAFunctor, map.name + ": not over the base at " + from.total().obj_name(x));
  for (Mor m : from.total().morphisms())
    if (q(map(m)) != p(m)) throw Error(ErrorKind::NotAFunctor, map.name + ": not over the base at " + from.total().mor_name(m));
}

PseudoFunctor restrict_to(const PseudoFunctor& f, const Subcategory& s, PseudoOrigin origin) {
  PseudoFunctor out{origin, Fibration(compose(f.fibration.proj(), s.inclusion)), {}, {}, f.represents};
  if (!f.family.empty())
    for (Obj x : s.cat->objects()) out.family.push_back(f.family[s.inclusion(x).v]);
  if (!f.top.empty())
    for (Mor m : s.cat->morphisms()) out.top.push_back(f.top[s.inclusion(m).v]);
  return out;
}

// C/U -> F; shared by classifying_map and check_universe so that the
// representable's total category is the functor's source.
Functor classify(const PseudoFunctor& f, const Slice& s, Obj family) {
  const auto& total = f.total();
  const auto& base = f.base();
  Functor out{"classify", s.cat, f.fibration.proj().src, {}, {}};
  std::vector<Mor> lifts;
  for (Obj o : s.cat->objects()) {
    lifts.push_back(f.fibration.lift(s.map[o.v], family));
    out.fobj.push_back(total.src(lifts.back()));
  }
  for (Mor h : s.cat->morphisms()) {
    const Obj a = s.cat->src(h), b = s.cat->tgt(h);
    const Mor under = s.proj(h);
    std::optional<Mor> found;
    for (Mor k : total.hom(out(a), out(b)))
      if (f.fibration.proj()(k) == under && total.compose(lifts[b.v], k) == lifts[a.v]) {
        found = k;
        break;
      }
    if (!found)
      throw Error(ErrorKind::NotNatural, "no comparison over " + base.mor_name(under));
    out.fmor.push_back(*found);
  }
  return out;
}

}  // namespace

std::string to_string(PseudoOrigin o) {
  switch (o) {
    case PseudoOrigin::Slices: return "slices";
    case PseudoOrigin::Fibrations: return "fibrations";
    case PseudoOrigin::Representable: return "representable";
    case PseudoOrigin::Custom: return "custom";
  }
  return "?";
}

PseudoFunctor slices_pseudofunctor(const CategoryRef& c) {
  auto ac = arrow_category(c);
  Fibration cod(ac.cod);
  auto d = subcategory(
      ac.cat, [](Obj) { return true; }, [&](Mor m) { return cod.cartesian(m); }, "M(" + c->name() + ")");
  PseudoFunctor out{PseudoOrigin::Slices, Fibration(compose(ac.cod, d.inclusion)), {}, {}, {}};
  for (Obj x : d.cat->objects()) out.family.push_back(ac.arrow[d.inclusion(x).v]);
  for (Mor m : d.cat->morphisms()) out.top.push_back(ac.square[d.inclusion(m).v].first);
  return out;
}

FibrationsPseudo fibrations_pseudofunctor(const ModelData& m) {
  auto slices = slices_pseudofunctor(m.cat);
  auto s = full_subcategory(
      slices.fibration.proj().src, [&](Obj x) { return m.fib.test(slices.family[x.v].v); },
      "Fib(" + m.cat->name() + ")");
  auto fib = restrict_to(slices, s, PseudoOrigin::Fibrations);
  return FibrationsPseudo{std::move(slices), std::move(fib), s.inclusion};
}

PseudoFunctor representable(const CategoryRef& c, Obj z) {
  auto s = slice(c, z);
  return PseudoFunctor{PseudoOrigin::Representable, Fibration(s.proj), {}, {}, z};
}

PseudoFunctor custom_pseudofunctor(Functor proj) {
  return PseudoFunctor{PseudoOrigin::Custom, Fibration(std::move(proj)), {}, {}, {}};
}

SubPseudo sub_pseudofunctor(const PseudoFunctor& f, const std::function<bool(Obj)>& keep) {
  auto s = full_subcategory(f.fibration.proj().src, keep);
  return SubPseudo{restrict_to(f, s, f.origin), s.inclusion};
}

std::vector<Violation> check_pseudofunctor(const PseudoFunctor& f) {
  std::vector<Violation> out;
  if (const auto& miss = f.fibration.missing_lift())
    out.push_back({ErrorKind::NoLift, f.base().mor_name(miss->first) + " at " + f.total().obj_name(miss->second)});
  const auto& p = f.fibration.proj();
  for (Mor m : f.total().morphisms())
    if (f.base().is_identity(p(m)) && !is_iso(f.total(), m))
      out.push_back({ErrorKind::AxiomFailure, "vertical " + f.total().mor_name(m) + " is not invertible"});
  return out;
}

LiftingVerdict check_acyclic_fibration(const PseudoFunctor& from, const PseudoFunctor& to, const Functor& map,
                                       const MorClass& cofibrations) {
  require_over(from, to, map);
  const auto& base = from.base();
  const auto& up = from.total();
  const auto& down = to.total();
  const auto& p = from.fibration.proj();
  const auto& q = to.fibration.proj();
  LiftingVerdict out;
  for (Mor i : base.morphisms()) {
    if (!cofibrations.test(i.v)) continue;
    for (Obj x : up.objects()) {
      if (p(x) != base.src(i)) continue;
      for (Mor u : down.out(map(x))) {
        if (q(u) != i) continue;
        ++out.problems;
        bool solved = false;
        for (Mor v : up.out(x)) {
          if (p(v) != i) continue;
          for (Mor w : down.hom(map(up.tgt(v)), down.tgt(u)))
            if (base.is_identity(q(w)) && down.compose(w, map(v)) == u) {
              solved = true;
              break;
            }
          if (solved) break;
        }
        if (!solved && out.ok) {
          out.ok = false;
          out.failure = LiftingProblem{i, x, u};
          out.witness = "cofibration " + base.mor_name(i) + ", start " + up.obj_name(x) + ", bottom " +
                        down.mor_name(u);
        }
      }
    }
  }
  return out;
}

LiftingVerdict check_extension_property(const PseudoFunctor& from, const PseudoFunctor& to, const Functor& map,
                                        const MorClass& cofibrations) {
  if (to.family.empty()) throw Error(ErrorKind::NotAFunctor, "extension property needs display families");
  require_over(from, to, map);
  const auto& base = from.base();
  const auto& up = from.total();
  const auto& down = to.total();
  const auto display = inverse_of(to.family);
  LiftingVerdict out;
  for (Mor i : base.morphisms()) {
    if (!cofibrations.test(i.v)) continue;
    for (Mor qm : base.morphisms()) {
      if (base.tgt(qm) != base.tgt(i)) continue;
      for (Mor t : base.morphisms()) {
        if (base.tgt(t) != base.src(qm)) continue;
        for (Mor pm : base.hom(base.src(t), base.src(i))) {
          if (base.compose(i, pm) != base.compose(qm, t)) continue;
          FinCone cone{base.src(t), {pm, t, base.compose(i, pm)}};
          if (!is_limit(base, cospan_diagram(base, i, qm), cone)) continue;
          const Obj dp{display.at(pm.v)}, dq{display.at(qm.v)};
          std::optional<Mor> square;
          for (Mor m : down.hom(dp, dq))
            if (to.fibration.proj()(m) == i && to.top[m.v] == t) square = m;
          if (!square) continue;
          for (Obj s : up.objects()) {
            if (map(s) != dp) continue;
            ++out.problems;
            bool solved = false;
            for (Mor v : up.out(s))
              if (map(v) == *square) {
                solved = true;
                break;
              }
            if (!solved && out.ok) {
              out.ok = false;
              out.failure = LiftingProblem{i, s, *square};
              out.witness = "cofibration " + base.mor_name(i) + ", square (" + base.mor_name(t) + ", " +
                            base.mor_name(i) + "), structure " + up.obj_name(s);
            }
          }
        }
      }
    }
  }
  return out;
}

ModelReport check_lparanofscaf(const PseudoFunctor& f, const Functor& to_slices, const FibrationsPseudo& fp,
                               const MorClass& cofibrations) {
  const auto& slices = fp.slices;
  require_over(f, slices, to_slices);
  const auto& base = f.base();
  const auto& sm = slices.total();
  ModelReport rep;

  {
    Fibration d(to_slices);
    std::string w;
    if (const auto& miss = d.missing_lift())
      w = "no lift of " + sm.mor_name(miss->first) + " at " + f.total().obj_name(miss->second);
    else if (!d.discrete())
      w = "fibres over the slices are not discrete";
    rep.clauses.push_back(clause("discrete fibration", w.empty(), w));
  }
  rep.clauses.push_back(clause("small fibres", true, "finite"));

  {
    std::string w;
    const auto cref = slices.fibration.proj().tgt;
    for (Obj z : base.objects()) {
      if (!w.empty()) break;
      auto s = slice(cref, z);
      for (Obj e : sm.objects()) {
        if (slices.fibration.proj()(e) != z) continue;
        auto psi = classify(slices, s, e);
        auto pb = strict_pullback(to_slices, psi);
        auto G = compose(s.proj, pb.right);
        auto t = terminal_object(*pb.cat);
        const std::string at = "along " + base.mor_name(slices.family[e.v]);
        if (!t) {
          w = at + ": no representing object";
          break;
        }
        const Obj r = G(*t);
        auto rs = slice(cref, r);
        const auto over = inverse_of(rs.map);
        Functor K{"compare", pb.cat, rs.cat, {}, {}};
        for (Obj x : pb.cat->objects()) K.fobj.push_back(Obj{over.at(G(pb.cat->hom(x, *t).front()).v)});
        bool whole = true;
        for (Mor h : pb.cat->morphisms()) {
          std::optional<Mor> image;
          for (Mor k : rs.cat->hom(K(pb.cat->src(h)), K(pb.cat->tgt(h))))
            if (rs.proj(k) == G(h)) image = k;
          if (!image) {
            whole = false;
            break;
          }
          K.fmor.push_back(*image);
        }
        if (!whole || !is_isomorphism(K)) {
          w = at + ": terminal element over " + base.obj_name(r) + " does not represent";
          break;
        }
      }
    }
    rep.clauses.push_back(clause("representable", w.empty(), w));
  }

  std::vector<bool> in_image(sm.object_count(), false);
  for (Obj x : f.total().objects())
    for (Mor w : sm.out(to_slices(x)))
      if (base.is_identity(slices.fibration.proj()(w))) in_image[sm.tgt(w).v] = true;
  std::vector<bool> is_fib(sm.object_count(), false);
  for (Obj y : fp.fibrations.total().objects()) is_fib[fp.inclusion(y).v] = true;
  {
    std::string w;
    for (Obj e : sm.objects())
      if (in_image[e.v] != is_fib[e.v]) {
        w = base.mor_name(slices.family[e.v]) + (is_fib[e.v] ? " is a fibration outside the image"
                                                                : " is in the image but not a fibration");
        break;
      }
    rep.clauses.push_back(clause("image", w.empty(), w));
  }

  {
    std::string w;
    try {
      auto core = corestrict(to_slices, fp.inclusion, "to fibrations");
      auto v = check_acyclic_fibration(f, fp.fibrations, core, cofibrations);
      if (!v.ok) w = v.witness;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotAFunctor) throw;
      w = e.detail();
    }
    rep.clauses.push_back(clause("acyclic", w.empty(), w));
  }
  return rep;
}

bool classifies(const FinCategory& c, Mor family, Mor a, Mor p) {
  if (c.tgt(a) != c.tgt(family) || c.tgt(p) != c.src(a))
    throw Error(ErrorKind::MismatchedEndpoints, c.mor_name(a) + " against " + c.mor_name(family));
  auto pb = pullback(c, a, family);
  if (!pb) return false;
  for (Mor h : c.hom(pb->apex, c.src(p)))
    if (c.compose(p, h) == pb->legs[0] && is_iso(c, h)) return true;
  return false;
}

Functor classifying_map(const PseudoFunctor& f, Obj carrier, Obj family) {
  return classify(f, slice(f.fibration.proj().tgt, carrier), family);
}

ModelReport check_universe(const PseudoFunctor& f, Obj carrier, Obj family, const MorClass& cofibrations,
                           const std::function<bool(Obj)>& claimed) {
  if (f.fibration.proj()(family) != carrier)
    throw Error(ErrorKind::MismatchedEndpoints, f.total().obj_name(family) + " is not over " + f.base().obj_name(carrier));
  const auto& base = f.base();
  const auto& total = f.total();
  auto s = slice(f.fibration.proj().tgt, carrier);
  PseudoFunctor rep{PseudoOrigin::Representable, Fibration(s.proj), {}, {}, carrier};
  auto psi = classify(f, s, family);
  ModelReport out;

  {
    std::string w;
    auto vs = check_functor(psi);
    if (!vs.empty()) w = describe(vs);
    for (Obj o : s.cat->objects())
      if (w.empty() && f.fibration.proj()(psi(o)) != s.proj(o)) w = "object " + s.cat->obj_name(o) + " lands elsewhere";
    out.clauses.push_back(clause("natural", w.empty(), w));
  }

  std::vector<bool> in_image(total.object_count(), false);
  for (Obj o : s.cat->objects())
    for (Mor w : total.out(psi(o)))
      if (base.is_identity(f.fibration.proj()(w))) in_image[total.tgt(w).v] = true;
  auto image = sub_pseudofunctor(f, [&](Obj y) { return in_image[y.v]; });
  auto onto = corestrict(psi, image.inclusion, "onto image");
  auto v = check_acyclic_fibration(rep, image.sub, onto, cofibrations);
  out.clauses.push_back(clause("acyclic", v.ok, v.witness));

  if (claimed) {
    std::string w;
    for (Obj y : total.objects())
      if (claimed(y) && !in_image[y.v]) {
        w = total.obj_name(y) + " is not classified";
        break;
      }
    out.clauses.push_back(clause("classifies", w.empty(), w));
  }
  return out;
}

EqObject eq_object(const ModelData& m, Mor family) {
  const auto& c = *m.cat;
  auto slices = slices_pseudofunctor(m.cat);
  const auto& sm = slices.total();
  const auto& lift_of = slices.fibration;
  const Obj u = c.tgt(family);
  const Obj fam{inverse_of(slices.family).at(family.v)};

  // Chosen pullback of the family along a, as (slices object, cartesian map).
  auto pulled = [&](Mor a) { return lift_of.lift(a, fam); };
  auto display = [&](Mor a) { return slices.family[sm.src(pulled(a)).v]; };

  struct Element {
    Obj x;
    Mor a, b, w;
    auto operator<=>(const Element&) const = default;
  };
  std::vector<Element> elems;
  std::map<Element, int> index;
  for (Obj x : c.objects())
    for (Mor a : c.hom(x, u))
      for (Mor b : c.hom(x, u)) {
        const Mor da = display(a), db = display(b);
        for (Mor w : c.hom(c.src(da), c.src(db)))
          if (c.compose(db, w) == da && m.weq.test(w.v)) {
            index[Element{x, a, b, w}] = static_cast<int>(elems.size());
            elems.push_back({x, a, b, w});
          }
      }

  // Top of the comparison square of pullbacks along h, for the family
  // pulled back along a.
  auto top = [&](Mor a, Mor h) {
    const Mor outer = pulled(c.compose(a, h)), inner = pulled(a);
    for (Mor k : sm.hom(sm.src(outer), sm.src(inner)))
      if (lift_of.proj()(k) == h && sm.compose(inner, k) == outer) return slices.top[k.v];
    throw Error(ErrorKind::NotNatural, "no comparison over " + c.mor_name(h));
  };
  auto restrict_along = [&](const Element& e, Mor h) -> std::optional<Element> {
    const Mor a = c.compose(e.a, h), b = c.compose(e.b, h);
    const Mor da = display(a), db = display(b);
    const Mor ta = top(e.a, h), tb = top(e.b, h);
    for (Mor g : c.hom(c.src(da), c.src(db)))
      if (c.compose(db, g) == da && c.compose(tb, g) == c.compose(e.w, ta)) return Element{c.src(h), a, b, g};
    return std::nullopt;
  };
  auto represents = [&](const Element& t) {
    for (const auto& e : elems) {
      int hits = 0;
      for (Mor h : c.hom(e.x, t.x)) {
        auto r = restrict_along(t, h);
        if (r && *r == e) ++hits;
      }
      if (hits != 1) return false;
    }
    return true;
  };

  for (const auto& t : elems) {
    if (!represents(t)) continue;
    const Mor id = c.id(u);
    const Mor did = display(id);
    const Element diag{u, id, id, c.id(c.src(did))};
    std::optional<Mor> idtoequiv;
    for (Mor h : c.hom(u, t.x)) {
      auto r = restrict_along(t, h);
      if (r && *r == diag) idtoequiv = h;
    }
    if (!idtoequiv) throw Error(ErrorKind::NoExponentials, "identity equivalence missing");
    return EqObject{t.x, t.a, t.b, t.w, *idtoequiv, static_cast<int>(elems.size())};
  }
  throw Error(ErrorKind::NoExponentials, "Eq(" + c.mor_name(family) + ") is not representable");
}

bool check_univalent(const ModelData& m, const EqObject& eq) { return m.weq.test(eq.idtoequiv.v); }

UniverseVerdicts universe_verdicts(const ModelData& m, Mor family) {
  const auto& c = *m.cat;
  UniverseVerdicts out;
  auto fp = fibrations_pseudofunctor(m);
  const auto& F = fp.fibrations;
  const Obj u = c.tgt(family);

  std::optional<Obj> fam;
  for (Obj y : F.total().objects())
    if (F.family[y.v] == family) fam = y;
  if (!fam) {
    out.note = c.mor_name(family) + " is not a fibration";
  } else {
    out.universe = check_universe(F, u, *fam, m.cof).ok();
  }

  if (auto t = terminal_object(c))
    out.fibrant = m.fib.test(c.hom(u, *t).front().v);
  else
    out.note += (out.note.empty() ? "" : "; ") + std::string("no terminal object");

  try {
    out.univalent = check_univalent(m, eq_object(m, family));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoExponentials) throw;
    out.note += (out.note.empty() ? "" : "; ") + e.detail();
  }

  for (const auto& cl : check_lparanofscaf(F, fp.inclusion, fp, m.cof).clauses) out.lparanofscaf.push_back(cl.ok);
  return out;
}

namespace {

std::string describe(const UniverseVerdicts& v) {
  std::ostringstream os;
  os << "universe=" << v.universe << " fibrant=" << v.fibrant << " univalent=" << v.univalent
     << " lparanofscaf=" << join(v.lparanofscaf);
  return os.str();
}

UniverseSuite finish(UniverseVerdicts before, UniverseVerdicts after) {
  UniverseSuite s{std::move(before), std::move(after)};
  if (!s.preserved())
    throw Error(ErrorKind::PreservationFailure, describe(s.before) + " became " + describe(s.after));
  return s;
}

}  // namespace

UniverseSuite quotient_universe_suite(const ModelData& m, const std::vector<Obj>& phi, Mor family) {
  auto before = universe_verdicts(m, family);
  auto qm = quotient_model_structure(m, phi);
  return finish(std::move(before), universe_verdicts(qm.model, qm.quotient.projection(family)));
}

// --- finite-sets probe ------------------------------------------------------

namespace {

using SMor = SetPower::Mor;
using SObj = SetPower::Obj;

SObj point_set(int n) { return SObj{{n}}; }
SMor component(const SMor& m, int k) { return SMor{point_set(m.src.sizes[k]), point_set(m.tgt.sizes[k]), {m.maps[k]}}; }

std::vector<int> counts(const SMor& p) {
  std::vector<int> out(p.tgt.sizes[0], 0);
  for (int v : p.maps[0]) ++out[v];
  return out;
}

std::vector<std::vector<int>> members(const SMor& p) {
  std::vector<std::vector<int>> out(p.tgt.sizes[0]);
  for (int e = 0; e < p.src.sizes[0]; ++e) out[p.maps[0][e]].push_back(e);
  return out;
}

// Family over n points with the given fibre sizes, elements in fibre order.
SMor family_of(const std::vector<int>& sizes) {
  SMor p{point_set(std::accumulate(sizes.begin(), sizes.end(), 0)), point_set(static_cast<int>(sizes.size())), {{}}};
  for (int b = 0; b < static_cast<int>(sizes.size()); ++b)
    for (int j = 0; j < sizes[b]; ++j) p.maps[0].push_back(b);
  return p;
}

// All vectors of length n over the given values.
std::vector<std::vector<int>> vectors_over(int n, const std::vector<int>& values) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out)
      for (int x : values) {
        next.push_back(v);
        next.back().push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> active_components(const SetPower& c) {
  std::vector<int> out;
  for (int k = 0; k < c.arity(); ++k)
    if (c.active(k)) out.push_back(k);
  return out;
}

int largest_probe(const SetPower& c) { return *std::max_element(c.probe_sizes().begin(), c.probe_sizes().end()); }

std::string prefix(const SetPower& c, int k) { return c.arity() > 1 ? "component " + std::to_string(k) + ": " : ""; }

}  // namespace

std::string FibreBound::name() const { return max < 0 ? "all" : "fibres<=" + std::to_string(max); }

SetUniverse fibred_universe(const SetPower& c, const std::vector<int>& fibres, FibreBound structure) {
  auto one = family_of(fibres);
  SObj total{std::vector<int>(c.arity(), one.src.sizes[0])};
  SObj carrier{std::vector<int>(c.arity(), static_cast<int>(fibres.size()))};
  return SetUniverse{carrier, c.morphism(total, carrier, std::vector<std::vector<int>>(c.arity(), one.maps[0])),
                     structure};
}

SetUniverse bounded_universe(const SetPower& c, int n) {
  std::vector<int> sizes;
  for (int s = 0; s <= n; ++s) sizes.push_back(s);
  return fibred_universe(c, sizes, FibreBound{n});
}

bool classifies(const std::vector<int>& family_fibres, const std::vector<int>& map, const std::vector<int>& fibres) {
  if (map.size() != fibres.size()) return false;
  for (std::size_t x = 0; x < map.size(); ++x)
    if (map[x] < 0 || map[x] >= static_cast<int>(family_fibres.size()) || family_fibres[map[x]] != fibres[x])
      return false;
  return true;
}

SetUniverse propositional_universe(const SetPower& c) { return bounded_universe(c, 1); }

std::vector<std::vector<int>> fibre_sizes(const SetPower& c, const SMor& family) {
  std::vector<std::vector<int>> out(c.arity());
  for (int k : active_components(c)) out[k] = counts(component(family, k));
  return out;
}

SetEq eq_object(const SetPower& c, const SMor& family) {
  const SObj u = family.tgt;
  SetEq out;
  out.pairs = c.product(u, u);
  out.elements.resize(c.arity());
  std::vector<int> sizes(c.arity(), 0);
  std::vector<std::vector<int>> to_pairs(c.arity()), ident(c.arity());
  for (int k : active_components(c)) {
    const auto fibres = members(component(family, k));
    const int n = u.sizes[k];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int sa = static_cast<int>(fibres[a].size()), sb = static_cast<int>(fibres[b].size());
        for (const auto& f : vectors_over(sa, [&] {
               std::vector<int> r(sb);
               std::iota(r.begin(), r.end(), 0);
               return r;
             }()))
          for (const auto& g : vectors_over(sb, [&] {
                 std::vector<int> r(sa);
                 std::iota(r.begin(), r.end(), 0);
                 return r;
               }())) {
            bool inverse = true;
            for (int i = 0; i < sa && inverse; ++i) inverse = g[f[i]] == i;
            for (int j = 0; j < sb && inverse; ++j) inverse = f[g[j]] == j;
            if (!inverse) continue;
            out.elements[k].push_back({a, b, f, g});
            to_pairs[k].push_back(a * n + b);
          }
      }
    sizes[k] = static_cast<int>(out.elements[k].size());
    for (int a = 0; a < n; ++a)
      for (int e = 0; e < sizes[k]; ++e) {
        const auto& el = out.elements[k][e];
        std::vector<int> id(el.forward.size());
        std::iota(id.begin(), id.end(), 0);
        if (el.u == a && el.v == a && el.forward == id) {
          ident[k].push_back(e);
          break;
        }
      }
  }
  out.object = c.object(sizes);
  out.to_pairs = c.morphism(out.object, out.pairs.apex, to_pairs);
  out.idtoequiv = c.morphism(u, out.object, ident);
  return out;
}

std::vector<Violation> check_eq_object(const SetPower& c, const SMor& family, const SetEq& eq) {
  std::vector<Violation> out;
  const SObj u = family.tgt;
  const auto diagonal = c.pair(u, u, c.id(u), c.id(u));
  if (c.compose(eq.to_pairs, eq.idtoequiv) != diagonal)
    out.push_back({ErrorKind::AxiomFailure, "idtoequiv is not a section over the diagonal"});
  for (int k : active_components(c))
    for (int a = 0; a < u.sizes[k]; ++a) {
      const auto& el = eq.elements[k][eq.idtoequiv.maps[k][a]];
      std::vector<int> id(el.forward.size());
      std::iota(id.begin(), id.end(), 0);
      if (el.forward != id || el.backward != id)
        out.push_back({ErrorKind::AxiomFailure, prefix(c, k) + "idtoequiv at " + std::to_string(a) + " is not an identity"});
    }
  return out;
}

bool check_univalent(const SetPower& c, const SetEq& eq) { return is_iso(c, eq.idtoequiv); }

ModelReport check_universe(const SetPower& c, const SetUniverse& u, SetCofibrations cof) {
  const SetPower line(1, c.probe_sizes());
  std::string natural, acyclic, classifies;
  for (int k : active_components(c)) {
    const SMor p = component(u.family, k);
    const SObj U = p.tgt;
    const auto fs = counts(p);

    for (const auto& a : line.objects())
      for (const auto& a2 : line.objects())
        for (const auto& h : line.hom(a2, a))
          for (const auto& x : line.hom(a, U)) {
            if (!natural.empty()) break;
            auto once = line.limit(cospan_diagram(line, line.compose(x, h), p));
            auto first = line.limit(cospan_diagram(line, x, p));
            auto twice = line.limit(cospan_diagram(line, h, first.legs[0]));
            const auto c1 = counts(once.legs[0]), c2 = counts(twice.legs[0]);
            for (int i = 0; i < a2.sizes[0]; ++i)
              if (c1[i] != c2[i] || c1[i] != fs[x.maps[0][h.maps[0][i]]]) {
                natural = prefix(c, k) + "square " + line.name(h) + " then " + line.name(x);
                break;
              }
          }

    std::set<int> image_sizes(fs.begin(), fs.end());
    const std::vector<int> image(image_sizes.begin(), image_sizes.end());
    for (const auto& a : line.objects())
      for (const auto& b : line.objects())
        for (const auto& i : line.hom(a, b)) {
          if (cof == SetCofibrations::Monos && !is_mono(line, i)) continue;
          for (const auto& x : line.hom(a, U))
            for (const auto& q : vectors_over(b.sizes[0], image)) {
              bool matches = true;
              for (int e = 0; e < a.sizes[0] && matches; ++e) matches = q[i.maps[0][e]] == fs[x.maps[0][e]];
              if (!matches) continue;
              // phi: for each point of A a bijection from the fibre over x(a) onto q over i(a).
              std::vector<std::vector<std::vector<int>>> choices;
              for (int e = 0; e < a.sizes[0]; ++e) choices.push_back(permutations(q[i.maps[0][e]]));
              std::vector<std::size_t> pick(a.sizes[0], 0);
              while (acyclic.empty()) {
                bool lifted = false;
                for (const auto& x2 : line.hom(b, U)) {
                  if (line.compose(x2, i) != x) continue;
                  bool ok = true;
                  for (int e = 0; e < b.sizes[0] && ok; ++e) ok = fs[x2.maps[0][e]] == q[e];
                  // psi restricted along i must be phi: points of A with a common image need the same bijection.
                  for (int e1 = 0; e1 < a.sizes[0] && ok; ++e1)
                    for (int e2 = 0; e2 < a.sizes[0] && ok; ++e2)
                      if (i.maps[0][e1] == i.maps[0][e2]) ok = choices[e1][pick[e1]] == choices[e2][pick[e2]];
                  if (ok) {
                    lifted = true;
                    break;
                  }
                }
                if (!lifted)
                  acyclic = prefix(c, k) + "cofibration " + line.name(i) + ", classifying map " + line.name(x) +
                            ", family " + join(q);
                int d = 0;
                while (d < a.sizes[0] && ++pick[d] == choices[d].size()) pick[d++] = 0;
                if (d == a.sizes[0]) break;
              }
            }
        }

    std::vector<int> admitted;
    for (int s = 0; s <= largest_probe(c); ++s)
      if (u.structure.admits(s)) admitted.push_back(s);
    for (const auto& b : line.objects())
      for (const auto& q : vectors_over(b.sizes[0], admitted)) {
        if (!classifies.empty()) break;
        bool found = false;
        for (const auto& x : line.hom(b, U))
          if (counts(line.limit(cospan_diagram(line, x, p)).legs[0]) == q) {
            found = true;
            break;
          }
        if (!found) classifies = prefix(c, k) + "family " + join(q) + " over " + line.name(b) + " is not classified";
      }
  }
  ModelReport rep;
  rep.clauses.push_back(clause("natural", natural.empty(), natural));
  rep.clauses.push_back(clause("acyclic", acyclic.empty(), acyclic));
  rep.clauses.push_back(clause("classifies", classifies.empty(), classifies));
  return rep;
}

ModelReport check_lparanofscaf(const SetPower& c, const FibreBound& structure, SetCofibrations cof) {
  const SetPower line(1, c.probe_sizes());
  const int top = largest_probe(c);
  std::vector<int> sizes(top + 1);
  std::iota(sizes.begin(), sizes.end(), 0);
  std::string representable, image, acyclic;
  for (int k : active_components(c)) {
    for (const auto& z : line.objects())
      for (const auto& fz : vectors_over(z.sizes[0], sizes)) {
        if (!representable.empty()) break;
        const SMor e = family_of(fz);
        std::vector<int> keep;
        for (int j = 0; j < z.sizes[0]; ++j)
          if (structure.admits(fz[j])) keep.push_back(j);
        const SMor incl{point_set(static_cast<int>(keep.size())), z, {keep}};
        for (const auto& x : line.objects()) {
          std::size_t structured = 0;
          for (const auto& f : line.hom(x, z)) {
            const auto fib = counts(line.limit(cospan_diagram(line, f, e)).legs[0]);
            const bool has = std::all_of(fib.begin(), fib.end(), [&](int s) { return structure.admits(s); });
            bool factors = true;
            for (int v : f.maps[0]) factors = factors && std::count(keep.begin(), keep.end(), v);
            if (has != factors) {
              representable = prefix(c, k) + "family " + join(fz) + " along " + line.name(f);
              break;
            }
            structured += has;
          }
          if (representable.empty() && structured != line.hom_size(x, incl.src))
            representable = prefix(c, k) + "family " + join(fz) + " at " + line.name(x);
        }
      }
    for (const auto& b : line.objects())
      for (const auto& q : vectors_over(b.sizes[0], sizes))
        if (image.empty() && !std::all_of(q.begin(), q.end(), [&](int s) { return structure.admits(s); }))
          image = prefix(c, k) + "fibration " + join(q) + " over " + line.name(b) + " has no structure";
    for (const auto& a : line.objects())
      for (const auto& b : line.objects())
        for (const auto& i : line.hom(a, b)) {
          if (cof == SetCofibrations::Monos && !is_mono(line, i)) continue;
          for (const auto& q : vectors_over(b.sizes[0], sizes)) {
            if (!acyclic.empty()) break;
            bool restricted = true;
            for (int v : i.maps[0]) restricted = restricted && structure.admits(q[v]);
            const bool whole = std::all_of(q.begin(), q.end(), [&](int s) { return structure.admits(s); });
            if (restricted && !whole)
              acyclic = prefix(c, k) + "cofibration " + line.name(i) + ", fibration " + join(q);
          }
        }
  }
  ModelReport rep;
  rep.clauses.push_back(clause("discrete fibration", true, "a structure is a property of the fibre sizes"));
  rep.clauses.push_back(clause("small fibres", true, "finite"));
  rep.clauses.push_back(clause("representable", representable.empty(), representable));
  rep.clauses.push_back(clause("image", image.empty(), image));
  rep.clauses.push_back(clause("acyclic", acyclic.empty(), acyclic));
  return rep;
}

UniverseVerdicts universe_verdicts(const SetPower& c, const SetUniverse& u, SetCofibrations cof) {
  UniverseVerdicts out;
  out.universe = check_universe(c, u, cof).ok();
  out.fibrant = true;
  out.note = "every map is a fibration";
  const auto eq = eq_object(c, u.family);
  if (auto vs = check_eq_object(c, u.family, eq); !vs.empty())
    throw Error(ErrorKind::AxiomFailure, describe(vs));
  out.univalent = check_univalent(c, eq);
  for (const auto& cl : check_lparanofscaf(c, FibreBound{}, cof).clauses) out.lparanofscaf.push_back(cl.ok);
  return out;
}

UniverseSuite quotient_universe_suite(const SetPowerQuotient& q, const SetUniverse& u, SetCofibrations cof) {
  auto before = universe_verdicts(q.base, u, cof);
  SetUniverse pushed{u.carrier, q.project(u.family), u.structure};
  return finish(std::move(before), universe_verdicts(q.cat, pushed, cof));
}

}  // namespace catquot
