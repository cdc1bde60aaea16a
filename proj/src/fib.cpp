#include "catquot/fib.hpp"

#include <algorithm>
#include <tuple>

#include "catquot/equivalence.hpp"

namespace catquot {

namespace {

// Inverse of an inclusion on morphisms and objects.
struct Positions {
  std::vector<int> obj, mor;
  explicit Positions(const Subcategory& s) {
    const auto& c = *s.inclusion.tgt;
    obj.assign(c.object_count(), -1);
    mor.assign(c.morphism_count(), -1);
    for (std::size_t i = 0; i < s.inclusion.fobj.size(); ++i) obj[s.inclusion.fobj[i].v] = static_cast<int>(i);
    for (std::size_t i = 0; i < s.inclusion.fmor.size(); ++i) mor[s.inclusion.fmor[i].v] = static_cast<int>(i);
  }
  Obj operator()(Obj x) const { return Obj{obj[x.v]}; }
  Mor operator()(Mor f) const { return Mor{mor[f.v]}; }
};

// F restricted to subcategories of its source and target.
Functor restrict(const Functor& F, const Subcategory& from, const Subcategory& to) {
  Positions at(to);
  Functor r{F.name + "|", from.cat, to.cat, {}, {}};
  for (Obj x : from.cat->objects()) r.fobj.push_back(at(F(from.inclusion(x))));
  for (Mor f : from.cat->morphisms()) r.fmor.push_back(at(F(from.inclusion(f))));
  return r;
}

Mor unique_map(const FinCategory& c, Obj a, Obj b) {
  const auto& h = c.hom(a, b);
  if (h.size() != 1) throw Error(ErrorKind::NotSubterminal, c.obj_name(b));
  return h.front();
}

}  // namespace

bool is_cartesian(const Functor& proj, Mor phi) {
  const auto& e = *proj.src;
  const auto& b = *proj.tgt;
  const Obj x = e.src(phi), y = e.tgt(phi);
  const Mor over = proj(phi);
  for (Obj z : e.objects())
    for (Mor psi : e.hom(z, y))
      for (Mor u : b.hom(proj(z), proj(x))) {
        if (b.compose(over, u) != proj(psi)) continue;
        int n = 0;
        for (Mor chi : e.hom(z, x)) n += proj(chi) == u && e.compose(phi, chi) == psi;
        if (n != 1) return false;
      }
  return true;
}

Fibration::Fibration(Functor proj) : proj_(std::move(proj)) {
  auto vs = check_functor(proj_);
  if (!vs.empty()) throw Error(ErrorKind::NotAFunctor, describe(vs));
  const auto& e = total();
  const auto& b = base();
  for (Mor phi : e.morphisms()) {
    cartesian_.push_back(is_cartesian(proj_, phi));
    if (!e.is_identity(phi) && b.is_identity(proj_(phi))) discrete_fibres_ = false;
  }
  for (Mor u : b.morphisms())
    for (Obj y : e.objects()) {
      if (proj_(y) != b.tgt(u)) continue;
      std::optional<Mor> found;
      for (Mor phi : e.morphisms())
        if (e.tgt(phi) == y && proj_(phi) == u && cartesian_[phi.v]) {
          found = phi;
          break;
        }
      if (found)
        cleavage_.emplace(std::make_pair(u.v, y.v), *found);
      else if (!missing_)
        missing_ = std::make_pair(u, y);
    }
}

std::optional<Mor> Fibration::try_lift(Mor u, Obj y) const {
  auto it = cleavage_.find({u.v, y.v});
  if (it == cleavage_.end()) return std::nullopt;
  return it->second;
}

Mor Fibration::lift(Mor u, Obj y) const {
  if (auto m = try_lift(u, y)) return *m;
  throw Error(ErrorKind::NoLift, base().mor_name(u) + " at " + total().obj_name(y));
}

Subcategory Fibration::fiber(Obj c) const {
  const auto& b = base();
  return subcategory(
      proj_.src, [&](Obj x) { return proj_(x) == c; }, [&](Mor f) { return proj_(f) == b.id(c); },
      total().name() + "@" + b.obj_name(c));
}

std::string describe(const Fibration& p) {
  auto n = std::count(p.cartesian_table().begin(), p.cartesian_table().end(), true);
  std::string s = std::string("grothendieck=") + (p.grothendieck() ? "yes" : "no") +
                  " discrete=" + (p.discrete() ? "yes" : "no") + " cartesian=" + std::to_string(n) + "/" +
                  std::to_string(p.cartesian_table().size());
  if (const auto& m = p.missing_lift())
    s += " missing_lift=" + p.base().mor_name(m->first) + "@" + p.total().obj_name(m->second);
  return s;
}

std::vector<Violation> check_lift_uniqueness(const Fibration& p) {
  std::vector<Violation> out;
  const auto& e = p.total();
  const auto& F = p.proj();
  const auto& ms = e.morphisms();
  for (Mor a : ms)
    for (Mor b : ms) {
      if (!p.cartesian(a) || !p.cartesian(b) || e.tgt(a) != e.tgt(b) || F(a) != F(b)) continue;
      int n = 0;
      bool iso = true;
      for (Mor t : e.hom(e.src(a), e.src(b)))
        if (p.base().is_identity(F(t)) && e.compose(b, t) == a) {
          ++n;
          iso = iso && is_iso(e, t);
        }
      if (n != 1 || !iso)
        out.push_back({ErrorKind::NoLift, "lifts " + e.mor_name(a) + ", " + e.mor_name(b) + " not uniquely comparable"});
    }
  return out;
}

// --- indexed categories ---------------------------------------------------------

Mor IndexedData::coh(Mor g, Mor f, Obj z) const {
  auto it = coherence.find({g.v, f.v});
  if (it != coherence.end()) return it->second.components[z.v];
  return fibers[base->src(f).v]->id(trans[f.v](trans[g.v](z)));
}

std::vector<Violation> check_indexed(const IndexedData& ix) {
  std::vector<Violation> out;
  auto bad = [&](std::string what) { out.push_back({ErrorKind::IncoherentTransitions, std::move(what)}); };
  const auto& b = *ix.base;
  if (ix.fibers.size() != static_cast<std::size_t>(b.object_count())) {
    bad("one fibre per base object expected");
    return out;
  }
  if (ix.trans.size() != static_cast<std::size_t>(b.morphism_count())) {
    bad("one transition per base morphism expected");
    return out;
  }
  for (Mor u : b.morphisms()) {
    const auto& T = ix.trans[u.v];
    if (T.src != ix.fibers[b.tgt(u).v] || T.tgt != ix.fibers[b.src(u).v]) {
      bad("transition " + b.mor_name(u) + " has the wrong endpoints");
      return out;
    }
    for (const auto& v : check_functor(T)) bad("transition " + b.mor_name(u) + ": " + v.detail);
    if (b.is_identity(u)) {
      const auto& fc = *T.src;
      for (Obj x : fc.objects())
        if (T(x) != x) bad("transition " + b.mor_name(u) + " is not the identity");
      for (Mor m : fc.morphisms())
        if (T(m) != m) bad("transition " + b.mor_name(u) + " is not the identity");
    }
  }
  if (!out.empty()) return out;

  auto composable = [&](Mor g, Mor f) { return b.tgt(f) == b.src(g); };
  for (Mor f : b.morphisms())
    for (Mor g : b.morphisms()) {
      if (!composable(g, f)) continue;
      const auto& target = *ix.fibers[b.src(f).v];
      const auto& from = *ix.fibers[b.tgt(g).v];
      const Mor gf = b.compose(g, f);
      const std::string pair = "(" + b.mor_name(g) + ", " + b.mor_name(f) + ")";
      for (Obj z : from.objects()) {
        Mor t = ix.coh(g, f, z);
        Obj s = ix.trans[f.v](ix.trans[g.v](z)), e = ix.trans[gf.v](z);
        if (target.src(t) != s || target.tgt(t) != e) {
          bad("coherence " + pair + " at " + from.obj_name(z) + " has the wrong endpoints");
          return out;
        }
        if (!is_iso(target, t)) bad("coherence " + pair + " at " + from.obj_name(z) + " is not invertible");
        if ((b.is_identity(g) || b.is_identity(f)) && !target.is_identity(t))
          bad("coherence " + pair + " is not the identity");
      }
      for (Mor beta : from.morphisms()) {
        Mor l = target.compose(ix.coh(g, f, from.tgt(beta)), ix.trans[f.v](ix.trans[g.v](beta)));
        Mor r = target.compose(ix.trans[gf.v](beta), ix.coh(g, f, from.src(beta)));
        if (l != r) bad("coherence " + pair + " is not natural at " + from.mor_name(beta));
      }
    }
  if (!out.empty()) return out;

  // theta(hg, f) . F(f)(theta(h, g)) = theta(h, gf) . theta(g, f) at F(h) z
  for (Mor f : b.morphisms())
    for (Mor g : b.morphisms()) {
      if (!composable(g, f)) continue;
      for (Mor h : b.morphisms()) {
        if (!composable(h, g)) continue;
        const auto& target = *ix.fibers[b.src(f).v];
        const Mor hg = b.compose(h, g), gf = b.compose(g, f);
        for (Obj z : ix.fibers[b.tgt(h).v]->objects()) {
          Mor l = target.compose(ix.coh(hg, f, z), ix.trans[f.v](ix.coh(h, g, z)));
          Mor r = target.compose(ix.coh(h, gf, z), ix.coh(g, f, ix.trans[h.v](z)));
          if (l != r)
            bad("cocycle fails for (" + b.mor_name(h) + ", " + b.mor_name(g) + ", " + b.mor_name(f) + ")");
        }
      }
    }
  return out;
}

IndexedData resolve_indexed(const Workspace& ws, const RawIndexed& raw) {
  IndexedData ix{raw.name, ws.category(raw.base), {}, {}, {}};
  const auto& b = *ix.base;
  ix.fibers.resize(b.object_count());
  for (const auto& [obj, cat] : raw.fibers) ix.fibers[b.obj(obj).v] = ws.category(cat);
  for (Obj c : b.objects())
    if (!ix.fibers[c.v]) throw Error(ErrorKind::UnknownId, "indexed " + raw.name + ": no fibre over " + b.obj_name(c));
  ix.trans.resize(b.morphism_count());
  for (const auto& [mor, fun] : raw.trans) ix.trans[b.mor(mor).v] = ws.functor(fun);
  for (Mor u : b.morphisms()) {
    if (ix.trans[u.v].src) continue;
    if (!b.is_identity(u))
      throw Error(ErrorKind::UnknownId, "indexed " + raw.name + ": no transition for " + b.mor_name(u));
    ix.trans[u.v] = identity_functor(ix.fibers[b.src(u).v]);
  }
  for (const auto& c : raw.coh) {
    Mor g = b.mor(c.g), f = b.mor(c.f);
    const auto& nats = ws.document().nats;
    auto it = std::find_if(nats.begin(), nats.end(), [&](const RawNat& n) { return n.name == c.nat; });
    if (it == nats.end()) throw Error(ErrorKind::UnknownId, "nat " + c.nat);
    const auto& from = *ix.fibers[b.tgt(g).v];
    const auto& target = *ix.fibers[b.src(f).v];
    NatTrans t{std::vector<Mor>(from.object_count())};
    for (const auto& [x, m] : it->components) t.components[from.obj(x).v] = target.mor(m);
    for (Obj z : from.objects())
      if (!t.components[z.v].valid())
        throw Error(ErrorKind::UnknownId, "nat " + c.nat + " missing component at " + from.obj_name(z));
    ix.coherence[{g.v, f.v}] = std::move(t);
  }
  auto vs = check_indexed(ix);
  if (!vs.empty()) throw Error(ErrorKind::IncoherentTransitions, describe(vs));
  return ix;
}

Grothendieck grothendieck_construction(const IndexedData& ix) {
  auto vs = check_indexed(ix);
  if (!vs.empty()) throw Error(ErrorKind::IncoherentTransitions, describe(vs));
  const auto& b = *ix.base;
  using Key = std::tuple<int, int, int>;  // (u, y, alpha): (c, x) -> (d, y), alpha : x -> F(u) y
  KeyedBuilder<Key> kb(ix.name.empty() ? "groth(" + b.name() + ")" : ix.name);
  std::vector<std::pair<Obj, Obj>> object_of;
  std::map<std::pair<int, int>, Obj> at;
  for (Obj c : b.objects())
    for (Obj x : ix.fibers[c.v]->objects()) {
      at[{c.v, x.v}] = kb.object("(" + b.obj_name(c) + "," + ix.fibers[c.v]->obj_name(x) + ")");
      object_of.emplace_back(c, x);
    }
  for (const auto& [c, x] : object_of) kb.identity(at[{c.v, x.v}], {b.id(c).v, x.v, ix.fibers[c.v]->id(x).v});
  for (Mor u : b.morphisms()) {
    const Obj c = b.src(u), d = b.tgt(u);
    const auto& fc = *ix.fibers[c.v];
    for (Obj y : ix.fibers[d.v]->objects())
      for (Obj x : fc.objects())
        for (Mor alpha : fc.hom(x, ix.trans[u.v](y))) {
          if (b.is_identity(u) && fc.is_identity(alpha)) continue;
          kb.morphism("(" + b.mor_name(u) + "," + fc.mor_name(alpha) + ")", at[{c.v, x.v}], at[{d.v, y.v}],
                      {u.v, y.v, alpha.v});
        }
  }
  auto keys = kb.keys();
  auto total = share(std::move(kb).build([&](const Key& gk, const Key& fk) {
    const auto [v, z, beta] = gk;
    const auto [u, y, alpha] = fk;
    const Mor mu{u}, mv{v};
    const auto& fc = *ix.fibers[b.src(mu).v];
    Mor m = fc.compose(ix.trans[u](Mor{beta}), Mor{alpha});
    m = fc.compose(ix.coh(mv, mu, Obj{z}), m);
    return Key{b.compose(mv, mu).v, z, m.v};
  }));
  Functor proj{"proj", total, ix.base, {}, {}};
  for (const auto& [c, x] : object_of) proj.fobj.push_back(c);
  for (const auto& k : keys) proj.fmor.push_back(Mor{std::get<0>(k)});
  return {Fibration(std::move(proj)), std::move(object_of)};
}

PulledBack pullback_fibration(const Fibration& p, const Functor& G) {
  auto sq = strict_pullback(p.proj(), G);
  Fibration f(sq.right);
  return {std::move(sq), std::move(f)};
}

std::vector<Mor> cartesian_mismatches(const Fibration& p, const PulledBack& q) {
  std::vector<Mor> out;
  for (Mor m : q.square.cat->morphisms())
    if (q.fibration.cartesian(m) != p.cartesian(q.square.left(m))) out.push_back(m);
  return out;
}

SubterminalImage fibration_subterminal_image(const Fibration& p) {
  auto t = terminal_object(p.total());
  if (!t) throw Error(ErrorKind::NoTerminal, p.total().name());
  SubterminalImage r{*t, p.proj()(*t), false, {}, {}};
  const auto& b = p.base();
  r.subterminal = is_subterminal(b, r.image);
  for (Obj c : b.objects()) {
    if (!b.hom(c, r.image).empty()) continue;
    r.outside.push_back(c);
    for (Obj x : p.total().objects())
      if (p.proj()(x) == c) {
        r.nonempty_outside.push_back(c);
        break;
      }
  }
  return r;
}

Restriction restrict_below(const Fibration& p, Obj u) {
  const auto& b = p.base();
  const auto& F = p.proj();
  auto below = [&](Obj c) { return !b.hom(c, u).empty(); };
  auto base = full_subcategory(F.tgt, below, b.name() + "/" + b.obj_name(u));
  auto total = full_subcategory(F.src, [&](Obj x) { return below(F(x)); }, p.total().name() + "/" + b.obj_name(u));
  Fibration f(restrict(F, total, base));
  return {std::move(base), std::move(total), std::move(f)};
}

CartesianRightAdjoint cartesian_right_adjoint(const Fibration& p, Obj u, std::shared_ptr<const Products> products) {
  const auto& e = p.total();
  const auto& b = p.base();
  const auto& F = p.proj();
  if (!products) products = std::make_shared<const Products>(b);
  auto with_u = [&](Obj c) -> const FinCone& {
    if (auto k = products->get(c, u)) return *k;
    throw Error(ErrorKind::MissingProducts, "(" + b.obj_name(u) + ", " + b.obj_name(c) + ")");
  };
  CartesianRightAdjoint r{restrict_below(p, u), {}, {}, {}};
  const auto& sub = *r.below.total.cat;
  Positions at(r.below.total);

  std::vector<Mor> counit;
  for (Obj x : e.objects()) counit.push_back(p.lift(with_u(F(x)).legs[0], x));
  r.right = Functor{"restrict@" + b.obj_name(u), F.src, r.below.total.cat, {}, {}};
  for (Obj x : e.objects()) r.right.fobj.push_back(at(e.src(counit[x.v])));
  for (Mor phi : e.morphisms()) {
    const Obj x = e.src(phi), y = e.tgt(phi);
    const Mor over = products->times(F(phi), b.id(u));
    const Mor target = e.compose(phi, counit[x.v]);
    std::optional<Mor> found;
    for (Mor chi : e.hom(e.src(counit[x.v]), e.src(counit[y.v])))
      if (F(chi) == over && e.compose(counit[y.v], chi) == target) found = chi;
    if (!found) throw Error(ErrorKind::NoLift, "no restriction of " + e.mor_name(phi));
    r.right.fmor.push_back(at(*found));
  }

  NatTrans unit{{}};
  for (Obj zs : sub.objects()) {
    const Obj z = r.below.total.inclusion(zs);
    const Obj c = F(z);
    const Mor diag = products->pair(c, u, b.id(c), unique_map(b, c, u));
    std::optional<Mor> found;
    for (Mor chi : e.hom(z, e.src(counit[z.v])))
      if (F(chi) == diag && e.compose(counit[z.v], chi) == e.id(z)) found = chi;
    if (!found) throw Error(ErrorKind::NoLift, "no unit at " + e.obj_name(z));
    unit.components.push_back(at(*found));
  }
  r.adjunction = Adjunction{r.below.total.inclusion, r.right, std::move(unit), NatTrans{counit}};
  r.violations = check_adjunction(r.adjunction);
  for (const auto& v : check_functor(r.right)) r.violations.push_back(v);
  for (Mor phi : e.morphisms())
    if (p.cartesian(phi) && !r.below.fibration.cartesian(r.right(phi)))
      r.violations.push_back({ErrorKind::NoLift, "restriction of " + e.mor_name(phi) + " is not cartesian"});
  for (Obj x : e.objects())
    if (r.below.base.inclusion(r.below.fibration.proj()(r.right(x))) != with_u(F(x)).apex)
      r.violations.push_back({ErrorKind::NoLift, "restriction of " + e.obj_name(x) + " is off the product"});
  return r;
}

FibrationQuotient fibration_filter_quotient(const Fibration& p, const std::vector<Obj>& phi) {
  auto poset = subterminal_poset(p.base());
  auto r = validate_filter(p.base(), poset, phi);
  if (!r.ok()) throw Error(r.violations.front().kind, describe(r.violations));
  return fibration_filter_quotient(p, *r.filter);
}

FibrationQuotient fibration_filter_quotient(const Fibration& p, const Filter<FinCategory>& phi) {
  auto q = filter_quotient(p.proj().tgt, phi);
  auto ra = cartesian_right_adjoint(p, q.minimum, q.products);
  const auto& e = p.total();
  const auto& b = p.base();
  const auto& sub = *ra.below.total.cat;
  const auto& incl = ra.below.total.inclusion;

  using Key = std::tuple<int, int, int>;  // (X, Y, m) with m : R X -> R Y
  KeyedBuilder<Key> kb(e.name() + "_" + b.obj_name(q.minimum));
  for (Obj x : e.objects()) kb.object(e.obj_name(x));
  for (Obj x : e.objects()) kb.identity(x, {x.v, x.v, sub.id(ra.right(x)).v});
  for (Obj x : e.objects())
    for (Obj y : e.objects())
      for (Mor m : sub.hom(ra.right(x), ra.right(y))) {
        if (x == y && sub.is_identity(m)) continue;
        kb.morphism(e.mor_name(incl(m)) + "@" + b.obj_name(q.minimum), x, y, {x.v, y.v, m.v});
      }
  auto keys = kb.keys();
  auto total = share(std::move(kb).build([&](const Key& g, const Key& f) {
    return Key{std::get<0>(f), std::get<1>(g), sub.compose(Mor{std::get<2>(g)}, Mor{std::get<2>(f)}).v};
  }));

  const auto& F = p.proj();
  const auto& qc = q.category();
  Functor proj{"proj_" + b.obj_name(q.minimum), total, q.cat, {}, {}};
  for (Obj x : e.objects()) proj.fobj.push_back(F(x));
  std::vector<Mor> representative;
  for (const auto& [x, y, m] : keys) {
    const Mor up = incl(Mor{m});
    representative.push_back(up);
    const Obj px = F(Obj{x}), py = F(Obj{y});
    const Mor rep = b.compose(q.products->require(py, q.minimum).legs[0], F(up));
    std::optional<Mor> found;
    for (Mor k : qc.hom(px, py))
      if (q.representative[k.v] == rep) found = k;
    if (!found) throw Error(ErrorKind::OptimizationMismatch, "no quotient class for " + e.mor_name(up));
    proj.fmor.push_back(*found);
  }
  Fibration f(std::move(proj));
  return {std::move(q), std::move(ra), std::move(total), std::move(representative), std::move(f)};
}

std::vector<Obj> lifted_filter(const Fibration& p, const Filter<FinCategory>& phi) {
  const auto& e = p.total();
  const auto& b = p.base();
  auto t = terminal_object(e);
  if (!t) throw Error(ErrorKind::NoTerminal, e.name());
  Products prods(b);
  std::vector<Obj> generators;
  for (Obj u : phi.objects()) {
    const auto& k = prods.require(p.proj()(*t), u);
    generators.push_back(e.src(p.lift(k.legs[0], *t)));
  }
  std::vector<Obj> out;
  for (Obj v : e.objects()) {
    if (!is_subterminal(e, v)) continue;
    if (std::any_of(generators.begin(), generators.end(), [&](Obj g) { return !e.hom(g, v).empty(); }))
      out.push_back(v);
  }
  return out;
}

TotalCrossCheck cross_check_total(const Fibration& p, const FibrationQuotient& fq) {
  auto tq = filter_quotient(p.proj().src, lifted_filter(p, fq.base.filter));
  auto iso = find_identity_on_objects_iso(fq.total, tq.cat);
  return {std::move(tq), std::move(iso)};
}

}  // namespace catquot
