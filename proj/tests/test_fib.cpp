#include "catquot/equivalence.hpp"
#include "catquot/fib.hpp"
#include "catquot/fixtures.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace catquot;
namespace fx = catquot::fixtures;

namespace {

Functor point_at(const CategoryRef& c, const std::string& x) {
  auto one = share(terminal_category());
  return Functor{"at_" + x, one, c, {c->obj(x)}, {c->id(c->obj(x))}};
}

// E = A x A over its first factor.
ProductCategory e_over_a() { return product_category(fx::walking_arrow(), fx::walking_arrow(), "E"); }

struct Fixture {
  std::string name;
  Functor proj;
};

std::vector<Fixture> fibrations() {
  auto a = fx::walking_arrow();
  auto e = fx::square();
  auto s = slice(a, a->obj("1"));
  return {{"E/A", e_over_a().first},
          {"A/1", s.proj},
          {"ExA/E", product_category(e, a).first},
          {"E/(1,1)", slice(e, e->obj("(1,1)")).proj},
          {"at 0", point_at(a, "0")},
          {"id A", identity_functor(a)}};
}

const char* kIndexed = R"(
category Z2
obj *
mor s : * -> *
comp s s = id_*

category Iso2
obj a
obj b
mor i : a -> b
mor j : b -> a
comp j i = id_a
comp i j = id_b

functor Collapse : Iso2 -> Iso2
fobj a = a
fobj b = a
fmor i = id_a
fmor j = id_a

nat Theta : Collapse => Collapse
at a = id_a
at b = i

nat Wrong : Collapse => Collapse
at a = id_a
at b = id_a

indexed P on Z2
fiber * = Iso2
trans s = Collapse
coh s s = Theta

indexed Q on Z2
fiber * = Iso2
trans s = Collapse
coh s s = Wrong
)";

}  // namespace

TEST_CASE("classification against the oracle") {
  for (const auto& fix : fibrations()) {
    CAPTURE(fix.name);
    Fibration p(fix.proj);
    CHECK(p.cartesian_table() == oracle_cartesian(fix.proj));
    CHECK(check_lift_uniqueness(p).empty());
  }
}

TEST_CASE("worked fibrations") {
  auto pe = e_over_a();
  Fibration p(pe.first);
  CHECK(p.grothendieck());
  CHECK_FALSE(p.discrete());
  // A product projection is cartesian exactly on morphisms with an invertible second part.
  for (Mor m : p.total().morphisms()) CHECK(p.cartesian(m) == pe.second.tgt->is_identity(pe.second(m)));

  auto a = fx::walking_arrow();
  Fibration s(slice(a, a->obj("1")).proj);
  CHECK(s.discrete());

  Fibration at1(point_at(a, "1"));
  CHECK_FALSE(at1.grothendieck());
  REQUIRE(at1.missing_lift());
  CHECK(a->mor_name(at1.missing_lift()->first) == "f");
  CHECK_THROWS_AS(at1.lift(a->mor("f"), Obj{0}), Error);
  CHECK(Fibration(point_at(a, "0")).discrete());

  try {
    Functor bad = pe.first;
    for (auto& m : bad.fmor)
      if (!bad.tgt->is_identity(m)) m = bad.tgt->id(bad.tgt->obj("0"));
    Fibration broken(bad);
    FAIL("expected NotAFunctor");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotAFunctor);
  }
}

TEST_CASE("chosen lifts") {
  auto pe = e_over_a();
  Fibration p(pe.first);
  const auto& e = p.total();
  for (Obj y : e.objects()) CHECK(p.lift(p.base().id(p.proj()(y)), y) == e.id(y));
  auto f = p.base().mor("f");
  for (const char* j : {"0", "1"}) {
    auto y = e.obj(std::string("(1,") + j + ")");
    auto l = p.lift(f, y);
    CHECK(e.src(l) == e.obj(std::string("(0,") + j + ")"));
    CHECK(l == p.lift(f, y));
  }
}

TEST_CASE("Grothendieck construction") {
  auto a = fx::walking_arrow();
  auto b = fx::walking_arrow();
  IndexedData constant{"const", a, {b, b}, {identity_functor(b), identity_functor(b), identity_functor(b)}, {}};
  auto g = grothendieck_construction(constant);
  CHECK(g.fibration.total().object_count() == 4);
  CHECK(g.fibration.grothendieck());
  CHECK(find_isomorphism(g.fibration.proj().src, fx::square()));

  // Fibre A over 0 and a point over 1, reindexed along f to the object 1.
  auto one = share(terminal_category());
  Functor pick{"pick", one, b, {b->obj("1")}, {b->id(b->obj("1"))}};
  IndexedData mixed{"mixed", a, {b, one}, {}, {}};
  mixed.trans.resize(a->morphism_count());
  mixed.trans[a->id(a->obj("0")).v] = identity_functor(b);
  mixed.trans[a->id(a->obj("1")).v] = identity_functor(one);
  mixed.trans[a->mor("f").v] = pick;
  auto gm = grothendieck_construction(mixed);
  CHECK(gm.fibration.total().object_count() == 3);
  CHECK(gm.fibration.grothendieck());

  for (const auto* ix : {&constant, &mixed}) {
    auto gx = grothendieck_construction(*ix);
    for (Obj c : a->objects()) CHECK(find_isomorphism(gx.fibration.fiber(c).cat, ix->fibers[c.v]));
  }
}

TEST_CASE("pseudo-functor with a non-identity coherence") {
  Workspace ws(parse_document(kIndexed));
  auto ix = resolve_indexed(ws, ws.document().indexed[0]);
  CHECK(check_indexed(ix).empty());
  auto g = grothendieck_construction(ix);
  CHECK(g.fibration.grothendieck());
  CHECK(g.fibration.total().object_count() == 2);
  CHECK(find_isomorphism(g.fibration.fiber(Obj{0}).cat, ix.fibers[0]));
  CHECK(check_lift_uniqueness(g.fibration).empty());

  try {
    resolve_indexed(ws, ws.document().indexed[1]);
    FAIL("expected IncoherentTransitions");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncoherentTransitions);
  }
}

TEST_CASE("pullbacks along discrete fibrations preserve and reflect cartesian morphisms") {
  auto a = fx::walking_arrow();
  auto e = fx::square();
  std::vector<Functor> into_a{identity_functor(a), slice(a, a->obj("1")).proj, slice(a, a->obj("0")).proj,
                              point_at(a, "0")};
  std::vector<Functor> into_e{identity_functor(e), slice(e, e->obj("(1,1)")).proj,
                              slice(e, e->obj("(0,1)")).proj, point_at(e, "(0,0)")};
  int pairs = 0;
  for (const auto& fix : fibrations()) {
    Fibration p(fix.proj);
    if (!p.grothendieck()) continue;
    const auto& base = fix.proj.tgt->name();
    for (const auto& G : base == a->name() ? into_a : base == e->name() ? into_e : std::vector<Functor>{}) {
      CAPTURE(fix.name);
      CAPTURE(G.src->name());
      REQUIRE(Fibration(G).discrete());
      auto q = pullback_fibration(p, G);
      CHECK(q.fibration.grothendieck());
      CHECK(cartesian_mismatches(p, q).empty());
      CHECK(q.fibration.cartesian_table() == oracle_cartesian(q.fibration.proj()));
      ++pairs;
    }
  }
  CHECK(pairs >= 10);

  Fibration p(e_over_a().first);
  auto id = pullback_fibration(p, identity_functor(p.proj().tgt));
  CHECK(find_isomorphism(id.square.cat, p.proj().src));
}

TEST_CASE("subterminal image of the terminal object") {
  auto pe = e_over_a();
  auto r = fibration_subterminal_image(Fibration(pe.first));
  CHECK(pe.first.src->obj_name(r.terminal) == "(1,1)");
  CHECK(pe.first.tgt->obj_name(r.image) == "1");
  CHECK(r.ok());
  CHECK(r.outside.empty());

  // Only the column over 0: the image is a proper subterminal.
  auto left = full_subcategory(pe.cat, [&](Obj x) { return pe.first(x).v == 0; });
  Fibration lp(compose(pe.first, left.inclusion));
  auto rl = fibration_subterminal_image(lp);
  CHECK(lp.base().obj_name(rl.image) == "0");
  CHECK(rl.ok());
  REQUIRE(rl.outside.size() == 1);
  CHECK(lp.base().obj_name(rl.outside[0]) == "1");
  auto restricted = restrict_below(lp, rl.image);
  CHECK(restricted.total.cat->object_count() == lp.total().object_count());
  CHECK(restricted.base.cat->object_count() == 1);

  auto two = fx::discrete_pair();
  auto a = fx::walking_arrow();
  Functor flat{"flat", two, a, {a->obj("0"), a->obj("0")}, {a->id(a->obj("0")), a->id(a->obj("0"))}};
  CHECK_THROWS_AS(fibration_subterminal_image(Fibration(flat)), Error);
}

TEST_CASE("cartesian right adjoint") {
  auto pe = e_over_a();
  Fibration p(pe.first);
  const auto& e = p.total();

  auto top = cartesian_right_adjoint(p, p.base().obj("1"));
  CHECK(top.ok());
  CHECK(is_isomorphism(top.right));

  auto bottom = cartesian_right_adjoint(p, p.base().obj("0"));
  CHECK(bottom.ok());
  const auto& below = *bottom.below.total.cat;
  for (Obj x : e.objects()) {
    // (i, j) |-> (min(i, 0), j)
    const auto& n = e.obj_name(x);
    CHECK(below.obj_name(bottom.right(x)) == "(0," + n.substr(3, 1) + ")");
  }
  CHECK(check_adjunction(bottom.adjunction).empty());

  auto ea = product_category(fx::square(), fx::walking_arrow());
  Fibration q(ea.first);
  for (const char* u : {"(0,1)", "(1,0)", "(1,1)"}) {
    CAPTURE(u);
    CHECK(cartesian_right_adjoint(q, q.base().obj(u)).ok());
  }
}

TEST_CASE("filter quotients of fibrations") {
  auto pe = e_over_a();
  Fibration p(pe.first);

  auto trivial = fibration_filter_quotient(p, {p.base().obj("1")});
  CHECK(trivial.fibration.grothendieck());
  CHECK(find_identity_on_objects_iso(trivial.total, p.proj().src));

  auto lower = fibration_filter_quotient(p, {p.base().obj("0"), p.base().obj("1")});
  CHECK(lower.fibration.grothendieck());
  CHECK(cross_check_total(p, lower).ok());

  auto ea = product_category(fx::square(), fx::walking_arrow());
  Fibration q(ea.first);
  std::vector<Obj> phi01;
  for (const auto& n : fx::phi01()) phi01.push_back(q.base().obj(n));
  auto fq = fibration_filter_quotient(q, phi01);
  CHECK(fq.fibration.grothendieck());
  CHECK(fq.fibration.cartesian_table() == oracle_cartesian(fq.fibration.proj()));
  auto cc = cross_check_total(q, fq);
  CHECK(cc.ok());

  // The fibre over c in the quotient matches the fibre over c * U0.
  for (Obj c : q.base().objects()) {
    Obj cu = fq.base.products->require(c, fq.base.minimum).apex;
    CHECK(find_equivalence(fq.fibration.fiber(c).cat, q.fiber(cu).cat));
  }

  CHECK_THROWS_AS(fibration_filter_quotient(p, std::vector<Obj>{}), Error);
}
