#include <random>
#include <set>

#include "catquot/comprehension.hpp"
#include "catquot/equivalence.hpp"
#include "catquot/fixtures.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace catquot;
namespace fx = catquot::fixtures;

namespace {

const char* kSmall = R"(
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
)";

Scheme scheme_of(std::vector<Scheme::Param> ps) { return Scheme{"P", std::move(ps)}; }
Scheme::Param type_at(std::string ctx) { return {false, std::move(ctx), -1}; }
Scheme::Param term_at(std::string ctx, int k) { return {true, std::move(ctx), k}; }

std::vector<Obj> objects_named(const FinCategory& c, const std::vector<std::string>& names) {
  std::vector<Obj> out;
  for (const auto& n : names) out.push_back(c.obj(n));
  return out;
}

// Sends f : A -> G to the arrow G' -> G, G' the bottom unless G is the top.
// Lies over the codomain but breaks pullback squares.
Functor bottom_or_identity(const Comprehension& w) {
  const auto& e = w.base();
  const auto& ac = w.arrows;
  const Obj top = e.obj("(1,1)"), bottom = e.obj("(0,0)");
  auto image = [&](Obj g) { return g == top ? top : bottom; };
  Functor chi{"bent", ac.cat, ac.cat, {}, {}};
  for (Obj x : ac.cat->objects()) {
    const Obj g = ac.cod(x);
    chi.fobj.push_back(*ac.object_of(e.hom(image(g), g).front()));
  }
  for (Mor m : ac.cat->morphisms()) {
    const Obj s = chi(ac.cat->src(m)), t = chi(ac.cat->tgt(m));
    for (Mor k : ac.cat->hom(s, t))
      if (ac.square[k.v].second == ac.square[m.v].second) chi.fmor.push_back(k);
  }
  return chi;
}

std::vector<int> counts_over(const SetPower::Mor& p) {
  std::vector<int> out(p.tgt.sizes[0], 0);
  for (int v : p.maps[0]) ++out[v];
  return out;
}

}  // namespace

TEST_CASE("comprehension checks") {
  auto e = fx::square();
  CHECK(check_comprehension(arrows_comprehension(e)).ok());
  CHECK(check_comprehension(monos_comprehension(e)).ok());
  CHECK(check_comprehension(arrows_comprehension(fx::z2())).ok());

  auto w = arrows_comprehension(e);
  w.chi = bottom_or_identity(w);
  auto r = check_comprehension(w);
  CHECK(!r.ok());
  REQUIRE(r.first_failure());
  CHECK(r.first_failure()->name == "cartesian");
  CHECK(r.first_failure()->witness.find("non-pullback square") != std::string::npos);

  Workspace ws(parse_document("category E2\nobj x\n\ncomprehension W on E2 = monos\n"));
  CHECK(check_comprehension(resolve_comprehension(ws, ws.document().comprehensions[0])).ok());
}

TEST_CASE("display data") {
  auto e = fx::square();
  auto w = arrows_comprehension(e);
  auto dd = display_data(w);
  CHECK(dd.display.cat->object_count() == e->morphism_count());

  // Pullback squares between display maps, from the oracle.
  auto cart = oracle_cartesian(w.arrows.cod);
  int expected = 0;
  for (bool b : cart) expected += b;
  CHECK(dd.display.cat->morphism_count() == expected);
  CHECK(dd.cartesian.cat->morphism_count() == expected);
  for (Mor m : dd.display.cat->morphisms()) CHECK(cart[dd.display.square[m.v].v]);

  auto m = monos_comprehension(e);
  auto dm = display_data(m);
  auto mono_cart = oracle_cartesian(m.fibration.proj());
  int mono_expected = 0;
  for (bool b : mono_cart) mono_expected += b;
  CHECK(dm.cartesian.cat->morphism_count() == mono_expected);

  // Sections of display maps in a poset exist only for identities.
  CHECK(dd.pointed.cat->object_count() == e->object_count());
  CHECK(dd.pointed_all.cat->morphism_count() >= dd.pointed.cat->morphism_count());
  CHECK(check_functor(dd.forget_section).empty());

  auto z = display_data(arrows_comprehension(fx::z2()));
  CHECK(z.pointed.cat->object_count() == 2);
}

TEST_CASE("instantiation") {
  auto e = fx::square();
  auto w = arrows_comprehension(e);

  auto empty = instantiate(scheme_of({}), w);
  CHECK(empty.cat().object_count() == e->object_count());
  CHECK(empty.fibration.proj().fobj == identity_functor(e).fobj);
  CHECK(empty.fibration.proj().fmor == identity_functor(e).fmor);

  auto one = instantiate(scheme_of({type_at("ctx")}), w);
  CHECK(one.fibration.grothendieck());
  CHECK(one.cat().object_count() == e->morphism_count());

  auto two = instantiate(scheme_of({type_at("ctx"), type_at("ext0")}), w);
  CHECK(two.fibration.grothendieck());
  // Pairs of composable arrows B -> A -> G.
  int composable = 0;
  for (Mor f : e->morphisms())
    for (Mor g : e->morphisms()) composable += e->tgt(g) == e->src(f);
  CHECK(two.cat().object_count() == composable);

  // Fibre over * of the term scheme over Z2: the display maps with a
  // section, (id, id) and (s, s).
  auto z = fx::z2();
  auto wz = arrows_comprehension(z);
  auto term = instantiate(scheme_of({type_at("ctx"), term_at("ctx", 0)}), wz);
  CHECK(term.fibration.grothendieck());
  auto fibre = term.fibration.fiber(z->obj("*"));
  REQUIRE(fibre.cat->object_count() == 2);
  std::set<std::pair<int, int>> seen;
  for (Obj x : term.cat().objects()) seen.insert({wz.display(term.types[x.v][0]).v, term.terms[x.v][0].v});
  CHECK(seen == std::set<std::pair<int, int>>{{z->mor("id_*").v, z->mor("id_*").v}, {z->mor("s").v, z->mor("s").v}});

  auto ill = [&](Scheme s) {
    try {
      instantiate(s, w);
      return false;
    } catch (const Error& err) {
      return err.kind() == ErrorKind::IllTypedParameter;
    }
  };
  CHECK(ill(scheme_of({type_at("ext0")})));
  CHECK(ill(scheme_of({term_at("ctx", 0)})));
  CHECK(ill(scheme_of({type_at("ctx"), type_at("ext0"), term_at("ctx", 1)})));
  CHECK(ill(scheme_of({type_at("ctx"), term_at("ctx", 0), type_at("ext1")})));

  RawScheme raw{"P", "W", {{false, {"ctx"}}, {true, {"ctx", "type0"}}}};
  auto s = resolve_scheme(raw);
  CHECK(s.params[1].type == 0);
  raw.params[1].refs[1] = "zero";
  CHECK_THROWS_AS(resolve_scheme(raw), Error);
}

TEST_CASE("FCoSwP validation") {
  auto e = fx::square();
  auto w = make_fcoswp(arrows_comprehension(e), scheme_of({type_at("ctx")}));
  auto r = check_fcoswp(w);
  CHECK(r.clauses.size() == 5);
  CHECK(r.ok());

  auto monos = make_fcoswp(monos_comprehension(e), scheme_of({type_at("ctx"), term_at("ctx", 0)}));
  CHECK(check_fcoswp(monos).ok());

  Workspace ws(parse_document(kSmall));
  auto decorate = [&](const std::string& name) {
    auto pc = product_category(w.target.cat, ws.category(name));
    Fibration s(compose(compose(w.inst.fibration.proj(), w.target.left), pc.first));
    return make_fcoswp(w.comprehension, w.scheme, w.inst, w.target, std::move(s), pc.first);
  };
  auto iso2 = check_fcoswp(decorate("Iso2"));
  CHECK(iso2.clauses[2].ok);
  CHECK(!iso2.clauses[4].ok);
  CHECK(iso2.clauses[4].witness.find("over an identity") != std::string::npos);
  auto z2 = check_fcoswp(decorate("Z2"));
  CHECK(!z2.clauses[2].ok);
}

TEST_CASE("pullback along discrete fibrations") {
  auto e = fx::square();
  auto w = make_fcoswp(arrows_comprehension(e), scheme_of({type_at("ctx")}));

  auto same = pullback_fcoswp(identity_functor(e), w);
  CHECK(check_fcoswp(same.result).ok());
  CHECK(same.instantiation_iso);
  CHECK(same.display_iso);
  CHECK(find_isomorphism(same.result.structure.proj().src, w.structure.proj().src));

  auto sl = slice(e, e->obj("(1,1)"));
  auto along = pullback_fcoswp(sl.proj, w);
  CHECK(check_fcoswp(along.result).ok());
  CHECK(along.instantiation_iso);
  CHECK(along.display_iso);

  auto a = fx::walking_arrow();
  auto wa = make_fcoswp(arrows_comprehension(a), scheme_of({type_at("ctx"), term_at("ctx", 0)}));
  auto sa = slice(a, a->obj("1"));
  auto pa = pullback_fcoswp(sa.proj, wa);
  CHECK(check_fcoswp(pa.result).ok());
  CHECK(pa.instantiation_iso);
  CHECK(pa.display_iso);

  // Composable discrete fibrations: E/(1,1)/x -> E/(1,1) -> E.
  auto sl2 = slice(sl.cat, sl.cat->objects().front());
  auto twice = pullback_fcoswp(sl2.proj, along.result);
  auto once = pullback_fcoswp(compose(sl.proj, sl2.proj), w);
  CHECK(check_fcoswp(twice.result).ok());
  CHECK(find_isomorphism(twice.result.structure.proj().src, once.result.structure.proj().src));
  CHECK(find_isomorphism(twice.result.inst.fibration.proj().src, once.result.inst.fibration.proj().src));

  auto pc = product_category(e, a);
  CHECK_THROWS_AS(pullback_fcoswp(pc.first, w), Error);
  try {
    pullback_fcoswp(pc.first, w);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotDiscrete);
  }
}

TEST_CASE("filter quotients of FCoSwPs") {
  auto e = fx::square();
  const auto phi = objects_named(*e, fx::phi01());
  for (const auto& scheme : {scheme_of({type_at("ctx")}), scheme_of({type_at("ctx"), type_at("ext0")}),
                             scheme_of({type_at("ctx"), term_at("ctx", 0)})}) {
    for (const auto& t : {arrows_comprehension(e), monos_comprehension(e)}) {
      auto w = make_fcoswp(t, scheme, identity_types(t));
      CHECK(check_fcoswp(w).ok());
      auto trivial = fcoswp_filter_quotient(w, std::vector<Obj>{e->obj("(1,1)")});
      CHECK(check_fcoswp(trivial.result()).ok());
      CHECK(check_fcoswp(trivial.same_objects).ok());
      CHECK(trivial.instantiation.iso);
      CHECK(find_isomorphism(trivial.result().structure.proj().src, w.structure.proj().src));
      CHECK(find_isomorphism(trivial.same_objects.structure.proj().src, w.structure.proj().src));

      auto q = fcoswp_filter_quotient(w, phi);
      auto r = check_fcoswp(q.result());
      CHECK(r.ok());
      CHECK(q.restricted.instantiation_iso);
      CHECK(q.base_equivalent);

      // The same-objects model: faithful and amnestic, with no nonidentity
      // iso over an identity.
      auto same = check_fcoswp(q.same_objects);
      CHECK(same.clauses[1].ok);
      CHECK(same.clauses[2].ok);
      CHECK(same.clauses[4].ok);
      CHECK(q.instantiation.equivalence());
      bool has_term = false;
      for (const auto& p : scheme.params) has_term = has_term || p.term;
      if (!has_term) CHECK(q.instantiation.iso);
    }
  }

  auto a = fx::walking_arrow();
  auto ta = arrows_comprehension(a);
  auto wa = make_fcoswp(ta, scheme_of({type_at("ctx")}), identity_types(ta));
  auto qa = fcoswp_filter_quotient(wa, std::vector<Obj>{a->obj("0"), a->obj("1")});
  CHECK(check_fcoswp(qa.result()).ok());

  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& err) {
      return err.kind();
    }
    return ErrorKind::ParseError;
  };
  auto none = make_fcoswp(arrows_comprehension(e), scheme_of({}), [](const Instantiation&, Obj, Mor) { return false; });
  auto full = make_fcoswp(arrows_comprehension(e), scheme_of({type_at("ctx"), type_at("ext0")}));
  CHECK(kind_of([&] { fcoswp_filter_quotient(full, phi); }) == ErrorKind::NoTerminalInS);
  CHECK(kind_of([&] { fcoswp_filter_quotient(none, phi); }) == ErrorKind::NoTerminalInS);
  auto d = fx::discrete_pair();
  auto wd = make_fcoswp(arrows_comprehension(d), scheme_of({}));
  CHECK(kind_of([&] { fcoswp_filter_quotient(wd, std::vector<Obj>{}); }) == ErrorKind::NoTerminalInT);
}

TEST_CASE("display data commutes with filter quotients") {
  auto e = fx::square();
  const auto phi = objects_named(*e, fx::phi01());
  for (const auto& w : {arrows_comprehension(e), monos_comprehension(e)}) {
    auto vs = display_quotient_comparison(w, phi);
    REQUIRE(vs.size() == 4);
    for (const auto& v : vs) {
      CHECK(v.equivalence());
      CHECK(v.witness.empty());
    }
  }
  auto c = fx::cube();
  auto vs = display_quotient_comparison(arrows_comprehension(c), {c->obj("3"), c->obj("7")});
  for (const auto& v : vs) CHECK(v.equivalence());
}

TEST_CASE("polynomial functors on finite sets") {
  SetPower c(1);
  auto obj = [&](int n) { return c.object({n}); };
  auto mor = [&](int s, int t, std::vector<int> m) { return c.morphism(obj(s), obj(t), {std::move(m)}); };

  // Fibres of g of sizes 0 and 2: 1 + X^2.
  PolynomialTriple t{mor(2, 1, {0, 0}), mor(2, 2, {1, 1}), mor(2, 1, {0, 0})};
  CHECK(polynomial_apply(c, t, mor(2, 1, {0, 0})).src.sizes[0] == 5);
  CHECK(polynomial_apply(c, t, mor(0, 1, {})).src.sizes[0] == 1);
  auto p = polynomial_of(t);
  CHECK(p.arity == std::vector<int>{0, 2});
  CHECK(p.size(2) == 5);
  CHECK(p.size(0) == 1);

  // Identity triple.
  PolynomialTriple id{mor(3, 3, {0, 1, 2}), mor(3, 3, {0, 1, 2}), mor(3, 3, {0, 1, 2})};
  auto x = mor(4, 3, {0, 0, 2, 1});
  CHECK(counts_over(polynomial_apply(c, id, x)) == counts_over(x));

  std::mt19937 rng(20261015);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int cs = 1 + pick(3), bs = 1 + pick(4), as = pick(5), xs = pick(5);
    std::vector<int> f(as), g(as), h(bs), xm(xs);
    for (auto& v : f) v = pick(cs);
    for (auto& v : g) v = pick(bs);
    for (auto& v : h) v = pick(cs);
    for (auto& v : xm) v = pick(cs);
    PolynomialTriple tr{mor(as, cs, f), mor(as, bs, g), mor(bs, cs, h)};
    auto got = polynomial_apply(c, tr, mor(xs, cs, xm));
    CHECK(counts_over(got) == oracle::polynomial_counts(f, g, h, cs, xm));
    if (cs == 1) {
      auto q = polynomial_of(tr);
      int law = 0;
      for (int k : q.arity) {
        int pw = 1;
        for (int j = 0; j < k; ++j) pw *= xs;
        law += pw;
      }
      CHECK(got.src.sizes[0] == law);
      CHECK(q.size(xs) == law);
    }
    ++checked;
  }
  CHECK(checked == 50);
  CHECK_THROWS_AS(polynomial_apply(c, t, mor(1, 2, {0})), Error);
}

TEST_CASE("initial algebras within a bound") {
  auto id = initial_algebra_search(Polynomial{{1}}, 3);
  REQUIRE(id.found_within_bound());
  CHECK(id.found->carrier == 0);

  auto one = initial_algebra_search(Polynomial{{0}}, 3);
  REQUIRE(one.found_within_bound());
  CHECK(one.found->carrier == 1);
  auto algs = endofunctor_algebras(Polynomial{{0}}, 3);
  CHECK(one.witnesses.size() == static_cast<std::size_t>(algs.cat->object_count()));

  CHECK(!initial_algebra_search(Polynomial{{0, 2}}, 2).found_within_bound());

  // Algebras of 1 + X^2 on two elements: 2^5 structure maps.
  auto tree = endofunctor_algebras(Polynomial{{0, 2}}, 2);
  CHECK(tree.cat->object_count() == 1 + 32);
}

TEST_CASE("free monad algebras restrict to an equivalence") {
  Polynomial id{{1}};
  auto t = term_algebras(id, 3, 3);
  auto f = endofunctor_algebras(id, 3);
  auto v = check_algebra_equivalence(restriction_functor(id, t, f, 3, standard_embedding()));
  CHECK(v.equivalence());
  CHECK(v.iso);

  Polynomial tree{{0, 2}};
  auto tt = term_algebras(tree, 2, 2);
  auto ft = endofunctor_algebras(tree, 2);
  CHECK(check_algebra_equivalence(restriction_functor(tree, tt, ft, 2, standard_embedding())).equivalence());

  LayerEmbedding bent = [](int shape, const std::vector<int>& xs) {
    Term out{-1, shape, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) out.children.push_back(Term{xs[0], -1, {}});
    return out;
  };
  auto broken = check_algebra_equivalence(restriction_functor(tree, tt, ft, 2, bent));
  CHECK(!broken.full);
  CHECK(!broken.witness.empty());

  auto none = check_algebra_equivalence(
      restriction_functor(id, term_algebras(id, -1, 2), endofunctor_algebras(id, -1), 2, standard_embedding()));
  CHECK(none.equivalence());
}
