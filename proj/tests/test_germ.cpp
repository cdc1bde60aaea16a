#include <random>

#include "catquot/fixtures.hpp"
#include "catquot/germ.hpp"
#include "catquot/limits.hpp"
#include "catquot/set_power.hpp"
#include "doctest.h"
#include "germ_support.hpp"

using namespace catquot;
namespace fx = catquot::fixtures;

using namespace germ_fx;

TEST_CASE("germ equality on the worked examples") {
  auto t = ComponentMap::of({1, 0});
  auto f = konst(S(2), S(2), t, {{0, ComponentMap::of({0, 0})}, {3, ComponentMap::of({1, 1})}});
  auto g = konst(S(2), S(2), t, {{1, ComponentMap::identity()}});
  CHECK(germ_equal(f, g).kind == V::Equal);
  CHECK(germ_equal(f, f).kind == V::Equal);

  for (long k : {0L, 3L, 7L}) CHECK(germ_equal(germ_point(N, k), identity_point()).kind == V::Distinct);
  CHECK(germ_equal(identity_point(), identity_point()).kind == V::Equal);

  // Identity and constant agree as functions out of S1.
  CHECK(germ_equal(germ_identity(S(1)), konst(S(1), S(1), ComponentMap::constant(0))).kind == V::Equal);
  CHECK(germ_equal(germ_identity(N), konst(N, N, ComponentMap::constant(0))).kind == V::Distinct);

  CHECK_THROWS_AS(germ_equal(germ_identity(S(2)), germ_identity(S(3))), Error);
}

TEST_CASE("computed tails degrade to a reported prefix") {
  GermMorphism f = germ_point(N, 0);
  f.tail = GermMorphism::Tail::Computed;
  f.computed = [](long n) { return ComponentMap::of({n % 2}); };
  auto v = germ_equal(f, germ_point(N, 0), 10);
  CHECK(v.kind == V::UnknownBeyondCutoff);
  CHECK(v.verified_prefix == 10);
  CHECK_THROWS_AS(nonstandard_point_certificate(f), Error);
}

TEST_CASE("composition") {
  auto u = ComponentMap::of({2, 0, 1});
  auto v = ComponentMap::of({1, 1});
  auto gu = konst(S(3), S(3), u, {{5, ComponentMap::identity()}});
  auto fv = konst(S(2), S(3), v, {{2, ComponentMap::of({0, 2})}});
  auto h = germ_compose(gu, fv);
  CHECK(h.tail == GermMorphism::Tail::Const);
  CHECK(h.constant == ComponentMap::of({0, 0}));
  CHECK(h.exceptions.size() <= gu.exceptions.size() + fv.exceptions.size());
  CHECK(h.at(2) == ComponentMap::of({2, 1}));
  CHECK(h.at(5) == ComponentMap::of({1, 1}));

  CHECK(germ_equal(germ_compose(germ_identity(S(3)), fv), fv).kind == V::Equal);
  CHECK(germ_equal(germ_compose(fv, germ_identity(S(2))), fv).kind == V::Equal);
  CHECK(germ_equal(germ_compose(germ_identity(N), identity_point()), identity_point()).kind == V::Equal);

  // Postcomposing the identity point with a constant lands on that constant.
  auto c = germ_compose(konst(N, S(2), ComponentMap::constant(1)), identity_point());
  CHECK(germ_equal(c, germ_point(S(2), 1)).kind == V::Equal);

  CHECK_THROWS_AS(germ_compose(gu, konst(S(2), S(2), v)), Error);
  try {
    germ_compose(identity_point(), konst(N, S(1), ComponentMap::constant(0)));
    FAIL("expected UnsupportedTailComposition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedTailComposition);
  }
}

TEST_CASE("germ_equal is an equivalence relation matching the oracle") {
  Gen gen;
  const std::vector<std::vector<long>> tails{{0, 1}, {1, 1}, {2, 0}};
  int fixtures = 0, equal_pairs = 0;
  for (; fixtures < 1000; ++fixtures) {
    const bool points = fixtures % 2;
    Seq a = points ? gen.point() : gen.map(2, 3, tails);
    Seq b = gen.pick(0, 1) ? gen.perturb(a, 2, 3) : (points ? gen.point() : gen.map(2, 3, tails));
    Seq c = gen.pick(0, 1) ? gen.perturb(b, 2, 3) : (points ? gen.point() : gen.map(2, 3, tails));
    auto src = points ? S(1) : S(2);
    auto tgt = points ? N : S(3);
    auto f = realize(a, src, tgt), g = realize(b, src, tgt), h = realize(c, src, tgt);
    auto eq = [](const GermMorphism& x, const GermMorphism& y) {
      auto v = germ_equal(x, y);
      REQUIRE(v.kind != V::UnknownBeyondCutoff);
      return v.kind == V::Equal;
    };
    CHECK(eq(f, f));
    CHECK(eq(f, g) == eq(g, f));
    if (eq(f, g) && eq(g, h)) CHECK(eq(f, h));
    CHECK(eq(f, g) == oracle_equal(a, b));
    CHECK(eq(g, h) == oracle_equal(b, c));
    equal_pairs += eq(f, g);
  }
  CHECK(fixtures == 1000);
  CHECK(equal_pairs > 100);
}

TEST_CASE("composition respects germ equality") {
  Gen gen;
  const std::vector<std::vector<long>> tails_f{{0, 1}, {2, 2}}, tails_g{{1, 0, 0}, {0, 1, 2}};
  for (int i = 0; i < 300; ++i) {
    Seq f = gen.map(2, 3, tails_f), g = gen.map(3, 2, tails_g);
    auto f1 = realize(f, S(2), S(3)), f2 = realize(gen.perturb(f, 2, 3), S(2), S(3));
    auto g1 = realize(g, S(3), S(2)), g2 = realize(gen.perturb(g, 3, 2), S(3), S(2));
    REQUIRE(germ_equal(f1, f2).kind == V::Equal);
    REQUIRE(germ_equal(g1, g2).kind == V::Equal);
    CHECK(germ_equal(germ_compose(g1, f1), germ_compose(g2, f2)).kind == V::Equal);
  }
  // Points into the naturals, postcomposed with constants and identities.
  for (int i = 0; i < 100; ++i) {
    Seq p = gen.point();
    auto p1 = realize(p, S(1), N), p2 = realize(gen.perturb(p, 1, 1), S(1), N);
    auto k = konst(N, S(3), ComponentMap::constant(gen.pick(0, 2)));
    CHECK(germ_equal(germ_compose(k, p1), germ_compose(k, p2)).kind == V::Equal);
    CHECK(germ_equal(germ_compose(germ_identity(N), p1), p2).kind == V::Equal);
  }
}

TEST_CASE("finitely many components never change a verdict") {
  Gen gen;
  for (int i = 0; i < 200; ++i) {
    Seq p = gen.point(), q = gen.point();
    auto p1 = realize(p, S(1), N), q1 = realize(q, S(1), N);
    auto p2 = realize(gen.perturb(p, 1, 1), S(1), N), q2 = realize(gen.perturb(q, 1, 1), S(1), N);
    CHECK(germ_equal(p1, q1).kind == germ_equal(p2, q2).kind);
    auto w1 = nonstandard_point_certificate(p1), w2 = nonstandard_point_certificate(p2);
    CHECK(w1.standard == w2.standard);
    CHECK(w1.certificate.has_value() == w2.certificate.has_value());
  }
  for (long a = 0; a < 5; ++a)
    for (auto d : {S(2), S(3), GermObject::card_growth(), N}) {
      auto e = d;
      e.exceptions = {{0, SetDesc::finite(a)}, {4, SetDesc::naturals()}, {a + 1, SetDesc::finite(7)}};
      CHECK(is_constant_iso(d, a).verdict == is_constant_iso(e, a).verdict);
    }
}

TEST_CASE("constant isomorphism") {
  auto yes = is_constant_iso(S(2), 2);
  REQUIRE(yes.verdict == ConstantIso::Verdict::Yes);
  REQUIRE(yes.iso);
  CHECK(germ_equal(*yes.iso, germ_identity(S(2))).kind == V::Equal);

  auto with_exception = S(2);
  with_exception.exceptions[0] = SetDesc::finite(1);
  CHECK(is_constant_iso(with_exception, 2).verdict == ConstantIso::Verdict::Yes);

  auto no = is_constant_iso(GermObject::card_growth(), 3);
  CHECK(no.verdict == ConstantIso::Verdict::No);
  REQUIRE(no.certificate);
  CHECK(no.certificate->claim == NonStandardCertificate::Claim::NotIsomorphicToAnyConstant);
  CHECK(replay(*no.certificate, 20));

  for (long a : SetPower(1).probe_sizes())
    CHECK(is_constant_iso(GermObject::card_growth(), a).verdict == ConstantIso::Verdict::No);
  CHECK(is_constant_iso(S(2), 3).verdict == ConstantIso::Verdict::No);
  CHECK(is_constant_iso(N, 3).verdict == ConstantIso::Verdict::No);
}

TEST_CASE("standard and non-standard points") {
  CHECK(nonstandard_point_certificate(germ_point(N, 5)).standard == 5);
  auto p = germ_point(N, 5);
  p.exceptions[2] = ComponentMap::of({7});
  CHECK(nonstandard_point_certificate(p).standard == 5);

  auto w = nonstandard_point_certificate(identity_point());
  CHECK_FALSE(w.standard);
  REQUIRE(w.certificate);
  CHECK(w.certificate->claim == NonStandardCertificate::Claim::NotEqualToAnyStandard);
  CHECK(replay(*w.certificate, 100));
  for (long k = 0; k <= 100; ++k) CHECK(germ_equal(identity_point(), germ_point(N, k)).kind == V::Distinct);

  // A certificate about a standard point does not replay.
  NonStandardCertificate bogus{germ_point(N, 3), NonStandardCertificate::Claim::NotEqualToAnyStandard, ""};
  CHECK_FALSE(replay(bogus, 10));
  CHECK_THROWS_AS(nonstandard_point_certificate(germ_point(S(4), 1)), Error);
}

TEST_CASE("strict initial objects") {
  SetPower sets(1);
  CHECK(check_strict_initial(sets, sets.initial()).ok);

  auto e = fx::square();
  CHECK(check_strict_initial(*e, e->obj("(0,0)")).ok);

  auto z = fx::zero_object();
  auto r = check_strict_initial(*z, z->obj("0"));
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("finite products and coproducts are componentwise") {
  auto a = S(2), b = S(1);
  a.exceptions[3] = SetDesc::finite(4);
  auto sum = finite_coproduct({a, b});
  CHECK(sum.object.tail_at(10) == SetDesc::finite(3));
  CHECK(sum.object.at(3) == SetDesc::finite(5));
  CHECK(sum.legs[1].constant == ComponentMap::of({2}));
  CHECK(sum.legs[1].at(3) == ComponentMap::of({4}));
  for (const auto& l : sum.legs) CHECK(validate(l).empty());
  CHECK(check_finite_coproduct(sum));

  auto prod = finite_product({S(2), S(3)});
  CHECK(prod.object.constant == SetDesc::finite(6));
  for (const auto& l : prod.legs) CHECK(validate(l).empty());
  CHECK(check_finite_product(prod));
  CHECK(check_finite_product(finite_product({S(2), S(2), S(1)})));

  // Dropping a leg breaks uniqueness of mediators out of the coproduct.
  auto broken = sum;
  broken.legs.pop_back();
  CHECK_FALSE(check_finite_coproduct(broken));

  CHECK_THROWS_AS(finite_coproduct({GermObject::card_growth()}), Error);
  CHECK_THROWS_AS(finite_product({N}), Error);
}

TEST_CASE("coproduct failure evidence for the constant family of points") {
  GermFamily family{S(1), std::nullopt};
  auto cocone = [](long) { return germ_point(S(1), 0); };
  auto e = coproduct_failure_evidence(family, S(1), cocone);
  CHECK(e.tag == "bounded evidence");
  REQUIRE(e.mediators.size() == 2);
  CHECK(germ_equal(e.mediators[0], e.mediators[1]).kind == V::Distinct);
  CHECK(e.verdict == CoproductEvidence::Verdict::NoMediator);
  // Each mediator satisfies the leg that forced it.
  for (int i = 0; i < 2; ++i) {
    long k = e.forcing_legs[i];
    CHECK(germ_equal(germ_compose(e.mediators[i], e.candidate_legs[k]), e.competing_legs[k]).kind == V::Equal);
  }
  CHECK(replay(e));
  auto again = coproduct_failure_evidence(family, S(1), cocone);
  CHECK(to_string(again.mediators[0]) == to_string(e.mediators[0]));
  CHECK(to_string(again.mediators[1]) == to_string(e.mediators[1]));

  // A larger candidate with unused elements admits two mediators outright.
  auto wide = coproduct_failure_evidence(family, S(3), [](long k) { return germ_point(S(3), k % 2); },
                                         [](long) { return germ_point(GermObject::card_growth(), 0); });
  CHECK(wide.verdict == CoproductEvidence::Verdict::NonUniqueMediator);
  CHECK(replay(wide));

  auto tampered = e;
  std::swap(tampered.mediators[0], tampered.mediators[1]);
  CHECK_FALSE(replay(tampered));
}

TEST_CASE("finite families and negligible candidate exceptions") {
  auto two = coproduct_failure_evidence({S(1), 2}, S(2), [](long k) { return germ_point(S(2), k); });
  CHECK(two.verdict == CoproductEvidence::Verdict::FiniteCoproduct);
  REQUIRE(two.coproduct);
  CHECK(two.coproduct->object.constant == SetDesc::finite(2));
  CHECK(replay(two));

  auto candidate = S(1);
  candidate.exceptions[4] = SetDesc::finite(2);
  auto flat = [](long) { return germ_point(GermObject::card_growth(), 0); };
  auto cocone = [candidate](long) { return germ_point(candidate, 0); };
  auto e = coproduct_failure_evidence({S(1), std::nullopt}, candidate, cocone, flat);
  CHECK(e.verdict == CoproductEvidence::Verdict::MediatorExists);
  CHECK(replay(e));

  CHECK_THROWS_AS(coproduct_failure_evidence({S(2), std::nullopt}, S(1), cocone), Error);
  CHECK_THROWS_AS(coproduct_failure_evidence({S(1), std::nullopt}, GermObject::card_growth(), cocone), Error);
}

TEST_CASE("validation") {
  CHECK(validate(identity_point()).empty());
  CHECK(validate(germ_point(GermObject::card_growth(), 5)).empty());
  CHECK_FALSE(validate(konst(S(2), S(2), ComponentMap::of({0, 3}))).empty());
  CHECK_FALSE(validate(konst(S(2), S(2), ComponentMap::identity(), {{1, ComponentMap::of({0})}})).empty());
}

TEST_CASE("literals") {
  auto x = parse_germ_object("germ obj { 0: S3, 1: S1 } tail const S2");
  CHECK(x.at(0) == SetDesc::finite(3));
  CHECK(x.at(1) == SetDesc::finite(1));
  CHECK(x.at(9) == SetDesc::finite(2));
  CHECK(to_string(x) == "germ obj { 0: S3, 1: S1 } tail const S2");

  auto g = parse_germ_object("germ obj {} tail cardgrowth");
  CHECK(g.tail == GermObject::Tail::CardGrowth);
  CHECK(to_string(g) == "germ obj {} tail cardgrowth");
  CHECK(parse_germ_object("germ obj {} tail const SN").constant == SetDesc::naturals());

  auto p = parse_germ_morphism("germ mor { 2: point 7 } tail identitymap", S(1), N);
  CHECK(germ_equal(p, identity_point()).kind == V::Equal);
  CHECK(to_string(p) == "germ mor { 2: [7] } tail identitymap");
  auto f = parse_germ_morphism("germ mor { 0: [1 1] } tail const [1 0]", S(2), S(2));
  CHECK(f.constant == ComponentMap::of({1, 0}));
  CHECK(parse_germ_morphism("germ mor {} tail const const 4", N, N).constant == ComponentMap::constant(4));
  CHECK(parse_germ_morphism("germ mor {} tail const id", N, N).constant == ComponentMap::identity());

  for (const char* bad : {"germ obj { 0 S3 } tail const S2", "germ obj {} tail const T2", "germ obj {} tail",
                          "germ obj {} tail const S2 extra", "germ mor {} tail const [1 x]"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(bad[5] == 'o' ? (void)parse_germ_object(bad) : (void)parse_germ_morphism(bad, S(2), S(2)),
                    Error);
  }
}
