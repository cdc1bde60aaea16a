#include "catquot/fixtures.hpp"
#include "catquot/model.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace catquot;
namespace fx = catquot::fixtures;

namespace {

// Composition data copied out so the oracle indices match morphism indices.
oracle::Table table_of(const FinCategory& c) {
  oracle::Table t;
  t.objects = c.object_count();
  for (Mor f : c.morphisms()) {
    t.src.push_back(c.src(f).v);
    t.tgt.push_back(c.tgt(f).v);
    t.is_id.push_back(c.is_identity(f));
  }
  for (Mor f : c.morphisms())
    for (Mor g : c.out(c.tgt(f))) t.comp[{g.v, f.v}] = c.compose(g, f).v;
  return t;
}

std::string str(const oracle::Bits& b) {
  std::string s;
  for (bool x : b) s += x ? '1' : '0';
  return s;
}

MorClass with(const FinCategory& c, std::initializer_list<Mor> ms) {
  auto s = identities(c);
  for (Mor m : ms) s.set(m.v);
  return s;
}

Mor arrow(const FinCategory& c, const std::string& x, const std::string& y) {
  auto h = c.hom(c.obj(x), c.obj(y));
  REQUIRE(h.size() == 1);
  return h.front();
}

std::vector<Obj> up(const FinCategory& c, Obj u) {
  std::vector<Obj> out;
  for (Obj v : c.objects())
    if (!c.hom(u, v).empty()) out.push_back(v);
  return out;
}

std::vector<Obj> objs(const FinCategory& c, const std::vector<std::string>& names) {
  std::vector<Obj> out;
  for (const auto& n : names) out.push_back(c.obj(n));
  return out;
}

Filter<FinCategory> filter(const FinCategory& c, const std::vector<Obj>& xs) {
  auto r = validate_filter(c, subterminal_poset(c), xs);
  REQUIRE(r.ok());
  return *r.filter;
}

}  // namespace

TEST_CASE("definitional oracle on the walking arrow") {
  auto a = fx::walking_arrow();
  // morphism order: id_0, id_1, f
  REQUIRE(a->is_identity(Mor{0}));
  REQUIRE(a->is_identity(Mor{1}));
  auto ms = oracle::model_structures(table_of(*a));
  REQUIRE(ms.size() == 3);
  // frozen: (F, C, W)
  CHECK(str(ms[0].fib) == "110");
  CHECK(str(ms[0].cof) == "111");
  CHECK(str(ms[0].weq) == "111");
  CHECK(str(ms[1].fib) == "111");
  CHECK(str(ms[1].cof) == "110");
  CHECK(str(ms[1].weq) == "111");
  CHECK(str(ms[2].fib) == "111");
  CHECK(str(ms[2].cof) == "111");
  CHECK(str(ms[2].weq) == "110");
}

TEST_CASE("enumeration agrees with the oracle") {
  for (const auto& c : {fx::terminal(), fx::walking_arrow(), fx::chain(3), fx::doubled_top()}) {
    CAPTURE(c->name());
    auto expected = oracle::model_structures(table_of(*c));
    auto got = enumerate_model_structures(c);
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(bits(got[k].fib) == str(expected[k].fib));
      CHECK(bits(got[k].cof) == str(expected[k].cof));
      CHECK(bits(got[k].weq) == str(expected[k].weq));
    }
  }
  CHECK(enumerate_model_structures(fx::terminal()).size() == 1);
}

TEST_CASE("enumeration needs finite limits and colimits") {
  try {
    enumerate_model_structures(fx::parallel_pair());
    FAIL("expected FLCRequired");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FLCRequired);
  }
  SearchBudget tiny(3);
  CHECK_THROWS_AS(enumerate_model_structures(fx::square(), &tiny), Error);
}

TEST_CASE("lifting") {
  auto a = fx::walking_arrow();
  Mor f = a->mor("f");
  CHECK(has_lifting(*a, f, f) == false);  // the square id_0, id_1 has no diagonal
  CHECK(has_lifting(*a, a->id(a->obj("0")), f));

  SetPower pset(1);
  auto s0 = pset.uniform(0), s1 = pset.uniform(1), s2 = pset.uniform(2);
  auto empty_in = pset.hom(s0, s1).front();
  auto collapse = pset.hom(s2, s1).front();
  CHECK(has_lifting(pset, empty_in, collapse));
  auto inj = pset.morphism(s1, s2, {{0}});
  CHECK(has_lifting(pset, inj, pset.id(s1)));

  // Exhaustive table against the generic check.
  LiftingTable t(*a);
  for (Mor i : a->morphisms())
    for (Mor p : a->morphisms()) CHECK(t.lifts(i, p) == table_of(*a).lifts(i.v, p.v));
}

TEST_CASE("weak factorization systems") {
  auto a = fx::walking_arrow();
  const auto& c = *a;
  CHECK(check_wfs(c, all_morphisms(c), isomorphisms(c)).ok());
  CHECK(check_wfs(c, isomorphisms(c), all_morphisms(c)).ok());
  auto r = check_wfs(c, identities(c), identities(c));
  REQUIRE_FALSE(r.ok());
  CHECK(r.first_failure()->name == "factorization");
  CHECK(r.first_failure()->witness.find("f") != std::string::npos);
}

TEST_CASE("model structure examples") {
  auto e = fx::square();
  const auto& c = *e;
  ModelData m{e, all_morphisms(c), all_morphisms(c), isomorphisms(c)};
  CHECK(check_model_structure(m).ok());
  CHECK(check_model_structure({e, isomorphisms(c), all_morphisms(c), all_morphisms(c)}).ok());

  auto total = check_model_structure({e, all_morphisms(c), all_morphisms(c), all_morphisms(c)});
  REQUIRE_FALSE(total.ok());
  CHECK(total.first_failure()->name.rfind("wfs", 0) == 0);

  auto a = fx::walking_arrow();
  auto bad = check_model_structure({a, with(*a, {a->mor("f")}), identities(*a), isomorphisms(*a)});
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.first_failure()->name.rfind("wfs", 0) == 0);
  CHECK_FALSE(bad.violations().empty());

  CHECK_THROWS_AS(check_model_structure({fx::parallel_pair(), {}, {}, {}}), Error);
}

TEST_CASE("model filters") {
  auto e = fx::square();
  const auto& c = *e;
  auto phi = filter(c, objs(c, fx::phi01()));
  ModelData m{e, all_morphisms(c), all_morphisms(c), isomorphisms(c)};
  auto cert = check_model_filter(m, phi);
  CHECK(cert.fibrant.size() == 2);
  CHECK_FALSE(cert.stable.empty());
  for (const auto& s : cert.stable) CHECK(m.weq.test(s.f.v) <= m.weq.test(s.product.v));

  try {
    check_model_filter({e, identities(c), all_morphisms(c), isomorphisms(c)}, phi);
    FAIL("expected NotFibrant");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotFibrant);
    CHECK(err.detail() == "(0,1)");
  }

  // (1,0) -> (1,1) times (0,1) is (0,0) -> (0,1); drop it from cof.
  auto cof = all_morphisms(c);
  cof.reset(arrow(c, "(0,0)", "(0,1)").v);
  try {
    check_model_filter({e, all_morphisms(c), cof, isomorphisms(c)}, phi);
    FAIL("expected NotStable");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotStable);
  }
}

TEST_CASE("quotient model structure examples") {
  auto e = fx::square();
  const auto& c = *e;
  ModelData m{e, all_morphisms(c), all_morphisms(c), isomorphisms(c)};
  auto qm = quotient_model_structure(m, objs(c, fx::phi01()));
  CHECK(qm.report.ok());
  CHECK(qm.model.weq == isomorphisms(qm.quotient.category()));

  auto one = objs(c, {"(1,1)"});
  auto triv = quotient_model_structure(m, one);
  for (Mor f : c.morphisms()) {
    Mor pf = triv.quotient.projection(f);
    CHECK(triv.model.fib.test(pf.v) == m.fib.test(f.v));
    CHECK(triv.model.cof.test(pf.v) == m.cof.test(f.v));
    CHECK(triv.model.weq.test(pf.v) == m.weq.test(f.v));
  }

  ModelData total_w{e, all_morphisms(c), isomorphisms(c), all_morphisms(c)};
  REQUIRE(check_model_structure(total_w).ok());
  auto qw = quotient_model_structure(total_w, objs(c, fx::phi01()));
  CHECK(qw.model.weq == all_morphisms(qw.quotient.category()));
}

TEST_CASE("right properness") {
  auto e = fx::square();
  const auto& c = *e;
  CHECK(check_right_properness({e, all_morphisms(c), all_morphisms(c), isomorphisms(c)}).ok);
  CHECK(check_right_properness({e, all_morphisms(c), all_morphisms(c), all_morphisms(c)}).ok);
  // (0,1) -> (1,1) pulled back along (1,0) -> (1,1) is (0,0) -> (1,0).
  auto w = with(c, {arrow(c, "(0,1)", "(1,1)")});
  auto v = check_right_properness({e, all_morphisms(c), all_morphisms(c), w});
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.witness.empty());
}

TEST_CASE("transfer across every corpus model filter") {
  int transferred = 0;
  for (const auto& c : fx::corpus()) {
    if (c->morphism_count() > 20) continue;  // the cube runs in the acceptance suite
    CAPTURE(c->name());
    for (const auto& m : enumerate_model_structures(c)) {
      CHECK(check_model_structure(m).ok());
      for (Obj u : c->objects()) {
        auto phi = filter(*c, up(*c, u));
        try {
          check_model_filter(m, phi);
        } catch (const Error& err) {
          CHECK((err.kind() == ErrorKind::NotFibrant || err.kind() == ErrorKind::NotStable));
          continue;
        }
        auto qm = quotient_model_structure(m, phi);
        ++transferred;
        const auto& q = qm.quotient;
        CHECK(qm.report.ok());
        for (Mor f : c->morphisms()) {
          Mor pf = q.projection(f);
          if (m.fib.test(f.v)) CHECK(qm.model.fib.test(pf.v));
          if (m.cof.test(f.v)) CHECK(qm.model.cof.test(pf.v));
          if (m.weq.test(f.v)) CHECK(qm.model.weq.test(pf.v));
        }
        if (check_right_properness(m).ok) CHECK(check_right_properness(qm.model).ok);
        if (check_cim(m).ok) CHECK(check_cim(qm.model).ok);
        if (check_cem(m).ok) CHECK(check_cem(qm.model).ok);
        if (check_tcp(m).ok) CHECK(check_tcp(qm.model).ok);
        if (check_cl(m).ok) CHECK(check_cl(qm.model).ok);
        if (check_fe(m).ok) CHECK(check_fe(qm.model).ok);
      }
    }
  }
  CHECK(transferred > 0);
}
