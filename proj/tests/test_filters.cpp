#include <random>

#include "catquot/filters.hpp"
#include "catquot/fixtures.hpp"
#include "catquot/set_power.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace catquot;
namespace fx = catquot::fixtures;

namespace {

std::vector<Obj> objs(const FinCategory& c, const std::vector<std::string>& names) {
  std::vector<Obj> out;
  for (const auto& n : names) out.push_back(c.obj(n));
  return out;
}

bool has_kind(const std::vector<Violation>& vs, ErrorKind k) {
  for (const auto& v : vs)
    if (v.kind == k) return true;
  return false;
}

}  // namespace

TEST_CASE("subterminal posets") {
  auto e = fx::square();
  auto p = subterminal_poset(*e);
  CHECK(p.size() == 4);
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) {
      // product order on the names (a,b)
      const auto& x = e->obj_name(p.elements[i]);
      const auto& y = e->obj_name(p.elements[j]);
      CHECK(p.leq(i, j) == (x[1] <= y[1] && x[3] <= y[3]));
    }

  SetPower pset(1);
  auto ps = subterminal_poset(pset);
  REQUIRE(ps.size() == 2);
  CHECK(ps.elements[0].sizes[0] == 0);
  CHECK(ps.elements[1].sizes[0] == 1);
  CHECK(ps.leq(0, 1));
  CHECK_FALSE(ps.leq(1, 0));

  // Oracle: the only object of Z2 has a two-element endo-hom.
  auto z = fx::z2();
  CHECK(z->hom(Obj{0}, Obj{0}).size() == 2);
  CHECK(subterminal_poset(*z).size() == 0);
}

TEST_CASE("validate filters") {
  auto e = fx::square();
  auto p = subterminal_poset(*e);
  auto good = validate_filter(*e, p, objs(*e, fx::phi01()));
  CHECK(good.ok());

  auto bad = validate_filter(*e, p, objs(*e, {"(0,1)", "(1,0)"}));
  CHECK_FALSE(bad.ok());
  CHECK(has_kind(bad.violations, ErrorKind::NotUpwardClosed));
  CHECK(has_kind(bad.violations, ErrorKind::NotDirected));

  CHECK(validate_filter(*e, p, {}).violations.at(0).kind == ErrorKind::Empty);

  SetPower pset(1);
  auto pp = subterminal_poset(pset);
  auto top = validate_filter(pset, pp, {pset.object({1})});
  REQUIRE(top.ok());
  CHECK(filter_minimum(*top.filter)->sizes[0] == 1);

  auto notsub = validate_filter(pset, pp, {pset.object({2})});
  CHECK(has_kind(notsub.violations, ErrorKind::NotSubterminal));
}

TEST_CASE("filter minimum") {
  auto e = fx::square();
  auto p = subterminal_poset(*e);
  auto f = validate_filter(*e, p, objs(*e, fx::phi01()));
  REQUIRE(f.ok());
  CHECK(e->obj_name(*filter_minimum(*f.filter)) == "(0,1)");
  auto fr = frechet_filter<FinCategory>("N");
  CHECK_THROWS_AS(filter_minimum(fr), Error);
}

TEST_CASE("filter validation agrees with the order-theoretic oracle on every subset") {
  for (const auto& c : fx::corpus()) {
    auto p = subterminal_poset(*c);
    const int n = p.size();
    if (n > 8) continue;
    oracle::Poset po{n, [&](int a, int b) { return p.leq(a, b); }};
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<Obj> s;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) s.push_back(p.elements[i]);
      bool up = true, directed = true;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if ((mask >> x & 1) && po.leq(x, y) && !(mask >> y & 1)) up = false;
          if ((mask >> x & 1) && (mask >> y & 1)) {
            bool lower = false;
            for (int z = 0; z < n; ++z) lower = lower || ((mask >> z & 1) && po.leq(z, x) && po.leq(z, y));
            directed = directed && lower;
          }
        }
      bool expected = mask != 0 && up && directed;
      auto r = validate_filter(*c, p, s);
      CAPTURE(c->name());
      CAPTURE(mask);
      REQUIRE(r.ok() == expected);
      if (!r.ok()) continue;
      // contains the top; minimum is a member below every member
      auto top = p.top();
      REQUIRE(top);
      CHECK(r.filter->contains(*top));
      auto m = filter_minimum(*r.filter);
      REQUIRE(m);
      int mi = p.index_of(*c, *m);
      CHECK(r.filter->contains(mi));
      for (int k : r.filter->members) CHECK(p.leq(mi, k));
    }
  }
}

TEST_CASE("cofinite algebra examples") {
  auto a = CofiniteSet::cofinite({0, 3});
  auto b = CofiniteSet::cofinite({1});
  CHECK(a.intersect(b) == CofiniteSet::cofinite({0, 1, 3}));
  CHECK_FALSE(CofiniteSet::finite({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}).is_in_frechet());
  CHECK_FALSE(CofiniteSet::cofinite({7}).member(7));
  CHECK(CofiniteSet::cofinite({7}).member(8));
}

TEST_CASE("cofinite algebra satisfies lattice laws on random sets") {
  std::mt19937 rng(11);
  auto random_set = [&] {
    std::set<long> s;
    int k = std::uniform_int_distribution<int>(0, 5)(rng);
    for (int i = 0; i < k; ++i) s.insert(std::uniform_int_distribution<long>(0, 12)(rng));
    return rng() % 2 ? CofiniteSet::finite(s) : CofiniteSet::cofinite(s);
  };
  for (int round = 0; round < 500; ++round) {
    auto x = random_set(), y = random_set(), z = random_set();
    CHECK(x.intersect(y) == y.intersect(x));
    CHECK(x.unite(y) == y.unite(x));
    CHECK(x.intersect(y.intersect(z)) == x.intersect(y).intersect(z));
    CHECK(x.unite(x.intersect(y)) == x);
    CHECK(x.intersect(x.unite(y)) == x);
    CHECK(x.intersect(y.unite(z)) == x.intersect(y).unite(x.intersect(z)));
    CHECK(x.intersect(y).subset(x));
    for (long n = 0; n < 16; ++n) {
      CHECK(x.intersect(y).member(n) == (x.member(n) && y.member(n)));
      CHECK(x.unite(y).member(n) == (x.member(n) || y.member(n)));
    }
    // the Frechet filter is proper and closed under intersection
    if (x.polarity() == CofiniteSet::Polarity::Finite) CHECK_FALSE(x.is_in_frechet());
    if (x.is_in_frechet() && y.is_in_frechet()) CHECK(x.intersect(y).is_in_frechet());
  }
}
