#include "catquot/fixtures.hpp"

#include "catquot/constructions.hpp"

namespace catquot::fixtures {

namespace {

CategoryRef poset(const std::string& name, int n, const std::function<bool(int, int)>& leq) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return share(poset_category(name, names, leq));
}

}  // namespace

CategoryRef walking_arrow() {
  CategoryBuilder b("A");
  Obj x = b.add_object("0"), y = b.add_object("1");
  b.add_morphism("f", x, y);
  return share(std::move(b).build());
}

CategoryRef square() {
  auto a = walking_arrow();
  return product_category(a, a, "E").cat;
}

CategoryRef terminal() { return share(terminal_category("1")); }

CategoryRef z2() {
  CategoryBuilder b("Z2");
  Obj x = b.add_object("*");
  Mor s = b.add_morphism("s", x, x);
  b.set_composite(s, s, b.identity(x));
  return share(std::move(b).build());
}

CategoryRef parallel_pair() {
  CategoryBuilder b("Par");
  Obj a = b.add_object("a"), c = b.add_object("b");
  b.add_morphism("f", a, c);
  b.add_morphism("g", a, c);
  return share(std::move(b).build());
}

CategoryRef zero_object() {
  CategoryBuilder b("Zero");
  Obj z = b.add_object("0"), x = b.add_object("X");
  Mor p = b.add_morphism("p", x, z);
  Mor q = b.add_morphism("q", z, x);
  Mor k = b.add_morphism("z", x, x);
  b.set_composite(p, q, b.identity(z));
  b.set_composite(q, p, k);
  b.set_composite(k, k, k);
  b.set_composite(k, q, q);
  b.set_composite(p, k, p);
  return share(std::move(b).build());
}

CategoryRef discrete_pair() {
  CategoryBuilder b("Disc2");
  b.add_object("x");
  b.add_object("y");
  return share(std::move(b).build());
}

CategoryRef chain(int n) {
  return poset("Chain" + std::to_string(n), n, [](int i, int j) { return i <= j; });
}

CategoryRef grid(int a, int b) {
  std::vector<std::string> names;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) names.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  return share(poset_category("Grid" + std::to_string(a) + "x" + std::to_string(b), names,
                              [b](int x, int y) { return x / b <= y / b && x % b <= y % b; }));
}

CategoryRef cube() {
  return poset("Cube", 8, [](int i, int j) { return (i & j) == i; });
}

CategoryRef diamond() {
  // 0 bottom, 1..3 atoms, 4 top
  return poset("M3", 5, [](int i, int j) { return i == j || i == 0 || j == 4; });
}

CategoryRef pentagon() {
  // 0 < 1 < 2 < 4, 0 < 3 < 4
  return poset("N5", 5, [](int i, int j) {
    if (i == j || i == 0 || j == 4) return true;
    return i == 1 && j == 2;
  });
}

CategoryRef doubled_top() {
  return share(poset_category("A2", {"0", "1", "1'"}, [](int i, int j) { return i == 0 || j != 0; }));
}

CategoryRef square_with_bottom() {
  return share(poset_category("E_", {"b", "(0,0)", "(0,1)", "(1,0)", "(1,1)"}, [](int i, int j) {
    if (i == 0) return true;
    if (j == 0) return false;
    int x = i - 1, y = j - 1;
    return (x & y) == x;
  }));
}

std::vector<CategoryRef> corpus() {
  return {terminal(), walking_arrow(), chain(3), chain(4), square(), grid(2, 3),
          cube(), diamond(), pentagon(), doubled_top(), square_with_bottom()};
}

std::vector<std::string> phi01() { return {"(1,1)", "(0,1)"}; }

}  // namespace catquot::fixtures
