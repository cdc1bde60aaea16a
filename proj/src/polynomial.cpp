#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "catquot/comprehension.hpp"
#include "catquot/generic.hpp"

namespace catquot {

SetPower::Mor polynomial_apply(const SetPower& c, const PolynomialTriple& t, const SetPower::Mor& x) {
  if (!c.same(t.f.src, t.g.src) || !c.same(t.g.tgt, t.h.src) || !c.same(t.f.tgt, t.h.tgt) ||
      !c.same(x.tgt, t.f.tgt))
    throw Error(ErrorKind::MismatchedEndpoints, "polynomial triple and argument do not fit");
  auto pulled = c.limit(cospan_diagram(c, t.f, x));
  auto pi = dependent_product(c, t.g, pulled.legs[0]);
  return c.compose(t.h, pi.structure);
}

namespace {

int power(int base, int exp) {
  int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

int Polynomial::size(int n) const {
  int total = 0;
  for (int a : arity) total += power(n, a);
  return total;
}

std::vector<std::pair<int, std::vector<int>>> Polynomial::elements(int n) const {
  std::vector<std::pair<int, std::vector<int>>> out;
  for (std::size_t b = 0; b < arity.size(); ++b) {
    const int count = power(n, arity[b]);
    for (int code = 0; code < count; ++code) {
      std::vector<int> xs(arity[b]);
      for (int j = arity[b] - 1, r = code; j >= 0; --j, r /= n) xs[j] = r % n;
      out.emplace_back(static_cast<int>(b), std::move(xs));
    }
  }
  return out;
}

int Polynomial::index(int n, int shape, const std::vector<int>& children) const {
  int offset = 0;
  for (int b = 0; b < shape; ++b) offset += power(n, arity[b]);
  int code = 0;
  for (int x : children) code = code * n + x;
  return offset + code;
}

std::vector<int> Polynomial::map(int n, int m, const std::vector<int>& h) const {
  std::vector<int> out;
  for (const auto& [b, xs] : elements(n)) {
    std::vector<int> ys;
    for (int x : xs) ys.push_back(h[x]);
    out.push_back(index(m, b, ys));
  }
  return out;
}

Polynomial polynomial_of(const PolynomialTriple& t) {
  if (t.h.tgt.sizes.size() != 1 || t.h.tgt.sizes[0] != 1 || t.f.tgt.sizes[0] != 1)
    throw Error(ErrorKind::MismatchedEndpoints, "endofunctor of Set needs C = 1");
  Polynomial p;
  p.arity.assign(t.g.tgt.sizes[0], 0);
  for (int b : t.g.maps[0]) ++p.arity[b];
  return p;
}

namespace {

using MapKey = std::tuple<int, int, std::vector<int>>;

std::vector<std::vector<int>> all_maps(int n, int m) {
  std::vector<std::vector<int>> out;
  if (n > 0 && m == 0) return out;
  const int count = power(m, n);
  for (int code = 0; code < count; ++code) {
    std::vector<int> h(n);
    for (int j = n - 1, r = code; j >= 0; --j, r /= m) h[j] = r % m;
    out.push_back(std::move(h));
  }
  return out;
}

std::string show(const std::vector<int>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "]";
}

// Category on the given objects whose morphisms are the maps accepted by
// hom_ok, keyed by endpoints and underlying map.
CategoryRef map_category(const std::string& name, const std::vector<int>& carrier,
                         const std::vector<std::string>& names,
                         const std::function<bool(int, int, const std::vector<int>&)>& hom_ok,
                         std::vector<std::vector<int>>& underlying) {
  KeyedBuilder<MapKey> kb(name);
  const int n = static_cast<int>(carrier.size());
  for (int i = 0; i < n; ++i) kb.object(names[i]);
  int counter = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (auto& h : all_maps(carrier[i], carrier[j])) {
        if (!hom_ok(i, j, h)) continue;
        bool identity = i == j;
        for (int x = 0; x < carrier[i] && identity; ++x) identity = h[x] == x;
        if (identity)
          kb.identity(Obj{i}, {i, j, h});
        else
          kb.morphism("h" + std::to_string(counter++), Obj{i}, Obj{j}, {i, j, h});
      }
  underlying.clear();
  for (const auto& k : kb.keys()) underlying.push_back(std::get<2>(k));
  return share(std::move(kb).build([](const MapKey& g, const MapKey& f) {
    std::vector<int> h;
    for (int x : std::get<2>(f)) h.push_back(std::get<2>(g)[x]);
    return MapKey{std::get<0>(f), std::get<1>(g), h};
  }));
}

}  // namespace

AlgebraCategory endofunctor_algebras(const Polynomial& p, int max_carrier) {
  AlgebraCategory out;
  std::vector<int> carrier;
  std::vector<std::string> names;
  for (int n = 0; n <= max_carrier; ++n)
    for (auto& s : all_maps(p.size(n), n)) {
      names.push_back("S" + std::to_string(n) + show(s));
      carrier.push_back(n);
      out.algebras.push_back({n, std::move(s)});
    }
  const auto& algs = out.algebras;
  out.cat = map_category(
      "Alg", carrier, names,
      [&](int i, int j, const std::vector<int>& h) {
        const auto& a = algs[i];
        const auto& b = algs[j];
        const auto ph = p.map(a.carrier, b.carrier, h);
        for (std::size_t e = 0; e < a.structure.size(); ++e)
          if (h[a.structure[e]] != b.structure[ph[e]]) return false;
        return true;
      },
      out.underlying);
  return out;
}

InitialAlgebraSearch initial_algebra_search(const Polynomial& p, int max_carrier) {
  auto algs = endofunctor_algebras(p, max_carrier);
  const auto& c = *algs.cat;
  for (Obj x : c.objects()) {
    std::vector<int> witnesses;
    for (Obj y : c.objects()) {
      auto h = c.hom(x, y);
      if (h.size() != 1) break;
      witnesses.push_back(h.front().v);
    }
    if (witnesses.size() == static_cast<std::size_t>(c.object_count())) return {algs.algebras[x.v], witnesses};
  }
  return {};
}

bool Term::operator==(const Term& o) const {
  return leaf == o.leaf && shape == o.shape && children == o.children;
}

bool Term::operator<(const Term& o) const {
  if (leaf != o.leaf) return leaf < o.leaf;
  if (shape != o.shape) return shape < o.shape;
  return std::lexicographical_compare(children.begin(), children.end(), o.children.begin(), o.children.end());
}

std::vector<Term> terms_up_to(const Polynomial& p, int n, int depth) {
  std::vector<Term> leaves;
  for (int x = 0; x < n; ++x) leaves.push_back(Term{x, -1, {}});
  std::vector<Term> level = leaves;
  for (int d = 1; d <= depth; ++d) {
    std::vector<Term> next = leaves;
    const int k = static_cast<int>(level.size());
    for (std::size_t b = 0; b < p.arity.size(); ++b) {
      const int count = power(k, p.arity[b]);
      for (int code = 0; code < count; ++code) {
        Term t{-1, static_cast<int>(b), std::vector<Term>(p.arity[b])};
        for (int j = p.arity[b] - 1, r = code; j >= 0; --j, r /= k) t.children[j] = level[r % k];
        next.push_back(std::move(t));
      }
    }
    level = std::move(next);
  }
  return level;
}

namespace {

Term layer(int shape, const std::vector<int>& children) {
  Term t{-1, shape, {}};
  for (int x : children) t.children.push_back(Term{x, -1, {}});
  return t;
}

Term relabel(const Term& t, const std::vector<int>& h) {
  if (t.leaf >= 0) return Term{h[t.leaf], -1, {}};
  Term out{-1, t.shape, {}};
  for (const auto& c : t.children) out.children.push_back(relabel(c, h));
  return out;
}

}  // namespace

LayerEmbedding standard_embedding() { return layer; }

TermAlgebraCategory term_algebras(const Polynomial& p, int max_carrier, int depth) {
  TermAlgebraCategory out;
  std::vector<std::map<Term, int>> position(max_carrier + 1);
  std::vector<std::vector<Term>> terms(max_carrier + 1);
  std::vector<std::string> names;
  for (int n = 0; n <= max_carrier; ++n) {
    terms[n] = terms_up_to(p, n, depth);
    for (std::size_t i = 0; i < terms[n].size(); ++i) position[n].emplace(terms[n][i], static_cast<int>(i));
    const auto elems = p.elements(n);
    // One-layer values are free; leaves are fixed and deeper terms follow
    // from their children. Both laws are then checked on every term.
    for (auto& free : all_maps(p.size(n), n)) {
      std::vector<int> values(terms[n].size(), -1);
      std::function<int(const Term&)> eval = [&](const Term& t) -> int {
        if (t.leaf >= 0) return t.leaf;
        std::vector<int> xs;
        for (const auto& c : t.children) xs.push_back(eval(c));
        return free[p.index(n, t.shape, xs)];
      };
      for (std::size_t i = 0; i < terms[n].size(); ++i) values[i] = eval(terms[n][i]);
      bool lawful = true;
      for (std::size_t i = 0; i < terms[n].size() && lawful; ++i) {
        const auto& t = terms[n][i];
        if (t.leaf >= 0) {
          lawful = values[i] == t.leaf;
          continue;
        }
        std::vector<int> xs;
        for (const auto& c : t.children) xs.push_back(values[position[n].at(c)]);
        lawful = values[i] == values[position[n].at(layer(t.shape, xs))];
      }
      if (!lawful) continue;
      names.push_back("T" + std::to_string(n) + show(free));
      out.carrier.push_back(n);
      out.values.push_back(std::move(values));
    }
  }
  out.cat = map_category(
      "TAlg", out.carrier, names,
      [&](int i, int j, const std::vector<int>& h) {
        const int n = out.carrier[i], m = out.carrier[j];
        for (std::size_t k = 0; k < terms[n].size(); ++k)
          if (h[out.values[i][k]] != out.values[j][position[m].at(relabel(terms[n][k], h))]) return false;
        return true;
      },
      out.underlying);
  return out;
}

Functor restriction_functor(const Polynomial& p, const TermAlgebraCategory& t, const AlgebraCategory& f, int depth,
                            const LayerEmbedding& embed) {
  std::map<Algebra, Obj> alg_at;
  for (std::size_t i = 0; i < f.algebras.size(); ++i) alg_at.emplace(f.algebras[i], Obj{static_cast<int>(i)});
  std::map<std::tuple<int, int, std::vector<int>>, Mor> mor_at;
  for (Mor m : f.cat->morphisms())
    mor_at.emplace(std::tuple{f.cat->src(m).v, f.cat->tgt(m).v, f.underlying[m.v]}, m);

  Functor R{"restrict", t.cat, f.cat, {}, {}};
  std::map<int, std::map<Term, int>> position;
  for (Obj x : t.cat->objects()) {
    const int n = t.carrier[x.v];
    if (!position.count(n)) {
      auto ts = terms_up_to(p, n, depth);
      for (std::size_t i = 0; i < ts.size(); ++i) position[n].emplace(ts[i], static_cast<int>(i));
    }
    Algebra a{n, {}};
    for (const auto& [b, xs] : p.elements(n)) {
      auto it = position[n].find(embed(b, xs));
      if (it == position[n].end()) throw Error(ErrorKind::NotAFunctor, "embedded term beyond the depth bound");
      a.structure.push_back(t.values[x.v][it->second]);
    }
    auto o = alg_at.find(a);
    if (o == alg_at.end()) throw Error(ErrorKind::NotAFunctor, "no algebra for " + t.cat->obj_name(x));
    R.fobj.push_back(o->second);
  }
  for (Mor m : t.cat->morphisms()) {
    auto it = mor_at.find({R(t.cat->src(m)).v, R(t.cat->tgt(m)).v, t.underlying[m.v]});
    if (it == mor_at.end())
      throw Error(ErrorKind::NotAFunctor, t.cat->mor_name(m) + " is not a morphism of restricted algebras");
    R.fmor.push_back(it->second);
  }
  return R;
}

ComparisonVerdict check_algebra_equivalence(const Functor& restriction) { return classify_comparison(restriction); }

}  // namespace catquot
