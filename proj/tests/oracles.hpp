#pragma once

// Brute-force reference computations used by the tests. They work on plain
// tables and relations and share no code with the library algorithms.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

// comp[{g, f}] = g . f over a single object (monoid table).
using MonoidTable = std::map<std::pair<int, int>, int>;

inline std::vector<std::tuple<int, int, int>> non_associative(const MonoidTable& t, int n) {
  std::vector<std::tuple<int, int, int>> bad;
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g)
      for (int f = 0; f < n; ++f)
        if (t.at({h, t.at({g, f})}) != t.at({t.at({h, g}), f})) bad.emplace_back(h, g, f);
  return bad;
}

// A finite poset given by its order relation on 0..n-1.
struct Poset {
  int n;
  std::function<bool(int, int)> leq;

  std::vector<int> lower_bounds(int a, int b) const {
    std::vector<int> out;
    for (int z = 0; z < n; ++z)
      if (leq(z, a) && leq(z, b)) out.push_back(z);
    return out;
  }
  // Greatest element of a set, if any.
  std::optional<int> greatest(const std::vector<int>& s) const {
    for (int z : s) {
      bool top = true;
      for (int w : s) top = top && leq(w, z);
      if (top) return z;
    }
    return std::nullopt;
  }
  std::optional<int> least(const std::vector<int>& s) const {
    for (int z : s) {
      bool bot = true;
      for (int w : s) bot = bot && leq(z, w);
      if (bot) return z;
    }
    return std::nullopt;
  }
  std::optional<int> meet(int a, int b) const { return greatest(lower_bounds(a, b)); }
  std::optional<int> join(int a, int b) const {
    std::vector<int> ub;
    for (int z = 0; z < n; ++z)
      if (leq(a, z) && leq(b, z)) ub.push_back(z);
    return least(ub);
  }
  // Largest z with z /\ a <= b.
  std::optional<int> implication(int a, int b) const {
    std::vector<int> s;
    for (int z = 0; z < n; ++z) {
      auto m = meet(z, a);
      if (m && leq(*m, b)) s.push_back(z);
    }
    return greatest(s);
  }
  bool distributive() const {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          auto bc = join(b, c);
          auto ab = meet(a, b), ac = meet(a, c);
          if (!bc || !ab || !ac) return false;
          auto l = meet(a, *bc);
          auto r = join(*ab, *ac);
          if (!l || !r || !(leq(*l, *r) && leq(*r, *l))) return false;
        }
    return true;
  }
};

// Functions [n] -> [m] as vectors, lexicographic.
inline std::vector<std::vector<int>> functions(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(int)> go = [&](int k) {
    if (k == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < m; ++v) {
      cur[k] = v;
      go(k + 1);
    }
  };
  go(0);
  return out;
}

// A finite category as a bare composition table: morphism k goes src[k] ->
// tgt[k], comp[{g, f}] = g . f for composable pairs.
struct Table {
  int objects = 0;
  std::vector<int> src, tgt;
  std::vector<bool> is_id;
  std::map<std::pair<int, int>, int> comp;

  int size() const { return static_cast<int>(src.size()); }
  int after(int g, int f) const { return comp.at({g, f}); }

  bool lifts(int i, int p) const {
    for (int u = 0; u < size(); ++u) {
      if (src[u] != src[i] || tgt[u] != src[p]) continue;
      for (int v = 0; v < size(); ++v) {
        if (src[v] != tgt[i] || tgt[v] != tgt[p]) continue;
        if (after(p, u) != after(v, i)) continue;
        bool filled = false;
        for (int d = 0; d < size() && !filled; ++d)
          filled = src[d] == tgt[i] && tgt[d] == src[p] && after(d, i) == u && after(p, d) == v;
        if (!filled) return false;
      }
    }
    return true;
  }
};

using Bits = std::vector<bool>;

// Definitional check of a weak factorization system (L, R).
inline bool is_wfs(const Table& t, const Bits& l, const Bits& r) {
  const int n = t.size();
  for (int f = 0; f < n; ++f) {
    bool factors = false;
    for (int a = 0; a < n && !factors; ++a)
      for (int b = 0; b < n && !factors; ++b)
        factors = l[a] && r[b] && t.src[a] == t.src[f] && t.tgt[b] == t.tgt[f] && t.tgt[a] == t.src[b] &&
                  t.after(b, a) == f;
    if (!factors) return false;
  }
  for (int i = 0; i < n; ++i) {
    bool all = true;
    for (int p = 0; p < n; ++p) all = all && (!r[p] || t.lifts(i, p));
    if (all != l[i]) return false;
  }
  for (int p = 0; p < n; ++p) {
    bool all = true;
    for (int i = 0; i < n; ++i) all = all && (!l[i] || t.lifts(i, p));
    if (all != r[p]) return false;
  }
  return true;
}

inline bool has_identities_and_composites(const Table& t, const Bits& s) {
  for (int f = 0; f < t.size(); ++f) {
    if (t.is_id[f] && !s[f]) return false;
    for (int g = 0; g < t.size(); ++g)
      if (s[f] && s[g] && t.tgt[f] == t.src[g] && !s[t.after(g, f)]) return false;
  }
  return true;
}

inline bool two_of_three(const Table& t, const Bits& w) {
  for (int f = 0; f < t.size(); ++f)
    for (int g = 0; g < t.size(); ++g) {
      if (t.tgt[f] != t.src[g]) continue;
      int k = (w[f] ? 1 : 0) + (w[g] ? 1 : 0) + (w[t.after(g, f)] ? 1 : 0);
      if (k == 2) return false;
    }
  return true;
}

struct Triple {
  Bits fib, cof, weq;
  auto operator<=>(const Triple&) const = default;
};

// Every (F, C, W) over all subsets, checked straight from the definition.
inline std::vector<Triple> model_structures(const Table& t) {
  const int n = t.size();
  std::vector<Bits> subsets;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Bits b(n);
    for (int k = 0; k < n; ++k) b[k] = (mask >> k) & 1;
    if (has_identities_and_composites(t, b)) subsets.push_back(b);
  }
  auto meet = [n](const Bits& a, const Bits& b) {
    Bits out(n);
    for (int k = 0; k < n; ++k) out[k] = a[k] && b[k];
    return out;
  };
  std::vector<Triple> out;
  for (const auto& f : subsets)
    for (const auto& c : subsets)
      for (const auto& w : subsets) {
        if (!two_of_three(t, w)) continue;
        if (is_wfs(t, meet(c, w), f) && is_wfs(t, c, meet(f, w))) out.push_back({f, c, w});
      }
  std::sort(out.begin(), out.end());
  return out;
}

// Cartesian morphisms of p : e -> b, given by object and morphism maps,
// straight from the universal property.
inline std::vector<bool> cartesian(const Table& e, const Table& b, const std::vector<int>& po,
                                   const std::vector<int>& pm) {
  std::vector<bool> out;
  for (int phi = 0; phi < e.size(); ++phi) {
    bool ok = true;
    for (int psi = 0; psi < e.size() && ok; ++psi) {
      if (e.tgt[psi] != e.tgt[phi]) continue;
      for (int u = 0; u < b.size() && ok; ++u) {
        if (b.src[u] != po[e.src[psi]] || b.tgt[u] != po[e.src[phi]] || b.after(pm[phi], u) != pm[psi]) continue;
        int n = 0;
        for (int chi = 0; chi < e.size(); ++chi)
          n += e.src[chi] == e.src[psi] && e.tgt[chi] == e.src[phi] && pm[chi] == u && e.after(phi, chi) == psi;
        ok = n == 1;
      }
    }
    out.push_back(ok);
  }
  return out;
}

// |P(X)| over each c for the polynomial f : A -> C, g : A -> B, h : B -> C
// and x : X -> C, by listing every (b, s : A_b -> X) with x . s = f.
inline std::vector<int> polynomial_counts(const std::vector<int>& f, const std::vector<int>& g,
                                          const std::vector<int>& h, int c, const std::vector<int>& x) {
  std::vector<int> out(c, 0);
  for (int b = 0; b < static_cast<int>(h.size()); ++b) {
    std::vector<int> fibre;
    for (int a = 0; a < static_cast<int>(g.size()); ++a)
      if (g[a] == b) fibre.push_back(a);
    for (const auto& s : functions(static_cast<int>(fibre.size()), static_cast<int>(x.size()))) {
      bool over = true;
      for (std::size_t j = 0; j < fibre.size(); ++j) over = over && x[s[j]] == f[fibre[j]];
      if (over) ++out[h[b]];
    }
  }
  return out;
}

// Underlying groupoid of the slice over x: objects are morphisms into x,
// morphisms are invertible w with q . w = p. Returns {objects, morphisms}.
inline std::pair<int, int> slice_groupoid(const Table& t, int x) {
  auto invertible = [&](int w) {
    for (int v = 0; v < t.size(); ++v)
      if (t.src[v] == t.tgt[w] && t.tgt[v] == t.src[w] && t.is_id[t.after(v, w)] && t.is_id[t.after(w, v)])
        return true;
    return false;
  };
  int objects = 0, morphisms = 0;
  for (int p = 0; p < t.size(); ++p) {
    if (t.tgt[p] != x) continue;
    ++objects;
    for (int q = 0; q < t.size(); ++q) {
      if (t.tgt[q] != x) continue;
      for (int w = 0; w < t.size(); ++w)
        if (t.src[w] == t.src[p] && t.tgt[w] == t.src[q] && t.after(q, w) == p && invertible(w)) ++morphisms;
    }
  }
  return {objects, morphisms};
}

// Number of bijections between fibres, summed over all pairs of points.
inline int equivalence_count(const std::vector<int>& fibres) {
  int total = 0;
  for (int a : fibres)
    for (int b : fibres)
      for (const auto& f : functions(a, b)) {
        std::set<int> image(f.begin(), f.end());
        if (static_cast<int>(image.size()) == b && a == b) ++total;
      }
  return total;
}

// Whether a family of sets with the given fibre sizes extends along every
// map between the probes (monos only, or all maps). A non-injective map
// glues points of A; the two chosen bijections onto the shared fibre can
// differ exactly when that fibre has at least two elements.
inline bool universe_extends(const std::vector<int>& fibres, const std::vector<int>& probes, bool monos_only) {
  for (int a : probes)
    for (int b : probes)
      for (const auto& i : functions(a, b)) {
        std::set<int> image(i.begin(), i.end());
        if (static_cast<int>(image.size()) == a) continue;
        if (monos_only) continue;
        for (int s : fibres)
          if (s >= 2) return false;
      }
  return true;
}

}  // namespace oracle
