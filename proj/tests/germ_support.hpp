#pragma once

// Random point-or-table sequences for the germ calculus, with an equality
// oracle that reads the plain description instead of the library.

#include <map>
#include <random>
#include <vector>

#include "catquot/germ.hpp"

namespace germ_fx {

using namespace catquot;

using V = GermVerdict::Kind;

inline GermObject S(long n) { return GermObject::of(SetDesc::finite(n)); }
inline const GermObject N = GermObject::of(SetDesc::naturals());

inline GermMorphism konst(const GermObject& src, const GermObject& tgt, ComponentMap m,
                          std::map<long, ComponentMap> ex = {}) {
  return {src, tgt, std::move(ex), GermMorphism::Tail::Const, std::move(m), {}};
}

// Plain description of a point-or-table sequence, read back by the oracle
// without going through the library.
struct Seq {
  std::map<long, std::vector<long>> exceptions;  // component tables
  bool identity_tail = false;                    // n |-> {n}, only for points
  std::vector<long> tail;
};

inline std::vector<long> component(const Seq& s, long n) {
  if (auto it = s.exceptions.find(n); it != s.exceptions.end()) return it->second;
  return s.identity_tail ? std::vector<long>{n} : s.tail;
}

// Equal germs agree on a final segment; tails here settle before index 40.
inline bool oracle_equal(const Seq& a, const Seq& b) {
  for (long n = 40; n < 200; ++n)
    if (component(a, n) != component(b, n)) return false;
  return true;
}

inline GermMorphism realize(const Seq& s, const GermObject& src, const GermObject& tgt) {
  GermMorphism f{src, tgt, {}, GermMorphism::Tail::Const, ComponentMap::of(s.tail), {}};
  if (s.identity_tail) f.tail = GermMorphism::Tail::IdentityMap;
  for (const auto& [n, t] : s.exceptions) f.exceptions[n] = ComponentMap::of(t);
  return f;
}

struct Gen {
  std::mt19937 rng{20240611};
  long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  std::vector<long> table(long n, long m) {
    std::vector<long> t;
    for (long i = 0; i < n; ++i) t.push_back(pick(0, m - 1));
    return t;
  }
  // Maps S_n -> S_m with few tail choices so collisions are common.
  Seq map(long n, long m, const std::vector<std::vector<long>>& tails) {
    Seq s;
    s.tail = tails[pick(0, static_cast<long>(tails.size()) - 1)];
    for (long k = pick(0, 3); k > 0; --k) s.exceptions[pick(0, 30)] = table(n, m);
    return s;
  }
  Seq point() {
    Seq s;
    s.identity_tail = pick(0, 2) == 0;
    s.tail = {pick(0, 2)};
    for (long k = pick(0, 3); k > 0; --k) s.exceptions[pick(0, 30)] = {pick(0, 40)};
    return s;
  }
  // Same germ, different finitely many components.
  Seq perturb(Seq s, long n, long m) {
    for (long k = pick(1, 3); k > 0; --k) {
      long at = pick(0, 35);
      s.exceptions[at] = s.identity_tail ? std::vector<long>{pick(0, 40)} : table(n, m);
    }
    return s;
  }
};

}  // namespace germ_fx
