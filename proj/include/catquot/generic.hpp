#pragma once

// Algorithms shared by extensional (FinCategory) and probe-bounded
// categories. Quantifiers over "all objects" range over objects(), which for
// a probe category is the declared probe set.

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catquot/category.hpp"

namespace catquot {

template <class C>
concept CategoryLike = requires(const C& c, const typename C::Obj& x, const typename C::Mor& f) {
  { c.objects() };
  { c.hom(x, x) };
  { c.compose(f, f) } -> std::convertible_to<typename C::Mor>;
  { c.id(x) } -> std::convertible_to<typename C::Mor>;
  { c.src(f) } -> std::convertible_to<typename C::Obj>;
  { c.tgt(f) } -> std::convertible_to<typename C::Obj>;
  { C::exhaustive } -> std::convertible_to<bool>;
};

inline constexpr std::uint64_t kDefaultCap = 1'000'000;

// Counts candidate checks; throws SearchExhausted when the cap is passed.
class SearchBudget {
 public:
  explicit SearchBudget(std::uint64_t cap = kDefaultCap) : cap_(cap) {}
  void tick(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > cap_)
      throw Error(ErrorKind::SearchExhausted, "more than " + std::to_string(cap_) + " candidate checks");
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
  std::uint64_t used_ = 0;
};

// How a universal-property verdict was reached.
enum class Evidence { Exhaustive, ProbeVerified };

inline const char* to_string(Evidence e) {
  return e == Evidence::Exhaustive ? "exhaustive" : "probe-verified";
}

template <class C>
struct Diagram {
  struct Edge {
    int from, to;
    typename C::Mor mor;
  };
  std::vector<typename C::Obj> nodes;
  std::vector<Edge> edges;
};

// Legs run apex -> node for cones and node -> apex for cocones.
template <class C>
struct Cone {
  typename C::Obj apex;
  std::vector<typename C::Mor> legs;
};

template <CategoryLike C>
Diagram<C> discrete_diagram(std::vector<typename C::Obj> nodes) {
  return Diagram<C>{std::move(nodes), {}};
}

template <CategoryLike C>
Diagram<C> parallel_diagram(const C& c, typename C::Mor f, typename C::Mor g) {
  Diagram<C> d{{c.src(f), c.tgt(f)}, {}};
  d.edges.push_back({0, 1, f});
  d.edges.push_back({0, 1, g});
  return d;
}

// cospan x -f-> z <-g- y
template <CategoryLike C>
Diagram<C> cospan_diagram(const C& c, typename C::Mor f, typename C::Mor g) {
  Diagram<C> d{{c.src(f), c.src(g), c.tgt(f)}, {}};
  d.edges.push_back({0, 2, f});
  d.edges.push_back({1, 2, g});
  return d;
}

// span x <-f- z -g-> y
template <CategoryLike C>
Diagram<C> span_diagram(const C& c, typename C::Mor f, typename C::Mor g) {
  Diagram<C> d{{c.tgt(f), c.tgt(g), c.src(f)}, {}};
  d.edges.push_back({2, 0, f});
  d.edges.push_back({2, 1, g});
  return d;
}

template <CategoryLike C>
bool is_cone(const C& c, const Diagram<C>& d, const Cone<C>& k) {
  for (const auto& e : d.edges)
    if (c.compose(e.mor, k.legs[e.from]) != k.legs[e.to]) return false;
  return true;
}

template <CategoryLike C>
bool is_cocone(const C& c, const Diagram<C>& d, const Cone<C>& k) {
  for (const auto& e : d.edges)
    if (c.compose(k.legs[e.to], e.mor) != k.legs[e.from]) return false;
  return true;
}

namespace detail {

// Backtracking over leg assignments; checks edges as soon as both ends are
// assigned. visit returns false to stop.
template <CategoryLike C, class Visit>
bool enumerate_legs(const C& c, const Diagram<C>& d, const typename C::Obj& w, bool co,
                    Visit&& visit, SearchBudget* budget) {
  const std::size_t n = d.nodes.size();
  std::vector<std::vector<typename C::Mor>> choices(n);
  for (std::size_t k = 0; k < n; ++k)
    choices[k] = co ? std::vector<typename C::Mor>(c.hom(d.nodes[k], w))
                    : std::vector<typename C::Mor>(c.hom(w, d.nodes[k]));
  std::vector<typename C::Mor> legs(n);
  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == n) return visit(legs);
    for (const auto& m : choices[k]) {
      if (budget) budget->tick();
      legs[k] = m;
      bool ok = true;
      for (const auto& e : d.edges) {
        std::size_t hi = static_cast<std::size_t>(std::max(e.from, e.to));
        if (hi != k) continue;
        if (co ? c.compose(legs[e.to], e.mor) != legs[e.from]
               : c.compose(e.mor, legs[e.from]) != legs[e.to]) {
          ok = false;
          break;
        }
      }
      if (ok && !go(k + 1)) return false;
    }
    return true;
  };
  return go(0);
}

}  // namespace detail

template <CategoryLike C, class Visit>
void for_each_cone(const C& c, const Diagram<C>& d, const typename C::Obj& w, Visit&& visit,
                   SearchBudget* budget = nullptr) {
  detail::enumerate_legs(c, d, w, false, visit, budget);
}

template <CategoryLike C, class Visit>
void for_each_cocone(const C& c, const Diagram<C>& d, const typename C::Obj& w, Visit&& visit,
                     SearchBudget* budget = nullptr) {
  detail::enumerate_legs(c, d, w, true, visit, budget);
}

// Returns the first probe object against which universality fails.
template <CategoryLike C>
std::optional<typename C::Obj> limit_failure(const C& c, const Diagram<C>& d, const Cone<C>& k,
                                             SearchBudget* budget = nullptr) {
  if (!is_cone(c, d, k)) return k.apex;
  for (const auto& w : c.objects()) {
    std::set<std::vector<typename C::Mor>> induced;
    std::size_t homs = 0;
    for (const auto& m : c.hom(w, k.apex)) {
      std::vector<typename C::Mor> legs;
      legs.reserve(k.legs.size());
      for (const auto& l : k.legs) legs.push_back(c.compose(l, m));
      induced.insert(std::move(legs));
      ++homs;
    }
    if (induced.size() != homs) return w;
    std::size_t cones = 0;
    for_each_cone(c, d, w, [&](const auto&) { ++cones; return cones <= homs; }, budget);
    if (cones != homs) return w;
  }
  return std::nullopt;
}

template <CategoryLike C>
std::optional<typename C::Obj> colimit_failure(const C& c, const Diagram<C>& d, const Cone<C>& k,
                                               SearchBudget* budget = nullptr) {
  if (!is_cocone(c, d, k)) return k.apex;
  for (const auto& w : c.objects()) {
    std::set<std::vector<typename C::Mor>> induced;
    std::size_t homs = 0;
    for (const auto& m : c.hom(k.apex, w)) {
      std::vector<typename C::Mor> legs;
      legs.reserve(k.legs.size());
      for (const auto& l : k.legs) legs.push_back(c.compose(m, l));
      induced.insert(std::move(legs));
      ++homs;
    }
    if (induced.size() != homs) return w;
    std::size_t cones = 0;
    for_each_cocone(c, d, w, [&](const auto&) { ++cones; return cones <= homs; }, budget);
    if (cones != homs) return w;
  }
  return std::nullopt;
}

template <CategoryLike C>
bool is_limit(const C& c, const Diagram<C>& d, const Cone<C>& k) {
  return !limit_failure(c, d, k).has_value();
}

template <CategoryLike C>
bool is_colimit(const C& c, const Diagram<C>& d, const Cone<C>& k) {
  return !colimit_failure(c, d, k).has_value();
}

// The unique morphism w -> apex inducing the given legs, if any.
template <CategoryLike C>
std::optional<typename C::Mor> mediate(const C& c, const Cone<C>& limit,
                                       const typename C::Obj& w,
                                       const std::vector<typename C::Mor>& legs) {
  for (const auto& m : c.hom(w, limit.apex)) {
    bool ok = true;
    for (std::size_t k = 0; k < legs.size() && ok; ++k)
      ok = c.compose(limit.legs[k], m) == legs[k];
    if (ok) return m;
  }
  return std::nullopt;
}

template <CategoryLike C>
std::optional<typename C::Mor> comediate(const C& c, const Cone<C>& colimit,
                                         const typename C::Obj& w,
                                         const std::vector<typename C::Mor>& legs) {
  for (const auto& m : c.hom(colimit.apex, w)) {
    bool ok = true;
    for (std::size_t k = 0; k < legs.size() && ok; ++k)
      ok = c.compose(m, colimit.legs[k]) == legs[k];
    if (ok) return m;
  }
  return std::nullopt;
}

template <CategoryLike C>
std::optional<typename C::Mor> find_inverse(const C& c, const typename C::Mor& f) {
  for (const auto& g : c.hom(c.tgt(f), c.src(f)))
    if (c.compose(g, f) == c.id(c.src(f)) && c.compose(f, g) == c.id(c.tgt(f))) return g;
  return std::nullopt;
}

template <CategoryLike C>
bool is_iso(const C& c, const typename C::Mor& f) {
  return find_inverse(c, f).has_value();
}

template <CategoryLike C>
bool is_mono(const C& c, const typename C::Mor& f) {
  for (const auto& w : c.objects()) {
    std::set<typename C::Mor> seen;
    std::size_t n = 0;
    for (const auto& g : c.hom(w, c.src(f))) {
      seen.insert(c.compose(f, g));
      ++n;
    }
    if (seen.size() != n) return false;
  }
  return true;
}

template <CategoryLike C>
bool is_epi(const C& c, const typename C::Mor& f) {
  for (const auto& w : c.objects()) {
    std::set<typename C::Mor> seen;
    std::size_t n = 0;
    for (const auto& g : c.hom(c.tgt(f), w)) {
      seen.insert(c.compose(g, f));
      ++n;
    }
    if (seen.size() != n) return false;
  }
  return true;
}

template <CategoryLike C>
MorphismFlags classify_morphism(const C& c, const typename C::Mor& f) {
  MorphismFlags fl;
  fl.identity = f == c.id(c.src(f));
  fl.iso = is_iso(c, f);
  fl.mono = fl.iso || is_mono(c, f);
  fl.epi = fl.iso || is_epi(c, f);
  return fl;
}

template <CategoryLike C>
bool is_subterminal(const C& c, const typename C::Obj& u) {
  for (const auto& x : c.objects()) {
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& m : c.hom(x, u))
      if (++n > 1) return false;
  }
  return true;
}

template <CategoryLike C>
bool isomorphic(const C& c, const typename C::Obj& x, const typename C::Obj& y) {
  for (const auto& f : c.hom(x, y))
    if (is_iso(c, f)) return true;
  return false;
}

// A commuting square u: src i -> src p, v: tgt i -> tgt p with no diagonal.
template <class C>
struct LiftingSquare {
  typename C::Mor top, bottom;
};

template <CategoryLike C>
std::optional<LiftingSquare<C>> lifting_failure(const C& c, const typename C::Mor& i,
                                                const typename C::Mor& p) {
  for (const auto& u : c.hom(c.src(i), c.src(p))) {
    for (const auto& v : c.hom(c.tgt(i), c.tgt(p))) {
      if (c.compose(p, u) != c.compose(v, i)) continue;
      bool filled = false;
      for (const auto& d : c.hom(c.tgt(i), c.src(p))) {
        if (c.compose(d, i) == u && c.compose(p, d) == v) {
          filled = true;
          break;
        }
      }
      if (!filled) return LiftingSquare<C>{u, v};
    }
  }
  return std::nullopt;
}

template <CategoryLike C>
bool has_lifting(const C& c, const typename C::Mor& i, const typename C::Mor& p) {
  return !lifting_failure(c, i, p).has_value();
}

}  // namespace catquot
