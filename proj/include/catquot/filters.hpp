#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catquot/generic.hpp"

namespace catquot {

// Subterminal objects up to isomorphism; each class is represented by its
// first member in object order.
template <CategoryLike C>
struct SubterminalPoset {
  using Object = typename C::Obj;
  std::vector<Object> elements;
  std::vector<std::vector<bool>> order;  // order[i][j]: elements[i] <= elements[j]

  bool leq(int i, int j) const { return order[i][j]; }
  int size() const { return static_cast<int>(elements.size()); }

  // Index of the class containing x, or -1 when x is not subterminal.
  int index_of(const C& c, const Object& x) const {
    for (int i = 0; i < size(); ++i)
      if (elements[i] == x) return i;
    for (int i = 0; i < size(); ++i)
      if (isomorphic(c, x, elements[i])) return i;
    return -1;
  }

  std::optional<int> meet(int i, int j) const {
    for (int z = 0; z < size(); ++z) {
      if (!leq(z, i) || !leq(z, j)) continue;
      bool greatest = true;
      for (int w = 0; w < size() && greatest; ++w)
        if (leq(w, i) && leq(w, j)) greatest = leq(w, z);
      if (greatest) return z;
    }
    return std::nullopt;
  }

  std::optional<int> top() const {
    for (int z = 0; z < size(); ++z) {
      bool t = true;
      for (int w = 0; w < size() && t; ++w) t = leq(w, z);
      if (t) return z;
    }
    return std::nullopt;
  }
};

template <CategoryLike C>
SubterminalPoset<C> subterminal_poset(const C& c) {
  SubterminalPoset<C> p;
  for (const auto& x : c.objects()) {
    if (!is_subterminal(c, x)) continue;
    bool seen = false;
    for (const auto& e : p.elements)
      if (isomorphic(c, x, e)) seen = true;
    if (!seen) p.elements.push_back(x);
  }
  const int n = p.size();
  p.order.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool any = false;
      for ([[maybe_unused]] const auto& m : c.hom(p.elements[i], p.elements[j])) {
        any = true;
        break;
      }
      p.order[i][j] = any;
    }
  return p;
}

template <CategoryLike C>
struct Filter {
  SubterminalPoset<C> poset;
  std::vector<int> members;  // indices into poset.elements, input order
  bool frechet = false;
  std::string index_set;

  bool contains(int i) const {
    for (int m : members)
      if (m == i) return true;
    return false;
  }
  std::vector<typename C::Obj> objects() const {
    std::vector<typename C::Obj> out;
    for (int m : members) out.push_back(poset.elements[m]);
    return out;
  }
};

template <CategoryLike C>
Filter<C> frechet_filter(std::string index_set) {
  Filter<C> f;
  f.frechet = true;
  f.index_set = std::move(index_set);
  return f;
}

template <CategoryLike C>
struct FilterReport {
  std::optional<Filter<C>> filter;
  std::vector<Violation> violations;
  bool ok() const { return filter.has_value(); }
};

// Reports each violated clause with its first witness.
template <CategoryLike C>
FilterReport<C> validate_filter(const C& c, const SubterminalPoset<C>& p,
                                const std::vector<typename C::Obj>& s) {
  FilterReport<C> r;
  auto name = [&](int i) { return c.name(p.elements[i]); };
  if (s.empty()) {
    r.violations.push_back({ErrorKind::Empty, "no elements"});
    return r;
  }
  std::vector<int> idx;
  for (const auto& x : s) {
    int i = p.index_of(c, x);
    if (i < 0) {
      r.violations.push_back({ErrorKind::NotSubterminal, c.name(x)});
      continue;
    }
    bool dup = false;
    for (int j : idx) dup = dup || j == i;
    if (!dup) idx.push_back(i);
  }
  if (!r.violations.empty()) return r;
  auto in = [&](int i) {
    for (int j : idx)
      if (j == i) return true;
    return false;
  };
  [&] {
    for (int x : idx)
      for (int y = 0; y < p.size(); ++y)
        if (p.leq(x, y) && !in(y)) {
          r.violations.push_back({ErrorKind::NotUpwardClosed, name(x) + " <= " + name(y)});
          return;
        }
  }();
  [&] {
    for (int x : idx)
      for (int y : idx) {
        bool lower = false;
        for (int z : idx) lower = lower || (p.leq(z, x) && p.leq(z, y));
        if (!lower) {
          r.violations.push_back({ErrorKind::NotDirected, name(x) + ", " + name(y)});
          return;
        }
      }
  }();
  if (r.violations.empty()) r.filter = Filter<C>{p, idx, false, {}};
  return r;
}

// Least element; throws SymbolicFilter for Frechet filters.
template <CategoryLike C>
std::optional<typename C::Obj> filter_minimum(const Filter<C>& f) {
  if (f.frechet) throw Error(ErrorKind::SymbolicFilter, "frechet(" + f.index_set + ")");
  for (int m : f.members) {
    bool least = true;
    for (int n : f.members) least = least && f.poset.leq(m, n);
    if (least) return f.poset.elements[m];
  }
  return std::nullopt;
}

// Finite or cofinite subsets of the natural numbers.
class CofiniteSet {
 public:
  enum class Polarity { Finite, Cofinite };

  static CofiniteSet finite(std::set<long> s) { return {Polarity::Finite, std::move(s)}; }
  static CofiniteSet cofinite(std::set<long> missing) { return {Polarity::Cofinite, std::move(missing)}; }

  Polarity polarity() const { return polarity_; }
  const std::set<long>& exceptional() const { return exceptional_; }

  bool member(long n) const { return (exceptional_.count(n) != 0) == (polarity_ == Polarity::Finite); }
  bool is_in_frechet() const { return polarity_ == Polarity::Cofinite; }
  CofiniteSet complement() const {
    return {polarity_ == Polarity::Finite ? Polarity::Cofinite : Polarity::Finite, exceptional_};
  }
  CofiniteSet intersect(const CofiniteSet& o) const;
  CofiniteSet unite(const CofiniteSet& o) const;
  bool subset(const CofiniteSet& o) const;
  bool operator==(const CofiniteSet& o) const = default;

 private:
  CofiniteSet(Polarity p, std::set<long> s) : polarity_(p), exceptional_(std::move(s)) {}
  Polarity polarity_;
  std::set<long> exceptional_;
};

std::string to_string(const CofiniteSet& s);

}  // namespace catquot
