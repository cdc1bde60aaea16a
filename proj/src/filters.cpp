#include "catquot/filters.hpp"

#include <algorithm>
#include <iterator>

namespace catquot {

namespace {

std::set<long> set_and(const std::set<long>& a, const std::set<long>& b) {
  std::set<long> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
  return r;
}

std::set<long> set_or(const std::set<long>& a, const std::set<long>& b) {
  std::set<long> r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
  return r;
}

std::set<long> set_minus(const std::set<long>& a, const std::set<long>& b) {
  std::set<long> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
  return r;
}

}  // namespace

CofiniteSet CofiniteSet::intersect(const CofiniteSet& o) const {
  const bool fa = polarity_ == Polarity::Finite, fb = o.polarity_ == Polarity::Finite;
  if (fa && fb) return finite(set_and(exceptional_, o.exceptional_));
  if (fa) return finite(set_minus(exceptional_, o.exceptional_));
  if (fb) return finite(set_minus(o.exceptional_, exceptional_));
  return cofinite(set_or(exceptional_, o.exceptional_));
}

CofiniteSet CofiniteSet::unite(const CofiniteSet& o) const {
  return complement().intersect(o.complement()).complement();
}

bool CofiniteSet::subset(const CofiniteSet& o) const { return intersect(o.complement()) == finite({}); }

std::string to_string(const CofiniteSet& s) {
  std::string out = s.polarity() == CofiniteSet::Polarity::Finite ? "Finite{" : "Cofinite{";
  bool first = true;
  for (long n : s.exceptional()) {
    out += (first ? "" : ",") + std::to_string(n);
    first = false;
  }
  return out + "}";
}

}  // namespace catquot
