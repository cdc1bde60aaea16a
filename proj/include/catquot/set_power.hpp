#pragma once

// Finite sets and their finite powers, evaluated intensionally. Objects are
// tuples of cardinalities with canonical elements 0..n-1; universal
// properties are checked against a declared probe set.
//
// A component can be switched off: its hom-sets become singletons (the empty
// function out of the empty set). This is exactly the principal filter
// quotient at a subterminal whose component is empty, so quotients stay in
// this representation.

#include <optional>
#include <string>
#include <vector>

#include "catquot/generic.hpp"

namespace catquot {

class SetPower {
 public:
  struct Obj {
    std::vector<int> sizes;
    auto operator<=>(const Obj&) const = default;
  };
  struct Mor {
    Obj src, tgt;
    std::vector<std::vector<int>> maps;  // empty for inactive components
    auto operator<=>(const Mor&) const = default;
  };
  static constexpr bool exhaustive = false;

  explicit SetPower(int arity, std::vector<int> probe_sizes = {0, 1, 2, 3},
                    std::vector<bool> active = {});

  int arity() const { return arity_; }
  bool active(int i) const { return active_[i]; }
  const std::vector<bool>& mask() const { return active_; }
  const std::vector<int>& probe_sizes() const { return probe_sizes_; }
  const std::vector<Obj>& objects() const { return probes_; }
  std::string probe_description() const;

  // Same probes, components switched off where keep is false.
  SetPower restricted(const std::vector<bool>& keep) const;

  Obj object(std::vector<int> sizes) const;
  Obj uniform(int n) const { return object(std::vector<int>(arity_, n)); }
  Mor morphism(const Obj& s, const Obj& t, std::vector<std::vector<int>> maps) const;

  std::vector<Mor> hom(const Obj& x, const Obj& y) const;
  std::size_t hom_size(const Obj& x, const Obj& y) const;
  Mor compose(const Mor& g, const Mor& f) const;
  Mor id(const Obj& x) const;
  Obj src(const Mor& f) const { return f.src; }
  Obj tgt(const Mor& f) const { return f.tgt; }

  // Re-reads a morphism of another power with the same arity under this mask.
  Mor project(const Mor& f) const;

  // Objects agreeing on the active components are canonically isomorphic.
  bool same(const Obj& a, const Obj& b) const;
  Mor canonical(const Obj& from, const Obj& to) const;

  std::string name(const Obj& x) const;
  std::string name(const Mor& f) const;

  // Direct constructions; callers verify them with the generic checkers.
  Cone<SetPower> limit(const Diagram<SetPower>& d) const;
  Cone<SetPower> colimit(const Diagram<SetPower>& d) const;
  Cone<SetPower> product(const Obj& x, const Obj& y) const;
  Mor pair(const Obj& x, const Obj& y, const Mor& a, const Mor& b) const;
  Mor times(const Mor& f, const Mor& g) const;
  Obj terminal() const { return uniform(1); }
  Obj initial() const { return uniform(0); }

  struct Exponential {
    Obj object;
    Mor eval;
  };
  Exponential exponential(const Obj& base, const Obj& target) const;

  struct Classifier {
    Obj omega;
    Mor truth;
  };
  Classifier subobject_classifier() const;

 private:
  int arity_;
  std::vector<int> probe_sizes_;
  std::vector<bool> active_;
  std::vector<Obj> probes_;
};

// Exact for finite sets, so no probe quantification is needed.
bool is_mono(const SetPower& c, const SetPower::Mor& f);
bool is_epi(const SetPower& c, const SetPower::Mor& f);
bool is_iso(const SetPower& c, const SetPower::Mor& f);

bool is_exponential(const SetPower& c, const SetPower::Obj& base, const SetPower::Obj& target,
                    const SetPower::Exponential& e);
bool is_subobject_classifier(const SetPower& c, const SetPower::Classifier& s);

// Dependent product along f of a family e over src f, with its counit
// f*(Pi) -> e as a map over src f.
struct DependentProduct {
  SetPower::Mor structure;  // Pi -> tgt f
  SetPower::Mor counit;     // pullback of Pi along f, mapped into dom e
  Cone<SetPower> pullback;  // of structure along f
};
DependentProduct dependent_product(const SetPower& c, const SetPower::Mor& f, const SetPower::Mor& e);

// Checks the adjunction bijection against every probe object over tgt f.
bool verify_dependent_product(const SetPower& c, const SetPower::Mor& f, const SetPower::Mor& e,
                              const DependentProduct& p);

}  // namespace catquot
