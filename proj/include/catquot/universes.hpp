#pragma once

// Groupoid-valued pseudo-functors on a finite category, realised by their
// Grothendieck fibrations; lifting against representables; universes and
// univalence over a finite model category and over the finite-sets probe.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catquot/comprehension.hpp"
#include "catquot/fib.hpp"
#include "catquot/model.hpp"
#include "catquot/quotient.hpp"
#include "catquot/set_power.hpp"

namespace catquot {

enum class PseudoOrigin { Slices, Fibrations, Representable, Custom };
std::string to_string(PseudoOrigin o);

struct PseudoFunctor {
  PseudoOrigin origin = PseudoOrigin::Custom;
  Fibration fibration;
  std::vector<Mor> family;        // total object -> display map in the base (Slices, Fibrations)
  std::vector<Mor> top;           // total morphism -> map of domains of its pullback square
  std::optional<Obj> represents;  // Representable

  const FinCategory& base() const { return fibration.base(); }
  const FinCategory& total() const { return fibration.total(); }
};

// X |-> groupoid of maps into X, reindexed by pullback squares.
PseudoFunctor slices_pseudofunctor(const CategoryRef& c);
// Full sub-pseudo-functor of slices_pseudofunctor(m.cat) on fibrations,
// with its inclusion.
struct FibrationsPseudo {
  PseudoFunctor slices;
  PseudoFunctor fibrations;
  Functor inclusion;
};
FibrationsPseudo fibrations_pseudofunctor(const ModelData& m);
PseudoFunctor representable(const CategoryRef& c, Obj z);
PseudoFunctor custom_pseudofunctor(Functor proj);
// Full sub-pseudo-functor on the objects accepted by keep.
struct SubPseudo {
  PseudoFunctor sub;
  Functor inclusion;
};
SubPseudo sub_pseudofunctor(const PseudoFunctor& f, const std::function<bool(Obj)>& keep);

// Missing lifts and non-invertible vertical morphisms.
std::vector<Violation> check_pseudofunctor(const PseudoFunctor& f);

// A lifting problem against the representable map induced by i : A -> B:
// start over A upstairs, bottom : map(start) -> y over i downstairs.
struct LiftingProblem {
  Mor cofibration;
  Obj start;
  Mor bottom;
};

struct LiftingVerdict {
  bool ok = true;
  int problems = 0;
  std::optional<LiftingProblem> failure;
  std::string witness;
};

// Every morphism over i in a groupoid fibration is cartesian, so a problem
// is (x over A, u : map(x) -> y over i) and a solution is v : x -> x' over
// i with a vertical w : map(x') -> y and w . map(v) = u. Throws NotAFunctor
// unless map commutes with the projections.
LiftingVerdict check_acyclic_fibration(const PseudoFunctor& from, const PseudoFunctor& to, const Functor& map,
                                       const MorClass& cofibrations);

// The same property phrased with pullback squares of the base: for every
// pullback square over a cofibration, every structure on its source family
// extends along the square. to must come from slices_pseudofunctor.
LiftingVerdict check_extension_property(const PseudoFunctor& from, const PseudoFunctor& to, const Functor& map,
                                        const MorClass& cofibrations);

// Clauses: discrete fibration, small fibres, representable, image,
// acyclic. to_slices : F.total -> fp.slices.total over the base.
ModelReport check_lparanofscaf(const PseudoFunctor& f, const Functor& to_slices, const FibrationsPseudo& fp,
                               const MorClass& cofibrations);

// M(-, U) -> F sending a : X -> U to the source of the chosen lift of a at
// the family. Throws NoLift.
Functor classifying_map(const PseudoFunctor& f, Obj carrier, Obj family);

// The chosen pullback of family along a : X -> U is isomorphic to p over X.
bool classifies(const FinCategory& c, Mor family, Mor a, Mor p);

// Clauses: natural, acyclic (onto the image), classifies (every object of
// the claimed sub-pseudo-functor is in the image; all of F when absent).
ModelReport check_universe(const PseudoFunctor& f, Obj carrier, Obj family, const MorClass& cofibrations,
                           const std::function<bool(Obj)>& claimed = {});

// Eq(family) as the representing object of
//   X |-> {(a, b, w) : a, b : X -> U, w : a* family -> b* family over X, w in W}.
// Throws NoExponentials when it is not representable.
struct EqObject {
  Obj object;
  Mor left, right;  // Eq -> U
  Mor equivalence;  // over Eq, between the two pulled-back families
  Mor idtoequiv;    // U -> Eq
  int elements = 0; // of the category of elements, for reporting
};
EqObject eq_object(const ModelData& m, Mor family);
bool check_univalent(const ModelData& m, const EqObject& eq);

struct UniverseVerdicts {
  bool universe = false;
  bool fibrant = false;
  bool univalent = false;
  std::vector<bool> lparanofscaf;  // by clause
  std::string note;
  bool operator==(const UniverseVerdicts& o) const {
    return universe == o.universe && fibrant == o.fibrant && univalent == o.univalent &&
           lparanofscaf == o.lparanofscaf;
  }
};

struct UniverseSuite {
  UniverseVerdicts before, after;
  bool preserved() const { return before == after; }
};

// Universe for the fibrations of m classified by family : U~ -> U, before
// and after the filter quotient. Throws PreservationFailure on any flip.
UniverseVerdicts universe_verdicts(const ModelData& m, Mor family);
UniverseSuite quotient_universe_suite(const ModelData& m, const std::vector<Obj>& phi, Mor family);

// --- finite-sets probe ------------------------------------------------------
//
// The trivial model structure (weak equivalences = bijections, every map a
// fibration). A power of Set is checked component by component on the
// active components; each check runs on the one-component probe.

// Families whose fibres have at most max elements; max < 0 for all families.
struct FibreBound {
  int max = -1;
  bool admits(int size) const { return max < 0 || size <= max; }
  std::string name() const;
};

struct SetUniverse {
  SetPower::Obj carrier;
  SetPower::Mor family;  // U~ -> U
  FibreBound structure;
};
// Carrier n + 1 with fibre sizes 0..n in every component.
SetUniverse bounded_universe(const SetPower& c, int n);
// Carrier |fibres| with the given fibre sizes in every component.
SetUniverse fibred_universe(const SetPower& c, const std::vector<int>& fibres, FibreBound structure = {});
// bounded_universe(c, 1).
SetUniverse propositional_universe(const SetPower& c);

enum class SetCofibrations { Monos, All };

// One component: the family pulled back along map has the given fibre sizes.
bool classifies(const std::vector<int>& family_fibres, const std::vector<int>& map, const std::vector<int>& fibres);

// Per active component: fibre sizes of family over each point of U.
std::vector<std::vector<int>> fibre_sizes(const SetPower& c, const SetPower::Mor& family);

struct SetEq {
  SetPower::Obj object;
  SetPower::Mor to_pairs;   // Eq -> U x U
  SetPower::Mor idtoequiv;  // U -> Eq
  Cone<SetPower> pairs;  // U x U
  // Per component, each element as (u, v, forward map, backward map).
  struct Element {
    int u, v;
    std::vector<int> forward, backward;
  };
  std::vector<std::vector<Element>> elements;
};
// Pairs of mutually inverse maps between the fibres over (u, v).
SetEq eq_object(const SetPower& c, const SetPower::Mor& family);
// idtoequiv is a section of the projection and lands on identities.
std::vector<Violation> check_eq_object(const SetPower& c, const SetPower::Mor& family, const SetEq& eq);
bool check_univalent(const SetPower& c, const SetEq& eq);

// Clauses: natural, acyclic, classifies.
ModelReport check_universe(const SetPower& c, const SetUniverse& u, SetCofibrations cof = SetCofibrations::Monos);
// Clauses: discrete fibration, small fibres, representable, image, acyclic.
ModelReport check_lparanofscaf(const SetPower& c, const FibreBound& structure,
                               SetCofibrations cof = SetCofibrations::Monos);

UniverseVerdicts universe_verdicts(const SetPower& c, const SetUniverse& u,
                                   SetCofibrations cof = SetCofibrations::Monos);
// lparanofscaf verdicts are for the unbounded structure the universe sits in.
UniverseSuite quotient_universe_suite(const SetPowerQuotient& q, const SetUniverse& u,
                                      SetCofibrations cof = SetCofibrations::Monos);

}  // namespace catquot
