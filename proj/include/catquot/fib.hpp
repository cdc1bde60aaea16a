#pragma once

// Grothendieck fibrations between finite categories, classified
// exhaustively. Cartesian lifts are chosen deterministically: the first
// cartesian morphism in the total category's morphism order.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catquot/adjoint.hpp"
#include "catquot/constructions.hpp"
#include "catquot/functor.hpp"
#include "catquot/parser.hpp"
#include "catquot/quotient.hpp"

namespace catquot {

class Fibration {
 public:
  // Throws NotAFunctor.
  explicit Fibration(Functor proj);

  const Functor& proj() const { return proj_; }
  const FinCategory& total() const { return *proj_.src; }
  const FinCategory& base() const { return *proj_.tgt; }

  bool grothendieck() const { return !missing_; }
  bool discrete() const { return grothendieck() && discrete_fibres_; }
  bool cartesian(Mor phi) const { return cartesian_[phi.v]; }
  const std::vector<bool>& cartesian_table() const { return cartesian_; }

  // (base morphism, object over its target) without a cartesian lift.
  const std::optional<std::pair<Mor, Obj>>& missing_lift() const { return missing_; }

  // Chosen cartesian morphism over u with target y. Throws NoLift.
  Mor lift(Mor u, Obj y) const;
  std::optional<Mor> try_lift(Mor u, Obj y) const;

  // Objects over c and morphisms over its identity.
  Subcategory fiber(Obj c) const;

 private:
  Functor proj_;
  std::vector<bool> cartesian_;
  std::map<std::pair<int, int>, Mor> cleavage_;
  std::optional<std::pair<Mor, Obj>> missing_;
  bool discrete_fibres_ = true;
};

// Universal property of phi with respect to proj, checked exhaustively.
bool is_cartesian(const Functor& proj, Mor phi);

std::string describe(const Fibration& p);

// Lifts over the same base morphism into the same object are related by a
// unique vertical isomorphism.
std::vector<Violation> check_lift_uniqueness(const Fibration& p);

// A pseudo-functor from base^op to categories. trans[u] : fibre(tgt u) ->
// fibre(src u); coherence[(g, f)] : trans[f] . trans[g] => trans[g . f],
// indexed by objects of fibre(tgt g). Missing coherence means strict.
struct IndexedData {
  std::string name;
  CategoryRef base;
  std::vector<CategoryRef> fibers;
  std::vector<Functor> trans;
  std::map<std::pair<int, int>, NatTrans> coherence;

  Mor coh(Mor g, Mor f, Obj z) const;
};

// Typing, strict identities, naturality, invertibility and the cocycle
// condition on every composable triple.
std::vector<Violation> check_indexed(const IndexedData& ix);

// From an `indexed` block; coherence components name morphisms of the fibre
// over the source of f. Throws UnknownId or IncoherentTransitions.
IndexedData resolve_indexed(const Workspace& ws, const RawIndexed& raw);

struct Grothendieck {
  Fibration fibration;
  std::vector<std::pair<Obj, Obj>> object_of;  // total object -> (base object, fibre object)
};

// Throws IncoherentTransitions.
Grothendieck grothendieck_construction(const IndexedData& ix);

struct PulledBack {
  StrictPullback square;  // left: to p's total, right: to G's source
  Fibration fibration;    // square.cat -> src G
};
PulledBack pullback_fibration(const Fibration& p, const Functor& G);

// Morphisms upstairs whose cartesianness differs from that of their image
// in p's total category.
std::vector<Mor> cartesian_mismatches(const Fibration& p, const PulledBack& q);

struct SubterminalImage {
  Obj terminal;  // of the total category
  Obj image;
  bool subterminal = false;
  std::vector<Obj> outside;             // base objects with no map to image
  std::vector<Obj> nonempty_outside;    // outside with a nonempty fibre
  bool ok() const { return subterminal && nonempty_outside.empty(); }
};
// Throws NoTerminal.
SubterminalImage fibration_subterminal_image(const Fibration& p);

struct Restriction {
  Subcategory base;   // full on objects with a map to u
  Subcategory total;  // full on objects over those
  Fibration fibration;
};
// The fibration restricted to the part of the base below u.
Restriction restrict_below(const Fibration& p, Obj u);

// X |-> domain of the chosen lift of the projection pX * U -> pX at X,
// right adjoint to the inclusion of the part of the total category over
// objects below U.
struct CartesianRightAdjoint {
  Restriction below;
  Functor right;  // total -> below.total
  Adjunction adjunction;
  std::vector<Violation> violations;  // triangle identities, cartesianness, projection square
  bool ok() const { return violations.empty(); }
};
// Throws NoLift or MissingProducts.
CartesianRightAdjoint cartesian_right_adjoint(const Fibration& p, Obj u,
                                              std::shared_ptr<const Products> products = nullptr);

// Over C_phi: objects of the total category, hom(X, Y) = total(X_U0, Y_U0).
struct FibrationQuotient {
  QuotientCategory base;
  CartesianRightAdjoint restriction;
  CategoryRef total;
  std::vector<Mor> representative;  // quotient total morphism -> morphism X_U0 -> Y_U0
  Fibration fibration;
};
// Throws MissingProducts.
FibrationQuotient fibration_filter_quotient(const Fibration& p, const Filter<FinCategory>& phi);
FibrationQuotient fibration_filter_quotient(const Fibration& p, const std::vector<Obj>& phi);

// Filter of the total category generated by the lifts of filter elements to
// the terminal object. Throws NoTerminal.
std::vector<Obj> lifted_filter(const Fibration& p, const Filter<FinCategory>& phi);

struct TotalCrossCheck {
  QuotientCategory total_quotient;
  std::optional<Functor> iso;  // identity on objects, fq.total -> total_quotient.cat
  bool ok() const { return iso.has_value(); }
};
// Compares with the filter quotient of the total category. Throws NoTerminal.
TotalCrossCheck cross_check_total(const Fibration& p, const FibrationQuotient& fq);

}  // namespace catquot
