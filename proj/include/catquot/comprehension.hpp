#pragma once

// Comprehension categories over finite categories: display data, parameter
// schemes and their instantiation, structured fibrations over an
// instantiation (FCoSwP), pullback along discrete fibrations and filter
// quotients. Polynomial endofunctors and bounded algebra categories live at
// the end.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catquot/fib.hpp"
#include "catquot/model.hpp"
#include "catquot/set_power.hpp"

namespace catquot {

struct Comprehension {
  Fibration fibration;  // T -> C
  ArrowCategory arrows;  // C^->
  Functor chi;           // T -> C^->

  const FinCategory& base() const { return fibration.base(); }
  const FinCategory& total() const { return fibration.total(); }
  Mor display(Obj x) const { return arrows.arrow[chi(x).v]; }
};

// T = C^-> with the identity, or the full subcategory on monomorphisms.
Comprehension arrows_comprehension(const CategoryRef& c);
Comprehension monos_comprehension(const CategoryRef& c);
Comprehension resolve_comprehension(const Workspace& ws, const RawComprehension& raw);

// Clauses: fibration, over base, cartesian.
ModelReport check_comprehension(const Comprehension& w);

// A category of display maps with a projection to the base (codomain).
struct DisplayCategory {
  CategoryRef cat;
  Functor proj;
  std::vector<Obj> arrow;    // object -> object of C^->
  std::vector<Mor> section;  // object -> section of its display map (pointed variants only)
  std::vector<Mor> square;   // morphism -> morphism of C^->
};

struct DisplayData {
  DisplayCategory display;         // display maps, pullback squares
  DisplayCategory pointed;         // display maps with a section, pullback squares keeping it
  DisplayCategory pointed_all;     // same objects, every commuting square keeping it
  Subcategory cartesian;           // T with its cartesian morphisms only
  Functor cartesian_proj;
  Functor forget_section;          // pointed -> display
};
DisplayData display_data(const Comprehension& w);

// Along a discrete fibration F : B -> C; the comprehension functor is lifted
// uniquely. Throws NotDiscrete.
struct PulledComprehension {
  Comprehension comprehension;  // over B
  PulledBack pulled;            // of w.fibration along F
  Functor total_origin;         // new total -> old total
};
PulledComprehension pullback_comprehension(const Comprehension& w, const Functor& F);

// Parameters in order. Context refs: `ctx` (the context) or `ext<k>` (the
// context extended by the type parameter at position k). A term parameter
// names its context and `type<k>`; the context must be the one of that type.
struct Scheme {
  struct Param {
    bool term = false;
    std::string context;
    int type = -1;  // term parameters only
  };
  std::string name;
  std::vector<Param> params;
};
// Throws IllTypedParameter on malformed refs.
Scheme resolve_scheme(const RawScheme& raw);

struct Instantiation {
  Fibration fibration;                      // Inst(P) -> C
  std::vector<int> slot;                    // parameter -> index into types or terms
  std::vector<bool> is_term;                // by parameter
  std::vector<std::vector<Obj>> types;      // object -> objects of T
  std::vector<std::vector<Mor>> terms;      // object -> sections in C
  std::vector<std::vector<Mor>> type_maps;  // morphism -> morphisms of T

  const FinCategory& cat() const { return fibration.total(); }
};
// Throws IllTypedParameter(position).
Instantiation instantiate(const Scheme& scheme, const Comprehension& w);
Instantiation instantiate(const Scheme& scheme, const Comprehension& w, const DisplayData& dd);

// Context functor Inst(P) -> C named by a ref. Throws IllTypedParameter.
Functor context_functor(const Instantiation& inst, const Comprehension& w, const std::string& ref);

struct FCoSwP {
  Comprehension comprehension;
  Scheme scheme;
  Instantiation inst;
  StrictPullback target;  // Inst(P) x_C C^->
  Fibration structure;    // S -> C
  Functor comparison;     // S -> target.cat
};

// S = full subcategory of Inst(P) x_C C^-> on the objects (I, a) accepted
// by keep (all when empty).
using StructureFilter = std::function<bool(const Instantiation&, Obj, Mor)>;
FCoSwP make_fcoswp(Comprehension w, Scheme scheme, const StructureFilter& keep = {});
// Accepts (I, a) when every type component of I displays an identity; has a
// terminal object whenever the base does.
StructureFilter identity_types(const Comprehension& w);
FCoSwP make_fcoswp(Comprehension w, Scheme scheme, Instantiation inst, StrictPullback target,
                   Fibration structure, Functor comparison);
StrictPullback instantiation_target(const Instantiation& inst, const Comprehension& w);

// Clauses: comprehension, fibration, faithful, isofibration, amnestic.
ModelReport check_fcoswp(const FCoSwP& w);

struct FCoSwPPullback {
  FCoSwP result;
  std::optional<Functor> instantiation_iso;  // Inst(F*P) -> F*Inst(P)
  std::optional<Functor> display_iso;        // D(F*T) -> F*D(T)
};
// Throws NotDiscrete.
FCoSwPPullback pullback_fcoswp(const Functor& F, const FCoSwP& w);

// Verdict on a comparison functor.
struct ComparisonVerdict {
  bool faithful = false, full = false, essentially_surjective = false, iso = false;
  std::string witness;
  bool equivalence() const { return faithful && full && essentially_surjective; }
};
ComparisonVerdict classify_comparison(const Functor& K);

// For an explicit filter the filtered colimit stabilises at the minimum U0,
// so the quotient FCoSwP is the restriction along C/U0 -> C. The
// same-objects model (hom(X, Y) = C(X * U0, Y)) is built alongside; it is
// equivalent, but picks up isomorphisms to objects outside the image, so
// only its faithfulness and amnesticity are meaningful.
struct FCoSwPQuotient {
  Obj minimum;
  QuotientCategory base;                  // same-objects model of C_phi
  FCoSwPPullback restricted;              // over C/U0
  bool base_equivalent = false;           // C/U0 ~ C_phi
  FCoSwP same_objects;                    // over the same-objects model
  Functor instantiation_comparison;       // Inst(P)_phi -> Inst(P_phi), same-objects model
  ComparisonVerdict instantiation;

  const FCoSwP& result() const { return restricted.result; }
};
// Throws NoTerminalInT, NoTerminalInS or MissingProducts.
FCoSwPQuotient fcoswp_filter_quotient(const FCoSwP& w, const std::vector<Obj>& phi);
FCoSwPQuotient fcoswp_filter_quotient(const FCoSwP& w, const Filter<FinCategory>& phi);

// Quotient of each display category against the display category of the
// quotient comprehension, in the order display, pointed, pointed_all,
// cartesian.
std::vector<ComparisonVerdict> display_quotient_comparison(const Comprehension& w,
                                                           const std::vector<Obj>& phi);

// Functor-level helpers.
Functor arrow_functor(const Functor& P, const ArrowCategory& from, const ArrowCategory& to);
// E -> E_phi, t |-> class of R t.
Functor quotient_projection(const FibrationQuotient& fq);
// K : E -> D whose images of the restriction counits are invertible, pushed
// down to E_phi -> D. Throws NotAFunctor.
Functor transport(const Functor& K, const FibrationQuotient& fq);
// Common-source functors into a strict pullback. Throws NotAFunctor.
Functor pair_into(const StrictPullback& sp, const Functor& L, const Functor& R);

// Polynomial functors on finite sets (arity-1 probe): f : A -> C,
// g : A -> B, h : B -> C.
struct PolynomialTriple {
  SetPower::Mor f, g, h;
};
// h_! g_* f^* applied to x : X -> C. Throws MismatchedEndpoints.
SetPower::Mor polynomial_apply(const SetPower& c, const PolynomialTriple& t, const SetPower::Mor& x);

// Endofunctor of Set with C = 1: X |-> sum_b X^{arity[b]}.
struct Polynomial {
  std::vector<int> arity;

  int size(int n) const;
  // Elements of P(n) as (shape, children).
  std::vector<std::pair<int, std::vector<int>>> elements(int n) const;
  int index(int n, int shape, const std::vector<int>& children) const;
  // P on a map [n] -> [m], as a table on element indices.
  std::vector<int> map(int n, int m, const std::vector<int>& h) const;
};
// Throws MismatchedEndpoints unless tgt h = 1.
Polynomial polynomial_of(const PolynomialTriple& t);

struct Algebra {
  int carrier = 0;
  std::vector<int> structure;  // P(carrier) -> carrier, by element index
  auto operator<=>(const Algebra&) const = default;
};

struct AlgebraCategory {
  CategoryRef cat;
  std::vector<Algebra> algebras;             // by object
  std::vector<std::vector<int>> underlying;  // by morphism
};
// Carriers of size 0..max_carrier; structure-preserving maps.
AlgebraCategory endofunctor_algebras(const Polynomial& p, int max_carrier);

struct InitialAlgebraSearch {
  std::optional<Algebra> found;
  std::vector<int> witnesses;  // unique morphism into each algebra, by object
  bool found_within_bound() const { return found.has_value(); }
};
InitialAlgebraSearch initial_algebra_search(const Polynomial& p, int max_carrier);

// Bounded free-monad algebras: values on every term of depth <= depth over
// the carrier, with leaves fixed and node values given by the children.
struct TermAlgebraCategory {
  CategoryRef cat;
  std::vector<int> carrier;                       // by object
  std::vector<std::vector<int>> values;           // by object, on the term list of its carrier
  std::vector<std::vector<int>> underlying;       // by morphism
};
struct Term {
  int leaf = -1;  // carrier element, or -1 for a node
  int shape = -1;
  std::vector<Term> children;
  bool operator==(const Term& o) const;
  bool operator<(const Term& o) const;
};
std::vector<Term> terms_up_to(const Polynomial& p, int n, int depth);
TermAlgebraCategory term_algebras(const Polynomial& p, int max_carrier, int depth);

// F-algebra seen by restricting along the embedding of one-layer terms;
// embed(shape, children) returns the term used for (shape, children).
using LayerEmbedding = std::function<Term(int shape, const std::vector<int>& children)>;
LayerEmbedding standard_embedding();
// Throws NotAFunctor if an image is not an algebra or a map stops being a
// morphism.
Functor restriction_functor(const Polynomial& p, const TermAlgebraCategory& t, const AlgebraCategory& f,
                            int depth, const LayerEmbedding& embed);
ComparisonVerdict check_algebra_equivalence(const Functor& restriction);

}  // namespace catquot
