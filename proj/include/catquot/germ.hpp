#pragma once

// Filter products of finite sets over the naturals with the Frechet filter.
// Sequences are finitely presented: finitely many exceptional components
// plus a tail rule. Two sequences are identified when they agree on a
// cofinite set of indices.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catquot/generic.hpp"

namespace catquot {

// {0, ..., n-1}, or the naturals.
struct SetDesc {
  std::optional<long> size;
  static SetDesc finite(long n) { return {n}; }
  static SetDesc naturals() { return {std::nullopt}; }
  bool contains(long x) const { return x >= 0 && (!size || x < *size); }
  bool operator==(const SetDesc&) const = default;
};
std::string to_string(const SetDesc& s);

// A function between component sets.
struct ComponentMap {
  enum class Kind { Table, Identity, Constant };
  Kind kind = Kind::Identity;
  std::vector<long> table;  // Table: image of each element of a finite source
  long value = 0;           // Constant
  static ComponentMap identity() { return {}; }
  static ComponentMap constant(long c) { return {Kind::Constant, {}, c}; }
  static ComponentMap of(std::vector<long> t) { return {Kind::Table, std::move(t), 0}; }
  long apply(long x) const;
  bool valid(const SetDesc& src, const SetDesc& tgt) const;
  bool operator==(const ComponentMap&) const = default;
};
std::string to_string(const ComponentMap& m);
ComponentMap compose(const ComponentMap& g, const ComponentMap& f);

struct GermObject {
  enum class Tail { Const, CardGrowth };  // CardGrowth: the n-th component has n elements
  std::map<long, SetDesc> exceptions;
  Tail tail = Tail::Const;
  SetDesc constant;
  static GermObject of(SetDesc s) { return {{}, Tail::Const, s}; }
  static GermObject card_growth() { return {{}, Tail::CardGrowth, {}}; }
  SetDesc at(long n) const;
  // Component for all n past every exception.
  SetDesc tail_at(long n) const;
};
std::string to_string(const GermObject& x);
// Same tail; exceptions are negligible.
bool germ_equal(const GermObject& x, const GermObject& y);

struct GermMorphism {
  // IdentityMap: the n-th component is the point n, from S1 into the naturals.
  // Computed: arbitrary components; equality is only checked on a prefix.
  enum class Tail { Const, IdentityMap, Computed };
  GermObject src, tgt;
  std::map<long, ComponentMap> exceptions;
  Tail tail = Tail::Const;
  ComponentMap constant;
  std::function<ComponentMap(long)> computed;
  ComponentMap at(long n) const;
  ComponentMap tail_at(long n) const;
};
std::string to_string(const GermMorphism& f);

GermMorphism germ_identity(const GermObject& x);
GermMorphism germ_point(const GermObject& tgt, long k);  // constant point k out of Const(S1)
GermMorphism identity_point();                           // n |-> n into Const(SN)

// Every component valid from some index on and at each exception.
std::vector<Violation> validate(const GermMorphism& f);

struct GermVerdict {
  enum class Kind { Equal, Distinct, UnknownBeyondCutoff };
  Kind kind;
  long verified_prefix = 0;  // UnknownBeyondCutoff: indices checked
  std::string reason;
};
std::string to_string(GermVerdict::Kind k);

inline constexpr long kGermCutoff = 64;

// Throws EndpointMismatch.
GermVerdict germ_equal(const GermMorphism& f, const GermMorphism& g, long cutoff = kGermCutoff);

// g . f. Throws EndpointMismatch or UnsupportedTailComposition.
GermMorphism germ_compose(const GermMorphism& g, const GermMorphism& f);

struct NonStandardCertificate {
  enum class Claim { NotEqualToAnyStandard, NotIsomorphicToAnyConstant };
  std::variant<GermMorphism, GermObject> subject;
  Claim claim;
  std::string reason;
};

// Confirms the claim against every standard comparator up to bound, each on
// a window of indices past the comparator.
bool replay(const NonStandardCertificate& cert, long bound, long window = 16);

struct ConstantIso {
  enum class Verdict { Yes, No, Unknown };
  Verdict verdict;
  std::optional<GermMorphism> iso;
  std::optional<NonStandardCertificate> certificate;
};
ConstantIso is_constant_iso(const GermObject& d, long a);

struct PointVerdict {
  std::optional<long> standard;  // StandardWitness(k)
  std::optional<NonStandardCertificate> certificate;
};
// p : Const(S1) -> Const(SN). Throws UnsupportedTail.
PointVerdict nonstandard_point_certificate(const GermMorphism& p);

struct StrictInitial {
  bool ok = true;
  std::string witness;
};

template <CategoryLike C>
StrictInitial check_strict_initial(const C& c, const typename C::Obj& initial) {
  for (const auto& x : c.objects())
    for (const auto& f : c.hom(x, initial))
      if (!is_iso(c, f)) return {false, c.name(f)};
  return {};
}

// Componentwise finite (co)products of Const-tail finite objects. Throws
// UnsupportedFamily otherwise.
struct GermCone {
  GermObject object;
  std::vector<GermMorphism> legs;  // injections or projections
};
GermCone finite_coproduct(const std::vector<GermObject>& parts);
GermCone finite_product(const std::vector<GermObject>& parts);

// Universal property against every Const-tail cocone / cone into / out of a
// Const(S_k), k < probe, counting Const-tail mediators.
bool check_finite_coproduct(const GermCone& c, long probe = 3);
bool check_finite_product(const GermCone& c, long probe = 3);

// A family indexed by the naturals (count empty) or by {0..count-1}.
struct GermFamily {
  GermObject member;
  std::optional<long> count;
};

using GermCocone = std::function<GermMorphism(long)>;

struct CoproductEvidence {
  enum class Verdict { FiniteCoproduct, NoMediator, NonUniqueMediator, MediatorExists };
  Verdict verdict;
  std::string tag;  // "bounded evidence" for infinite families
  GermObject competitor;
  std::vector<GermMorphism> candidate_legs, competing_legs;  // first probe_legs legs
  std::vector<GermMorphism> mediators;  // two germ-distinct, or the unique one
  std::vector<long> forcing_legs;       // NoMediator: the leg forcing each mediator
  std::optional<GermCone> coproduct;    // FiniteCoproduct
};
std::string to_string(CoproductEvidence::Verdict v);

// The shifted cocone k |-> point k into CardGrowth.
GermCocone shifted_cocone();

// Searches for mediators from the candidate into a competing cocone built
// on the same family. Throws UnsupportedFamily.
CoproductEvidence coproduct_failure_evidence(const GermFamily& family, const GermObject& candidate,
                                             const GermCocone& cocone, const GermCocone& competing = shifted_cocone(),
                                             long probe_legs = 8);

// Re-derives the verdict from the stored legs and mediators.
bool replay(const CoproductEvidence& e);

// Literals: `germ obj { 0: S3, 1: S1 } tail const S2`, `germ obj {} tail cardgrowth`,
// `germ mor { 2: [0 1] } tail identitymap`, `tail const id|const k|point k|[..]`.
GermObject parse_germ_object(std::string_view text);
GermMorphism parse_germ_morphism(std::string_view text, const GermObject& src, const GermObject& tgt);

}  // namespace catquot
