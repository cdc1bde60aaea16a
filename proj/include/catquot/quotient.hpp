#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catquot/filters.hpp"
#include "catquot/functor.hpp"
#include "catquot/limits.hpp"
#include "catquot/morphism_class.hpp"
#include "catquot/set_power.hpp"

namespace catquot {

// Filter quotient of a finite category by an explicit filter. Morphisms
// X -> Y are represented by base morphisms X * U0 -> Y at the filter
// minimum U0; the germ construction over every U in the filter is built
// alongside and compared.
struct QuotientCategory {
  CategoryRef base;
  Filter<FinCategory> filter;
  Obj minimum;
  std::shared_ptr<const Products> products;  // chosen products of base
  CategoryRef cat;
  Functor projection;
  std::vector<Mor> representative;  // quotient morphism -> base morphism X * U0 -> Y

  struct Member {
    Obj u;
    Mor f;  // base morphism X * u -> Y
  };
  CategoryRef germ_cat;
  std::vector<std::vector<Member>> germs;  // germ_cat morphism -> class members
  Functor comparison;                      // germ_cat -> cat, identity on objects

  const FinCategory& category() const { return *cat; }
};

// Throws MissingProducts(U, X) or OptimizationMismatch.
QuotientCategory filter_quotient(const CategoryRef& c, const Filter<FinCategory>& phi);
QuotientCategory filter_quotient(const CategoryRef& c, const std::vector<Obj>& phi);

// Composites of arbitrary class members land in the expected class.
std::vector<Violation> check_germ_composition(const QuotientCategory& q);

// Canonical functor C_phi -> C_psi for phi contained in psi.
Functor quotient_comparison(const QuotientCategory& phi, const QuotientCategory& psi);

// <f, pi_U> : X * U -> Y * U for a representative f : X * U -> Y.
Mor over_filter_element(const QuotientCategory& q, Obj x, Obj u, Mor f);

// f is in S_phi when some member (U, f) has <f, pi_U> in S. Throws
// NotProductStable when S is not stable under products with filter elements.
MorClass transfer_class(const QuotientCategory& q, const MorClass& s);
void require_product_stable(const QuotientCategory& q, const MorClass& s);

enum class Property { FiniteLimits, FiniteColimits, Monos, Exponentials, SubobjectClassifier, NnoProbe };
std::string to_string(Property p);
std::optional<Property> parse_property(const std::string& s);

struct PreservationInstance {
  enum class Verdict { Pass, Fail, Skipped };
  std::string what;
  Verdict verdict;
};

struct PreservationReport {
  Property property;
  Evidence evidence = Evidence::Exhaustive;
  std::vector<PreservationInstance> instances;
  bool ok() const;
  int count(PreservationInstance::Verdict v) const;
};

PreservationReport verify_preservation(const QuotientCategory& q, Property p);

// --- finite-set powers ------------------------------------------------------

// Principal quotient of a set power; the minimum must be a 0/1 tuple.
struct SetPowerQuotient {
  SetPower base;
  SetPower cat;
  SetPower::Obj minimum;
  SetPower::Mor project(const SetPower::Mor& f) const { return cat.project(f); }
  // <f, pi_U0> in the base for a quotient morphism f.
  SetPower::Mor over_minimum(const SetPower::Mor& f) const;
};

// Cross-checks hom sizes against base homs out of X * U0 on the probes.
SetPowerQuotient filter_quotient(const SetPower& c, const Filter<SetPower>& phi);

PreservationReport verify_preservation(const SetPowerQuotient& q, Property p);

}  // namespace catquot
