#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catquot/constructions.hpp"
#include "catquot/functor.hpp"
#include "catquot/limits.hpp"
#include "catquot/set_power.hpp"

namespace catquot {

struct Adjunction {
  Functor left, right;  // left : C -> D, right : D -> C
  NatTrans unit;        // id_C => right . left
  NatTrans counit;      // left . right => id_D
};

// Pointwise right adjoint from terminal objects of the comma categories
// (left | d). Throws NoAdjoint naming the first d without one.
Adjunction right_adjoint(const Functor& left);
std::optional<Adjunction> try_right_adjoint(const Functor& left);

// Triangle identities plus the hom bijection D(L c, d) = C(c, R d).
std::vector<Violation> check_adjunction(const Adjunction& a);

// Pullback along f between slices, using chosen pullbacks. nullopt when a
// pullback is missing.
struct PullbackFunctor {
  Slice over_target, over_source;
  Functor functor;  // over_target.cat -> over_source.cat
};
std::optional<PullbackFunctor> pullback_functor(const CategoryRef& c, Mor f);

struct LccReport {
  bool ok = true;
  std::optional<Mor> failing;  // FinCategory witness
  std::string reason;
  Evidence evidence = Evidence::Exhaustive;
};
LccReport is_locally_cartesian_closed(const CategoryRef& c);

// Dependent products along every f between probes of size at most
// max_size, for every family over src f of size at most max_size.
LccReport is_locally_cartesian_closed(const SetPower& c, int max_size = 2);

}  // namespace catquot
