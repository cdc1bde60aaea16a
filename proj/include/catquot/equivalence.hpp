#pragma once

#include <optional>
#include <vector>

#include "catquot/functor.hpp"
#include "catquot/generic.hpp"

namespace catquot {

// Isomorphism of categories by backtracking over object bijections (pruned
// by hom-set sizes) and then hom-set bijections. A fixed object map, when
// given, is used instead of the object search.
std::optional<Functor> find_isomorphism(const CategoryRef& c, const CategoryRef& d,
                                        const std::optional<std::vector<Obj>>& objects = std::nullopt,
                                        SearchBudget* budget = nullptr);

// Objects matched by position; both categories must list them in the same order.
std::optional<Functor> find_identity_on_objects_iso(const CategoryRef& c, const CategoryRef& d,
                                                    SearchBudget* budget = nullptr);

struct Equivalence {
  Functor forward, backward;  // c -> d, d -> c
  NatTrans unit;              // id_c => backward . forward, components isos
  NatTrans counit;            // forward . backward => id_d, components isos
};

// Compares skeleta (first object of each iso class in input order), then
// extends an isomorphism of skeleta to equivalence data.
std::optional<Equivalence> find_equivalence(const CategoryRef& c, const CategoryRef& d,
                                            SearchBudget* budget = nullptr);

std::vector<Violation> check_equivalence(const Equivalence& e);

}  // namespace catquot
