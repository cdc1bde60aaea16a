#pragma once

#include <boost/dynamic_bitset.hpp>
#include <string>

#include "catquot/category.hpp"
#include "catquot/parser.hpp"

namespace catquot {

// A class of morphisms of a FinCategory, indexed by Mor.
using MorClass = boost::dynamic_bitset<>;

MorClass all_morphisms(const FinCategory& c);
MorClass identities(const FinCategory& c);
MorClass isomorphisms(const FinCategory& c);
MorClass monomorphisms(const FinCategory& c);
MorClass resolve_class(const FinCategory& c, const ClassSpec& spec);

// Comma-separated morphism names in index order.
std::string describe(const FinCategory& c, const MorClass& s);

}  // namespace catquot
