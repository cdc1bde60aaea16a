#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "catquot/category.hpp"
#include "catquot/functor.hpp"
#include "catquot/generic.hpp"

namespace catquot {

using FinCone = Cone<FinCategory>;
using FinDiagram = Diagram<FinCategory>;

// Labeling functor from a finite index category; edges are its
// non-identity morphisms.
FinDiagram diagram_of(const Functor& labeling);

// Candidate apexes and legs in input order; the first limiting cone wins.
std::optional<FinCone> limit(const FinCategory& c, const FinDiagram& d, SearchBudget* budget = nullptr);
std::optional<FinCone> colimit(const FinCategory& c, const FinDiagram& d, SearchBudget* budget = nullptr);

std::optional<Obj> terminal_object(const FinCategory& c);
std::optional<Obj> initial_object(const FinCategory& c);
std::optional<FinCone> binary_product(const FinCategory& c, Obj x, Obj y);
std::optional<FinCone> binary_coproduct(const FinCategory& c, Obj x, Obj y);
std::optional<FinCone> equalizer(const FinCategory& c, Mor f, Mor g);
std::optional<FinCone> coequalizer(const FinCategory& c, Mor f, Mor g);
std::optional<FinCone> pullback(const FinCategory& c, Mor f, Mor g);  // legs: to src f, src g, tgt
std::optional<FinCone> pushout(const FinCategory& c, Mor f, Mor g);   // legs: from tgt f, tgt g, src

// Finite limits and colimits: terminal, initial, binary (co)products and
// (co)equalizers for every pair.
struct FlcReport {
  bool ok = true;
  std::string failure;
};
FlcReport check_flc(const FinCategory& c);

// Memoised chosen binary products.
class Products {
 public:
  explicit Products(const FinCategory& c) : c_(&c) {}
  const FinCone* get(Obj x, Obj y) const;
  const FinCone& require(Obj x, Obj y) const;  // throws NoProducts
  // <a, b> : w -> x * y
  Mor pair(Obj x, Obj y, Mor a, Mor b) const;
  // f * g : src f * src g -> tgt f * tgt g
  Mor times(Mor f, Mor g) const;
  const FinCategory& category() const { return *c_; }

 private:
  const FinCategory* c_;
  mutable std::map<std::pair<int, int>, std::optional<FinCone>> cache_;
};

struct Exponential {
  Obj object;
  Mor eval;  // object * base -> target
};

// Throws NoProducts when a product with the exponent is missing.
std::optional<Exponential> exponential(const FinCategory& c, Obj base, Obj target);
bool is_exponential(const FinCategory& c, const Products& prods, Obj base, Obj target,
                    const Exponential& e);
// Same, with an explicit product cone for object * base.
bool is_exponential(const FinCategory& c, const Products& prods, const FinCone& object_times_base,
                    Obj base, Obj target, Mor eval);

// Monos into x up to isomorphism over x; each class lists its members.
std::vector<std::vector<Mor>> subobjects(const FinCategory& c, Obj x);

struct SubobjectClassifier {
  Obj omega;
  Mor truth;  // terminal -> omega
};

std::optional<SubobjectClassifier> subobject_classifier(const FinCategory& c);
bool is_subobject_classifier(const FinCategory& c, Obj terminal, const SubobjectClassifier& s);

}  // namespace catquot
