#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catquot/filters.hpp"
#include "catquot/morphism_class.hpp"
#include "catquot/parser.hpp"
#include "catquot/quotient.hpp"

namespace catquot {

struct ModelData {
  CategoryRef cat;
  MorClass fib, cof, weq;
  MorClass trivial_fib() const { return fib & weq; }
  MorClass trivial_cof() const { return cof & weq; }
};

ModelData resolve_model(const CategoryRef& c, const RawModel& raw);

// Class as a 0/1 string in morphism order.
std::string bits(const MorClass& s);

// lifts(i, p): every commuting square from i to p has a diagonal.
class LiftingTable {
 public:
  explicit LiftingTable(const FinCategory& c);
  bool lifts(Mor i, Mor p) const { return right_of_[i.v].test(p.v); }
  MorClass llp(const MorClass& r) const;  // left lifting against all of r
  MorClass rlp(const MorClass& l) const;

 private:
  std::vector<MorClass> right_of_;  // i -> {p : i lifts against p}
  std::vector<MorClass> left_of_;   // p -> {i : i lifts against p}
};

struct Clause {
  std::string name;
  bool ok = true;
  std::string witness;
};

struct ModelReport {
  std::vector<Clause> clauses;
  bool ok() const;
  const Clause* first_failure() const;
  std::vector<Violation> violations() const;
};

// Clauses: factorization, llp, rlp, retract.
ModelReport check_wfs(const FinCategory& c, const MorClass& l, const MorClass& r,
                      const LiftingTable* table = nullptr);

// Clauses: identities, composition, two-of-three, and the two factorization
// systems (C /\ W, F) and (C, F /\ W). Throws FLCRequired.
ModelReport check_model_structure(const ModelData& m, const LiftingTable* table = nullptr);

struct ModelFilterCertificate {
  std::vector<Obj> filter;
  std::vector<std::pair<Obj, Mor>> fibrant;  // U and U -> 1 in fib
  struct Stable {
    Mor f;
    Obj u;
    Mor product;  // f x U
  };
  std::vector<Stable> stable;  // every f in cof or weq against every U
};

// Throws NotFibrant(U) or NotStable(f, U).
ModelFilterCertificate check_model_filter(const ModelData& m, const Filter<FinCategory>& phi);

struct QuotientModel {
  QuotientCategory quotient;
  ModelData model;
  ModelFilterCertificate certificate;
  ModelReport report;
};

// Transfers the classes, re-verifies every axiom on the quotient and checks
// that P preserves F, C, W and right properness. Throws PreservationFailure.
QuotientModel quotient_model_structure(const ModelData& m, const Filter<FinCategory>& phi);
QuotientModel quotient_model_structure(const ModelData& m, const std::vector<Obj>& phi);

struct PropertyVerdict {
  bool ok = true;
  std::string witness;
};

// Pullbacks of weak equivalences along fibrations are weak equivalences.
PropertyVerdict check_right_properness(const ModelData& m);
// Monomorphisms are cofibrations / are exactly the cofibrations.
PropertyVerdict check_cim(const ModelData& m);
PropertyVerdict check_cem(const ModelData& m);
// Pullbacks of trivial cofibrations along fibrations are trivial cofibrations.
PropertyVerdict check_tcp(const ModelData& m);
// Cofibrations are closed under the terminal object, binary products and
// pullbacks computed in the arrow category.
PropertyVerdict check_cl(const ModelData& m);
// Pullback along each fibration has a right adjoint between slices.
PropertyVerdict check_fe(const ModelData& m);

// Every model structure on c, sorted by (F, C, W) bitstrings. Throws
// FLCRequired or SearchExhausted.
std::vector<ModelData> enumerate_model_structures(const CategoryRef& c, SearchBudget* budget = nullptr);

}  // namespace catquot
