#pragma once

#include <memory>
#include <string>
#include <vector>

#include "catquot/category.hpp"

namespace catquot {

struct Functor {
  std::string name;
  CategoryRef src, tgt;
  std::vector<Obj> fobj;  // indexed by source object
  std::vector<Mor> fmor;  // indexed by source morphism

  Obj operator()(Obj x) const { return fobj[x.v]; }
  Mor operator()(Mor f) const { return fmor[f.v]; }
};

struct RawFunctor {
  std::string name, src, tgt;
  std::vector<std::pair<std::string, std::string>> fobj, fmor;
  int line = 0;
};

// Sources, targets, identities and composition, exhaustively.
std::vector<Violation> check_functor(const Functor& F);

Functor identity_functor(const CategoryRef& c);
Functor compose(const Functor& G, const Functor& F);  // G . F

// Resolves names; identities may be omitted from fmor.
Functor resolve_functor(const RawFunctor& raw, const CategoryRef& src, const CategoryRef& tgt);

// Component-wise natural transformation F => G.
struct NatTrans {
  std::vector<Mor> components;  // indexed by source object of F
};

std::vector<Violation> check_natural(const Functor& F, const Functor& G, const NatTrans& a);

bool is_faithful(const Functor& F);
bool is_full(const Functor& F);

// Full and faithful and bijective on objects (strict isomorphism of categories).
bool is_isomorphism(const Functor& F);

}  // namespace catquot
