#pragma once

// Converts library categories to the plain tables the oracles work on.

#include "catquot/category.hpp"
#include "catquot/functor.hpp"
#include "oracles.hpp"

inline oracle::Table table_of(const catquot::FinCategory& c) {
  oracle::Table t;
  t.objects = c.object_count();
  for (catquot::Mor f : c.morphisms()) {
    t.src.push_back(c.src(f).v);
    t.tgt.push_back(c.tgt(f).v);
    t.is_id.push_back(c.is_identity(f));
  }
  for (catquot::Mor f : c.morphisms())
    for (catquot::Mor g : c.out(c.tgt(f))) t.comp[{g.v, f.v}] = c.compose(g, f).v;
  return t;
}

inline std::vector<bool> oracle_cartesian(const catquot::Functor& p) {
  std::vector<int> po, pm;
  for (catquot::Obj x : p.fobj) po.push_back(x.v);
  for (catquot::Mor f : p.fmor) pm.push_back(f.v);
  return oracle::cartesian(table_of(*p.src), table_of(*p.tgt), po, pm);
}
