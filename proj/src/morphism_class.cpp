#include "catquot/morphism_class.hpp"

#include "catquot/generic.hpp"

namespace catquot {

MorClass all_morphisms(const FinCategory& c) {
  MorClass s(c.morphism_count());
  s.set();
  return s;
}

MorClass identities(const FinCategory& c) {
  MorClass s(c.morphism_count());
  for (Obj x : c.objects()) s.set(c.id(x).v);
  return s;
}

MorClass isomorphisms(const FinCategory& c) {
  MorClass s(c.morphism_count());
  for (Mor f : c.morphisms())
    if (is_iso(c, f)) s.set(f.v);
  return s;
}

MorClass monomorphisms(const FinCategory& c) {
  MorClass s(c.morphism_count());
  for (Mor f : c.morphisms())
    if (is_mono(c, f)) s.set(f.v);
  return s;
}

MorClass resolve_class(const FinCategory& c, const ClassSpec& spec) {
  switch (spec.kind) {
    case ClassSpec::Kind::All:
      return all_morphisms(c);
    case ClassSpec::Kind::Isos:
      return isomorphisms(c);
    case ClassSpec::Kind::Monos:
      return monomorphisms(c);
    case ClassSpec::Kind::Identities:
      return identities(c);
    case ClassSpec::Kind::List:
      break;
  }
  MorClass s = identities(c);
  for (const auto& n : spec.ids) s.set(c.mor(n).v);
  return s;
}

std::string describe(const FinCategory& c, const MorClass& s) {
  std::string out;
  for (auto i = s.find_first(); i != MorClass::npos; i = s.find_next(i)) {
    if (!out.empty()) out += ",";
    out += c.mor_name(Mor{static_cast<int>(i)});
  }
  return out;
}

}  // namespace catquot
