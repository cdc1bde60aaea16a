#include "catquot/model.hpp"

#include <algorithm>
#include <map>

#include "catquot/adjoint.hpp"
#include "catquot/limits.hpp"

namespace catquot {

ModelData resolve_model(const CategoryRef& c, const RawModel& raw) {
  return {c, resolve_class(*c, raw.fib), resolve_class(*c, raw.cof), resolve_class(*c, raw.weq)};
}

std::string bits(const MorClass& s) {
  std::string out(s.size(), '0');
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s.test(k)) out[k] = '1';
  return out;
}

LiftingTable::LiftingTable(const FinCategory& c) {
  const auto n = static_cast<std::size_t>(c.morphism_count());
  right_of_.assign(n, MorClass(n));
  left_of_.assign(n, MorClass(n));
  for (Mor i : c.morphisms())
    for (Mor p : c.morphisms())
      if (has_lifting(c, i, p)) {
        right_of_[i.v].set(p.v);
        left_of_[p.v].set(i.v);
      }
}

MorClass LiftingTable::llp(const MorClass& r) const {
  MorClass out(r.size());
  for (std::size_t i = 0; i < right_of_.size(); ++i)
    if (r.is_subset_of(right_of_[i])) out.set(i);
  return out;
}

MorClass LiftingTable::rlp(const MorClass& l) const {
  MorClass out(l.size());
  for (std::size_t p = 0; p < left_of_.size(); ++p)
    if (l.is_subset_of(left_of_[p])) out.set(p);
  return out;
}

bool ModelReport::ok() const { return first_failure() == nullptr; }

const Clause* ModelReport::first_failure() const {
  for (const auto& c : clauses)
    if (!c.ok) return &c;
  return nullptr;
}

std::vector<Violation> ModelReport::violations() const {
  std::vector<Violation> out;
  for (const auto& c : clauses)
    if (!c.ok) out.push_back({ErrorKind::AxiomFailure, c.name + ": " + c.witness});
  return out;
}

namespace {

std::optional<Mor> unfactorable(const FinCategory& c, const MorClass& l, const MorClass& r) {
  for (Mor f : c.morphisms()) {
    bool found = false;
    for (Obj m : c.objects()) {
      for (Mor a : c.hom(c.src(f), m)) {
        if (!l.test(a.v)) continue;
        for (Mor b : c.hom(m, c.tgt(f)))
          if (r.test(b.v) && c.compose(b, a) == f) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return f;
  }
  return std::nullopt;
}

// f is a retract of g in the arrow category.
bool is_retract(const FinCategory& c, Mor f, Mor g) {
  for (Mor a : c.hom(c.src(f), c.src(g)))
    for (Mor b : c.hom(c.tgt(f), c.tgt(g))) {
      if (c.compose(g, a) != c.compose(b, f)) continue;
      for (Mor a2 : c.hom(c.src(g), c.src(f))) {
        if (!c.is_identity(c.compose(a2, a))) continue;
        for (Mor b2 : c.hom(c.tgt(g), c.tgt(f)))
          if (c.is_identity(c.compose(b2, b)) && c.compose(f, a2) == c.compose(b2, g)) return true;
      }
    }
  return false;
}

std::optional<std::pair<Mor, Mor>> retract_escape(const FinCategory& c, const MorClass& s) {
  for (Mor f : c.morphisms()) {
    if (s.test(f.v)) continue;
    for (Mor g : c.morphisms())
      if (s.test(g.v) && is_retract(c, f, g)) return std::make_pair(f, g);
  }
  return std::nullopt;
}

std::string first_difference(const FinCategory& c, const MorClass& want, const MorClass& got) {
  for (Mor f : c.morphisms())
    if (want.test(f.v) != got.test(f.v))
      return c.mor_name(f) + (got.test(f.v) ? " should not be in the class" : " missing from the class");
  return {};
}

}  // namespace

ModelReport check_wfs(const FinCategory& c, const MorClass& l, const MorClass& r, const LiftingTable* table) {
  std::optional<LiftingTable> own;
  if (!table) table = &own.emplace(c);
  ModelReport rep;
  Clause fac{"factorization", true, {}};
  if (auto f = unfactorable(c, l, r)) {
    fac.ok = false;
    fac.witness = c.mor_name(*f) + " has no factorization";
  }
  rep.clauses.push_back(fac);
  auto llp = table->llp(r);
  rep.clauses.push_back({"llp", llp == l, first_difference(c, llp, l)});
  auto rlp = table->rlp(l);
  rep.clauses.push_back({"rlp", rlp == r, first_difference(c, rlp, r)});
  Clause ret{"retract", true, {}};
  for (const auto* s : {&l, &r})
    if (auto w = retract_escape(c, *s); w && ret.ok) {
      ret.ok = false;
      ret.witness = c.mor_name(w->first) + " is a retract of " + c.mor_name(w->second);
    }
  rep.clauses.push_back(ret);
  return rep;
}

namespace {

ModelReport axioms(const ModelData& m, const LiftingTable* table) {
  const auto& c = *m.cat;
  std::optional<LiftingTable> own;
  if (!table) table = &own.emplace(c);
  ModelReport rep;
  const std::pair<const char*, const MorClass*> named[] = {{"F", &m.fib}, {"C", &m.cof}, {"W", &m.weq}};

  Clause ids{"identities", true, {}};
  for (Obj x : c.objects())
    for (const auto& [n, s] : named)
      if (!s->test(c.id(x).v) && ids.ok) {
        ids.ok = false;
        ids.witness = std::string(n) + " lacks " + c.mor_name(c.id(x));
      }
  rep.clauses.push_back(ids);

  Clause comp{"composition", true, {}};
  Clause two{"two-of-three", true, {}};
  for (Mor f : c.morphisms())
    for (Mor g : c.out(c.tgt(f))) {
      Mor gf = c.compose(g, f);
      for (const auto& [n, s] : named)
        if (s->test(f.v) && s->test(g.v) && !s->test(gf.v) && comp.ok) {
          comp.ok = false;
          comp.witness = std::string(n) + " lacks " + c.mor_name(g) + " . " + c.mor_name(f);
        }
      int k = m.weq.test(f.v) + m.weq.test(g.v) + m.weq.test(gf.v);
      if (k == 2 && two.ok) {
        two.ok = false;
        two.witness = c.mor_name(g) + " . " + c.mor_name(f);
      }
    }
  rep.clauses.push_back(comp);
  rep.clauses.push_back(two);

  auto append = [&](const std::string& prefix, const ModelReport& w) {
    for (const auto& cl : w.clauses) rep.clauses.push_back({prefix + " " + cl.name, cl.ok, cl.witness});
  };
  append("wfs(C&W, F)", check_wfs(c, m.trivial_cof(), m.fib, table));
  append("wfs(C, F&W)", check_wfs(c, m.cof, m.trivial_fib(), table));
  return rep;
}

}  // namespace

ModelReport check_model_structure(const ModelData& m, const LiftingTable* table) {
  const auto& c = *m.cat;
  if (auto flc = check_flc(c); !flc.ok) throw Error(ErrorKind::FLCRequired, c.name() + ": " + flc.failure);
  return axioms(m, table);
}

// --- model filters ----------------------------------------------------------

ModelFilterCertificate check_model_filter(const ModelData& m, const Filter<FinCategory>& phi) {
  const auto& c = *m.cat;
  auto one = terminal_object(c);
  if (!one) throw Error(ErrorKind::NoTerminal, c.name());
  ModelFilterCertificate cert{phi.objects(), {}, {}};
  for (Obj u : cert.filter) {
    Mor bang = c.hom(u, *one).front();
    if (!m.fib.test(bang.v)) throw Error(ErrorKind::NotFibrant, c.obj_name(u));
    cert.fibrant.emplace_back(u, bang);
  }
  Products prods(c);
  for (Mor f : c.morphisms()) {
    for (const auto* s : {&m.cof, &m.weq}) {
      if (!s->test(f.v)) continue;
      for (Obj u : cert.filter) {
        Mor fu = prods.times(f, c.id(u));
        if (!s->test(fu.v))
          throw Error(ErrorKind::NotStable, "(" + c.mor_name(f) + ", " + c.obj_name(u) + ")");
        cert.stable.push_back({f, u, fu});
      }
    }
  }
  return cert;
}

QuotientModel quotient_model_structure(const ModelData& m, const std::vector<Obj>& phi) {
  auto p = subterminal_poset(*m.cat);
  auto r = validate_filter(*m.cat, p, phi);
  if (!r.ok()) throw Error(r.violations.front().kind, describe(r.violations));
  return quotient_model_structure(m, *r.filter);
}

QuotientModel quotient_model_structure(const ModelData& m, const Filter<FinCategory>& phi) {
  auto cert = check_model_filter(m, phi);
  auto q = filter_quotient(m.cat, phi);
  ModelData qm{q.cat, transfer_class(q, m.fib), transfer_class(q, m.cof), transfer_class(q, m.weq)};
  auto rep = check_model_structure(qm);
  if (!rep.ok())
    throw Error(ErrorKind::PreservationFailure, "quotient model structure: " + describe(rep.violations()));
  const auto& c = *m.cat;
  const std::pair<const MorClass*, const MorClass*> pairs[] = {
      {&m.fib, &qm.fib}, {&m.cof, &qm.cof}, {&m.weq, &qm.weq}};
  for (Mor f : c.morphisms())
    for (const auto& [src, dst] : pairs)
      if (src->test(f.v) && !dst->test(q.projection(f).v))
        throw Error(ErrorKind::PreservationFailure, "class of " + c.mor_name(f) + " not preserved");
  if (check_right_properness(m).ok) {
    if (auto rp = check_right_properness(qm); !rp.ok)
      throw Error(ErrorKind::PreservationFailure, "right properness: " + rp.witness);
  }
  return {std::move(q), std::move(qm), std::move(cert), std::move(rep)};
}

// --- properties -------------------------------------------------------------

namespace {

PropertyVerdict stable_under_pullback(const ModelData& m, const MorClass& moving, const MorClass& along,
                                      const MorClass& target) {
  const auto& c = *m.cat;
  for (Mor w : c.morphisms()) {
    if (!moving.test(w.v)) continue;
    for (Mor p : c.morphisms()) {
      if (!along.test(p.v) || c.tgt(p) != c.tgt(w)) continue;
      auto pb = pullback(c, p, w);  // legs[0] : P -> src p is the pullback of w
      if (!pb) return {false, "no pullback of " + c.mor_name(w) + " along " + c.mor_name(p)};
      if (!target.test(pb->legs[0].v))
        return {false, c.mor_name(w) + " pulled back along " + c.mor_name(p)};
    }
  }
  return {};
}

}  // namespace

PropertyVerdict check_right_properness(const ModelData& m) {
  return stable_under_pullback(m, m.weq, m.fib, m.weq);
}

PropertyVerdict check_tcp(const ModelData& m) {
  auto tc = m.trivial_cof();
  return stable_under_pullback(m, tc, m.fib, tc);
}

PropertyVerdict check_cim(const ModelData& m) {
  const auto& c = *m.cat;
  auto monos = monomorphisms(c);
  for (Mor f : c.morphisms())
    if (monos.test(f.v) && !m.cof.test(f.v)) return {false, c.mor_name(f) + " is mono but not a cofibration"};
  return {};
}

PropertyVerdict check_cem(const ModelData& m) {
  if (auto v = check_cim(m); !v.ok) return v;
  const auto& c = *m.cat;
  auto monos = monomorphisms(c);
  for (Mor f : c.morphisms())
    if (m.cof.test(f.v) && !monos.test(f.v)) return {false, c.mor_name(f) + " is a cofibration but not mono"};
  return {};
}

PropertyVerdict check_cl(const ModelData& m) {
  const auto& c = *m.cat;
  auto one = terminal_object(c);
  if (!one) return {false, "no terminal object"};
  if (!m.cof.test(c.id(*one).v)) return {false, "identity of the terminal object"};
  Products prods(c);
  std::map<std::pair<int, int>, std::optional<FinCone>> pbs;
  auto pb = [&](Mor f, Mor g) -> const std::optional<FinCone>& {
    auto key = std::make_pair(f.v, g.v);
    auto it = pbs.find(key);
    if (it == pbs.end()) it = pbs.emplace(key, pullback(c, f, g)).first;
    return it->second;
  };
  std::vector<Mor> cofs;
  for (Mor f : c.morphisms())
    if (m.cof.test(f.v)) cofs.push_back(f);
  for (Mor a : cofs)
    for (Mor b : cofs) {
      Mor ab = prods.times(a, b);
      if (!m.cof.test(ab.v)) return {false, c.mor_name(a) + " x " + c.mor_name(b)};
    }
  // cospan a -> x <- b in the arrow category, squares (s0, s1) and (t0, t1)
  for (Mor x : cofs)
    for (Mor a : cofs)
      for (Mor s0 : c.hom(c.src(a), c.src(x)))
        for (Mor s1 : c.hom(c.tgt(a), c.tgt(x))) {
          if (c.compose(x, s0) != c.compose(s1, a)) continue;
          for (Mor b : cofs)
            for (Mor t0 : c.hom(c.src(b), c.src(x)))
              for (Mor t1 : c.hom(c.tgt(b), c.tgt(x))) {
                if (c.compose(x, t0) != c.compose(t1, b)) continue;
                const auto& top = pb(s0, t0);
                const auto& bottom = pb(s1, t1);
                if (!top || !bottom) continue;
                auto induced = mediate(c, *bottom, top->apex,
                                       {c.compose(a, top->legs[0]), c.compose(b, top->legs[1])});
                if (!induced) return {false, "no induced map for " + c.mor_name(a) + ", " + c.mor_name(b)};
                if (!m.cof.test(induced->v))
                  return {false, "pullback of " + c.mor_name(a) + ", " + c.mor_name(b) + " over " + c.mor_name(x)};
              }
        }
  return {};
}

PropertyVerdict check_fe(const ModelData& m) {
  const auto& c = *m.cat;
  for (Mor p : c.morphisms()) {
    if (!m.fib.test(p.v)) continue;
    auto pf = pullback_functor(m.cat, p);
    if (!pf) return {false, "pullback along " + c.mor_name(p) + " missing"};
    if (!try_right_adjoint(pf->functor)) return {false, "no right adjoint to pullback along " + c.mor_name(p)};
  }
  return {};
}

// --- enumeration --------------------------------------------------------------

std::vector<ModelData> enumerate_model_structures(const CategoryRef& cp, SearchBudget* budget) {
  const auto& c = *cp;
  if (auto flc = check_flc(c); !flc.ok) throw Error(ErrorKind::FLCRequired, c.name() + ": " + flc.failure);
  SearchBudget own;
  if (!budget) budget = &own;
  LiftingTable table(c);
  const auto n = static_cast<std::size_t>(c.morphism_count());
  auto closure = [&](const MorClass& s) {
    budget->tick();
    return table.llp(table.rlp(s));
  };

  struct Wfs {
    MorClass left, right;
  };
  std::vector<Wfs> systems;
  auto consider = [&](const MorClass& l) {
    auto r = table.rlp(l);
    if (!unfactorable(c, l, r)) systems.push_back({l, r});
  };
  // NextClosure: closed sets in lectic order.
  MorClass a = closure(MorClass(n));
  consider(a);
  while (true) {
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (a.test(i)) continue;
      MorClass prefix(n);
      for (std::size_t k = 0; k < i; ++k) prefix[k] = a[k];
      prefix.set(i);
      MorClass b = closure(prefix);
      bool same_prefix = true;
      for (std::size_t k = 0; k < i && same_prefix; ++k) same_prefix = a[k] == b[k];
      if (same_prefix) {
        a = std::move(b);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
    consider(a);
  }

  std::vector<ModelData> out;
  for (const auto& w1 : systems)      // (C /\ W, F)
    for (const auto& w2 : systems) {  // (C, F /\ W)
      budget->tick();
      if (!w1.left.is_subset_of(w2.left)) continue;
      MorClass weq(n);
      for (Mor l : c.morphisms()) {
        if (!w1.left.test(l.v)) continue;
        for (Mor r : c.out(c.tgt(l)))
          if (w2.right.test(r.v)) weq.set(c.compose(r, l).v);
      }
      ModelData m{cp, w1.right, w2.left, weq};
      if (m.trivial_cof() != w1.left || m.trivial_fib() != w2.right) continue;
      if (axioms(m, &table).ok()) out.push_back(std::move(m));
    }
  std::sort(out.begin(), out.end(), [](const ModelData& x, const ModelData& y) {
    return std::make_tuple(bits(x.fib), bits(x.cof), bits(x.weq)) <
           std::make_tuple(bits(y.fib), bits(y.cof), bits(y.weq));
  });
  return out;
}

}  // namespace catquot
