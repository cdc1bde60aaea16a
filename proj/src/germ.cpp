#include "catquot/germ.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace catquot {

std::string to_string(const SetDesc& s) { return s.size ? "S" + std::to_string(*s.size) : "SN"; }

long ComponentMap::apply(long x) const {
  switch (kind) {
    case Kind::Table:
      return table.at(static_cast<std::size_t>(x));
    case Kind::Identity:
      return x;
    case Kind::Constant:
      return value;
  }
  return x;
}

bool ComponentMap::valid(const SetDesc& src, const SetDesc& tgt) const {
  switch (kind) {
    case Kind::Table:
      if (!src.size || static_cast<long>(table.size()) != *src.size) return false;
      return std::all_of(table.begin(), table.end(), [&](long v) { return tgt.contains(v); });
    case Kind::Identity:
      return src == tgt;
    case Kind::Constant:
      return src.size == 0L || tgt.contains(value);
  }
  return false;
}

std::string to_string(const ComponentMap& m) {
  switch (m.kind) {
    case ComponentMap::Kind::Identity:
      return "id";
    case ComponentMap::Kind::Constant:
      return "const " + std::to_string(m.value);
    case ComponentMap::Kind::Table:
      break;
  }
  std::string out = "[";
  for (std::size_t i = 0; i < m.table.size(); ++i) out += (i ? " " : "") + std::to_string(m.table[i]);
  return out + "]";
}

ComponentMap compose(const ComponentMap& g, const ComponentMap& f) {
  using K = ComponentMap::Kind;
  if (f.kind == K::Identity) return g;
  if (g.kind == K::Identity) return f;
  if (g.kind == K::Constant) return g;
  if (f.kind == K::Constant) return ComponentMap::constant(g.apply(f.value));
  std::vector<long> t;
  for (long v : f.table) t.push_back(g.apply(v));
  return ComponentMap::of(std::move(t));
}

namespace {

// Maps agree as functions out of src.
bool same_function(const ComponentMap& a, const ComponentMap& b, const SetDesc& src) {
  if (src.size) {
    for (long x = 0; x < *src.size; ++x)
      if (a.apply(x) != b.apply(x)) return false;
    return true;
  }
  if (a.kind != b.kind) return false;
  return a.kind != ComponentMap::Kind::Constant || a.value == b.value;
}

long last_exception(const GermObject& x) { return x.exceptions.empty() ? -1 : x.exceptions.rbegin()->first; }

long largest_value(const ComponentMap& m) {
  long v = m.kind == ComponentMap::Kind::Constant ? m.value : 0;
  for (long t : m.table) v = std::max(v, t);
  return v;
}

// An index from which every tail rule involved is uniform and valid.
long tail_start(const GermMorphism& f) {
  long b = std::max(last_exception(f.src), last_exception(f.tgt));
  if (!f.exceptions.empty()) b = std::max(b, f.exceptions.rbegin()->first);
  if (f.tail == GermMorphism::Tail::Const) b = std::max(b, largest_value(f.constant));
  if (f.src.tail == GermObject::Tail::Const && f.src.constant.size)
    b = std::max(b, *f.src.constant.size);
  return std::max(b + 1, 2L);
}

std::string list(const std::map<long, std::string>& xs) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : xs) {
    out += (first ? " " : ", ") + std::to_string(k) + ": " + v;
    first = false;
  }
  return out + (first ? "}" : " }");
}

}  // namespace

SetDesc GermObject::tail_at(long n) const { return tail == Tail::CardGrowth ? SetDesc::finite(n) : constant; }

SetDesc GermObject::at(long n) const {
  auto it = exceptions.find(n);
  return it != exceptions.end() ? it->second : tail_at(n);
}

std::string to_string(const GermObject& x) {
  std::map<long, std::string> ex;
  for (const auto& [k, s] : x.exceptions) ex[k] = to_string(s);
  return "germ obj " + list(ex) + " tail " +
         (x.tail == GermObject::Tail::CardGrowth ? "cardgrowth" : "const " + to_string(x.constant));
}

bool germ_equal(const GermObject& x, const GermObject& y) {
  if (x.tail != y.tail) return false;
  return x.tail == GermObject::Tail::CardGrowth || x.constant == y.constant;
}

ComponentMap GermMorphism::tail_at(long n) const {
  switch (tail) {
    case Tail::Const:
      return constant;
    case Tail::IdentityMap:
      return ComponentMap::of({n});
    case Tail::Computed:
      return computed(n);
  }
  return constant;
}

ComponentMap GermMorphism::at(long n) const {
  auto it = exceptions.find(n);
  return it != exceptions.end() ? it->second : tail_at(n);
}

std::string to_string(const GermMorphism& f) {
  std::map<long, std::string> ex;
  for (const auto& [k, m] : f.exceptions) ex[k] = to_string(m);
  std::string tail = f.tail == GermMorphism::Tail::IdentityMap ? "identitymap"
                     : f.tail == GermMorphism::Tail::Computed ? "computed"
                                                               : "const " + to_string(f.constant);
  return "germ mor " + list(ex) + " tail " + tail;
}

GermMorphism germ_identity(const GermObject& x) { return {x, x, {}, GermMorphism::Tail::Const, {}, {}}; }

GermMorphism germ_point(const GermObject& tgt, long k) {
  return {GermObject::of(SetDesc::finite(1)), tgt, {}, GermMorphism::Tail::Const, ComponentMap::of({k}), {}};
}

GermMorphism identity_point() {
  return {GermObject::of(SetDesc::finite(1)), GermObject::of(SetDesc::naturals()), {}, GermMorphism::Tail::IdentityMap,
          {}, {}};
}

std::vector<Violation> validate(const GermMorphism& f) {
  std::vector<Violation> out;
  for (const auto& [n, m] : f.exceptions)
    if (!m.valid(f.src.at(n), f.tgt.at(n)))
      out.push_back({ErrorKind::EndpointMismatch, "component " + std::to_string(n) + " = " + to_string(m)});
  const long b = tail_start(f);
  for (long n = b; n < b + 8; ++n)
    if (!f.tail_at(n).valid(f.src.tail_at(n), f.tgt.tail_at(n))) {
      out.push_back({ErrorKind::EndpointMismatch, "tail at " + std::to_string(n)});
      break;
    }
  return out;
}

std::string to_string(GermVerdict::Kind k) {
  switch (k) {
    case GermVerdict::Kind::Equal:
      return "Equal";
    case GermVerdict::Kind::Distinct:
      return "Distinct";
    case GermVerdict::Kind::UnknownBeyondCutoff:
      return "UnknownBeyondCutoff";
  }
  return "?";
}

GermVerdict germ_equal(const GermMorphism& f, const GermMorphism& g, long cutoff) {
  using T = GermMorphism::Tail;
  using K = GermVerdict::Kind;
  if (!germ_equal(f.src, g.src) || !germ_equal(f.tgt, g.tgt))
    throw Error(ErrorKind::EndpointMismatch, to_string(f) + " vs " + to_string(g));
  const long b = std::max(tail_start(f), tail_start(g));
  if (f.tail == T::Computed || g.tail == T::Computed) {
    long agree = 0;
    for (long n = b; n < b + cutoff; ++n)
      if (same_function(f.tail_at(n), g.tail_at(n), f.src.tail_at(n))) ++agree;
    return {K::UnknownBeyondCutoff, cutoff,
            "indices " + std::to_string(b) + ".." + std::to_string(b + cutoff - 1) + ": " + std::to_string(agree) +
                " agreements"};
  }
  if (f.tail == T::IdentityMap && g.tail == T::IdentityMap) return {K::Equal, 0, "both identity-map tails"};
  if (f.tail == T::Const && g.tail == T::Const) {
    // Const tails are uniform, so one index past every exception decides.
    if (same_function(f.constant, g.constant, f.src.tail_at(b))) return {K::Equal, 0, "tails agree from " + std::to_string(b)};
    return {K::Distinct, 0, "tails differ at every index from " + std::to_string(b)};
  }
  const auto& c = f.tail == T::Const ? f : g;
  long k = c.constant.apply(0);
  return {K::Distinct, 0, "constant point " + std::to_string(k) + " meets the identity map at most at index " + std::to_string(k)};
}

GermMorphism germ_compose(const GermMorphism& g, const GermMorphism& f) {
  using T = GermMorphism::Tail;
  if (!germ_equal(f.tgt, g.src)) throw Error(ErrorKind::EndpointMismatch, to_string(f.tgt) + " vs " + to_string(g.src));
  GermMorphism h{f.src, g.tgt, {}, T::Const, {}, {}};
  std::set<long> keys;
  for (const auto& [n, m] : f.exceptions) keys.insert(n);
  for (const auto& [n, m] : g.exceptions) keys.insert(n);
  // An index where either side is ill-typed is left to the tail rule; it is
  // a single index, so the germ is unaffected.
  for (long n : keys) {
    auto fn = f.at(n), gn = g.at(n);
    if (fn.valid(f.src.at(n), f.tgt.at(n)) && gn.valid(g.src.at(n), g.tgt.at(n))) h.exceptions[n] = compose(gn, fn);
  }
  if (f.tail == T::Computed || g.tail == T::Computed) {
    h.tail = T::Computed;
    h.computed = [g, f](long n) { return compose(g.tail_at(n), f.tail_at(n)); };
  } else if (f.tail == T::Const && g.tail == T::Const) {
    h.constant = compose(g.constant, f.constant);
  } else if (f.tail == T::IdentityMap && g.tail == T::Const &&
             g.constant.kind != ComponentMap::Kind::Table) {
    if (g.constant.kind == ComponentMap::Kind::Identity)
      h.tail = T::IdentityMap;
    else
      h.constant = g.constant;
  } else if (g.tail == T::IdentityMap && f.tail == T::Const && f.src.tail == GermObject::Tail::Const &&
             f.src.constant == SetDesc::finite(1)) {
    h.tail = T::IdentityMap;
  } else {
    throw Error(ErrorKind::UnsupportedTailComposition, to_string(g) + " after " + to_string(f));
  }
  return h;
}

bool replay(const NonStandardCertificate& cert, long bound, long window) {
  if (cert.claim == NonStandardCertificate::Claim::NotEqualToAnyStandard) {
    const auto* p = std::get_if<GermMorphism>(&cert.subject);
    if (!p) return false;
    for (long k = 0; k <= bound; ++k) {
      if (germ_equal(*p, germ_point(p->tgt, k)).kind != GermVerdict::Kind::Distinct) return false;
      for (long n = k + 1; n <= k + window; ++n)
        if (p->tail_at(n).apply(0) == k) return false;
    }
    return true;
  }
  const auto* d = std::get_if<GermObject>(&cert.subject);
  if (!d) return false;
  for (long a = 0; a <= bound; ++a) {
    if (is_constant_iso(*d, a).verdict != ConstantIso::Verdict::No) return false;
    for (long n = std::max(a, last_exception(*d)) + 1; n <= a + window; ++n)
      if (d->tail_at(n).size == a) return false;
  }
  return true;
}

ConstantIso is_constant_iso(const GermObject& d, long a) {
  using V = ConstantIso::Verdict;
  auto target = GermObject::of(SetDesc::finite(a));
  if (d.tail == GermObject::Tail::CardGrowth)
    return {V::No, std::nullopt,
            NonStandardCertificate{d, NonStandardCertificate::Claim::NotIsomorphicToAnyConstant,
                                   "|D_n| = n > " + std::to_string(a) + " for all n > " + std::to_string(a)}};
  if (d.constant == SetDesc::finite(a)) return {V::Yes, GermMorphism{d, target, {}, GermMorphism::Tail::Const, {}, {}}, {}};
  return {V::No, std::nullopt, std::nullopt};
}

PointVerdict nonstandard_point_certificate(const GermMorphism& p) {
  if (!germ_equal(p.src, GermObject::of(SetDesc::finite(1))) || !germ_equal(p.tgt, GermObject::of(SetDesc::naturals())))
    throw Error(ErrorKind::UnsupportedTail, "expected a point of Const(SN): " + to_string(p));
  switch (p.tail) {
    case GermMorphism::Tail::Const:
      return {p.constant.apply(0), std::nullopt};
    case GermMorphism::Tail::IdentityMap:
      return {std::nullopt, NonStandardCertificate{p, NonStandardCertificate::Claim::NotEqualToAnyStandard,
                                                   "component n is the point n; it meets the constant point k at most at index k"}};
    case GermMorphism::Tail::Computed:
      break;
  }
  throw Error(ErrorKind::UnsupportedTail, "computed tail");
}

// --- finite (co)products ------------------------------------------------------

namespace {

std::vector<long> sizes_at(const std::vector<GermObject>& parts, long n) {
  std::vector<long> out;
  for (const auto& p : parts) out.push_back(*p.at(n).size);
  return out;
}

std::set<long> exception_indices(const std::vector<GermObject>& parts) {
  std::set<long> out;
  for (const auto& p : parts) {
    if (p.tail != GermObject::Tail::Const || !p.constant.size)
      throw Error(ErrorKind::UnsupportedFamily, to_string(p));
    for (const auto& [n, s] : p.exceptions) {
      if (!s.size) throw Error(ErrorKind::UnsupportedFamily, to_string(p));
      out.insert(n);
    }
  }
  return out;
}

template <class Build>
GermCone componentwise(const std::vector<GermObject>& parts, Build&& build) {
  auto keys = exception_indices(parts);
  const long tail = keys.empty() ? 0 : *keys.rbegin() + 1;
  auto [size, maps] = build(sizes_at(parts, tail));
  GermCone c{GermObject::of(SetDesc::finite(size)), {}};
  for (long n : keys) c.object.exceptions[n] = SetDesc::finite(build(sizes_at(parts, n)).first);
  for (std::size_t i = 0; i < parts.size(); ++i) c.legs.push_back({{}, {}, {}, GermMorphism::Tail::Const, maps[i], {}});
  for (long n : keys) {
    auto at = build(sizes_at(parts, n)).second;
    for (std::size_t i = 0; i < parts.size(); ++i) c.legs[i].exceptions[n] = at[i];
  }
  return c;
}

std::pair<long, std::vector<ComponentMap>> coproduct_tables(const std::vector<long>& sizes) {
  long offset = 0;
  std::vector<ComponentMap> inj;
  for (long s : sizes) {
    std::vector<long> t;
    for (long j = 0; j < s; ++j) t.push_back(offset + j);
    inj.push_back(ComponentMap::of(std::move(t)));
    offset += s;
  }
  return {offset, inj};
}

std::pair<long, std::vector<ComponentMap>> product_tables(const std::vector<long>& sizes) {
  long total = 1;
  for (long s : sizes) total *= s;
  std::vector<ComponentMap> proj;
  long stride = total;
  for (long s : sizes) {
    stride = s ? stride / s : 0;
    std::vector<long> t;
    for (long e = 0; e < total; ++e) t.push_back((e / stride) % s);
    proj.push_back(ComponentMap::of(std::move(t)));
  }
  return {total, proj};
}

std::vector<GermMorphism> const_maps(const GermObject& src, const GermObject& tgt, long n, long k) {
  std::vector<GermMorphism> out;
  std::vector<long> t(static_cast<std::size_t>(n), 0);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == t.size()) {
      out.push_back({src, tgt, {}, GermMorphism::Tail::Const, ComponentMap::of(t), {}});
      return;
    }
    for (long v = 0; v < k; ++v) {
      t[i] = v;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

bool equal(const GermMorphism& f, const GermMorphism& g) { return germ_equal(f, g).kind == GermVerdict::Kind::Equal; }

// Every tuple of legs has exactly one mediator; co picks the direction.
bool universal(const GermCone& c, long probe, bool co) {
  const long size = *c.object.constant.size;
  for (long k = 0; k < probe; ++k) {
    auto probe_obj = GermObject::of(SetDesc::finite(k));
    std::vector<std::vector<GermMorphism>> choices;
    for (const auto& l : c.legs) {
      const auto& part = co ? l.src : l.tgt;
      choices.push_back(co ? const_maps(part, probe_obj, *part.constant.size, k)
                           : const_maps(probe_obj, part, k, *part.constant.size));
    }
    auto mediators = co ? const_maps(c.object, probe_obj, size, k) : const_maps(probe_obj, c.object, k, size);
    if (std::any_of(choices.begin(), choices.end(), [](const auto& ch) { return ch.empty(); })) continue;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      int found = 0;
      for (const auto& m : mediators) {
        bool ok = true;
        for (std::size_t i = 0; i < c.legs.size() && ok; ++i) {
          auto composite = co ? germ_compose(m, c.legs[i]) : germ_compose(c.legs[i], m);
          ok = equal(composite, choices[i][pick[i]]);
        }
        found += ok;
      }
      if (found != 1) return false;
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
      if (i == pick.size() || choices.empty()) break;
    }
  }
  return true;
}

}  // namespace

GermCone finite_coproduct(const std::vector<GermObject>& parts) {
  auto c = componentwise(parts, coproduct_tables);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    c.legs[i].src = parts[i];
    c.legs[i].tgt = c.object;
  }
  return c;
}

GermCone finite_product(const std::vector<GermObject>& parts) {
  auto c = componentwise(parts, product_tables);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    c.legs[i].src = c.object;
    c.legs[i].tgt = parts[i];
  }
  return c;
}

bool check_finite_coproduct(const GermCone& c, long probe) { return universal(c, probe, true); }
bool check_finite_product(const GermCone& c, long probe) { return universal(c, probe, false); }

// --- infinite coproducts ------------------------------------------------------

std::string to_string(CoproductEvidence::Verdict v) {
  switch (v) {
    case CoproductEvidence::Verdict::FiniteCoproduct:
      return "FiniteCoproduct";
    case CoproductEvidence::Verdict::NoMediator:
      return "NoMediator";
    case CoproductEvidence::Verdict::NonUniqueMediator:
      return "NonUniqueMediator";
    case CoproductEvidence::Verdict::MediatorExists:
      return "MediatorExists";
  }
  return "?";
}

GermCocone shifted_cocone() {
  return [](long k) { return germ_point(GermObject::card_growth(), k); };
}

namespace {

long point_value(const GermMorphism& p) {
  if (p.tail != GermMorphism::Tail::Const || !germ_equal(p.src, GermObject::of(SetDesc::finite(1))))
    throw Error(ErrorKind::UnsupportedFamily, "cocone leg is not a constant point: " + to_string(p));
  return p.constant.apply(0);
}

GermMorphism table_map(const GermObject& src, const GermObject& tgt, std::vector<long> t) {
  return {src, tgt, {}, GermMorphism::Tail::Const, ComponentMap::of(std::move(t)), {}};
}

bool mediates(const GermMorphism& m, const std::vector<GermMorphism>& legs, const std::vector<GermMorphism>& competing,
              long k) {
  return equal(germ_compose(m, legs[k]), competing[k]);
}

}  // namespace

CoproductEvidence coproduct_failure_evidence(const GermFamily& family, const GermObject& candidate,
                                             const GermCocone& cocone, const GermCocone& competing, long probe_legs) {
  using V = CoproductEvidence::Verdict;
  CoproductEvidence e{V::MediatorExists, "bounded evidence", {}, {}, {}, {}, {}, {}};
  if (family.count) {
    std::vector<GermObject> parts(static_cast<std::size_t>(*family.count), family.member);
    auto c = finite_coproduct(parts);
    if (!check_finite_coproduct(c)) throw Error(ErrorKind::UnsupportedFamily, "finite coproduct check failed");
    e.verdict = V::FiniteCoproduct;
    e.tag = "exact on probes";
    e.coproduct = std::move(c);
    return e;
  }
  if (!germ_equal(family.member, GermObject::of(SetDesc::finite(1))))
    throw Error(ErrorKind::UnsupportedFamily, "only the constant family of S1 is indexed by the naturals");
  if (candidate.tail != GermObject::Tail::Const || !candidate.constant.size)
    throw Error(ErrorKind::UnsupportedFamily, "candidate " + to_string(candidate));
  const long m = *candidate.constant.size;
  for (long k = 0; k < probe_legs; ++k) {
    e.candidate_legs.push_back(cocone(k));
    e.competing_legs.push_back(competing(k));
  }
  e.competitor = e.competing_legs.front().tgt;

  std::vector<long> forced(static_cast<std::size_t>(m), 0);
  std::vector<long> first(static_cast<std::size_t>(m), -1);
  for (long k = 0; k < probe_legs; ++k) {
    long j = point_value(e.candidate_legs[k]);
    long v = point_value(e.competing_legs[k]);
    if (j < 0 || j >= m) throw Error(ErrorKind::UnsupportedFamily, "leg outside the candidate");
    if (first[j] < 0) {
      first[j] = k;
      forced[j] = v;
      continue;
    }
    if (equal(e.competing_legs[first[j]], e.competing_legs[k])) continue;
    auto other = forced;
    other[j] = v;
    e.verdict = V::NoMediator;
    e.mediators = {table_map(candidate, e.competitor, forced), table_map(candidate, e.competitor, other)};
    e.forcing_legs = {first[j], k};
    return e;
  }
  auto unhit = std::find(first.begin(), first.end(), -1);
  if (unhit != first.end()) {
    auto other = forced;
    other[unhit - first.begin()] = 1;
    e.verdict = V::NonUniqueMediator;
    e.mediators = {table_map(candidate, e.competitor, forced), table_map(candidate, e.competitor, other)};
    return e;
  }
  e.mediators = {table_map(candidate, e.competitor, forced)};
  return e;
}

bool replay(const CoproductEvidence& e) {
  using V = CoproductEvidence::Verdict;
  const auto& legs = e.candidate_legs;
  const auto& comp = e.competing_legs;
  auto all_legs = [&](const GermMorphism& m) {
    for (std::size_t k = 0; k < legs.size(); ++k)
      if (!mediates(m, legs, comp, static_cast<long>(k))) return false;
    return true;
  };
  switch (e.verdict) {
    case V::FiniteCoproduct:
      return e.coproduct && check_finite_coproduct(*e.coproduct);
    case V::NoMediator:
      return e.mediators.size() == 2 && germ_equal(e.mediators[0], e.mediators[1]).kind == GermVerdict::Kind::Distinct &&
             mediates(e.mediators[0], legs, comp, e.forcing_legs[0]) &&
             mediates(e.mediators[1], legs, comp, e.forcing_legs[1]);
    case V::NonUniqueMediator:
      return e.mediators.size() == 2 && germ_equal(e.mediators[0], e.mediators[1]).kind == GermVerdict::Kind::Distinct &&
             all_legs(e.mediators[0]) && all_legs(e.mediators[1]);
    case V::MediatorExists:
      return e.mediators.size() == 1 && all_legs(e.mediators[0]);
  }
  return false;
}

// --- literals -----------------------------------------------------------------

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::string next() {
    skip();
    start_ = pos_;
    if (pos_ >= s_.size()) return {};
    char c = s_[pos_];
    if (std::string_view("{}[]:,").find(c) != std::string_view::npos) {
      ++pos_;
      return std::string(1, c);
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
    if (pos_ == start_) fail("unexpected '" + std::string(1, c) + "'");
    return std::string(s_.substr(start_, pos_ - start_));
  }
  std::string peek() {
    auto save = pos_;
    auto t = next();
    pos_ = save;
    return t;
  }
  void expect(const std::string& want) {
    auto t = next();
    if (t != want) fail("expected '" + want + "', got '" + t + "'");
  }
  long number() {
    auto t = next();
    try {
      std::size_t used = 0;
      long v = std::stol(t, &used);
      if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    fail("expected a number, got '" + t + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "1:" + std::to_string(start_ + 1) + ": " + what);
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string_view s_;
  std::size_t pos_ = 0, start_ = 0;
};

SetDesc parse_set(Lexer& lx) {
  auto t = lx.next();
  if (t == "SN") return SetDesc::naturals();
  if (t.size() > 1 && t[0] == 'S' && std::all_of(t.begin() + 1, t.end(), ::isdigit)) return SetDesc::finite(std::stol(t.substr(1)));
  lx.fail("expected a set S<n> or SN, got '" + t + "'");
}

ComponentMap parse_component(Lexer& lx) {
  auto t = lx.next();
  if (t == "id") return ComponentMap::identity();
  if (t == "const") return ComponentMap::constant(lx.number());
  if (t == "point") return ComponentMap::of({lx.number()});
  if (t == "[") {
    std::vector<long> table;
    while (lx.peek() != "]") table.push_back(lx.number());
    lx.next();
    return ComponentMap::of(std::move(table));
  }
  lx.fail("expected a component map, got '" + t + "'");
}

template <class Item>
void parse_exceptions(Lexer& lx, Item&& item) {
  lx.expect("{");
  if (lx.peek() == "}") {
    lx.next();
    return;
  }
  while (true) {
    long n = lx.number();
    lx.expect(":");
    item(n);
    auto t = lx.next();
    if (t == "}") return;
    if (t != ",") lx.fail("expected ',' or '}', got '" + t + "'");
  }
}

void finish(Lexer& lx) {
  if (!lx.done()) lx.fail("trailing input '" + lx.next() + "'");
}

}  // namespace

GermObject parse_germ_object(std::string_view text) {
  Lexer lx(text);
  lx.expect("germ");
  lx.expect("obj");
  GermObject x;
  parse_exceptions(lx, [&](long n) { x.exceptions[n] = parse_set(lx); });
  lx.expect("tail");
  auto t = lx.next();
  if (t == "cardgrowth") {
    x.tail = GermObject::Tail::CardGrowth;
  } else if (t == "const") {
    x.constant = parse_set(lx);
  } else {
    lx.fail("expected 'const' or 'cardgrowth', got '" + t + "'");
  }
  finish(lx);
  return x;
}

GermMorphism parse_germ_morphism(std::string_view text, const GermObject& src, const GermObject& tgt) {
  Lexer lx(text);
  lx.expect("germ");
  lx.expect("mor");
  GermMorphism f{src, tgt, {}, GermMorphism::Tail::Const, {}, {}};
  parse_exceptions(lx, [&](long n) { f.exceptions[n] = parse_component(lx); });
  lx.expect("tail");
  auto t = lx.next();
  if (t == "identitymap") {
    f.tail = GermMorphism::Tail::IdentityMap;
  } else if (t == "const") {
    f.constant = parse_component(lx);
  } else {
    lx.fail("expected 'const' or 'identitymap', got '" + t + "'");
  }
  finish(lx);
  return f;
}

}  // namespace catquot
