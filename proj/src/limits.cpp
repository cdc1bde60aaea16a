#include "catquot/limits.hpp"

#include <algorithm>

namespace catquot {

FinDiagram diagram_of(const Functor& labeling) {
  const auto& J = *labeling.src;
  FinDiagram d;
  for (Obj j : J.objects()) d.nodes.push_back(labeling(j));
  for (Mor m : J.morphisms())
    if (!J.is_identity(m)) d.edges.push_back({J.src(m).v, J.tgt(m).v, labeling(m)});
  return d;
}

namespace {

std::optional<FinCone> search(const FinCategory& c, const FinDiagram& d, bool co,
                              SearchBudget* budget) {
  std::optional<FinCone> found;
  for (Obj apex : c.objects()) {
    auto visit = [&](const std::vector<Mor>& legs) {
      FinCone k{apex, legs};
      bool ok = co ? !colimit_failure(c, d, k, budget) : !limit_failure(c, d, k, budget);
      if (ok) found = std::move(k);
      return !ok;
    };
    if (co)
      for_each_cocone(c, d, apex, visit, budget);
    else
      for_each_cone(c, d, apex, visit, budget);
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

std::optional<FinCone> limit(const FinCategory& c, const FinDiagram& d, SearchBudget* budget) {
  return search(c, d, false, budget);
}

std::optional<FinCone> colimit(const FinCategory& c, const FinDiagram& d, SearchBudget* budget) {
  return search(c, d, true, budget);
}

std::optional<Obj> terminal_object(const FinCategory& c) {
  if (auto k = limit(c, FinDiagram{})) return k->apex;
  return std::nullopt;
}

std::optional<Obj> initial_object(const FinCategory& c) {
  if (auto k = colimit(c, FinDiagram{})) return k->apex;
  return std::nullopt;
}

std::optional<FinCone> binary_product(const FinCategory& c, Obj x, Obj y) {
  return limit(c, discrete_diagram<FinCategory>({x, y}));
}

std::optional<FinCone> binary_coproduct(const FinCategory& c, Obj x, Obj y) {
  return colimit(c, discrete_diagram<FinCategory>({x, y}));
}

std::optional<FinCone> equalizer(const FinCategory& c, Mor f, Mor g) {
  return limit(c, parallel_diagram(c, f, g));
}

std::optional<FinCone> coequalizer(const FinCategory& c, Mor f, Mor g) {
  return colimit(c, parallel_diagram(c, f, g));
}

std::optional<FinCone> pullback(const FinCategory& c, Mor f, Mor g) {
  return limit(c, cospan_diagram(c, f, g));
}

std::optional<FinCone> pushout(const FinCategory& c, Mor f, Mor g) {
  return colimit(c, span_diagram(c, f, g));
}

FlcReport check_flc(const FinCategory& c) {
  FlcReport r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.failure = std::move(why);
    return r;
  };
  if (!terminal_object(c)) return fail("no terminal object");
  if (!initial_object(c)) return fail("no initial object");
  for (Obj x : c.objects())
    for (Obj y : c.objects()) {
      if (y < x) continue;
      if (!binary_product(c, x, y)) return fail("no product " + c.obj_name(x) + " x " + c.obj_name(y));
      if (!binary_coproduct(c, x, y))
        return fail("no coproduct " + c.obj_name(x) + " + " + c.obj_name(y));
      for (Mor f : c.hom(x, y))
        for (Mor g : c.hom(x, y)) {
          if (g < f) continue;
          if (!equalizer(c, f, g)) return fail("no equalizer of " + c.mor_name(f) + ", " + c.mor_name(g));
          if (!coequalizer(c, f, g))
            return fail("no coequalizer of " + c.mor_name(f) + ", " + c.mor_name(g));
        }
    }
  return r;
}

// ---------------------------------------------------------------------------

const FinCone* Products::get(Obj x, Obj y) const {
  auto key = std::make_pair(x.v, y.v);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, binary_product(*c_, x, y)).first;
  return it->second ? &*it->second : nullptr;
}

const FinCone& Products::require(Obj x, Obj y) const {
  if (auto p = get(x, y)) return *p;
  throw Error(ErrorKind::NoProducts, c_->obj_name(x) + " x " + c_->obj_name(y) + " in " + c_->name());
}

Mor Products::pair(Obj x, Obj y, Mor a, Mor b) const {
  const auto& p = require(x, y);
  auto m = mediate(*c_, p, c_->src(a), {a, b});
  if (!m) throw Error(ErrorKind::NoProducts, "pairing into " + c_->obj_name(p.apex));
  return *m;
}

Mor Products::times(Mor f, Mor g) const {
  const auto& c = *c_;
  const auto& s = require(c.src(f), c.src(g));
  return pair(c.tgt(f), c.tgt(g), c.compose(f, s.legs[0]), c.compose(g, s.legs[1]));
}

// ---------------------------------------------------------------------------

bool is_exponential(const FinCategory& c, const Products& prods, const FinCone& ex, Obj base,
                    Obj target, Mor eval) {
  if (c.src(eval) != ex.apex || c.tgt(eval) != target) return false;
  const Obj e = c.tgt(ex.legs[0]);
  for (Obj w : c.objects()) {
    const auto& wx = prods.require(w, base);
    std::set<Mor> image;
    std::size_t n = 0;
    for (Mor g : c.hom(w, e)) {
      auto gx = mediate(c, ex, wx.apex, {c.compose(g, wx.legs[0]), wx.legs[1]});
      if (!gx) return false;
      image.insert(c.compose(eval, *gx));
      ++n;
    }
    if (image.size() != n || n != c.hom(wx.apex, target).size()) return false;
  }
  return true;
}

bool is_exponential(const FinCategory& c, const Products& prods, Obj base, Obj target,
                    const Exponential& e) {
  return is_exponential(c, prods, prods.require(e.object, base), base, target, e.eval);
}

std::optional<Exponential> exponential(const FinCategory& c, Obj base, Obj target) {
  Products prods(c);
  for (Obj w : c.objects()) prods.require(w, base);
  for (Obj e : c.objects()) {
    const auto& ex = prods.require(e, base);
    for (Mor ev : c.hom(ex.apex, target)) {
      Exponential cand{e, ev};
      if (is_exponential(c, prods, base, target, cand)) return cand;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Mor>> subobjects(const FinCategory& c, Obj x) {
  std::vector<std::vector<Mor>> classes;
  for (Obj a : c.objects())
    for (Mor m : c.hom(a, x)) {
      if (!is_mono(c, m)) continue;
      bool placed = false;
      for (auto& cls : classes) {
        Mor r = cls.front();
        for (Mor i : c.hom(a, c.src(r)))
          if (c.compose(r, i) == m && is_iso(c, i)) {
            cls.push_back(m);
            placed = true;
            break;
          }
        if (placed) break;
      }
      if (!placed) classes.push_back({m});
    }
  return classes;
}

namespace {

int class_of(const std::vector<std::vector<Mor>>& classes, Mor m) {
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (std::find(classes[k].begin(), classes[k].end(), m) != classes[k].end())
      return static_cast<int>(k);
  return -1;
}

}  // namespace

bool is_subobject_classifier(const FinCategory& c, Obj terminal, const SubobjectClassifier& s) {
  if (c.src(s.truth) != terminal || c.tgt(s.truth) != s.omega) return false;
  for (Obj x : c.objects()) {
    auto classes = subobjects(c, x);
    std::vector<int> hit(classes.size(), 0);
    for (Mor chi : c.hom(x, s.omega)) {
      auto pb = pullback(c, chi, s.truth);
      if (!pb) return false;
      int k = class_of(classes, pb->legs[0]);
      if (k < 0 || hit[k]++) return false;
    }
    for (int h : hit)
      if (h != 1) return false;
  }
  return true;
}

std::optional<SubobjectClassifier> subobject_classifier(const FinCategory& c) {
  auto one = terminal_object(c);
  if (!one) return std::nullopt;
  for (Obj omega : c.objects())
    for (Mor t : c.hom(*one, omega)) {
      SubobjectClassifier s{omega, t};
      if (is_subobject_classifier(c, *one, s)) return s;
    }
  return std::nullopt;
}

}  // namespace catquot
