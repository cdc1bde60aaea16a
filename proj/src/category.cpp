#include "catquot/category.hpp"

#include <sstream>

namespace catquot {

std::vector<Obj> FinCategory::objects() const {
  std::vector<Obj> out(obj_names_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Obj{static_cast<int>(i)};
  return out;
}

std::vector<Mor> FinCategory::morphisms() const {
  std::vector<Mor> out(mors_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Mor{static_cast<int>(i)};
  return out;
}

std::optional<Obj> FinCategory::find_obj(std::string_view name) const {
  auto it = obj_index_.find(std::string(name));
  if (it == obj_index_.end()) return std::nullopt;
  return Obj{it->second};
}

std::optional<Mor> FinCategory::find_mor(std::string_view name) const {
  auto it = mor_index_.find(std::string(name));
  if (it == mor_index_.end()) return std::nullopt;
  return Mor{it->second};
}

Obj FinCategory::obj(std::string_view name) const {
  if (auto x = find_obj(name)) return *x;
  throw Error(ErrorKind::UnknownId, "object " + std::string(name) + " in " + name_);
}

Mor FinCategory::mor(std::string_view name) const {
  if (auto f = find_mor(name)) return *f;
  throw Error(ErrorKind::UnknownId, "morphism " + std::string(name) + " in " + name_);
}

Mor FinCategory::compose(Mor g, Mor f) const {
  if (!composable(g, f))
    throw Error(ErrorKind::MismatchedEndpoints, mor_name(g) + " . " + mor_name(f));
  return comp_[f.v][out_pos_[g.v]];
}

// ---------------------------------------------------------------------------

CategoryBuilder::CategoryBuilder(std::string name) { cat_.name_ = std::move(name); }

Obj CategoryBuilder::add_object(std::string name) {
  Obj x{cat_.object_count()};
  cat_.obj_index_.emplace(name, x.v);
  cat_.obj_names_.push_back(name);
  Mor i{cat_.morphism_count()};
  std::string id_name = "id_" + name;
  cat_.mor_index_.emplace(id_name, i.v);
  cat_.mors_.push_back({std::move(id_name), x, x});
  cat_.ident_.push_back(i);
  pending_.emplace_back();
  return x;
}

Mor CategoryBuilder::add_morphism(std::string name, Obj src, Obj tgt) {
  Mor f{cat_.morphism_count()};
  cat_.mor_index_.emplace(name, f.v);
  cat_.mors_.push_back({std::move(name), src, tgt});
  pending_.emplace_back();
  return f;
}

std::optional<Mor> CategoryBuilder::composite(Mor g, Mor f) const {
  if (cat_.ident_[src(g).v] == g) return f;
  if (cat_.ident_[tgt(f).v] == f) return g;
  auto it = pending_[f.v].find(g.v);
  if (it == pending_[f.v].end()) return std::nullopt;
  return Mor{it->second};
}

std::optional<Violation> CategoryBuilder::set_composite(Mor g, Mor f, Mor h) {
  const auto& m = cat_.mors_;
  if (tgt(f) != src(g))
    return Violation{ErrorKind::MismatchedEndpoints,
                     m[g.v].name + " . " + m[f.v].name + " not composable"};
  if (src(h) != src(f) || tgt(h) != tgt(g))
    return Violation{ErrorKind::MismatchedEndpoints,
                     m[g.v].name + " . " + m[f.v].name + " = " + m[h.v].name +
                         " has wrong endpoints"};
  if (auto known = composite(g, f)) {
    if (*known != h)
      return Violation{ErrorKind::ConflictingComposite,
                       m[g.v].name + " . " + m[f.v].name + " given as " +
                           m[known->v].name + " and " + m[h.v].name};
    return std::nullopt;
  }
  pending_[f.v][g.v] = h.v;
  return std::nullopt;
}

void CategoryBuilder::fill_composites(const std::function<Mor(Mor, Mor)>& fn) {
  index();
  for (int fi = 0; fi < cat_.morphism_count(); ++fi) {
    Mor f{fi};
    for (Mor g : cat_.out_[tgt(f).v]) {
      if (!composite(g, f)) pending_[fi][g.v] = fn(g, f).v;
    }
  }
}

void CategoryBuilder::index() {
  auto& c = cat_;
  const auto n = c.obj_names_.size();
  c.homs_.assign(n * n, {});
  c.out_.assign(n, {});
  c.out_pos_.assign(c.mors_.size(), 0);
  for (int i = 0; i < c.morphism_count(); ++i) {
    const auto& mi = c.mors_[i];
    c.homs_[static_cast<std::size_t>(mi.src.v) * n + mi.tgt.v].push_back(Mor{i});
    c.out_pos_[i] = static_cast<int>(c.out_[mi.src.v].size());
    c.out_[mi.src.v].push_back(Mor{i});
  }
}

std::vector<Violation> CategoryBuilder::violations() const {
  std::vector<Violation> out;
  const auto& c = cat_;
  const auto& m = c.mors_;
  std::vector<std::vector<Mor>> outs(c.object_count());
  for (int i = 0; i < c.morphism_count(); ++i) outs[m[i].src.v].push_back(Mor{i});
  for (int fi = 0; fi < c.morphism_count(); ++fi) {
    Mor f{fi};
    for (Mor g : outs[tgt(f).v])
      if (!composite(g, f))
        out.push_back({ErrorKind::MissingComposite, m[g.v].name + " . " + m[f.v].name});
  }
  if (!out.empty()) return out;
  for (int fi = 0; fi < c.morphism_count(); ++fi) {
    Mor f{fi};
    for (Mor g : outs[tgt(f).v]) {
      Mor gf = *composite(g, f);
      for (Mor h : outs[tgt(g).v]) {
        Mor lhs = *composite(h, gf);
        Mor rhs = *composite(*composite(h, g), f);
        if (lhs != rhs)
          out.push_back({ErrorKind::NonAssociative,
                         m[h.v].name + ", " + m[g.v].name + ", " + m[f.v].name});
      }
    }
  }
  return out;
}

FinCategory CategoryBuilder::build() && {
  auto vs = violations();
  if (!vs.empty()) throw Error(vs.front().kind, cat_.name_ + ": " + describe(vs));
  index();
  auto& c = cat_;
  c.comp_.assign(c.mors_.size(), {});
  for (int fi = 0; fi < c.morphism_count(); ++fi) {
    Mor f{fi};
    const auto& gs = c.out_[tgt(f).v];
    auto& row = c.comp_[fi];
    row.resize(gs.size());
    for (std::size_t k = 0; k < gs.size(); ++k) row[k] = *composite(gs[k], f);
  }
  pending_.clear();
  return std::move(cat_);
}

// ---------------------------------------------------------------------------

CategoryReport validate_category(const RawCategory& raw) {
  CategoryReport rep;
  CategoryBuilder b(raw.name);
  std::unordered_map<std::string, Obj> objs;
  std::unordered_map<std::string, Mor> mors;
  auto line = [](int l) { return " (line " + std::to_string(l) + ")"; };
  for (const auto& [name, l] : raw.objects) {
    if (objs.count(name)) {
      rep.violations.push_back({ErrorKind::UnknownId, "duplicate object " + name + line(l)});
      continue;
    }
    Obj x = b.add_object(name);
    objs.emplace(name, x);
    mors.emplace("id_" + name, b.identity(x));
  }
  for (const auto& rm : raw.morphisms) {
    auto s = objs.find(rm.src), t = objs.find(rm.tgt);
    if (s == objs.end() || t == objs.end()) {
      rep.violations.push_back({ErrorKind::UnknownId,
                                "morphism " + rm.name + " : " + rm.src + " -> " + rm.tgt + line(rm.line)});
      continue;
    }
    if (mors.count(rm.name)) {
      rep.violations.push_back({ErrorKind::UnknownId, "duplicate morphism " + rm.name + line(rm.line)});
      continue;
    }
    mors.emplace(rm.name, b.add_morphism(rm.name, s->second, t->second));
  }
  for (const auto& rc : raw.composites) {
    auto g = mors.find(rc.g), f = mors.find(rc.f), h = mors.find(rc.h);
    if (g == mors.end() || f == mors.end() || h == mors.end()) {
      rep.violations.push_back({ErrorKind::UnknownId,
                                "comp " + rc.g + " " + rc.f + " = " + rc.h + line(rc.line)});
      continue;
    }
    if (auto v = b.set_composite(g->second, f->second, h->second)) {
      v->detail += line(rc.line);
      rep.violations.push_back(*v);
    }
  }
  if (!rep.violations.empty()) return rep;
  rep.violations = b.violations();
  if (rep.violations.empty()) rep.category = std::move(b).build();
  return rep;
}

std::string to_text(const FinCategory& c) {
  std::ostringstream os;
  os << "category " << c.name() << "\n";
  for (Obj x : c.objects()) os << "obj " << c.obj_name(x) << "\n";
  for (Mor f : c.morphisms())
    if (!c.is_identity(f))
      os << "mor " << c.mor_name(f) << " : " << c.obj_name(c.src(f)) << " -> "
         << c.obj_name(c.tgt(f)) << "\n";
  for (Mor f : c.morphisms()) {
    if (c.is_identity(f)) continue;
    for (Mor g : c.out(c.tgt(f))) {
      if (c.is_identity(g)) continue;
      os << "comp " << c.mor_name(g) << " " << c.mor_name(f) << " = "
         << c.mor_name(c.compose(g, f)) << "\n";
    }
  }
  return os.str();
}

}  // namespace catquot
