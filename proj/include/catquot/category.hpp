#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "catquot/error.hpp"

namespace catquot {

template <class Tag>
struct Index {
  int v = -1;
  constexpr auto operator<=>(const Index&) const = default;
  constexpr bool valid() const { return v >= 0; }
};

using Obj = Index<struct ObjTag>;
using Mor = Index<struct MorTag>;

// Parsed but unvalidated category description.
struct RawCategory {
  struct Morphism {
    std::string name, src, tgt;
    int line = 0;
  };
  struct Composite {
    std::string g, f, h;  // g . f = h
    int line = 0;
  };
  std::string name;
  std::vector<std::pair<std::string, int>> objects;
  std::vector<Morphism> morphisms;
  std::vector<Composite> composites;
};

class CategoryBuilder;

// Extensional finite category. Immutable once built.
class FinCategory {
 public:
  using Obj = catquot::Obj;
  using Mor = catquot::Mor;

  const std::string& name() const { return name_; }
  int object_count() const { return static_cast<int>(obj_names_.size()); }
  int morphism_count() const { return static_cast<int>(mors_.size()); }
  std::vector<Obj> objects() const;
  std::vector<Mor> morphisms() const;

  const std::string& obj_name(Obj x) const { return obj_names_[x.v]; }
  const std::string& mor_name(Mor f) const { return mors_[f.v].name; }
  const std::string& name(Obj x) const { return obj_name(x); }
  const std::string& name(Mor f) const { return mor_name(f); }
  std::optional<Obj> find_obj(std::string_view name) const;
  std::optional<Mor> find_mor(std::string_view name) const;
  Obj obj(std::string_view name) const;  // throws UnknownId
  Mor mor(std::string_view name) const;  // throws UnknownId

  Obj src(Mor f) const { return mors_[f.v].src; }
  Obj tgt(Mor f) const { return mors_[f.v].tgt; }
  Mor id(Obj x) const { return ident_[x.v]; }
  bool is_identity(Mor f) const { return id(src(f)) == f; }
  bool composable(Mor g, Mor f) const { return tgt(f) == src(g); }
  Mor compose(Mor g, Mor f) const;  // g . f
  const std::vector<Mor>& hom(Obj x, Obj y) const {
    return homs_[static_cast<std::size_t>(x.v) * obj_names_.size() + y.v];
  }
  const std::vector<Mor>& out(Obj x) const { return out_[x.v]; }
  static constexpr bool exhaustive = true;

 private:
  friend class CategoryBuilder;
  struct MorInfo {
    std::string name;
    Obj src, tgt;
  };
  std::string name_;
  std::vector<std::string> obj_names_;
  std::vector<MorInfo> mors_;
  std::vector<Mor> ident_;
  std::vector<std::vector<Mor>> homs_;
  std::vector<std::vector<Mor>> out_;
  std::vector<int> out_pos_;             // position of g in out(src g)
  std::vector<std::vector<Mor>> comp_;   // comp_[f][out_pos_[g]] = g . f
  std::unordered_map<std::string, int> obj_index_, mor_index_;
};

using CategoryRef = std::shared_ptr<const FinCategory>;

// Incremental construction. Identities are created with each object and
// named id_<obj>.
class CategoryBuilder {
 public:
  explicit CategoryBuilder(std::string name);

  Obj add_object(std::string name);
  Mor add_morphism(std::string name, Obj src, Obj tgt);
  Mor identity(Obj x) const { return cat_.ident_[x.v]; }
  Obj src(Mor f) const { return cat_.mors_[f.v].src; }
  Obj tgt(Mor f) const { return cat_.mors_[f.v].tgt; }
  int object_count() const { return cat_.object_count(); }
  int morphism_count() const { return cat_.morphism_count(); }
  bool has_morphism_name(const std::string& name) const {
    return cat_.mor_index_.count(name) != 0;
  }

  // Records g . f = h. Returns a violation when endpoints disagree or the
  // pair was already given a different value.
  std::optional<Violation> set_composite(Mor g, Mor f, Mor h);

  // Fill every missing composite from a callback (programmatic categories).
  void fill_composites(const std::function<Mor(Mor g, Mor f)>& fn);

  // Checks completeness and associativity, then freezes.
  FinCategory build() &&;
  std::vector<Violation> violations() const;

 private:
  void index();
  std::optional<Mor> composite(Mor g, Mor f) const;
  FinCategory cat_;
  std::vector<std::unordered_map<int, int>> pending_;  // f -> (g -> h)
};

struct CategoryReport {
  std::optional<FinCategory> category;
  std::vector<Violation> violations;
  bool ok() const { return category.has_value(); }
};

CategoryReport validate_category(const RawCategory& raw);

// Serialises back to the line format; identities and composites with an
// identity are omitted.
std::string to_text(const FinCategory& c);

struct MorphismFlags {
  bool mono = false, epi = false, iso = false, identity = false;
  auto operator<=>(const MorphismFlags&) const = default;
};

}  // namespace catquot

template <class Tag>
struct std::hash<catquot::Index<Tag>> {
  std::size_t operator()(const catquot::Index<Tag>& i) const noexcept {
    return std::hash<int>{}(i.v);
  }
};
