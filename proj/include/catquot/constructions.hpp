#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "catquot/category.hpp"
#include "catquot/functor.hpp"

namespace catquot {

// Builds a category whose morphisms carry structured keys. Identity keys are
// bound to the auto-generated identities.
template <class Key>
class KeyedBuilder {
 public:
  explicit KeyedBuilder(std::string name) : b_(std::move(name)) {}

  Obj object(std::string name) { return b_.add_object(std::move(name)); }

  Mor identity(Obj x, const Key& k) {
    Mor m = b_.identity(x);
    bind(m, k);
    return m;
  }

  Mor morphism(std::string name, Obj s, Obj t, const Key& k) {
    while (b_.has_morphism_name(name)) name += "'";
    Mor m = b_.add_morphism(std::move(name), s, t);
    bind(m, k);
    return m;
  }

  std::optional<Mor> find(const Key& k) const {
    auto it = by_key_.find(k);
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
  }
  const Key& key(Mor m) const { return keys_[m.v]; }
  const std::vector<Key>& keys() const { return keys_; }

  // comp(g, f) returns the key of g . f.
  FinCategory build(const std::function<Key(const Key&, const Key&)>& comp) && {
    b_.fill_composites([&](Mor g, Mor f) {
      auto it = by_key_.find(comp(keys_[g.v], keys_[f.v]));
      if (it == by_key_.end())
        throw Error(ErrorKind::MissingComposite, "composite outside the generated morphisms");
      return it->second;
    });
    return std::move(b_).build();
  }

 private:
  void bind(Mor m, const Key& k) {
    if (keys_.size() <= static_cast<std::size_t>(m.v)) keys_.resize(m.v + 1);
    keys_[m.v] = k;
    by_key_.emplace(k, m);
  }
  CategoryBuilder b_;
  std::vector<Key> keys_;
  std::map<Key, Mor> by_key_;
};

CategoryRef share(FinCategory c);

// Preorder on named elements; morphisms are named a<=b.
FinCategory poset_category(const std::string& name, const std::vector<std::string>& elems,
                           const std::function<bool(int, int)>& leq);

FinCategory terminal_category(const std::string& name = "1");

struct ProductCategory {
  CategoryRef cat;
  Functor first, second;
};
ProductCategory product_category(const CategoryRef& a, const CategoryRef& b, std::string name = {});

FinCategory opposite(const FinCategory& c);

struct Slice {
  CategoryRef cat;
  Functor proj;          // forgets the structure map
  std::vector<Mor> map;  // object of the slice -> its structure morphism in the base
};
Slice slice(const CategoryRef& c, Obj x);

struct ArrowCategory {
  CategoryRef cat;
  Functor dom, cod;
  std::vector<Mor> arrow;                  // object -> morphism of the base
  std::vector<std::pair<Mor, Mor>> square;  // morphism -> (top, bottom)
  std::optional<Obj> object_of(Mor f) const;
};
ArrowCategory arrow_category(const CategoryRef& c);

struct Subcategory {
  CategoryRef cat;
  Functor inclusion;
};
// Keeps objects satisfying keep and morphisms satisfying keep_mor between them.
Subcategory subcategory(const CategoryRef& c, const std::function<bool(Obj)>& keep,
                        const std::function<bool(Mor)>& keep_mor, std::string name = {});
Subcategory full_subcategory(const CategoryRef& c, const std::function<bool(Obj)>& keep,
                             std::string name = {});

struct StrictPullback {
  CategoryRef cat;
  Functor left, right;  // to F.src, to G.src
};
// Objects (x, y) with F x = G y, morphisms (f, g) with F f = G g.
StrictPullback strict_pullback(const Functor& F, const Functor& G, std::string name = {});

}  // namespace catquot
