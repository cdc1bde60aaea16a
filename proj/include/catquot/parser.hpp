#pragma once

// Line-oriented input files. A file is a sequence of blocks; each block
// starts with a header keyword and owns the body lines that follow it.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catquot/category.hpp"
#include "catquot/functor.hpp"

namespace catquot {

struct Token {
  std::string text;
  int line = 0, col = 0;
};

struct Line {
  std::vector<Token> tokens;  // tokens[0] is the keyword
  int line = 0;
};

struct Block {
  std::string kind;
  std::vector<Token> header;  // includes the kind keyword
  std::vector<Line> body;
};

// Throws ParseError with "line:col" context.
std::vector<Block> parse_blocks(std::string_view text);
std::string read_file(const std::string& path);

// Splits "a, b,c" style lists; commas inside parentheses are kept.
std::vector<std::string> split_list(const std::vector<Token>& tokens, std::size_t from);

struct RawFilter {
  std::string name, category;
  std::vector<std::string> elements;
  bool frechet = false;
  std::string index_set;
  int line = 0;
};

struct ClassSpec {
  enum class Kind { List, All, Isos, Monos, Identities };
  Kind kind = Kind::Identities;
  std::vector<std::string> ids;
};

struct RawModel {
  std::string name, category;
  ClassSpec fib, cof, weq;
  int line = 0;
};

struct RawNat {
  std::string name, from, to;  // functor names
  std::vector<std::pair<std::string, std::string>> components;
  int line = 0;
};

struct RawIndexed {
  std::string name, base;
  std::vector<std::pair<std::string, std::string>> fibers;  // base object -> category
  std::vector<std::pair<std::string, std::string>> trans;   // base morphism -> functor
  struct Coherence {
    std::string g, f, nat;
  };
  std::vector<Coherence> coh;
  int line = 0;
};

struct RawComprehension {
  std::string name, category, kind;  // kind: arrows | monos
  int line = 0;
};

struct RawScheme {
  struct Param {
    bool term = false;
    std::vector<std::string> refs;
  };
  std::string name, comprehension;
  std::vector<Param> params;
  int line = 0;
};

// Over a model block: carrier and family are object and morphism names and
// classify lines read `<X -> U morphism> = <fibration morphism>`. Over
// `sets` or `sets<k>` (k components): carrier S<n>, family one fibre size per
// element, classify lines `<map table> = <fibre sizes>`.
struct RawUniverse {
  std::string name, model;
  std::string carrier;
  std::vector<std::string> family;
  std::optional<int> bound;         // sets: fibre bound of the structure
  std::string cofibrations;         // sets: monos | all
  struct Classify {
    std::vector<std::string> map, target;
    int line = 0;
  };
  std::vector<Classify> classify;
  int line = 0;
};

struct Document {
  std::vector<RawCategory> categories;
  std::vector<RawFunctor> functors;
  std::vector<RawFilter> filters;
  std::vector<RawModel> models;
  std::vector<RawNat> nats;
  std::vector<RawIndexed> indexed;
  std::vector<RawComprehension> comprehensions;
  std::vector<RawScheme> schemes;
  std::vector<RawUniverse> universes;
};

Document parse_document(std::string_view text);

// Resolves names in a document; validated categories are cached.
class Workspace {
 public:
  explicit Workspace(Document doc) : doc_(std::move(doc)) {}
  const Document& document() const { return doc_; }
  CategoryRef category(const std::string& name) const;  // throws on violations
  Functor functor(const std::string& name) const;
  NatTrans nat(const std::string& name) const;
  const RawFilter& filter(const std::string& name) const;
  const RawModel& model(const std::string& name) const;

 private:
  Document doc_;
  mutable std::map<std::string, CategoryRef> cats_;
};

}  // namespace catquot
