#include "catquot/parser.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace catquot {

namespace {

[[noreturn]] void fail(int line, int col, const std::string& what) {
  throw Error(ErrorKind::ParseError, std::to_string(line) + ":" + std::to_string(col) + ": " + what);
}

[[noreturn]] void fail(const Token& t, const std::string& what) { fail(t.line, t.col, what); }

const std::map<std::string, std::set<std::string>>& grammar() {
  static const std::map<std::string, std::set<std::string>> g{
      {"category", {"obj", "mor", "comp"}},
      {"functor", {"fobj", "fmor"}},
      {"filter", {}},
      {"model", {"fib", "cof", "weq"}},
      {"nat", {"at"}},
      {"indexed", {"fiber", "trans", "coh"}},
      {"comprehension", {}},
      {"scheme", {"typeparam", "termparam"}},
      {"universe", {"carrier", "family", "bound", "cofibrations", "classify"}},
  };
  return g;
}

void expect_size(const std::vector<Token>& ts, std::size_t n, const std::string& form) {
  if (ts.size() != n) fail(ts.size() > n ? ts[n] : ts.back(), "expected `" + form + "`");
}

void expect(const Token& t, const char* text, const std::string& form) {
  if (t.text != text) fail(t, "expected `" + form + "`");
}

int parse_int(const Token& t) {
  try {
    std::size_t used = 0;
    int v = std::stoi(t.text, &used);
    if (used != t.text.size() || v < 0) fail(t, "expected a non-negative integer");
    return v;
  } catch (const std::logic_error&) {
    fail(t, "expected a non-negative integer");
  }
}

ClassSpec parse_class(const Line& l) {
  ClassSpec c;
  if (l.tokens.size() < 2) fail(l.tokens[0], "empty class");
  const auto& w = l.tokens[1].text;
  if (l.tokens.size() == 2 && (w == "all" || w == "isos" || w == "monos" || w == "identities")) {
    c.kind = w == "all" ? ClassSpec::Kind::All
             : w == "isos" ? ClassSpec::Kind::Isos
             : w == "monos" ? ClassSpec::Kind::Monos
                            : ClassSpec::Kind::Identities;
    return c;
  }
  c.kind = ClassSpec::Kind::List;
  c.ids = split_list(l.tokens, 1);
  return c;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split_list(const std::vector<Token>& tokens, std::size_t from) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    for (char ch : tokens[i].text) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty() && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (depth > 0) {
      cur += ' ';
    }
  }
  if (depth != 0) fail(tokens.back(), "unbalanced parentheses");
  return out;
}

std::vector<Block> parse_blocks(std::string_view text) {
  std::vector<Block> blocks;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line l{{}, lineno};
    for (std::size_t i = 0; i < raw.size();) {
      if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      l.tokens.push_back({std::string(raw.substr(i, j - i)), lineno, static_cast<int>(i) + 1});
      i = j;
    }
    if (l.tokens.empty()) continue;
    const auto& kw = l.tokens[0];
    if (grammar().count(kw.text)) {
      blocks.push_back(Block{kw.text, l.tokens, {}});
      continue;
    }
    if (blocks.empty()) fail(kw, "`" + kw.text + "` outside any block");
    if (!grammar().at(blocks.back().kind).count(kw.text))
      fail(kw, "unexpected `" + kw.text + "` in " + blocks.back().kind + " block");
    blocks.back().body.push_back(std::move(l));
  }
  return blocks;
}

Document parse_document(std::string_view text) {
  Document doc;
  for (const auto& b : parse_blocks(text)) {
    const auto& h = b.header;
    const int line = h[0].line;
    if (b.kind == "category") {
      expect_size(h, 2, "category <name>");
      RawCategory c;
      c.name = h[1].text;
      for (const auto& l : b.body) {
        const auto& t = l.tokens;
        if (t[0].text == "obj") {
          expect_size(t, 2, "obj <id>");
          c.objects.emplace_back(t[1].text, l.line);
        } else if (t[0].text == "mor") {
          expect_size(t, 6, "mor <id> : <src> -> <tgt>");
          expect(t[2], ":", "mor <id> : <src> -> <tgt>");
          expect(t[4], "->", "mor <id> : <src> -> <tgt>");
          c.morphisms.push_back({t[1].text, t[3].text, t[5].text, l.line});
        } else {
          expect_size(t, 5, "comp <g> <f> = <h>");
          expect(t[3], "=", "comp <g> <f> = <h>");
          c.composites.push_back({t[1].text, t[2].text, t[4].text, l.line});
        }
      }
      doc.categories.push_back(std::move(c));
    } else if (b.kind == "functor") {
      expect_size(h, 6, "functor <name> : <cat> -> <cat>");
      expect(h[2], ":", "functor <name> : <cat> -> <cat>");
      expect(h[4], "->", "functor <name> : <cat> -> <cat>");
      RawFunctor f{h[1].text, h[3].text, h[5].text, {}, {}, line};
      for (const auto& l : b.body) {
        const auto& t = l.tokens;
        expect_size(t, 4, t[0].text + " <a> = <b>");
        expect(t[2], "=", t[0].text + " <a> = <b>");
        (t[0].text == "fobj" ? f.fobj : f.fmor).emplace_back(t[1].text, t[3].text);
      }
      doc.functors.push_back(std::move(f));
    } else if (b.kind == "filter") {
      if (h.size() < 6) fail(h.back(), "expected `filter <name> on <cat> = <elements>`");
      expect(h[2], "on", "filter <name> on <cat> = ...");
      expect(h[4], "=", "filter <name> on <cat> = ...");
      RawFilter f{h[1].text, h[3].text, {}, false, {}, line};
      const auto& first = h[5].text;
      if (h.size() == 6 && first.rfind("frechet(", 0) == 0 && first.back() == ')') {
        f.frechet = true;
        f.index_set = first.substr(8, first.size() - 9);
      } else {
        f.elements = split_list(h, 5);
      }
      doc.filters.push_back(std::move(f));
    } else if (b.kind == "model") {
      expect_size(h, 4, "model <name> on <cat>");
      expect(h[2], "on", "model <name> on <cat>");
      RawModel m{h[1].text, h[3].text, {}, {}, {}, line};
      std::set<std::string> seen;
      for (const auto& l : b.body) {
        if (!seen.insert(l.tokens[0].text).second) fail(l.tokens[0], "class given twice");
        auto c = parse_class(l);
        (l.tokens[0].text == "fib" ? m.fib : l.tokens[0].text == "cof" ? m.cof : m.weq) = c;
      }
      for (const char* k : {"fib", "cof", "weq"})
        if (!seen.count(k)) fail(h[0], std::string("model block without `") + k + "`");
      doc.models.push_back(std::move(m));
    } else if (b.kind == "nat") {
      expect_size(h, 6, "nat <name> : <F> => <G>");
      expect(h[2], ":", "nat <name> : <F> => <G>");
      expect(h[4], "=>", "nat <name> : <F> => <G>");
      RawNat n{h[1].text, h[3].text, h[5].text, {}, line};
      for (const auto& l : b.body) {
        expect_size(l.tokens, 4, "at <obj> = <mor>");
        expect(l.tokens[2], "=", "at <obj> = <mor>");
        n.components.emplace_back(l.tokens[1].text, l.tokens[3].text);
      }
      doc.nats.push_back(std::move(n));
    } else if (b.kind == "indexed") {
      expect_size(h, 4, "indexed <name> on <base>");
      expect(h[2], "on", "indexed <name> on <base>");
      RawIndexed ix{h[1].text, h[3].text, {}, {}, {}, line};
      for (const auto& l : b.body) {
        const auto& t = l.tokens;
        if (t[0].text == "coh") {
          expect_size(t, 5, "coh <g> <f> = <nat>");
          expect(t[3], "=", "coh <g> <f> = <nat>");
          ix.coh.push_back({t[1].text, t[2].text, t[4].text});
        } else {
          expect_size(t, 4, t[0].text + " <id> = <ref>");
          expect(t[2], "=", t[0].text + " <id> = <ref>");
          (t[0].text == "fiber" ? ix.fibers : ix.trans).emplace_back(t[1].text, t[3].text);
        }
      }
      doc.indexed.push_back(std::move(ix));
    } else if (b.kind == "comprehension") {
      expect_size(h, 6, "comprehension <name> on <cat> = arrows|monos");
      expect(h[2], "on", "comprehension <name> on <cat> = ...");
      expect(h[4], "=", "comprehension <name> on <cat> = ...");
      if (h[5].text != "arrows" && h[5].text != "monos") fail(h[5], "expected arrows or monos");
      doc.comprehensions.push_back({h[1].text, h[3].text, h[5].text, line});
    } else if (b.kind == "scheme") {
      expect_size(h, 4, "scheme <name> on <comprehension>");
      expect(h[2], "on", "scheme <name> on <comprehension>");
      RawScheme s{h[1].text, h[3].text, {}, line};
      for (const auto& l : b.body) {
        const bool term = l.tokens[0].text == "termparam";
        expect_size(l.tokens, term ? 3 : 2, term ? "termparam <ref> <ref>" : "typeparam <ref>");
        RawScheme::Param p{term, {}};
        for (std::size_t i = 1; i < l.tokens.size(); ++i) p.refs.push_back(l.tokens[i].text);
        s.params.push_back(std::move(p));
      }
      doc.schemes.push_back(std::move(s));
    } else if (b.kind == "universe") {
      expect_size(h, 4, "universe <name> on <model>");
      expect(h[2], "on", "universe <name> on <model>");
      RawUniverse u{h[1].text, h[3].text, {}, {}, {}, {}, {}, line};
      for (const auto& l : b.body) {
        const auto& t = l.tokens;
        const auto& kw = t[0].text;
        if (kw == "carrier") {
          expect_size(t, 2, "carrier <obj>");
          u.carrier = t[1].text;
        } else if (kw == "family") {
          if (t.size() < 2) fail(t[0], "expected `family <mor>`");
          u.family = split_list(t, 1);
        } else if (kw == "bound") {
          expect_size(t, 2, "bound <n>");
          u.bound = parse_int(t[1]);
        } else if (kw == "cofibrations") {
          expect_size(t, 2, "cofibrations monos|all");
          if (t[1].text != "monos" && t[1].text != "all") fail(t[1], "expected monos or all");
          u.cofibrations = t[1].text;
        } else {
          auto eq = std::find_if(t.begin(), t.end(), [](const Token& k) { return k.text == "="; });
          if (eq == t.begin() + 1 || eq == t.end() || eq + 1 == t.end())
            fail(t[0], "expected `classify <map> = <target>`");
          std::vector<Token> lhs(t.begin(), eq), rhs(eq + 1, t.end());
          u.classify.push_back({split_list(lhs, 1), split_list(rhs, 0), l.line});
        }
      }
      if (u.carrier.empty()) fail(h[0], "universe without carrier");
      if (u.family.empty()) fail(h[0], "universe without family");
      doc.universes.push_back(std::move(u));
    }
  }
  return doc;
}

CategoryRef Workspace::category(const std::string& name) const {
  if (auto it = cats_.find(name); it != cats_.end()) return it->second;
  for (const auto& raw : doc_.categories)
    if (raw.name == name) {
      auto rep = validate_category(raw);
      if (!rep.ok()) throw Error(rep.violations.front().kind, describe(rep.violations));
      auto ref = std::make_shared<const FinCategory>(std::move(*rep.category));
      cats_.emplace(name, ref);
      return ref;
    }
  throw Error(ErrorKind::UnknownId, "category " + name);
}

Functor Workspace::functor(const std::string& name) const {
  for (const auto& raw : doc_.functors)
    if (raw.name == name) {
      Functor F = resolve_functor(raw, category(raw.src), category(raw.tgt));
      auto vs = check_functor(F);
      if (!vs.empty()) throw Error(ErrorKind::NotAFunctor, describe(vs));
      return F;
    }
  throw Error(ErrorKind::UnknownId, "functor " + name);
}

NatTrans Workspace::nat(const std::string& name) const {
  for (const auto& raw : doc_.nats)
    if (raw.name == name) {
      Functor F = functor(raw.from), G = functor(raw.to);
      NatTrans a{std::vector<Mor>(F.src->object_count())};
      for (const auto& [x, m] : raw.components) a.components[F.src->obj(x).v] = F.tgt->mor(m);
      for (Obj x : F.src->objects())
        if (!a.components[x.v].valid())
          throw Error(ErrorKind::UnknownId, "nat " + name + " missing component at " + F.src->obj_name(x));
      auto vs = check_natural(F, G, a);
      if (!vs.empty()) throw Error(ErrorKind::NotAFunctor, describe(vs));
      return a;
    }
  throw Error(ErrorKind::UnknownId, "nat " + name);
}

const RawFilter& Workspace::filter(const std::string& name) const {
  for (const auto& f : doc_.filters)
    if (f.name == name) return f;
  throw Error(ErrorKind::UnknownId, "filter " + name);
}

const RawModel& Workspace::model(const std::string& name) const {
  for (const auto& m : doc_.models)
    if (m.name == name) return m;
  throw Error(ErrorKind::UnknownId, "model " + name);
}

}  // namespace catquot
