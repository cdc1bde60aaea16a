#include "catquot/set_power.hpp"

#include <map>
#include <set>
#include <sstream>

namespace catquot {

namespace {

// All functions [n] -> [m] in lexicographic order.
std::vector<std::vector<int>> functions(int n, int m) {
  std::vector<std::vector<int>> out;
  if (n > 0 && m == 0) return out;
  std::vector<int> cur(n, 0);
  while (true) {
    out.push_back(cur);
    int k = n - 1;
    while (k >= 0 && cur[k] == m - 1) cur[k--] = 0;
    if (k < 0) break;
    ++cur[k];
  }
  return out;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

SetPower::SetPower(int arity, std::vector<int> probe_sizes, std::vector<bool> active)
    : arity_(arity), probe_sizes_(std::move(probe_sizes)), active_(std::move(active)) {
  if (active_.empty()) active_.assign(arity_, true);
  std::vector<int> cur(arity_, 0);
  const int n = static_cast<int>(probe_sizes_.size());
  std::vector<int> idx(arity_, 0);
  while (true) {
    for (int i = 0; i < arity_; ++i) cur[i] = probe_sizes_[idx[i]];
    probes_.push_back(Obj{cur});
    int k = arity_ - 1;
    while (k >= 0 && idx[k] == n - 1) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
  }
}

std::string SetPower::probe_description() const {
  std::ostringstream os;
  os << "S^" << arity_ << " sizes {";
  for (std::size_t i = 0; i < probe_sizes_.size(); ++i) os << (i ? "," : "") << probe_sizes_[i];
  os << "} mask ";
  for (bool a : active_) os << (a ? '1' : '0');
  return os.str();
}

SetPower SetPower::restricted(const std::vector<bool>& keep) const {
  std::vector<bool> m(arity_);
  for (int i = 0; i < arity_; ++i) m[i] = active_[i] && keep[i];
  return SetPower(arity_, probe_sizes_, m);
}

SetPower::Obj SetPower::object(std::vector<int> sizes) const {
  if (static_cast<int>(sizes.size()) != arity_)
    throw Error(ErrorKind::UnknownId, "object of arity " + std::to_string(sizes.size()));
  return Obj{std::move(sizes)};
}

SetPower::Mor SetPower::morphism(const Obj& s, const Obj& t, std::vector<std::vector<int>> maps) const {
  maps.resize(arity_);
  for (int i = 0; i < arity_; ++i) {
    if (!active_[i]) {
      maps[i].clear();
      continue;
    }
    if (static_cast<int>(maps[i].size()) != s.sizes[i])
      throw Error(ErrorKind::MismatchedEndpoints, "component " + std::to_string(i) + " has wrong domain");
    for (int v : maps[i])
      if (v < 0 || v >= t.sizes[i])
        throw Error(ErrorKind::MismatchedEndpoints, "component " + std::to_string(i) + " leaves codomain");
  }
  return Mor{s, t, std::move(maps)};
}

std::size_t SetPower::hom_size(const Obj& x, const Obj& y) const {
  std::size_t n = 1;
  for (int i = 0; i < arity_; ++i)
    if (active_[i]) n *= ipow(static_cast<std::size_t>(y.sizes[i]), x.sizes[i]);
  return n;
}

std::vector<SetPower::Mor> SetPower::hom(const Obj& x, const Obj& y) const {
  std::vector<std::vector<std::vector<int>>> per(arity_);
  for (int i = 0; i < arity_; ++i) {
    per[i] = active_[i] ? functions(x.sizes[i], y.sizes[i]) : std::vector<std::vector<int>>{{}};
    if (per[i].empty()) return {};
  }
  std::vector<Mor> out;
  std::vector<std::size_t> idx(arity_, 0);
  while (true) {
    Mor m{x, y, std::vector<std::vector<int>>(arity_)};
    for (int i = 0; i < arity_; ++i) m.maps[i] = per[i][idx[i]];
    out.push_back(std::move(m));
    int k = arity_ - 1;
    while (k >= 0 && idx[k] + 1 == per[k].size()) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
  }
  return out;
}

SetPower::Mor SetPower::compose(const Mor& g, const Mor& f) const {
  if (f.tgt != g.src) throw Error(ErrorKind::MismatchedEndpoints, name(g) + " . " + name(f));
  Mor h{f.src, g.tgt, std::vector<std::vector<int>>(arity_)};
  for (int i = 0; i < arity_; ++i) {
    if (!active_[i]) continue;
    h.maps[i].resize(f.maps[i].size());
    for (std::size_t a = 0; a < f.maps[i].size(); ++a) h.maps[i][a] = g.maps[i][f.maps[i][a]];
  }
  return h;
}

SetPower::Mor SetPower::id(const Obj& x) const {
  Mor m{x, x, std::vector<std::vector<int>>(arity_)};
  for (int i = 0; i < arity_; ++i)
    if (active_[i])
      for (int a = 0; a < x.sizes[i]; ++a) m.maps[i].push_back(a);
  return m;
}

SetPower::Mor SetPower::project(const Mor& f) const {
  Mor m = f;
  for (int i = 0; i < arity_; ++i)
    if (!active_[i]) m.maps[i].clear();
  return m;
}

bool SetPower::same(const Obj& a, const Obj& b) const {
  for (int i = 0; i < arity_; ++i)
    if (active_[i] && a.sizes[i] != b.sizes[i]) return false;
  return true;
}

SetPower::Mor SetPower::canonical(const Obj& from, const Obj& to) const {
  if (!same(from, to)) throw Error(ErrorKind::MismatchedEndpoints, name(from) + " vs " + name(to));
  Mor m = id(from);
  m.tgt = to;
  return m;
}

std::string SetPower::name(const Obj& x) const {
  if (arity_ == 1) return "S" + std::to_string(x.sizes[0]);
  std::string s = "(";
  for (int i = 0; i < arity_; ++i) s += (i ? ",S" : "S") + std::to_string(x.sizes[i]);
  return s + ")";
}

std::string SetPower::name(const Mor& f) const {
  std::string s = name(f.src) + ">" + name(f.tgt) + ":";
  for (int i = 0; i < arity_; ++i) {
    s += i ? ";[" : "[";
    if (!active_[i]) s += "-";
    for (std::size_t a = 0; a < f.maps[i].size(); ++a) s += (a ? "," : "") + std::to_string(f.maps[i][a]);
    s += "]";
  }
  return s;
}

Cone<SetPower> SetPower::limit(const Diagram<SetPower>& d) const {
  const std::size_t n = d.nodes.size();
  Obj apex{std::vector<int>(arity_, 0)};
  std::vector<std::vector<std::vector<int>>> legs(n, std::vector<std::vector<int>>(arity_));
  for (int i = 0; i < arity_; ++i) {
    if (!active_[i]) continue;
    std::vector<int> cur(n);
    int count = 0;
    auto go = [&](auto&& self, std::size_t k) -> void {
      if (k == n) {
        for (std::size_t j = 0; j < n; ++j) legs[j][i].push_back(cur[j]);
        ++count;
        return;
      }
      for (int e = 0; e < d.nodes[k].sizes[i]; ++e) {
        cur[k] = e;
        bool ok = true;
        for (const auto& ed : d.edges) {
          if (static_cast<std::size_t>(std::max(ed.from, ed.to)) != k) continue;
          if (ed.mor.maps[i][cur[ed.from]] != cur[ed.to]) ok = false;
        }
        if (ok) self(self, k + 1);
      }
    };
    go(go, 0);
    apex.sizes[i] = count;
  }
  Cone<SetPower> c{apex, {}};
  for (std::size_t j = 0; j < n; ++j) c.legs.push_back(Mor{apex, d.nodes[j], legs[j]});
  return c;
}

Cone<SetPower> SetPower::colimit(const Diagram<SetPower>& d) const {
  const std::size_t n = d.nodes.size();
  Obj apex{std::vector<int>(arity_, 0)};
  std::vector<std::vector<std::vector<int>>> legs(n, std::vector<std::vector<int>>(arity_));
  for (int i = 0; i < arity_; ++i) {
    if (!active_[i]) continue;
    std::vector<int> offset(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) offset[j + 1] = offset[j] + d.nodes[j].sizes[i];
    std::vector<int> parent(offset[n]);
    for (int k = 0; k < offset[n]; ++k) parent[k] = k;
    auto find = [&](int k) {
      while (parent[k] != k) k = parent[k] = parent[parent[k]];
      return k;
    };
    for (const auto& ed : d.edges)
      for (int e = 0; e < d.nodes[ed.from].sizes[i]; ++e) {
        int a = find(offset[ed.from] + e), b = find(offset[ed.to] + ed.mor.maps[i][e]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    std::map<int, int> label;
    for (int k = 0; k < offset[n]; ++k) label.emplace(find(k), static_cast<int>(label.size()));
    for (std::size_t j = 0; j < n; ++j)
      for (int e = 0; e < d.nodes[j].sizes[i]; ++e) legs[j][i].push_back(label[find(offset[j] + e)]);
    apex.sizes[i] = static_cast<int>(label.size());
  }
  Cone<SetPower> c{apex, {}};
  for (std::size_t j = 0; j < n; ++j) c.legs.push_back(Mor{d.nodes[j], apex, legs[j]});
  return c;
}

Cone<SetPower> SetPower::product(const Obj& x, const Obj& y) const {
  return limit(discrete_diagram<SetPower>({x, y}));
}

SetPower::Mor SetPower::pair(const Obj& x, const Obj& y, const Mor& a, const Mor& b) const {
  auto p = product(x, y);
  Mor m{a.src, p.apex, std::vector<std::vector<int>>(arity_)};
  for (int i = 0; i < arity_; ++i) {
    if (!active_[i]) continue;
    for (std::size_t w = 0; w < a.maps[i].size(); ++w)
      m.maps[i].push_back(a.maps[i][w] * y.sizes[i] + b.maps[i][w]);
  }
  return m;
}

SetPower::Mor SetPower::times(const Mor& f, const Mor& g) const {
  auto s = product(f.src, g.src);
  return pair(f.tgt, g.tgt, compose(f, s.legs[0]), compose(g, s.legs[1]));
}

SetPower::Exponential SetPower::exponential(const Obj& base, const Obj& target) const {
  Obj e{std::vector<int>(arity_, 0)};
  std::vector<std::vector<std::vector<int>>> fns(arity_);
  for (int i = 0; i < arity_; ++i) {
    if (!active_[i]) continue;
    fns[i] = functions(base.sizes[i], target.sizes[i]);
    e.sizes[i] = static_cast<int>(fns[i].size());
  }
  auto p = product(e, base);
  Mor ev{p.apex, target, std::vector<std::vector<int>>(arity_)};
  for (int i = 0; i < arity_; ++i) {
    if (!active_[i]) continue;
    for (int k = 0; k < e.sizes[i]; ++k)
      for (int a = 0; a < base.sizes[i]; ++a) ev.maps[i].push_back(fns[i][k][a]);
  }
  return {e, ev};
}

SetPower::Classifier SetPower::subobject_classifier() const {
  Obj omega = uniform(2);
  std::vector<std::vector<int>> maps(arity_);
  for (int i = 0; i < arity_; ++i)
    if (active_[i]) maps[i] = {1};
  return {omega, Mor{terminal(), omega, maps}};
}

// ---------------------------------------------------------------------------

bool is_mono(const SetPower& c, const SetPower::Mor& f) {
  for (int i = 0; i < c.arity(); ++i) {
    if (!c.active(i)) continue;
    std::set<int> seen(f.maps[i].begin(), f.maps[i].end());
    if (seen.size() != f.maps[i].size()) return false;
  }
  return true;
}

bool is_epi(const SetPower& c, const SetPower::Mor& f) {
  for (int i = 0; i < c.arity(); ++i) {
    if (!c.active(i)) continue;
    std::set<int> seen(f.maps[i].begin(), f.maps[i].end());
    if (static_cast<int>(seen.size()) != f.tgt.sizes[i]) return false;
  }
  return true;
}

bool is_iso(const SetPower& c, const SetPower::Mor& f) { return is_mono(c, f) && is_epi(c, f); }

bool is_exponential(const SetPower& c, const SetPower::Obj& base, const SetPower::Obj& target,
                    const SetPower::Exponential& e) {
  auto ex = c.product(e.object, base);
  if (!c.same(e.eval.src, ex.apex) || e.eval.tgt != target) return false;
  const auto eval = c.compose(e.eval, c.canonical(ex.apex, e.eval.src));
  for (const auto& w : c.objects()) {
    auto wx = c.product(w, base);
    std::set<SetPower::Mor> image;
    std::size_t n = 0;
    for (const auto& g : c.hom(w, e.object)) {
      auto gx = c.pair(e.object, base, c.compose(g, wx.legs[0]), wx.legs[1]);
      image.insert(c.compose(eval, gx));
      ++n;
    }
    if (image.size() != n || n != c.hom_size(wx.apex, target)) return false;
  }
  return true;
}

bool is_subobject_classifier(const SetPower& c, const SetPower::Classifier& s) {
  for (const auto& x : c.objects()) {
    std::set<std::vector<std::vector<int>>> images;
    std::size_t n = 0;
    for (const auto& chi : c.hom(x, s.omega)) {
      auto pb = c.limit(cospan_diagram(c, chi, s.truth));
      const auto& m = pb.legs[0];
      if (!is_mono(c, m)) return false;
      std::vector<std::vector<int>> img(c.arity());
      for (int i = 0; i < c.arity(); ++i) {
        img[i] = m.maps[i];
        std::sort(img[i].begin(), img[i].end());
      }
      images.insert(img);
      ++n;
    }
    std::size_t subsets = 1;
    for (int i = 0; i < c.arity(); ++i)
      if (c.active(i)) subsets <<= x.sizes[i];
    if (images.size() != n || n != subsets) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

DependentProduct dependent_product(const SetPower& c, const SetPower::Mor& f, const SetPower::Mor& e) {
  if (e.tgt != f.src) throw Error(ErrorKind::MismatchedEndpoints, "family not over the source of f");
  const int k = c.arity();
  SetPower::Obj pi{std::vector<int>(k, 0)};
  std::vector<std::vector<int>> structure(k);
  std::vector<std::vector<std::map<int, int>>> section(k);  // element -> (x -> chosen element of E)
  for (int i = 0; i < k; ++i) {
    if (!c.active(i)) continue;
    for (int y = 0; y < f.tgt.sizes[i]; ++y) {
      std::vector<int> xs;
      for (int x = 0; x < f.src.sizes[i]; ++x)
        if (f.maps[i][x] == y) xs.push_back(x);
      std::vector<std::vector<int>> fib(xs.size());
      for (std::size_t j = 0; j < xs.size(); ++j)
        for (int a = 0; a < e.src.sizes[i]; ++a)
          if (e.maps[i][a] == xs[j]) fib[j].push_back(a);
      std::vector<std::size_t> idx(xs.size(), 0);
      bool empty = false;
      for (const auto& fb : fib) empty = empty || fb.empty();
      if (empty) continue;
      while (true) {
        std::map<int, int> s;
        for (std::size_t j = 0; j < xs.size(); ++j) s[xs[j]] = fib[j][idx[j]];
        structure[i].push_back(y);
        section[i].push_back(std::move(s));
        int j = static_cast<int>(xs.size()) - 1;
        while (j >= 0 && idx[j] + 1 == fib[j].size()) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
      }
    }
    pi.sizes[i] = static_cast<int>(structure[i].size());
  }
  DependentProduct out;
  out.structure = SetPower::Mor{pi, f.tgt, structure};
  out.pullback = c.limit(cospan_diagram(c, f, out.structure));
  out.counit = SetPower::Mor{out.pullback.apex, e.src, std::vector<std::vector<int>>(k)};
  for (int i = 0; i < k; ++i) {
    if (!c.active(i)) continue;
    for (int p = 0; p < out.pullback.apex.sizes[i]; ++p) {
      int x = out.pullback.legs[0].maps[i][p];
      int s = out.pullback.legs[1].maps[i][p];
      out.counit.maps[i].push_back(section[i][s].at(x));
    }
  }
  return out;
}

bool verify_dependent_product(const SetPower& c, const SetPower::Mor& f, const SetPower::Mor& e,
                              const DependentProduct& p) {
  const int k = c.arity();
  if (c.compose(e, p.counit) != p.pullback.legs[0]) return false;
  for (const auto& z : c.objects()) {
    for (const auto& zy : c.hom(z, f.tgt)) {
      auto pz = c.limit(cospan_diagram(c, f, zy));  // legs: to X, to Z
      std::size_t targets = 1;
      for (int i = 0; i < k; ++i) {
        if (!c.active(i)) continue;
        for (int q = 0; q < pz.apex.sizes[i]; ++q) {
          int x = pz.legs[0].maps[i][q];
          std::size_t fiber = 0;
          for (int a : e.maps[i]) fiber += a == x;
          targets *= fiber;
        }
      }
      std::set<SetPower::Mor> image;
      std::size_t n = 0;
      for (const auto& h : c.hom(z, p.structure.src)) {
        if (c.compose(p.structure, h) != zy) continue;
        ++n;
        SetPower::Mor fh{pz.apex, p.pullback.apex, std::vector<std::vector<int>>(k)};
        for (int i = 0; i < k; ++i) {
          if (!c.active(i)) continue;
          std::map<std::pair<int, int>, int> where;
          for (int q = 0; q < p.pullback.apex.sizes[i]; ++q)
            where[{p.pullback.legs[0].maps[i][q], p.pullback.legs[1].maps[i][q]}] = q;
          for (int q = 0; q < pz.apex.sizes[i]; ++q)
            fh.maps[i].push_back(where.at({pz.legs[0].maps[i][q], h.maps[i][pz.legs[1].maps[i][q]]}));
        }
        image.insert(c.compose(p.counit, fh));
      }
      if (image.size() != n || n != targets) return false;
    }
  }
  return true;
}

}  // namespace catquot
