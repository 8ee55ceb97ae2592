#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "dehn/sphere_complex.hpp"

namespace dehn {

namespace {

struct Code {
  std::vector<int> words;
  std::vector<int> order;  // darts in canonical order (pairs adjacent)
};

class Canonizer {
 public:
  explicit Canonizer(const SphereComplex& sc) : sc_(sc) {
    sc_.cycle_ids();
    comp_ = sc_.component_ids(&ncomp_);
    comp_darts_.resize(ncomp_);
    for (int d = 0; d < sc_.dart_count(); ++d) comp_darts_[comp_[d]].push_back(d);
    cell_comps_.resize(sc_.cells.size());
    for (int d = 0; d < sc_.dart_count(); ++d) cell_comps_[sc_.cell[d]].insert(comp_[d]);
  }

  Code best() {
    if (sc_.dart_count() == 0) {
      const Cell& c = sc_.cells.at(0);
      return {{0, (int)c.kind, (int)c.orientation, c.label, c.three_handle}, {}};
    }
    Code out;
    bool have = false;
    for (int x = 0; x < ncomp_; ++x) {
      const Code& c = code(x, -1);
      if (!have || c.words < out.words) {
        out = c;
        have = true;
      }
    }
    return out;
  }

 private:
  std::tuple<int, int, int, int> local_invariant(int d) const {
    return {(int)sc_.cell_of(d).kind, (int)sc_.cells[sc_.cell[d ^ 1]].kind, sc_.tag[d],
            (int)sc_.cell_of(d).orientation};
  }

  const Code& code(int x, int parent) {
    auto key = std::make_pair(x, parent);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const std::vector<int>& darts = comp_darts_[x];
    auto inv = local_invariant(darts.front());
    for (int d : darts) inv = std::min(inv, local_invariant(d));

    std::map<int, std::vector<const Code*>> children;
    for (int d : darts) {
      int c = sc_.cell[d];
      if (c == parent || children.count(c)) continue;
      std::vector<const Code*> kids;
      for (int y : cell_comps_[c])
        if (y != x) kids.push_back(&code(y, c));
      std::sort(kids.begin(), kids.end(), [](const Code* a, const Code* b) { return a->words < b->words; });
      children[c] = std::move(kids);
    }

    Code best;
    bool have = false;
    std::vector<int> label(sc_.dart_count(), -1);
    for (int s : darts) {
      if (local_invariant(s) != inv) continue;
      for (int d : darts) label[d] = -1;
      std::vector<int> order;
      order.reserve(darts.size());
      label[s] = 0;
      label[s ^ 1] = 1;
      order.push_back(s);
      order.push_back(s ^ 1);
      for (std::size_t i = 0; i < order.size(); ++i) {
        int nd = sc_.next[order[i]];
        if (label[nd] < 0) {
          label[nd] = (int)order.size();
          label[nd ^ 1] = (int)order.size() + 1;
          order.push_back(nd);
          order.push_back(nd ^ 1);
        }
      }
      std::map<int, int> cell_index;
      std::vector<int> cell_order;
      std::vector<int> w;
      w.reserve(order.size() * 3 + 16);
      w.push_back((int)order.size());
      bool tie = have && !best.words.empty() && best.words[0] == w[0];
      bool worse = have && !tie && best.words[0] < w[0];
      if (worse) continue;
      for (int d : order) {
        int c = sc_.cell[d];
        auto ci = cell_index.find(c);
        if (ci == cell_index.end()) {
          ci = cell_index.emplace(c, (int)cell_order.size()).first;
          cell_order.push_back(c);
        }
        std::size_t from = w.size();
        w.push_back(label[sc_.next[d]]);
        w.push_back(sc_.tag[d]);
        w.push_back(ci->second);
        if (have && tie) {
          for (std::size_t k = from; k < w.size() && tie; ++k) {
            if (k >= best.words.size() || w[k] > best.words[k]) {
              worse = true;
              tie = false;
            } else if (w[k] < best.words[k]) {
              tie = false;
            }
          }
          if (worse) break;
        }
      }
      if (worse) continue;
      for (int c : cell_order) {
        const Cell& cl = sc_.cells[c];
        w.push_back((int)cl.kind);
        w.push_back((int)cl.orientation);
        w.push_back(cl.label);
        w.push_back(cl.three_handle);
        w.push_back(c == parent);
        if (c == parent) continue;
        const auto& kids = children[c];
        w.push_back((int)kids.size());
        for (const Code* k : kids) {
          w.push_back((int)k->words.size());
          w.insert(w.end(), k->words.begin(), k->words.end());
        }
      }
      if (!have || w < best.words) {
        best.words = std::move(w);
        best.order = std::move(order);
        for (int c : cell_order) {
          if (c == parent) continue;
          for (const Code* k : children[c]) best.order.insert(best.order.end(), k->order.begin(), k->order.end());
        }
        have = true;
      }
    }
    return memo_.emplace(key, std::move(best)).first->second;
  }

  const SphereComplex& sc_;
  std::vector<int> comp_;
  int ncomp_ = 0;
  std::vector<std::vector<int>> comp_darts_;
  std::vector<std::set<int>> cell_comps_;
  std::map<std::pair<int, int>, Code> memo_;
};

std::string encode(const std::vector<int>& words) {
  std::string out;
  out.reserve(words.size() * 2);
  for (int v : words) {
    unsigned u = static_cast<unsigned>(v + 1);
    while (u >= 0x80) {
      out.push_back(static_cast<char>(0x80 | (u & 0x7f)));
      u >>= 7;
    }
    out.push_back(static_cast<char>(u));
  }
  return out;
}

SphereComplex relabel(const SphereComplex& sc, const std::vector<int>& order) {
  if (order.empty()) {
    SphereComplex out;
    out.cells = sc.cells;
    return out;
  }
  int n = sc.dart_count();
  std::vector<int> map(n, -1);
  for (int i = 0; i < n; ++i) map[order[i]] = i;
  std::map<int, int> cmap;
  std::vector<Cell> cells;
  for (int d : order) {
    int c = sc.cell[d];
    if (!cmap.count(c)) {
      cmap[c] = (int)cells.size();
      cells.push_back(sc.cells[c]);
    }
  }
  SphereComplex out;
  out.next.resize(n);
  out.prev.resize(n);
  out.cell.resize(n);
  out.tag.resize(n);
  out.mark.resize(n);
  for (int d = 0; d < n; ++d) {
    int m = map[d];
    out.next[m] = map[sc.next[d]];
    out.cell[m] = cmap[sc.cell[d]];
    out.tag[m] = sc.tag[d];
    out.mark[m] = sc.mark[d];
  }
  for (int m = 0; m < n; ++m) out.prev[out.next[m]] = m;
  out.cells = std::move(cells);
  return out;
}

}  // namespace

std::string canonical_key(const SphereComplex& sc) {
  Code a = Canonizer(sc).best();
  SphereComplex m = mirror(sc);
  Code b = Canonizer(m).best();
  return encode(std::min(a.words, b.words));
}

std::string oriented_key(const SphereComplex& sc) { return encode(Canonizer(sc).best().words); }

SphereComplex canonical_form(const SphereComplex& sc) {
  Code a = Canonizer(sc).best();
  SphereComplex m = mirror(sc);
  Code b = Canonizer(m).best();
  if (b.words < a.words) return relabel(m, b.order);
  return relabel(sc, a.order);
}

std::string serialize(const SphereComplex& sc) {
  std::ostringstream os;
  os << "sphere " << sc.dart_count() << ' ' << sc.cells.size() << '\n';
  os << "cells";
  for (const Cell& c : sc.cells)
    os << ' ' << to_string(c.kind) << ':' << to_string(c.orientation) << ':' << c.label << ':'
       << (c.three_handle ? 1 : 0);
  os << "\ndarts";
  for (int d = 0; d < sc.dart_count(); ++d) os << ' ' << sc.next[d] << ',' << sc.cell[d] << ',' << sc.tag[d];
  os << "\nsutures";
  for (int e = 0; e < sc.edge_count(); ++e)
    if (sc.is_suture(2 * e)) os << ' ' << e;
  os << '\n';
  return os.str();
}

SphereComplex parse_sphere_complex(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  int nd = 0, nc = 0;
  if (!(is >> word) || word != "sphere" || !(is >> nd >> nc) || nd < 0 || nc < 1 || nd % 2)
    throw ComplexError("sphere complex: bad header");
  SphereComplex sc;
  if (!(is >> word) || word != "cells") throw ComplexError("sphere complex: missing cells line");
  for (int i = 0; i < nc; ++i) {
    std::string f;
    if (!(is >> f)) throw ComplexError("sphere complex: truncated cells");
    std::replace(f.begin(), f.end(), ':', ' ');
    std::istringstream cs(f);
    std::string kind, orient;
    Cell c;
    int h3 = 0;
    if (!(cs >> kind >> orient >> c.label >> h3)) throw ComplexError("sphere complex: bad cell record " + f);
    if (kind == "F0") c.kind = CellKind::zero_handle;
    else if (kind == "F1") c.kind = CellKind::one_handle;
    else if (kind == "R") c.kind = CellKind::region;
    else throw ComplexError("sphere complex: unknown cell kind " + kind);
    if (orient == "in") c.orientation = Orientation::in;
    else if (orient == "out") c.orientation = Orientation::out;
    else throw ComplexError("sphere complex: unknown orientation " + orient);
    c.three_handle = h3 != 0;
    sc.cells.push_back(c);
  }
  if (!(is >> word) || word != "darts") throw ComplexError("sphere complex: missing darts line");
  sc.next.resize(nd);
  sc.prev.assign(nd, -1);
  sc.cell.resize(nd);
  sc.tag.resize(nd);
  sc.mark.assign(nd, 0);
  for (int d = 0; d < nd; ++d) {
    std::string f;
    if (!(is >> f)) throw ComplexError("sphere complex: truncated darts");
    std::replace(f.begin(), f.end(), ',', ' ');
    std::istringstream ds(f);
    if (!(ds >> sc.next[d] >> sc.cell[d] >> sc.tag[d])) throw ComplexError("sphere complex: bad dart record " + f);
    if (sc.next[d] < 0 || sc.next[d] >= nd || sc.cell[d] < 0 || sc.cell[d] >= nc)
      throw ComplexError("sphere complex: dart reference out of range");
  }
  for (int d = 0; d < nd; ++d) {
    if (sc.prev[sc.next[d]] >= 0) throw ComplexError("sphere complex: next is not a permutation");
    sc.prev[sc.next[d]] = d;
  }
  if (is >> word) {
    if (word != "sutures") throw ComplexError("sphere complex: unexpected token " + word);
    std::set<int> listed;
    int e;
    while (is >> e) listed.insert(e);
    std::set<int> actual;
    for (int k = 0; k < sc.edge_count(); ++k)
      if (sc.is_suture(2 * k)) actual.insert(k);
    if (listed != actual) throw ComplexError("sphere complex: suture list disagrees with orientations");
  }
  for (std::size_t c = 0; c < sc.cells.size(); ++c) sc.cells[c].origins = {static_cast<int>(c)};
  return sc;
}

}  // namespace dehn
