#include "dehn/sphere_complex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace dehn {

const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::zero_handle: return "F0";
    case CellKind::one_handle: return "F1";
    default: return "R";
  }
}

const char* to_string(Orientation o) { return o == Orientation::in ? "in" : "out"; }

int SphereComplex::add_cell(Cell c) {
  cells.push_back(std::move(c));
  return static_cast<int>(cells.size()) - 1;
}

int SphereComplex::add_edge(int tag_value) {
  int e = edge_count();
  for (int k = 0; k < 2; ++k) {
    next.push_back(-1);
    prev.push_back(-1);
    cell.push_back(-1);
    tag.push_back(tag_value);
    mark.push_back(0);
  }
  return e;
}

bool SphereComplex::is_suture(int d) const {
  const Cell& a = cells[cell[d]];
  const Cell& b = cells[cell[d ^ 1]];
  return a.kind == CellKind::region && b.kind == CellKind::region && !a.three_handle && !b.three_handle &&
         a.orientation != b.orientation;
}

bool SphereComplex::is_corner(int d) const {
  CellKind a = cells[cell[d]].kind, b = cells[cell[d ^ 1]].kind;
  return (a == CellKind::zero_handle && b == CellKind::region) || (b == CellKind::zero_handle && a == CellKind::region);
}

bool SphereComplex::is_band_end(int d) const {
  CellKind a = cells[cell[d]].kind, b = cells[cell[d ^ 1]].kind;
  return (a == CellKind::zero_handle && b == CellKind::one_handle) || (b == CellKind::zero_handle && a == CellKind::one_handle);
}

bool SphereComplex::is_band_side(int d) const {
  CellKind a = cells[cell[d]].kind, b = cells[cell[d ^ 1]].kind;
  return (a == CellKind::one_handle && b == CellKind::region) || (b == CellKind::one_handle && a == CellKind::region);
}

namespace {

std::vector<int> orbits(int n, const std::function<int(int)>& step, int* count) {
  std::vector<int> id(n, -1);
  int k = 0;
  for (int d = 0; d < n; ++d) {
    if (id[d] >= 0) continue;
    int x = d;
    do {
      id[x] = k;
      x = step(x);
    } while (x != d);
    ++k;
  }
  if (count) *count = k;
  return id;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<int> SphereComplex::vertex_ids(int* count) const {
  return orbits(dart_count(), [this](int d) { return sigma(d); }, count);
}

std::vector<int> SphereComplex::cycle_ids(int* count) const {
  return orbits(dart_count(), [this](int d) { return next[d]; }, count);
}

std::vector<int> SphereComplex::component_ids(int* count) const {
  int n = dart_count();
  UnionFind uf(n);
  for (int d = 0; d < n; ++d) {
    uf.unite(d, next[d]);
    uf.unite(d, d ^ 1);
  }
  std::vector<int> id(n, -1);
  std::map<int, int> remap;
  for (int d = 0; d < n; ++d) {
    int r = uf.find(d);
    auto it = remap.emplace(r, static_cast<int>(remap.size())).first;
    id[d] = it->second;
  }
  if (count) *count = static_cast<int>(remap.size());
  return id;
}

std::vector<int> SphereComplex::cycle_of(int d) const {
  std::vector<int> out;
  int x = d;
  do {
    out.push_back(x);
    x = next[x];
  } while (x != d);
  return out;
}

int SphereComplex::euler_characteristic() const {
  int nv = 0, nc = 0;
  vertex_ids(&nv);
  std::vector<int> cyc = cycle_ids(&nc);
  std::vector<std::set<int>> per(cells.size());
  for (int d = 0; d < dart_count(); ++d) per[cell[d]].insert(cyc[d]);
  int faces = 0;
  for (auto& s : per) faces += 2 - static_cast<int>(s.size());
  if (dart_count() == 0) return 2 * static_cast<int>(cells.size());
  return nv - edge_count() + faces;
}

void SphereComplex::validate() const {
  int n = dart_count();
  if (n % 2) throw ComplexError("odd dart count");
  if ((int)prev.size() != n || (int)cell.size() != n || (int)tag.size() != n || (int)mark.size() != n)
    throw ComplexError("array size mismatch");
  if (n == 0) {
    if (cells.size() != 1 || cells[0].kind != CellKind::region) throw ComplexError("empty sphere must be a single region");
    return;
  }
  for (int d = 0; d < n; ++d) {
    if (next[d] < 0 || next[d] >= n || prev[d] < 0 || prev[d] >= n) throw ComplexError("dangling dart");
    if (prev[next[d]] != d) throw ComplexError("next/prev not inverse at dart " + std::to_string(d));
    if (cell[d] < 0 || cell[d] >= (int)cells.size()) throw ComplexError("bad cell reference");
    if (cell[next[d]] != cell[d]) throw ComplexError("cell changes along a cycle at dart " + std::to_string(d));
    if (tag[d] != tag[d ^ 1]) throw ComplexError("edge tag asymmetric");
  }
  int ncyc = 0, ncomp = 0;
  std::vector<int> cyc = cycle_ids(&ncyc);
  std::vector<int> comp = component_ids(&ncomp);
  std::vector<std::set<int>> per(cells.size());
  std::map<std::pair<int, int>, int> comp_cell_cycle;
  for (int d = 0; d < n; ++d) {
    per[cell[d]].insert(cyc[d]);
    auto key = std::make_pair(comp[d], cell[d]);
    auto it = comp_cell_cycle.find(key);
    if (it == comp_cell_cycle.end())
      comp_cell_cycle.emplace(key, cyc[d]);
    else if (it->second != cyc[d])
      throw ComplexError("a cell meets one component in two cycles");
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (per[c].empty()) throw ComplexError("cell " + std::to_string(c) + " has no boundary");
    if (cells[c].is_f() && per[c].size() != 1) throw ComplexError("F cell " + std::to_string(c) + " is not a disc");
  }
  if (euler_characteristic() != 2) throw ComplexError("Euler characteristic is not 2");
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].kind != CellKind::one_handle) continue;
    int ends = 0;
    for (int d = 0; d < n; ++d) {
      if (cell[d] != (int)c) continue;
      const Cell& r = cells[cell[d ^ 1]];
      if (r.kind == CellKind::zero_handle) ++ends;
      if (r.kind == CellKind::one_handle) throw ComplexError("two bands share an edge");
    }
    if (ends != 2) throw ComplexError("band " + std::to_string(c) + " does not have two ends");
  }
  for (int d = 0; d < n; ++d) {
    if (!is_suture(d)) continue;
    if ((d ^ 1) == sigma(d) || next[d] == (d ^ 1)) continue;
    bool on_zero = false;
    int sutures = 0;
    int x = d;
    do {
      if (cells[cell[x]].kind == CellKind::zero_handle) on_zero = true;
      if (is_suture(x)) ++sutures;
      x = sigma(x);
    } while (x != d);
    if (!on_zero) throw ComplexError("suture endpoint away from a zero-handle");
    if (sutures != 1) throw ComplexError("sutures meet at a vertex");
  }
}

int split_edge(SphereComplex& sc, int d) {
  int t = d ^ 1;
  int nd = sc.next[d], pt = sc.prev[t];
  int e = sc.add_edge(sc.tag[d]);
  int n = 2 * e, n1 = 2 * e + 1;
  sc.cell[n] = sc.cell[d];
  sc.cell[n1] = sc.cell[t];
  sc.mark[n] = sc.mark[d];
  sc.mark[n1] = sc.mark[t];
  sc.link(d, n);
  sc.link(n, nd == t ? n1 : nd);
  sc.link(pt == d ? n : pt, n1);
  sc.link(n1, t);
  return n;
}

int insert_chord(SphereComplex& sc, int a, int b, int new_cell) {
  if (a == b) throw ComplexError("chord endpoints coincide");
  if (sc.cell[a] != sc.cell[b]) throw ComplexError("chord endpoints in different cells");
  int na = sc.next[a], nb = sc.next[b];
  int e = sc.add_edge(-1);
  int c = 2 * e, c1 = 2 * e + 1;
  sc.cell[c] = sc.cell[a];
  sc.cell[c1] = sc.cell[a];
  sc.link(a, c);
  sc.link(c, nb);
  sc.link(b, c1);
  sc.link(c1, na);
  if (new_cell >= 0) {
    int x = c1;
    do {
      sc.cell[x] = new_cell;
      x = sc.next[x];
    } while (x != c1);
  }
  return c;
}

void delete_edge(SphereComplex& sc, int e) {
  int d = 2 * e, t = d + 1;
  int a = sc.prev[d], b = sc.next[d], c = sc.prev[t], dd = sc.next[t];
  if (b == t && dd == d) {
  } else if (b == t) {
    sc.link(a, dd);
  } else if (dd == d) {
    sc.link(c, b);
  } else {
    sc.link(a, dd);
    sc.link(c, b);
  }
  for (int x : {d, t}) {
    sc.next[x] = -1;
    sc.prev[x] = -1;
  }
}

void compact(SphereComplex& sc) {
  int n = sc.dart_count();
  std::vector<int> map(n, -1);
  int k = 0;
  for (int d = 0; d < n; d += 2)
    if (sc.next[d] >= 0) {
      map[d] = k++;
      map[d + 1] = k++;
    }
  std::vector<int> used(sc.cells.size(), 0);
  for (int d = 0; d < n; ++d)
    if (map[d] >= 0) used[sc.cell[d]] = 1;
  std::vector<int> cmap(sc.cells.size(), -1);
  std::vector<Cell> cells;
  bool none = (k == 0);
  for (std::size_t c = 0; c < sc.cells.size(); ++c)
    if (used[c] || none) {
      cmap[c] = static_cast<int>(cells.size());
      cells.push_back(sc.cells[c]);
    }
  SphereComplex out;
  out.next.resize(k);
  out.prev.resize(k);
  out.cell.resize(k);
  out.tag.resize(k);
  out.mark.resize(k);
  for (int d = 0; d < n; ++d) {
    if (map[d] < 0) continue;
    int m = map[d];
    out.next[m] = map[sc.next[d]];
    out.prev[m] = map[sc.prev[d]];
    out.cell[m] = cmap[sc.cell[d]];
    out.tag[m] = sc.tag[d];
    out.mark[m] = sc.mark[d];
  }
  out.cells = std::move(cells);
  sc = std::move(out);
}

namespace {

bool mergeable(const Cell& a, const Cell& b) {
  return a.kind == CellKind::region && b.kind == CellKind::region && a.orientation == b.orientation &&
         a.three_handle == b.three_handle;
}

void merge_cells(SphereComplex& sc, int keep, int drop) {
  if (keep == drop) return;
  for (int& c : sc.cell)
    if (c == drop) c = keep;
  auto& o = sc.cells[keep].origins;
  for (int x : sc.cells[drop].origins) o.push_back(x);
  std::sort(o.begin(), o.end());
  o.erase(std::unique(o.begin(), o.end()), o.end());
  sc.cells[drop].origins.clear();
}

bool smooth_vertex(SphereComplex& sc, int x) {
  int y = sc.sigma(x);
  if (y == x || sc.sigma(y) != x) return false;
  if (y == (x ^ 1)) return false;
  if (sc.tag[x] != sc.tag[y]) return false;
  int x1 = x ^ 1, y1 = y ^ 1;
  int nx1 = sc.next[y];
  if (nx1 == y1) nx1 = x;
  int px = sc.prev[y1];
  if (px == y) px = x1;
  sc.mark[x1] |= sc.mark[y];
  sc.mark[x] |= sc.mark[y1];
  sc.link(x1, nx1);
  sc.link(px, x);
  for (int z : {y, y1}) {
    sc.next[z] = -1;
    sc.prev[z] = -1;
  }
  return true;
}

}  // namespace

void normalize(SphereComplex& sc) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < sc.edge_count(); ++e) {
      int d = 2 * e;
      if (sc.next[d] < 0) continue;
      int a = sc.cell[d], b = sc.cell[d + 1];
      if (a == b || mergeable(sc.cells[a], sc.cells[b])) {
        merge_cells(sc, std::min(a, b), std::max(a, b));
        delete_edge(sc, e);
        changed = true;
      }
    }
    for (int d = 0; d < sc.dart_count(); ++d) {
      if (sc.next[d] < 0) continue;
      if (smooth_vertex(sc, d)) changed = true;
    }
  }
  bool empty = true;
  for (int d = 0; d < sc.dart_count(); ++d)
    if (sc.next[d] >= 0) empty = false;
  if (empty) {
    // everything collapsed: the sphere is one region
    std::vector<int> live;
    std::set<int> referenced;
    for (std::size_t c = 0; c < sc.cells.size(); ++c)
      if (sc.cells[c].kind == CellKind::region) live.push_back(static_cast<int>(c));
    if (live.empty()) throw ComplexError("empty sphere without a region");
    Cell keep = sc.cells[live.front()];
    for (int c : live)
      if (!mergeable(keep, sc.cells[c])) throw ComplexError("collapsed sphere mixes region orientations");
    sc = SphereComplex{};
    sc.cells.push_back(keep);
    return;
  }
  compact(sc);
}

SphereComplex mirror(const SphereComplex& sc) {
  SphereComplex m = sc;
  int n = sc.dart_count();
  for (int h = 0; h < n; ++h) {
    m.next[h] = sc.prev[h ^ 1] ^ 1;
    m.cell[h] = sc.cell[h ^ 1];
    m.mark[h] = sc.mark[h ^ 1];
  }
  for (int h = 0; h < n; ++h) m.prev[m.next[h]] = h;
  return m;
}

int MapBuilder::edge(int from, int to, int tag) {
  edges.push_back({from, to, tag});
  return static_cast<int>(edges.size()) - 1;
}

SphereComplex MapBuilder::build(Orientation region_default) const {
  SphereComplex sc;
  for (auto& e : edges) sc.add_edge(e.tag);
  int n = sc.dart_count();
  auto origin = [&](int d) { return d % 2 == 0 ? edges[d / 2].from : edges[d / 2].to; };
  auto head = [&](int d) { return d % 2 == 0 ? edges[d / 2].to : edges[d / 2].from; };
  for (auto& f : faces) {
    int c = sc.add_cell(f.cell);
    for (auto& cyc : f.cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
        if (sc.cell[a] >= 0) throw ComplexError("dart used twice in builder");
        if (head(a) != origin(b)) throw ComplexError("builder cycle is not closed");
        sc.cell[a] = c;
        sc.link(a, b);
      }
    }
  }
  std::map<int, std::vector<int>> free_out;
  for (int d = 0; d < n; ++d)
    if (sc.cell[d] < 0) free_out[origin(d)].push_back(d);
  for (int d = 0; d < n; ++d) {
    if (sc.cell[d] >= 0) continue;
    auto& cand = free_out[head(d)];
    if (cand.size() != 1) throw ComplexError("builder cannot complete region cycles");
    sc.link(d, cand.front());
  }
  for (int d = 0; d < n; ++d) {
    if (sc.cell[d] >= 0) continue;
    Cell r;
    r.orientation = region_default;
    int c = sc.add_cell(r);
    int x = d;
    do {
      sc.cell[x] = c;
      x = sc.next[x];
    } while (x != d);
  }
  for (std::size_t c = 0; c < sc.cells.size(); ++c) sc.cells[c].origins = {static_cast<int>(c)};
  return sc;
}

std::vector<FComponent> f_components(const SphereComplex& sc) {
  int nc = static_cast<int>(sc.cells.size());
  UnionFind uf(nc);
  for (int d = 0; d < sc.dart_count(); ++d)
    if (sc.cell_of(d).is_f() && sc.cells[sc.cell[d ^ 1]].is_f()) uf.unite(sc.cell[d], sc.cell[d ^ 1]);
  std::map<int, int> slot;
  std::vector<FComponent> out;
  for (int c = 0; c < nc; ++c) {
    if (!sc.cells[c].is_f()) continue;
    int r = uf.find(c);
    auto it = slot.find(r);
    if (it == slot.end()) {
      it = slot.emplace(r, static_cast<int>(out.size())).first;
      out.emplace_back();
    }
    FComponent& fc = out[it->second];
    fc.cells.push_back(c);
    if (sc.cells[c].kind == CellKind::zero_handle) ++fc.zero_count;
    else ++fc.one_count;
  }
  int n = sc.dart_count();
  std::vector<char> seen(n, 0);
  auto boundary = [&](int d) { return sc.cell_of(d).is_f() && !sc.cells[sc.cell[d ^ 1]].is_f(); };
  for (int d = 0; d < n; ++d) {
    if (seen[d] || !boundary(d)) continue;
    int x = d;
    do {
      seen[x] = 1;
      int h = sc.next[x];
      while (!boundary(h)) h = sc.next[h ^ 1];
      x = h;
    } while (x != d);
    ++out[slot[uf.find(sc.cell[d])]].boundary_circles;
  }
  for (int d = 0; d < n; ++d) {
    if (!sc.is_suture(d)) continue;
    int x = d;
    do {
      if (sc.cell_of(x).kind == CellKind::zero_handle) {
        ++out[slot[uf.find(sc.cell[x])]].gamma_hits;
        break;
      }
      x = sc.sigma(x);
    } while (x != d);
  }
  return out;
}

int valence(const SphereComplex& sc, int zero_cell) {
  int v = 0;
  for (int d = 0; d < sc.dart_count(); ++d)
    if (sc.cell[d] == zero_cell && sc.cells[sc.cell[d ^ 1]].kind == CellKind::one_handle) ++v;
  return v;
}

int gamma_hits(const SphereComplex& sc, int zero_cell) {
  int g = 0;
  for (int d = 0; d < sc.dart_count(); ++d) {
    if (!sc.is_suture(d)) continue;
    int x = d;
    do {
      if (sc.cell[x] == zero_cell) {
        ++g;
        break;
      }
      x = sc.sigma(x);
    } while (x != d);
  }
  return g;
}

int zero_handle_index(const SphereComplex& sc, int zero_cell) {
  return valence(sc, zero_cell) + gamma_hits(sc, zero_cell) - 2;
}

std::vector<int> cells_of_kind(const SphereComplex& sc, CellKind kind) {
  std::vector<int> out;
  for (std::size_t c = 0; c < sc.cells.size(); ++c)
    if (sc.cells[c].kind == kind) out.push_back(static_cast<int>(c));
  return out;
}

int edge_index(int i, int j) {
  if (i > j) std::swap(i, j);
  static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  if (i < 0 || j > 3 || i == j) throw std::invalid_argument("bad tetrahedron edge");
  return table[i][j];
}

std::pair<int, int> edge_vertices(int e) {
  static const int a[6] = {0, 0, 0, 1, 1, 2}, b[6] = {1, 2, 3, 2, 3, 3};
  return {a[e], b[e]};
}

SphereComplex tetrahedron_pattern(unsigned faces, unsigned edges, Orientation o, unsigned h3_corners) {
  static const int ccw[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  MapBuilder mb;
  std::map<std::tuple<int, int, int>, int> vid;
  auto v = [&](int f, int e, int x) {
    auto key = std::make_tuple(f, e, x);
    auto it = vid.find(key);
    if (it == vid.end()) it = vid.emplace(key, static_cast<int>(vid.size())).first;
    return it->second;
  };
  std::map<std::pair<int, int>, int> end_dart;
  std::vector<int> zero_cells;
  for (int f = 0; f < 4; ++f) {
    std::vector<int> cyc;
    for (int i = 0; i < 3; ++i) {
      int p = ccw[f][i], q = ccw[f][(i + 1) % 3], r = ccw[f][(i + 2) % 3];
      int erp = edge_index(r, p), epq = edge_index(p, q);
      cyc.push_back(MapBuilder::fwd(mb.edge(v(f, erp, p), v(f, epq, p))));
      int be = mb.edge(v(f, epq, p), v(f, epq, q), epq);
      end_dart[{f, epq}] = MapBuilder::fwd(be);
      cyc.push_back(MapBuilder::fwd(be));
    }
    Cell c;
    c.kind = CellKind::zero_handle;
    c.label = f;
    mb.face(c, cyc);
  }
  for (int e = 0; e < 6; ++e) {
    auto [a, b] = edge_vertices(e);
    std::vector<int> fs;
    for (int f = 0; f < 4; ++f)
      if (f != a && f != b) fs.push_back(f);
    int f = fs[0], g = fs[1];
    int df = end_dart[{f, e}], dg = end_dart[{g, e}];
    int x = mb.edges[df / 2].from, y = mb.edges[df / 2].to;
    int gx = mb.edges[dg / 2].to, gy = mb.edges[dg / 2].from;
    int l1 = mb.edge(x, gx), l2 = mb.edge(gy, y);
    Cell c;
    c.kind = CellKind::one_handle;
    mb.face(c, {df ^ 1, MapBuilder::fwd(l1), dg ^ 1, MapBuilder::fwd(l2)});
  }
  SphereComplex sc = mb.build(o);
  for (auto& c : sc.cells) c.origins.clear();
  for (std::size_t c = 0; c < sc.cells.size(); ++c) {
    if (sc.cells[c].kind != CellKind::region) continue;
    unsigned seen = 0;
    for (int d = 0; d < sc.dart_count(); ++d)
      if (sc.cell[d] == (int)c && sc.cell_of(d ^ 1).kind == CellKind::zero_handle) seen |= 1u << sc.cell_of(d ^ 1).label;
    for (int x = 0; x < 4; ++x)
      if (seen == (0xFu & ~(1u << x)) && (h3_corners >> x & 1u)) sc.cells[c].three_handle = true;
  }
  bool removed = false;
  for (std::size_t c = 0; c < sc.cells.size(); ++c) {
    Cell& cell = sc.cells[c];
    if (cell.kind == CellKind::zero_handle && !(faces >> cell.label & 1u)) {
      cell = Cell{};
      cell.orientation = o;
      removed = true;
    }
  }
  for (std::size_t c = 0; c < sc.cells.size(); ++c) {
    if (sc.cells[c].kind != CellKind::one_handle) continue;
    int label = -1;
    bool drop = false;
    for (int d = 0; d < sc.dart_count(); ++d) {
      if (sc.cell[d] != (int)c) continue;
      if (sc.tag[d] >= 0) label = sc.tag[d];
      if (sc.cells[sc.cell[d ^ 1]].kind == CellKind::region && sc.tag[d] >= 0) drop = true;
    }
    if (label < 0 || !(edges >> label & 1u)) drop = true;
    if (drop) {
      sc.cells[c] = Cell{};
      sc.cells[c].orientation = o;
      removed = true;
    }
  }
  if (removed) {
    for (int d = 0; d < sc.dart_count(); ++d)
      if (!sc.is_band_end(d)) sc.tag[d] = -1;
  }
  normalize(sc);
  for (std::size_t c = 0; c < sc.cells.size(); ++c) sc.cells[c].origins = {static_cast<int>(c)};
  return sc;
}

}  // namespace dehn
