#include "dehn/curves.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace dehn {

namespace {

struct DisjointSets {
  std::vector<int> p;
  explicit DisjointSets(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

std::map<int, std::vector<Strand>> strands_by_edge(const std::vector<Curve>& curves) {
  std::map<int, std::vector<Strand>> out;
  for (int i = 0; i < (int)curves.size(); ++i)
    for (int j = 0; j < (int)curves[i].crossings.size(); ++j) out[curves[i].crossings[j] >> 1].push_back({i, j});
  return out;
}

bool same_cycle(const SphereComplex& m, int a, int b) {
  int x = a;
  do {
    if (x == b) return true;
    x = m.next[x];
  } while (x != a);
  return false;
}

void grow(Overlay& ov) {
  std::size_t n = ov.map.dart_count();
  ov.parent_edge.resize(n, -1);
  ov.chord_curve.resize(n, -1);
  ov.chord_step.resize(n, -1);
  ov.chord_forward.resize(n, 0);
}

}  // namespace

Overlay build_overlay(const SphereComplex& sc, const CurveSystem& cs) {
  Overlay ov;
  ov.map = sc;
  ov.original_darts = sc.dart_count();
  grow(ov);
  for (int d = 0; d < sc.dart_count(); ++d) ov.parent_edge[d] = d >> 1;
  const auto& curves = cs.curves;
  ov.from_in.resize(curves.size());
  ov.to_in.resize(curves.size());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    ov.from_in[i].assign(curves[i].crossings.size(), -1);
    ov.to_in[i].assign(curves[i].crossings.size(), -1);
    const auto& cr = curves[i].crossings;
    for (std::size_t j = 0; j < cr.size(); ++j) {
      if (cr[j] < 0 || cr[j] >= sc.dart_count()) throw UnrealizableSplit("crossing refers to a missing dart");
      int nxt = cr[(j + 1) % cr.size()];
      if (sc.cell[cr[j] ^ 1] != sc.cell[nxt]) throw UnrealizableSplit("curve is not closed through its cells");
    }
  }
  for (auto& [e, list] : strands_by_edge(curves)) {
    std::vector<Strand> order = list;
    if (list.size() > 1) {
      auto it = cs.orders.find(e);
      if (it == cs.orders.end()) throw UnrealizableSplit("no strand order for edge " + std::to_string(e));
      std::vector<Strand> a = it->second, b = list;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) throw UnrealizableSplit("strand order mismatch on edge " + std::to_string(e));
      order = it->second;
    }
    int x = 2 * e;
    for (auto [i, j] : order) {
      int n = split_edge(ov.map, x);
      grow(ov);
      ov.parent_edge[n] = e;
      ov.parent_edge[n ^ 1] = e;
      int even_in = x, odd_in = n ^ 1;
      bool even = curves[i].crossings[j] == 2 * e;
      ov.from_in[i][j] = even ? even_in : odd_in;
      ov.to_in[i][j] = even ? odd_in : even_in;
      x = n;
    }
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    int len = (int)curves[i].crossings.size();
    for (int j = 0; j < len; ++j) {
      int a = ov.to_in[i][j], b = ov.from_in[i][(j + 1) % len];
      if (a == b || !same_cycle(ov.map, a, b)) throw UnrealizableSplit("curves cross inside a cell");
      int c = insert_chord(ov.map, a, b, -1);
      grow(ov);
      ov.chord_curve[c] = ov.chord_curve[c ^ 1] = (int)i;
      ov.chord_step[c] = ov.chord_step[c ^ 1] = j;
      ov.chord_forward[c] = 1;
    }
  }

  SphereComplex& m = ov.map;
  int ncyc = 0;
  std::vector<int> cyc = m.cycle_ids(&ncyc);
  std::vector<std::vector<int>> cyc_darts(ncyc);
  for (int d = 0; d < m.dart_count(); ++d) cyc_darts[cyc[d]].push_back(d);
  std::vector<std::vector<int>> by_cell(sc.cells.size());
  for (int k = 0; k < ncyc; ++k) by_cell[m.cell[cyc_darts[k].front()]].push_back(k);
  std::vector<int> orig_cycles(sc.cells.size(), 0);
  {
    int oc = 0;
    std::vector<int> oid = sc.cycle_ids(&oc);
    std::vector<std::set<int>> per(sc.cells.size());
    for (int d = 0; d < sc.dart_count(); ++d) per[sc.cell[d]].insert(oid[d]);
    for (std::size_t c = 0; c < sc.cells.size(); ++c) orig_cycles[c] = (int)per[c].size();
  }
  ov.orig_cell.resize(sc.cells.size());
  std::iota(ov.orig_cell.begin(), ov.orig_cell.end(), 0);
  auto assign = [&](int k, int cellid) {
    for (int d : cyc_darts[k]) m.cell[d] = cellid;
  };
  for (std::size_t x = 0; x < sc.cells.size(); ++x) {
    auto& ks = by_cell[x];
    if (ks.size() <= 1) continue;
    std::vector<int> pieces, extras;
    for (int k : ks) {
      bool chord = false;
      for (int d : cyc_darts[k])
        if (ov.chord_curve[d] >= 0) chord = true;
      (chord ? pieces : extras).push_back(k);
    }
    if (orig_cycles[x] <= 1) {
      extras.clear();
      pieces = ks;
    }
    if (pieces.empty()) continue;
    std::map<int, int> piece_slot;
    std::vector<int> piece_cell(pieces.size());
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      piece_slot[pieces[p]] = (int)p;
      if (p == 0) {
        piece_cell[p] = (int)x;
      } else {
        Cell copy = sc.cells[x];
        piece_cell[p] = m.add_cell(copy);
        ov.orig_cell.push_back((int)x);
      }
      assign(pieces[p], piece_cell[p]);
    }
    if (extras.empty()) continue;
    std::vector<std::pair<int, bool>> prefs;  // forward chord dart, preferred side is left
    std::vector<int> chords;
    for (int k : pieces)
      for (int d : cyc_darts[k])
        if (ov.chord_forward[d]) {
          chords.push_back(d);
          auto pref = curves[ov.chord_curve[d]].extras_left;
          if (pref) prefs.push_back({d, *pref});
        }
    int chosen = 0;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      bool ok = true;
      for (auto [c, left] : prefs) {
        DisjointSets ds((int)pieces.size());
        for (int o : chords)
          if (o != c) ds.unite(piece_slot[cyc[o]], piece_slot[cyc[o ^ 1]]);
        int want = piece_slot[cyc[left ? c : (c ^ 1)]];
        if (ds.find((int)p) != ds.find(want)) ok = false;
      }
      if (ok) {
        chosen = (int)p;
        break;
      }
    }
    for (int k : extras) assign(k, piece_cell[chosen]);
  }
  return ov;
}

bool realizable(const SphereComplex& sc, const CurveSystem& cs) {
  try {
    build_overlay(sc, cs);
    return true;
  } catch (const UnrealizableSplit&) {
    return false;
  }
}

std::vector<CurveSystem> realizations(const SphereComplex& sc, const std::vector<Curve>& curves, std::size_t limit) {
  std::vector<CurveSystem> out;
  auto strands = strands_by_edge(curves);
  std::vector<int> multi;
  for (auto& [e, list] : strands)
    if (list.size() > 1) multi.push_back(e);

  // chord endpoints per disc cell, for early pruning
  struct Point { int edge; Strand s; int dart; };
  struct Chord { int cell; Point p, q; };
  std::vector<Chord> chords;
  for (int i = 0; i < (int)curves.size(); ++i) {
    const auto& cr = curves[i].crossings;
    int len = (int)cr.size();
    for (int j = 0; j < len; ++j) {
      int a = cr[j] ^ 1, b = cr[(j + 1) % len];
      if (sc.cell[a] != sc.cell[b]) return out;
      chords.push_back({sc.cell[a], {a >> 1, {i, j}, a}, {b >> 1, {i, (j + 1) % len}, b}});
    }
  }
  std::vector<int> pos(sc.dart_count(), -1);
  std::vector<char> disc(sc.cells.size(), 0);
  {
    int nc = 0;
    std::vector<int> cyc = sc.cycle_ids(&nc);
    std::vector<std::set<int>> per(sc.cells.size());
    for (int d = 0; d < sc.dart_count(); ++d) per[sc.cell[d]].insert(cyc[d]);
    for (std::size_t c = 0; c < sc.cells.size(); ++c) disc[c] = per[c].size() == 1;
    std::vector<char> seen(sc.dart_count(), 0);
    for (int d = 0; d < sc.dart_count(); ++d) {
      if (seen[d]) continue;
      int k = 0, x = d;
      do {
        seen[x] = 1;
        pos[x] = k++;
        x = sc.next[x];
      } while (x != d);
    }
  }
  std::map<int, std::vector<Strand>> orders;
  std::map<int, int> assigned_at;
  for (std::size_t k = 0; k < multi.size(); ++k) assigned_at[multi[k]] = (int)k;

  auto rank = [&](const Point& p) -> long {
    auto it = orders.find(p.edge);
    long r = 0;
    if (it != orders.end()) {
      auto& o = it->second;
      r = std::find(o.begin(), o.end(), p.s) - o.begin();
      if (p.dart & 1) r = (long)o.size() - 1 - r;
    }
    return pos[p.dart] * 1024L + r;
  };
  auto needed_level = [&](const Chord& a, const Chord& b) {
    int lvl = -1;
    const Point* pts[4] = {&a.p, &a.q, &b.p, &b.q};
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v)
        if (pts[u]->dart == pts[v]->dart) {
          auto it = assigned_at.find(pts[u]->edge);
          if (it != assigned_at.end()) lvl = std::max(lvl, it->second);
        }
    return lvl;
  };
  auto crosses = [&](const Chord& a, const Chord& b) {
    long x = rank(a.p), y = rank(a.q), u = rank(b.p), v = rank(b.q);
    if (x > y) std::swap(x, y);
    bool ui = u > x && u < y, vi = v > x && v < y;
    return ui != vi;
  };
  std::vector<std::vector<std::pair<int, int>>> checks(multi.size() + 1);
  for (std::size_t a = 0; a < chords.size(); ++a)
    for (std::size_t b = a + 1; b < chords.size(); ++b) {
      if (chords[a].cell != chords[b].cell || !disc[chords[a].cell]) continue;
      checks[needed_level(chords[a], chords[b]) + 1].push_back({(int)a, (int)b});
    }
  for (auto [a, b] : checks[0])
    if (crosses(chords[a], chords[b])) return out;

  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (out.size() >= limit) return;
    if (k == multi.size()) {
      CurveSystem cs{curves, orders};
      if (realizable(sc, cs)) out.push_back(std::move(cs));
      return;
    }
    int e = multi[k];
    std::vector<Strand> perm = strands[e];
    std::sort(perm.begin(), perm.end());
    do {
      orders[e] = perm;
      bool ok = true;
      for (auto [a, b] : checks[k + 1])
        if (crosses(chords[a], chords[b])) {
          ok = false;
          break;
        }
      if (ok) dfs(k + 1);
    } while (std::next_permutation(perm.begin(), perm.end()) && out.size() < limit);
    orders.erase(e);
  };
  dfs(0);
  return out;
}

std::vector<SphereComplex> split_along(const SphereComplex& sc_in, const CurveSystem& cs) {
  SphereComplex sc = sc_in;
  for (std::size_t c = 0; c < sc.cells.size(); ++c) sc.cells[c].origins = {static_cast<int>(c)};
  std::vector<SphereComplex> extra_pieces;
  CurveSystem crossing;
  crossing.orders = cs.orders;
  std::vector<int> renum(cs.curves.size(), -1);
  std::vector<const Curve*> loops;
  for (std::size_t i = 0; i < cs.curves.size(); ++i) {
    if (cs.curves[i].crossings.empty()) {
      loops.push_back(&cs.curves[i]);
    } else {
      renum[i] = (int)crossing.curves.size();
      crossing.curves.push_back(cs.curves[i]);
    }
  }
  if (!loops.empty()) {
    std::map<int, std::vector<Strand>> fixed;
    for (auto& [e, list] : cs.orders) {
      std::vector<Strand> l;
      for (auto [i, j] : list) l.push_back({renum[i], j});
      fixed[e] = l;
    }
    crossing.orders = fixed;
  }
  Overlay ov = build_overlay(sc, crossing);
  SphereComplex& m = ov.map;
  int n = m.dart_count();

  SphereComplex cut;
  cut.cells = m.cells;
  std::vector<int> map(n, -1);
  for (int e = 0; e < m.edge_count(); ++e)
    if (ov.chord_curve[2 * e] < 0) {
      int ne = cut.add_edge(m.tag[2 * e]);
      map[2 * e] = 2 * ne;
      map[2 * e + 1] = 2 * ne + 1;
    }
  // per curve, per step: left dart, right dart and their cap partners
  std::vector<std::vector<int>> cap_left(crossing.curves.size()), cap_right(crossing.curves.size());
  for (std::size_t i = 0; i < crossing.curves.size(); ++i) {
    cap_left[i].assign(crossing.curves[i].crossings.size(), -1);
    cap_right[i].assign(crossing.curves[i].crossings.size(), -1);
  }
  for (int d = 0; d < n; ++d) {
    if (!ov.chord_forward[d]) continue;
    int i = ov.chord_curve[d], j = ov.chord_step[d];
    int el = cut.add_edge(-1), er = cut.add_edge(-1);
    map[d] = 2 * el;
    map[d ^ 1] = 2 * er;
    cap_left[i][j] = 2 * el + 1;
    cap_right[i][j] = 2 * er + 1;
  }
  for (int d = 0; d < n; ++d) {
    cut.next[map[d]] = map[m.next[d]];
    cut.cell[map[d]] = m.cell[d];
    cut.mark[map[d]] = m.mark[d];
  }
  for (std::size_t i = 0; i < crossing.curves.size(); ++i) {
    const Curve& c = crossing.curves[i];
    Cell lcap, rcap;
    lcap.orientation = c.normal_left ? Orientation::in : Orientation::out;
    rcap.orientation = opposite(lcap.orientation);
    int lc = cut.add_cell(lcap), rc = cut.add_cell(rcap);
    int len = (int)c.crossings.size();
    for (int j = 0; j < len; ++j) {
      int l = cap_left[i][j], r = cap_right[i][j];
      cut.next[l] = cap_left[i][(j + len - 1) % len];
      cut.next[r] = cap_right[i][(j + 1) % len];
      cut.cell[l] = lc;
      cut.cell[r] = rc;
      cut.mark[l] = cut.mark[r] = curve_mark(i);
    }
  }
  for (int d = 0; d < cut.dart_count(); ++d) cut.prev[cut.next[d]] = d;

  for (const Curve* lp : loops) {
    int x = lp->inside_cell;
    int target = -1;
    for (std::size_t c = 0; c < ov.orig_cell.size(); ++c)
      if (ov.orig_cell[c] == x) {
        if (target >= 0) throw UnrealizableSplit("loop curve in a cell split by another curve");
        target = (int)c;
      }
    if (target < 0) throw UnrealizableSplit("loop curve in a missing cell");
    Cell small_cap, main_cap;
    small_cap.orientation = lp->normal_left ? Orientation::in : Orientation::out;
    main_cap.orientation = opposite(small_cap.orientation);
    int mc = cut.add_cell(main_cap);
    int e = cut.add_edge(-1);
    cut.link(2 * e, 2 * e);
    cut.link(2 * e + 1, 2 * e + 1);
    cut.cell[2 * e] = target;
    cut.cell[2 * e + 1] = mc;
    cut.mark[2 * e + 1] = mark_cap;
    SphereComplex piece;
    Cell inner = cut.cells[target];
    inner.origins = sc.cells[x].origins;
    piece.add_cell(inner);
    piece.add_cell(small_cap);
    int pe = piece.add_edge(-1);
    piece.link(2 * pe, 2 * pe);
    piece.link(2 * pe + 1, 2 * pe + 1);
    piece.cell[0] = 0;
    piece.cell[1] = 1;
    piece.mark[1] = mark_cap;
    normalize(piece);
    extra_pieces.push_back(piece);
  }

  int nd = cut.dart_count();
  DisjointSets ds(nd);
  std::vector<int> first_of_cell(cut.cells.size(), -1);
  for (int d = 0; d < nd; ++d) {
    ds.unite(d, cut.next[d]);
    ds.unite(d, d ^ 1);
    int c = cut.cell[d];
    if (first_of_cell[c] < 0) first_of_cell[c] = d;
    else ds.unite(d, first_of_cell[c]);
  }
  std::map<int, std::vector<int>> groups;
  for (int d = 0; d < nd; ++d) groups[ds.find(d)].push_back(d);
  std::vector<SphereComplex> out;
  if (nd == 0) out.push_back(cut);
  for (auto& [root, darts] : groups) {
    SphereComplex piece = cut;
    std::vector<char> keep(nd, 0);
    for (int d : darts) keep[d] = 1;
    for (int d = 0; d < nd; ++d)
      if (!keep[d]) piece.next[d] = piece.prev[d] = -1;
    compact(piece);
    normalize(piece);
    out.push_back(std::move(piece));
  }
  for (auto& p : extra_pieces) out.push_back(std::move(p));
  return out;
}

Curve reversed(const Curve& c) {
  Curve r = c;
  r.crossings.clear();
  for (auto it = c.crossings.rbegin(); it != c.crossings.rend(); ++it) r.crossings.push_back(*it ^ 1);
  r.normal_left = !c.normal_left;
  if (c.extras_left) r.extras_left = !*c.extras_left;
  return r;
}

std::vector<int> curve_signature(const Curve& c) {
  std::vector<int> edges;
  for (int d : c.crossings) edges.push_back(d >> 1);
  if (edges.empty()) return {-1, c.inside_cell};
  std::vector<int> best;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<int> e = edges;
    if (dir) std::reverse(e.begin(), e.end());
    for (std::size_t r = 0; r < e.size(); ++r) {
      std::vector<int> rot(e.begin() + r, e.end());
      rot.insert(rot.end(), e.begin(), e.begin() + r);
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

}  // namespace dehn
