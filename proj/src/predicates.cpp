#include "dehn/predicates.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dehn {

namespace {

struct Uf {
  std::vector<int> p;
  explicit Uf(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// cell -> index of its F component in f_components order, -1 for regions
std::vector<int> component_of_cell(const SphereComplex& sc, const std::vector<FComponent>& comps) {
  std::vector<int> out(sc.cells.size(), -1);
  for (int i = 0; i < (int)comps.size(); ++i)
    for (int c : comps[i].cells) out[c] = i;
  return out;
}

std::set<int> origin_set(const SphereComplex& sc, const FComponent& fc) {
  std::set<int> s;
  for (int c : fc.cells)
    for (int o : sc.cells[c].origins) s.insert(o);
  return s;
}

}  // namespace

void reset_origins(SphereComplex& sc) {
  for (std::size_t c = 0; c < sc.cells.size(); ++c) sc.cells[c].origins = {static_cast<int>(c)};
}

bool respects(const std::vector<SphereComplex>& inner, const SphereComplex& outer) {
  int nc = (int)outer.cells.size();
  for (const SphereComplex& sc : inner) {
    for (const Cell& c : sc.cells) {
      for (int o : c.origins)
        if (o < 0 || o >= nc) return false;
      if (!c.is_f()) continue;
      if (c.origins.empty()) return false;
      bool keeps_band = false;
      for (int o : c.origins) {
        const Cell& p = outer.cells[o];
        if (!p.is_f()) return false;
        if (c.kind == CellKind::zero_handle && p.kind != CellKind::zero_handle) return false;
        if (p.kind == CellKind::one_handle) keeps_band = true;
      }
      if (c.kind == CellKind::one_handle && !keeps_band) return false;
    }
  }
  return true;
}

std::vector<FComponent> positive_components(const SphereComplex& sc) {
  std::vector<FComponent> out;
  for (auto& fc : f_components(sc))
    if (fc.index() > 0) out.push_back(fc);
  return out;
}

bool is_final_branch(const SphereComplex& before, const std::vector<SphereComplex>& after) {
  auto comps = f_components(before);
  if (comps.size() != 1) return false;
  const FComponent& f = comps[0];
  if (f.euler() != 1 || f.boundary_circles != 1 || f.gamma_hits != 4) return false;
  std::map<int, int> hits;
  for (int c : f.cells)
    if (before.cells[c].kind == CellKind::zero_handle) {
      int g = gamma_hits(before, c);
      if (g) hits[c] = g;
    }
  if (hits.size() != 2) return false;
  for (auto& [c, g] : hits)
    if (g != 2) return false;
  // each suture arc joins the two distinct zero-handles
  if (suture_arc_count(before) != 2) return false;
  for (int d = 0; d < before.dart_count(); ++d) {
    if (!before.is_suture(d)) continue;
    auto zero_at = [&](int x) {
      int y = x;
      do {
        if (before.cell_of(y).kind == CellKind::zero_handle) return before.cell[y];
        y = before.sigma(y);
      } while (y != x);
      return -1;
    };
    int a = zero_at(d), b = zero_at(d ^ 1);
    if (a < 0 || b < 0 || a == b) return false;
  }
  // the successor ball keeps all of F and carries exactly two sutures
  std::set<int> fcells(f.cells.begin(), f.cells.end());
  for (const SphereComplex& p : after) {
    auto pc = f_components(p);
    if (pc.size() != 1 || pc[0].euler() != 1 || pc[0].gamma_hits != 4) continue;
    std::set<int> o = origin_set(p, pc[0]);
    if (!std::includes(o.begin(), o.end(), fcells.begin(), fcells.end())) continue;
    if (suture_arc_count(p) != 2) continue;
    bool other_positive = false;
    for (const SphereComplex& q : after)
      if (&q != &p && !positive_components(q).empty()) other_positive = true;
    if (!other_positive) return true;
  }
  return false;
}

bool is_trivial_modification(const SphereComplex& before, const std::vector<SphereComplex>& after) {
  auto bcomps = f_components(before);
  auto bcomp_of = component_of_cell(before, bcomps);
  // (i) and (ii)
  int holder = -1;
  for (int i = 0; i < (int)after.size(); ++i) {
    for (auto& fc : positive_components(after[i])) {
      std::set<int> parents;
      for (int o : origin_set(after[i], fc)) {
        if (o < 0 || o >= (int)before.cells.size() || bcomp_of[o] < 0) return false;
        parents.insert(bcomp_of[o]);
      }
      if (parents.size() != 1 || bcomps[*parents.begin()].index() <= 0) return false;
      if (holder >= 0 && holder != i) return false;
      holder = i;
    }
  }
  // (iii)
  for (auto& f : bcomps) {
    if (f.index() <= 0) continue;
    std::set<int> fcells(f.cells.begin(), f.cells.end());
    bool found = false;
    for (const SphereComplex& p : after) {
      for (auto& fp : f_components(p)) {
        std::set<int> o = origin_set(p, fp);
        if (o != fcells) continue;
        // same handle counts, circles and sutures: a copy, or F minus a
        // collar on sutureless boundary circles
        if (fp.zero_count == f.zero_count && fp.one_count == f.one_count &&
            fp.boundary_circles == f.boundary_circles && fp.gamma_hits == f.gamma_hits)
          found = true;
      }
    }
    if (!found && !(bcomps.size() == 1 && is_final_branch(before, after))) return false;
  }
  return true;
}

std::vector<int> important_zero_handles(const std::vector<SphereComplex>& balls) {
  std::vector<int> out;
  for (int i = 0; i < (int)balls.size(); ++i)
    if (!positive_components(balls[i]).empty()) out.push_back(i);
  return out;
}

int suture_arc_count(const SphereComplex& sc) {
  int ne = sc.edge_count();
  Uf uf(ne);
  std::vector<char> su(ne, 0);
  for (int e = 0; e < ne; ++e) su[e] = sc.is_suture(2 * e);
  int nv = 0;
  std::vector<int> vid = sc.vertex_ids(&nv);
  std::vector<std::vector<int>> at(nv);
  std::vector<char> touches_f(nv, 0);
  for (int d = 0; d < sc.dart_count(); ++d) {
    if (sc.cell_of(d).is_f()) touches_f[vid[d]] = 1;
    if (su[d >> 1]) at[vid[d]].push_back(d >> 1);
  }
  for (int v = 0; v < nv; ++v)
    if (!touches_f[v])
      for (std::size_t k = 1; k < at[v].size(); ++k) uf.unite(at[v][0], at[v][k]);
  std::set<int> roots;
  for (int e = 0; e < ne; ++e)
    if (su[e]) roots.insert(uf.find(e));
  return (int)roots.size();
}

bool f_gamma_connected(const SphereComplex& sc) {
  int nc = (int)sc.cells.size(), ne = sc.edge_count();
  Uf uf(nc + ne);
  int nv = 0;
  std::vector<int> vid = sc.vertex_ids(&nv);
  std::vector<int> vertex_rep(nv, -1);
  for (int d = 0; d < sc.dart_count(); ++d) {
    int a = sc.cell[d], b = sc.cell[d ^ 1];
    if (sc.cells[a].is_f() && sc.cells[b].is_f()) uf.unite(a, b);
    int item = -1;
    if (sc.cells[a].is_f()) item = a;
    else if (sc.is_suture(d)) item = nc + (d >> 1);
    if (item < 0) continue;
    int& r = vertex_rep[vid[d]];
    if (r < 0) r = item;
    else uf.unite(r, item);
  }
  std::set<int> roots;
  for (int c = 0; c < nc; ++c)
    if (sc.cells[c].is_f()) roots.insert(uf.find(c));
  for (int e = 0; e < ne; ++e)
    if (sc.is_suture(2 * e)) roots.insert(uf.find(nc + e));
  return roots.size() <= 1;
}

}  // namespace dehn
