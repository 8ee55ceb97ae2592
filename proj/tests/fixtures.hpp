#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "dehn/sphere_complex.hpp"

namespace fixtures {

using namespace dehn;

inline SphereComplex relabel_randomly(const SphereComplex& sc, std::mt19937& rng) {
  int ne = sc.edge_count();
  std::vector<int> perm(ne);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> map(sc.dart_count());
  for (int e = 0; e < ne; ++e) {
    bool flip = rng() & 1;
    map[2 * e] = 2 * perm[e] + (flip ? 1 : 0);
    map[2 * e + 1] = 2 * perm[e] + (flip ? 0 : 1);
  }
  std::vector<int> cperm(sc.cells.size());
  std::iota(cperm.begin(), cperm.end(), 0);
  std::shuffle(cperm.begin(), cperm.end(), rng);
  SphereComplex out;
  out.next.resize(sc.dart_count());
  out.prev.resize(sc.dart_count());
  out.cell.resize(sc.dart_count());
  out.tag.resize(sc.dart_count());
  out.mark.resize(sc.dart_count());
  out.cells.resize(sc.cells.size());
  for (std::size_t c = 0; c < sc.cells.size(); ++c) out.cells[cperm[c]] = sc.cells[c];
  for (int d = 0; d < sc.dart_count(); ++d) {
    out.next[map[d]] = map[sc.next[d]];
    out.prev[map[d]] = map[sc.prev[d]];
    out.cell[map[d]] = cperm[sc.cell[d]];
    out.tag[map[d]] = sc.tag[d];
    out.mark[map[d]] = sc.mark[d];
  }
  return out;
}

inline bool same_cell(const Cell& a, const Cell& b) {
  return a.kind == b.kind && a.orientation == b.orientation && a.label == b.label && a.three_handle == b.three_handle;
}

// brute force: try every image of dart 0 and propagate along next and twin
inline bool isomorphic_connected(const SphereComplex& a, const SphereComplex& b) {
  if (a.dart_count() != b.dart_count() || a.cells.size() != b.cells.size()) return false;
  if (a.dart_count() == 0) return same_cell(a.cells[0], b.cells[0]);
  for (int start = 0; start < b.dart_count(); ++start) {
    std::vector<int> f(a.dart_count(), -1), inv(b.dart_count(), -1);
    std::map<int, int> cf;
    std::vector<int> stack{0};
    f[0] = start;
    inv[start] = 0;
    bool ok = true;
    while (!stack.empty() && ok) {
      int d = stack.back();
      stack.pop_back();
      int e = f[d];
      if (a.tag[d] != b.tag[e] || !same_cell(a.cell_of(d), b.cell_of(e))) {
        ok = false;
        break;
      }
      auto it = cf.find(a.cell[d]);
      if (it == cf.end()) cf[a.cell[d]] = b.cell[e];
      else if (it->second != b.cell[e]) ok = false;
      for (auto [x, y] : {std::pair{a.next[d], b.next[e]}, std::pair{d ^ 1, e ^ 1}}) {
        if (f[x] < 0 && inv[y] < 0) {
          f[x] = y;
          inv[y] = x;
          stack.push_back(x);
        } else if (f[x] != y) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      for (int d = 0; d < a.dart_count(); ++d)
        if (f[d] < 0) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

inline bool isomorphic_up_to_reflection(const SphereComplex& a, const SphereComplex& b) {
  return isomorphic_connected(a, b) || isomorphic_connected(a, mirror(b));
}

inline SphereComplex with_orientations(SphereComplex sc, unsigned bits) {
  int k = 0;
  for (auto& c : sc.cells)
    if (c.kind == CellKind::region) c.orientation = (bits >> k++ & 1u) ? Orientation::out : Orientation::in;
  return sc;
}

}  // namespace fixtures
