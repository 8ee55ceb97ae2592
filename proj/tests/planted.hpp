#pragma once

#include <string>
#include <vector>

#include "dehn/assemble.hpp"
#include "dehn/sphere_complex.hpp"
#include "dehn/triangulation.hpp"

namespace planted {

using namespace dehn;

// A ball with two zero-handle discs, on faces fa and fb, joined by a stack
// of connectors listed from top to bottom: 'g' is a suture, 'b' a band.
// Regions alternate orientation across every suture. tags gives the edge
// labels of the two ends of each band, in order.
inline SphereComplex two_disc_ball(int fa, int fb, const std::string& connectors,
                                   const std::vector<std::pair<int, int>>& tags = {}) {
  MapBuilder mb;
  int k = (int)connectors.size();
  std::vector<int> va, vb;   // right side of disc a and left side of disc b, from the top
  std::vector<std::array<int, 2>> ca(k), cb(k);   // top and bottom vertex of each connector
  int nv = 0;
  for (int i = 0; i < k; ++i) {
    int n = connectors[i] == 'b' ? 2 : 1;
    ca[i] = {nv, nv + n - 1};
    for (int j = 0; j < n; ++j) va.push_back(nv++);
    cb[i] = {nv, nv + n - 1};
    for (int j = 0; j < n; ++j) vb.push_back(nv++);
  }
  int la = mb.edge(va.front(), va.back());           // left half of disc a
  int rb = mb.edge(vb.back(), vb.front());           // right half of disc b
  std::vector<int> sa, sb;                           // segments: a upward, b downward
  int nb = 0;
  for (std::size_t i = 0; i + 1 < va.size(); ++i) {
    int band = -1;
    for (int c = 0; c < k; ++c)
      if (connectors[c] == 'b' && ca[c][0] == va[i]) band = nb++;
    auto [ta, tb] = band >= 0 && band < (int)tags.size() ? tags[band] : std::pair<int, int>{-1, -1};
    sa.push_back(mb.edge(va[i + 1], va[i], ta));
    sb.push_back(mb.edge(vb[i], vb[i + 1], tb));
  }
  std::vector<int> top(k), bottom(k);
  for (int i = 0; i < k; ++i) {
    if (connectors[i] == 'b') {
      top[i] = mb.edge(ca[i][0], cb[i][0]);
      bottom[i] = mb.edge(ca[i][1], cb[i][1]);
    } else {
      top[i] = bottom[i] = mb.edge(ca[i][0], cb[i][0]);
    }
  }
  auto pos = [](const std::vector<int>& v, int x) { return int(std::find(v.begin(), v.end(), x) - v.begin()); };
  Cell da, db;
  da.kind = db.kind = CellKind::zero_handle;
  da.label = fa;
  db.label = fb;
  std::vector<int> wa{MapBuilder::fwd(la)}, wb;
  for (int i = (int)sa.size() - 1; i >= 0; --i) wa.push_back(MapBuilder::fwd(sa[i]));
  for (int s : sb) wb.push_back(MapBuilder::fwd(s));
  wb.push_back(MapBuilder::fwd(rb));
  mb.face(da, wa);
  mb.face(db, wb);
  Orientation o = Orientation::out;
  std::vector<Orientation> below(k);
  for (int i = 0; i < k; ++i) {
    if (connectors[i] == 'g') o = opposite(o);
    below[i] = o;
    if (connectors[i] == 'b') {
      Cell band;
      band.kind = CellKind::one_handle;
      mb.face(band, {MapBuilder::bwd(sa[pos(va, ca[i][0])]), MapBuilder::fwd(bottom[i]),
                     MapBuilder::bwd(sb[pos(vb, cb[i][0])]), MapBuilder::bwd(top[i])});
    }
  }
  for (int i = 0; i + 1 < k; ++i) {
    Cell r;
    r.orientation = below[i];
    int a_lo = pos(va, ca[i][1]), b_lo = pos(vb, cb[i][1]);
    mb.face(r, {MapBuilder::fwd(top[i + 1]), MapBuilder::bwd(sb[b_lo]), MapBuilder::bwd(bottom[i]),
                MapBuilder::bwd(sa[a_lo])});
  }
  Cell outer;
  outer.orientation = Orientation::out;
  mb.face(outer, {MapBuilder::fwd(top[0]), MapBuilder::bwd(rb), MapBuilder::bwd(bottom[k - 1]), MapBuilder::bwd(la)});
  SphereComplex sc = mb.build();
  sc.validate();
  return sc;
}

// two tetrahedra, one ideal vertex, torus cusp
inline const char* two_tet_text =
    "tets 2\n"
    "policy ideal\n"
    "glue 0.2 1.2 : 3 1 0\n"
    "glue 1.0 0.3 : 2 0 1\n"
    "glue 1.1 0.0 : 3 1 2\n"
    "glue 1.3 0.1 : 2 0 3\n"
    "ideal 0.0\n";

inline GeneralisedTriangulation two_tet() { return parse_triangulation(two_tet_text); }

// graph index of (config, mask) in a catalog, -1 if absent
inline int find_graph(const Catalog& c, const StageConfig& cfg, std::uint64_t mask) {
  for (int g = 0; g < (int)c.graphs.size(); ++g)
    if (c.configs[c.graphs[g].config].cfg.key == cfg.key && c.graphs[g].mask == mask) return g;
  return -1;
}

inline Catalog restrict_graphs(Catalog c, const std::vector<int>& keep) {
  std::vector<CatalogGraph> g;
  for (int i : keep) g.push_back(c.graphs.at(i));
  c.graphs = g;
  return c;
}

struct Fixture {
  GeneralisedTriangulation gt;
  Catalog catalog;
  std::vector<int> expected;   // the one assignment that survives
};

// Each tetrahedron holds a ball whose two discs sit on the two faces glued
// to the other tetrahedron, so the graph is a loop and M' a solid torus.
// Only the subtangles keeping one suture arc give a connected gamma.
inline Fixture loop_fixture() {
  Fixture f;
  f.gt = two_tet();
  StageConfig a = make_config({two_disc_ball(2, 3, "gg")});
  StageConfig b = make_config({two_disc_ball(2, 0, "gg")});
  StageConfig empty = make_config({});
  Catalog full = catalog_from_configs({a, b, empty}, "planted loop");
  std::vector<int> keep{find_graph(full, empty, 0), find_graph(full, a, 0), find_graph(full, a, 1),
                        find_graph(full, a, 3), find_graph(full, b, 0), find_graph(full, b, 1),
                        find_graph(full, b, 3)};
  std::sort(keep.begin(), keep.end());
  f.catalog = restrict_graphs(full, keep);
  f.expected = {find_graph(f.catalog, a, 1), find_graph(f.catalog, b, 1)};
  return f;
}

// the same loop with two tagged bands beside the sutures; the bands close
// up into two cores of M', so H1 dies whenever gamma survives
inline Fixture banded_fixture() {
  Fixture f;
  f.gt = two_tet();
  StageConfig a = make_config({two_disc_ball(2, 3, "gbbg", {{0, 0}, {5, 5}})});
  StageConfig b = make_config({two_disc_ball(2, 0, "gbbg", {{1, 0}, {4, 5}})});
  f.catalog = catalog_from_configs({a, b}, "planted bands");
  return f;
}

}  // namespace planted
