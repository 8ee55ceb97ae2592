#include "dehn/boundary_complex.hpp"

#include <algorithm>
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

struct End {
  int ball, edge, side;  // side 0: tail of the even dart, 1: head
  auto operator<=>(const End&) const = default;
};

struct Link {
  End to;
  int vertical;   // boundary complex edge, -1 when the ends meet at a vertex
  int sign;
};

}  // namespace

std::vector<int> BoundaryComplex::vertex_components(int* count) const {
  Uf uf(vertex_count);
  for (auto& e : edges) uf.unite(e[0], e[1]);
  std::vector<int> id(vertex_count, -1);
  std::map<int, int> remap;
  for (int v = 0; v < vertex_count; ++v) id[v] = remap.emplace(uf.find(v), (int)remap.size()).first->second;
  if (count) *count = (int)remap.size();
  return id;
}

std::vector<int> BoundaryComplex::component_euler() const {
  int n = 0;
  std::vector<int> comp = vertex_components(&n);
  std::vector<int> chi(n, 0);
  for (int v = 0; v < vertex_count; ++v) ++chi[comp[v]];
  for (auto& e : edges) --chi[comp[e[0]]];
  for (auto& f : faces) {
    if (f.empty()) throw GlueError("face without boundary");
    ++chi[comp[edges[f[0].first][0]]];
  }
  return chi;
}

BoundaryBuild build_boundary(const std::vector<SphereComplex>& balls, const std::vector<DiscMatch>& matches,
                             const std::vector<std::vector<char>>& keep_suture) {
  int nb = (int)balls.size();
  BoundaryBuild out;
  BoundaryComplex& bc = out.complex;
  std::vector<std::vector<int>> vid(nb);
  std::vector<int> voff(nb + 1, 0);
  for (int b = 0; b < nb; ++b) {
    int nv = 0;
    vid[b] = balls[b].vertex_ids(&nv);
    voff[b + 1] = voff[b] + nv;
  }
  bc.vertex_count = voff[nb];
  auto sv = [&](int b, int d) { return voff[b] + vid[b][d]; };  // tail of dart d
  auto add_edge = [&](int t, int h, int g) {
    bc.edges.push_back({t, h});
    bc.graph_edge.push_back(g);
    return (int)bc.edges.size() - 1;
  };
  std::vector<std::vector<int>> sedge(nb);
  for (int b = 0; b < nb; ++b) {
    const SphereComplex& sc = balls[b];
    sedge[b].assign(sc.edge_count(), -1);
    for (int e = 0; e < sc.edge_count(); ++e) {
      int d = 2 * e;
      if (sc.cell_of(d).kind == CellKind::region || sc.cell_of(d ^ 1).kind == CellKind::region)
        sedge[b][e] = add_edge(sv(b, d), sv(b, d ^ 1), -1);
    }
  }
  auto signed_dart = [&](int b, int d) -> SignedEdge {
    int e = sedge[b][d >> 1];
    if (e < 0) throw GlueError("dart without a boundary edge");
    return {e, (d & 1) ? -1 : 1};
  };
  auto kept = [&](int b, int e) {
    if (!balls[b].is_suture(2 * e)) return false;
    return keep_suture.empty() || keep_suture[b][e];
  };
  std::vector<char> used(bc.edges.size(), 0);
  std::vector<char> cap_edge(bc.edges.size(), 0);

  std::map<End, Link> links;
  bool simple = true;
  std::vector<std::set<int>> matched(nb);
  for (int m = 0; m < (int)matches.size(); ++m) {
    const DiscMatch& mt = matches[m];
    const SphereComplex& A = balls[mt.ball_a];
    const SphereComplex& B = balls[mt.ball_b];
    if (!matched[mt.ball_a].insert(mt.cell_a).second || !matched[mt.ball_b].insert(mt.cell_b).second)
      throw GlueError("disc glued twice");
    DiscWord wa = disc_word(A, mt.cell_a), wb = disc_word(B, mt.cell_b);
    std::vector<char> ka(A.edge_count(), 1), kb(B.edge_count(), 1);
    for (int e = 0; e < A.edge_count(); ++e) ka[e] = kept(mt.ball_a, e);
    for (int e = 0; e < B.edge_count(); ++e) kb[e] = kept(mt.ball_b, e);
    // positions of the surviving tokens
    std::vector<int> ia, ib;
    for (int i = 0; i < (int)wa.tokens.size(); ++i)
      if (wa.token_suture[i] < 0 || ka[wa.token_suture[i] >> 1]) ia.push_back(i);
    for (int i = 0; i < (int)wb.tokens.size(); ++i)
      if (wb.token_suture[i] < 0 || kb[wb.token_suture[i] >> 1]) ib.push_back(i);
    auto ta = filtered_tokens(wa, ka), tb = filtered_tokens(wb, kb);
    auto shift = align(ta, tb, mt.perm);
    if (!shift) throw GlueError("disc words do not match across the gluing");
    int n = (int)ta.size();
    int nd = (int)wa.darts.size();
    // vertical edge at the head of each dart of A
    std::vector<int> vert(nd, -1);
    std::vector<int> partner_dart(nd, -1);
    int last_dart = -1;
    std::vector<int> junction_of_token(n, -1);
    for (int k = 0; k < n; ++k) {
      int i = ia[k];
      if (wa.token_dart[i] >= 0) last_dart = wa.token_dart[i];
      junction_of_token[k] = last_dart;
    }
    for (int k = 0; k < n; ++k)
      if (junction_of_token[k] < 0) junction_of_token[k] = last_dart;
    for (int k = 0; k < n; ++k) {
      int i = ia[k];
      if (wa.token_dart[i] < 0) continue;
      int j = ib[partner_token(k, n, *shift)];
      int pa = wa.token_dart[i], pb = wb.token_dart[j];
      if (pb < 0) throw GlueError("dart token aligned with a suture token");
      partner_dart[pa] = pb;
      int a = wa.darts[pa], bd = wb.darts[pb];
      vert[pa] = add_edge(sv(mt.ball_a, a ^ 1), sv(mt.ball_b, bd), m);
      used.push_back(0);
      cap_edge.push_back(0);
    }
    for (int pa = 0; pa < nd; ++pa) {
      int a = wa.darts[pa];
      int bd = wb.darts[partner_dart[pa]];
      std::uint8_t t = wa.tokens[std::find(wa.token_dart.begin(), wa.token_dart.end(), pa) - wa.token_dart.begin()];
      int prev_v = vert[(pa + nd - 1) % nd];
      if (t == tok_corner) {
        if (A.cell_of(a ^ 1).three_handle || B.cell_of(bd ^ 1).three_handle) continue;
        std::vector<SignedEdge> f{signed_dart(mt.ball_a, a), {vert[pa], 1}, signed_dart(mt.ball_b, bd), {prev_v, -1}};
        for (auto& [e, s] : f) used[e] = 1;
        bc.faces.push_back(f);
      } else if (t < 6 || t == tok_band_untagged) {
        cap_edge[vert[pa]] = 1;
        cap_edge[prev_v] = 1;
      } else {
        throw GlueError("disc boundary runs along another F cell");
      }
    }
    for (int k = 0; k < n; ++k) {
      int i = ia[k];
      if (wa.token_suture[i] < 0) continue;
      int j = ib[partner_token(k, n, *shift)];
      if (wb.token_suture[j] < 0) throw GlueError("suture token aligned with a dart token");
      int x = wa.token_suture[i], y = wb.token_suture[j];
      End ea{mt.ball_a, x >> 1, x & 1}, eb{mt.ball_b, y >> 1, y & 1};
      int v = vert[junction_of_token[k]];
      if (links.count(ea) || links.count(eb)) simple = false;
      links[ea] = {eb, v, 1};
      links[eb] = {ea, v, -1};
    }
  }
  for (int b = 0; b < nb; ++b)
    for (int c : cells_of_kind(balls[b], CellKind::zero_handle))
      if (!matched[b].count(c)) throw GlueError("zero-handle disc left unglued");

  // regions
  for (int b = 0; b < nb; ++b) {
    const SphereComplex& sc = balls[b];
    if (sc.dart_count() == 0) {
      int v = bc.vertex_count++;
      int e = add_edge(v, v, -1);
      used.push_back(1);
      cap_edge.push_back(0);
      bc.faces.push_back({{e, 1}});
      bc.faces.push_back({{e, -1}});
      continue;
    }
    std::vector<int> cyc = sc.cycle_ids();
    for (int c = 0; c < (int)sc.cells.size(); ++c) {
      const Cell& cell = sc.cells[c];
      if (cell.kind != CellKind::region || cell.three_handle) continue;
      std::vector<SignedEdge> f;
      std::map<int, int> first_of_cycle;
      for (int d = 0; d < sc.dart_count(); ++d) {
        if (sc.cell[d] != c) continue;
        f.push_back(signed_dart(b, d));
        first_of_cycle.emplace(cyc[d], d);
      }
      int root = first_of_cycle.begin()->second;
      for (auto it = std::next(first_of_cycle.begin()); it != first_of_cycle.end(); ++it) {
        add_edge(sv(b, root), sv(b, it->second), -1);
        used.push_back(1);
        cap_edge.push_back(0);
      }
      for (auto& [e, s] : f) used[e] = 1;
      bc.faces.push_back(f);
    }
  }

  // caps: circles made of band sides and the verticals beside band ends
  std::vector<char> side_in_h3(bc.edges.size(), 0);
  for (int b = 0; b < nb; ++b) {
    const SphereComplex& sc = balls[b];
    for (int d = 0; d < sc.dart_count(); ++d) {
      if (sc.cell_of(d).kind != CellKind::one_handle || sc.cell_of(d ^ 1).kind != CellKind::region) continue;
      int e = sedge[b][d >> 1];
      cap_edge[e] = 1;
      if (sc.cell_of(d ^ 1).three_handle) side_in_h3[e] = 1;
    }
  }
  std::map<int, std::vector<int>> at;
  for (int e = 0; e < (int)bc.edges.size(); ++e)
    if (cap_edge[e]) {
      at[bc.edges[e][0]].push_back(e);
      at[bc.edges[e][1]].push_back(e);
    }
  for (auto& [v, es] : at)
    if (es.size() != 2) throw GlueError("band sides do not close up into circles");
  std::vector<char> walked(bc.edges.size(), 0);
  for (int e0 = 0; e0 < (int)bc.edges.size(); ++e0) {
    if (!cap_edge[e0] || walked[e0]) continue;
    std::vector<SignedEdge> walk;
    bool in_h3 = false;
    int e = e0, v = bc.edges[e0][0];
    while (!walked[e]) {
      walked[e] = 1;
      int s = bc.edges[e][0] == v ? 1 : -1;
      walk.push_back({e, s});
      if (side_in_h3[e]) in_h3 = true;
      v = s > 0 ? bc.edges[e][1] : bc.edges[e][0];
      auto& es = at[v];
      e = es[0] == e ? es[1] : es[0];
      if (es[0] == es[1]) break;
    }
    if (in_h3) continue;
    std::vector<SignedEdge> word;
    for (auto& [x, s] : walk) {
      used[x] = 1;
      if (bc.graph_edge[x] >= 0) word.push_back({bc.graph_edge[x], s});
    }
    bc.faces.push_back(walk);
    out.cap_walks.push_back(walk);
    out.cap_words.push_back(word);
  }

  // gamma: kept sutures joined at vertices away from F and across glued discs
  std::map<std::pair<int, int>, std::vector<End>> ends_at;
  std::vector<End> items;
  for (int b = 0; b < nb; ++b)
    for (int e = 0; e < balls[b].edge_count(); ++e) {
      if (!kept(b, e)) continue;
      items.push_back({b, e, 0});
      for (int s = 0; s < 2; ++s) {
        End x{b, e, s};
        if (!links.count(x)) ends_at[{b, vid[b][2 * e + s]}].push_back(x);
      }
    }
  for (auto& [v, es] : ends_at) {
    if (es.size() == 2) {
      links[es[0]] = {es[1], -1, 0};
      links[es[1]] = {es[0], -1, 0};
    } else {
      simple = false;
    }
  }
  std::set<std::pair<int, int>> visited;
  for (const End& it : items) {
    if (visited.count({it.ball, it.edge})) continue;
    GammaCurve g;
    std::set<int> touched;
    End cur{it.ball, it.edge, 0};
    while (true) {
      visited.insert({cur.ball, cur.edge});
      touched.insert(cur.ball);
      int e = sedge[cur.ball][cur.edge];
      g.chain[e] += cur.side == 0 ? 1 : -1;
      End exit{cur.ball, cur.edge, 1 - cur.side};
      auto l = links.find(exit);
      if (l == links.end()) {
        simple = false;
        break;
      }
      if (l->second.vertical >= 0) {
        g.chain[l->second.vertical] += l->second.sign;
        ++g.disc_crossings;
      }
      cur = l->second.to;
      if (cur.ball == it.ball && cur.edge == it.edge && cur.side == 0) break;
      if (visited.count({cur.ball, cur.edge})) {
        simple = false;
        break;
      }
    }
    for (auto i = g.chain.begin(); i != g.chain.end();)
      i = i->second == 0 ? g.chain.erase(i) : std::next(i);
    g.balls_touched = (int)touched.size();
    out.gamma.push_back(std::move(g));
  }
  out.gamma_simple = simple;

  // drop edges and vertices that bound nothing
  std::vector<int> enew(bc.edges.size(), -1);
  BoundaryComplex pr;
  std::vector<int> vnew(bc.vertex_count, -1);
  for (int e = 0; e < (int)bc.edges.size(); ++e) {
    if (!used[e]) continue;
    for (int k = 0; k < 2; ++k)
      if (vnew[bc.edges[e][k]] < 0) vnew[bc.edges[e][k]] = pr.vertex_count++;
    enew[e] = (int)pr.edges.size();
    pr.edges.push_back({vnew[bc.edges[e][0]], vnew[bc.edges[e][1]]});
    pr.graph_edge.push_back(bc.graph_edge[e]);
  }
  auto remap = [&](std::vector<SignedEdge>& w) {
    for (auto& [e, s] : w) e = enew[e];
  };
  for (auto& f : bc.faces) {
    remap(f);
    pr.faces.push_back(f);
  }
  for (auto& w : out.cap_walks) remap(w);
  for (auto& g : out.gamma) {
    std::map<int, int> c;
    for (auto [e, s] : g.chain) {
      if (enew[e] < 0) throw GlueError("gamma runs along an edge outside the surface");
      c[enew[e]] = s;
    }
    g.chain = std::move(c);
  }
  bc = std::move(pr);
  return out;
}

}  // namespace dehn
