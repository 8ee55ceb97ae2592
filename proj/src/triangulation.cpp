#include "dehn/triangulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "dehn/boundary_complex.hpp"

namespace dehn {

namespace {

struct Uf {
  std::vector<int> p;
  explicit Uf(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

std::vector<std::vector<int>> classes_from(Uf& uf, int tets, int per) {
  std::vector<std::vector<int>> out(tets, std::vector<int>(per, -1));
  std::map<int, int> remap;
  for (int t = 0; t < tets; ++t)
    for (int k = 0; k < per; ++k) out[t][k] = remap.emplace(uf.find(t * per + k), (int)remap.size()).first->second;
  return out;
}

bool parse_int(const std::string& s, int& v) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (...) {
    return false;
  }
  return pos == s.size();
}

bool parse_pair(const std::string& s, int& a, int& b) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return false;
  return parse_int(s.substr(0, dot), a) && parse_int(s.substr(dot + 1), b);
}

}  // namespace

const char* to_string(BoundaryPolicy p) {
  switch (p) {
    case BoundaryPolicy::genuine: return "genuine";
    case BoundaryPolicy::ideal: return "ideal";
    default: return "mixed";
  }
}

std::array<int, 3> face_vertices(int face) {
  std::array<int, 3> v{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != face) v[k++] = i;
  return v;
}

VertexPerm FaceGluing::perm() const {
  VertexPerm p{};
  auto fv = face_vertices(face_a);
  for (int k = 0; k < 3; ++k) p[fv[k]] = vertex_map[k];
  p[face_a] = face_b;
  return p;
}

const FaceGluing* GeneralisedTriangulation::gluing_at(int tet, int face, FaceGluing* scratch) const {
  for (const FaceGluing& g : gluings) {
    if (g.tet_a == tet && g.face_a == face) return &g;
    if (g.tet_b == tet && g.face_b == face) {
      VertexPerm q = inverse(g.perm());
      scratch->tet_a = g.tet_b;
      scratch->face_a = g.face_b;
      scratch->tet_b = g.tet_a;
      scratch->face_b = g.face_a;
      auto fv = face_vertices(g.face_b);
      for (int k = 0; k < 3; ++k) scratch->vertex_map[k] = q[fv[k]];
      return scratch;
    }
  }
  return nullptr;
}

TriangulationError::TriangulationError(Kind k, int line_no, const std::string& f, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ", " + f + ": " + what), kind(k), line(line_no), field(f) {}

GeneralisedTriangulation parse_triangulation(const std::string& text) {
  using K = TriangulationError::Kind;
  GeneralisedTriangulation gt;
  std::istringstream is(text);
  std::string line;
  int no = 0;
  bool have_tets = false, have_policy = false;
  std::set<std::pair<int, int>> glued;
  while (std::getline(is, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string x; ls >> x;) w.push_back(x);
    if (w.empty()) continue;
    if (w[0] == "tets") {
      if (have_tets) throw TriangulationError(K::malformed, no, "tets", "repeated header");
      if (w.size() != 2 || !parse_int(w[1], gt.tet_count) || gt.tet_count < 0)
        throw TriangulationError(K::malformed, no, "tets", "expected a nonnegative count");
      have_tets = true;
      continue;
    }
    if (!have_tets) throw TriangulationError(K::malformed, no, w[0], "record before the tets header");
    auto check_tet = [&](int t, const char* field) {
      if (t < 0 || t >= gt.tet_count) throw TriangulationError(K::malformed, no, field, "tetrahedron out of range");
    };
    if (w[0] == "glue") {
      if (w.size() != 7 || w[3] != ":") throw TriangulationError(K::malformed, no, "glue", "expected 'glue a.f b.g : p0 p1 p2'");
      FaceGluing g;
      if (!parse_pair(w[1], g.tet_a, g.face_a)) throw TriangulationError(K::malformed, no, "side_a", "expected tet.face");
      if (!parse_pair(w[2], g.tet_b, g.face_b)) throw TriangulationError(K::malformed, no, "side_b", "expected tet.face");
      check_tet(g.tet_a, "side_a");
      check_tet(g.tet_b, "side_b");
      if (g.face_a < 0 || g.face_a > 3) throw TriangulationError(K::malformed, no, "side_a", "face index must be 0-3");
      if (g.face_b < 0 || g.face_b > 3) throw TriangulationError(K::malformed, no, "side_b", "face index must be 0-3");
      for (int k = 0; k < 3; ++k)
        if (!parse_int(w[4 + k], g.vertex_map[k]))
          throw TriangulationError(K::malformed, no, "vertex_map", "expected an integer");
      std::array<int, 3> img = g.vertex_map;
      std::sort(img.begin(), img.end());
      if (img != face_vertices(g.face_b))
        throw TriangulationError(K::non_bijective_map, no, "vertex_map", "not a bijection onto the vertices of face " +
                                                                           std::to_string(g.face_b));
      if (g.tet_a == g.tet_b && g.face_a == g.face_b)
        throw TriangulationError(K::malformed, no, "glue", "a face cannot be glued to itself");
      if (!glued.insert({g.tet_a, g.face_a}).second)
        throw TriangulationError(K::duplicate_gluing, no, "side_a", "face " + w[1] + " glued twice");
      if (!glued.insert({g.tet_b, g.face_b}).second)
        throw TriangulationError(K::duplicate_gluing, no, "side_b", "face " + w[2] + " glued twice");
      gt.gluings.push_back(g);
    } else if (w[0] == "ideal") {
      int t = 0, v = 0;
      if (w.size() != 2 || !parse_pair(w[1], t, v)) throw TriangulationError(K::malformed, no, "ideal", "expected tet.vertex");
      check_tet(t, "ideal");
      if (v < 0 || v > 3) throw TriangulationError(K::malformed, no, "ideal", "vertex index must be 0-3");
      gt.ideal_vertices.insert({t, v});
    } else if (w[0] == "policy") {
      if (have_policy) throw TriangulationError(K::malformed, no, "policy", "repeated policy");
      if (w.size() != 2) throw TriangulationError(K::malformed, no, "policy", "expected genuine, ideal or mixed");
      if (w[1] == "genuine") gt.policy = BoundaryPolicy::genuine;
      else if (w[1] == "ideal") gt.policy = BoundaryPolicy::ideal;
      else if (w[1] == "mixed") gt.policy = BoundaryPolicy::mixed;
      else throw TriangulationError(K::malformed, no, "policy", "unknown policy " + w[1]);
      have_policy = true;
    } else {
      throw TriangulationError(K::malformed, no, w[0], "unknown record");
    }
  }
  if (!have_tets) throw TriangulationError(K::malformed, no, "tets", "missing header");
  return gt;
}

std::string serialize(const GeneralisedTriangulation& gt) {
  std::ostringstream os;
  os << "tets " << gt.tet_count << "\npolicy " << to_string(gt.policy) << '\n';
  for (const FaceGluing& g : gt.gluings)
    os << "glue " << g.tet_a << '.' << g.face_a << ' ' << g.tet_b << '.' << g.face_b << " : " << g.vertex_map[0] << ' '
       << g.vertex_map[1] << ' ' << g.vertex_map[2] << '\n';
  for (auto [t, v] : gt.ideal_vertices) os << "ideal " << t << '.' << v << '\n';
  return os.str();
}

std::vector<std::vector<int>> vertex_classes(const GeneralisedTriangulation& gt) {
  Uf uf(4 * gt.tet_count);
  for (const FaceGluing& g : gt.gluings) {
    VertexPerm p = g.perm();
    for (int v : face_vertices(g.face_a)) uf.unite(4 * g.tet_a + v, 4 * g.tet_b + p[v]);
  }
  return classes_from(uf, gt.tet_count, 4);
}

std::vector<std::vector<int>> edge_classes(const GeneralisedTriangulation& gt) {
  Uf uf(6 * gt.tet_count);
  for (const FaceGluing& g : gt.gluings) {
    VertexPerm p = g.perm();
    for (int e = 0; e < 6; ++e) {
      auto [i, j] = edge_vertices(e);
      if (i == g.face_a || j == g.face_a) continue;
      uf.unite(6 * g.tet_a + e, 6 * g.tet_b + map_edge(p, e));
    }
  }
  return classes_from(uf, gt.tet_count, 6);
}

namespace {

// orientation per tetrahedron, or empty when there is none
std::vector<int> orientation_of(const GeneralisedTriangulation& gt) {
  std::vector<int> o(gt.tet_count, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(gt.tet_count);
  for (const FaceGluing& g : gt.gluings) {
    int s = perm_sign(g.perm());
    adj[g.tet_a].push_back({g.tet_b, s});
    adj[g.tet_b].push_back({g.tet_a, s});
  }
  for (int r = 0; r < gt.tet_count; ++r) {
    if (o[r]) continue;
    o[r] = 1;
    std::queue<int> q;
    q.push(r);
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      for (auto [u, s] : adj[t]) {
        // an odd gluing keeps the orientation, an even one flips it
        int want = s < 0 ? o[t] : -o[t];
        if (!o[u]) {
          o[u] = want;
          q.push(u);
        } else if (o[u] != want) {
          return {};
        }
      }
    }
  }
  return o;
}

std::vector<char> ideal_classes(const GeneralisedTriangulation& gt, const std::vector<std::vector<int>>& vc, int nvc) {
  std::vector<char> ideal(nvc, 0);
  for (auto [t, v] : gt.ideal_vertices) ideal[vc[t][v]] = 1;
  return ideal;
}

}  // namespace

GeneralisedTriangulation coherently_oriented(const GeneralisedTriangulation& gt) {
  std::vector<int> o = orientation_of(gt);
  if (o.empty() && gt.tet_count) throw ComplexError("triangulation is not orientable");
  auto flip = [&](int t) -> VertexPerm {
    if (o[t] > 0) return {0, 1, 2, 3};
    return {0, 1, 3, 2};
  };
  GeneralisedTriangulation out = gt;
  out.gluings.clear();
  for (const FaceGluing& g : gt.gluings) {
    VertexPerm fa = flip(g.tet_a), fb = flip(g.tet_b), p = g.perm(), q{};
    VertexPerm ia = inverse(fa);
    for (int v = 0; v < 4; ++v) q[v] = fb[p[ia[v]]];
    FaceGluing h;
    h.tet_a = g.tet_a;
    h.tet_b = g.tet_b;
    h.face_a = fa[g.face_a];
    h.face_b = q[h.face_a];
    auto fv = face_vertices(h.face_a);
    for (int k = 0; k < 3; ++k) h.vertex_map[k] = q[fv[k]];
    out.gluings.push_back(h);
  }
  out.ideal_vertices.clear();
  for (auto [t, v] : gt.ideal_vertices) out.ideal_vertices.insert({t, flip(t)[v]});
  return out;
}

ValidationReport validate(const GeneralisedTriangulation& gt) {
  ValidationReport r;
  int T = gt.tet_count;
  std::vector<int> o = orientation_of(gt);
  r.orientable = !o.empty() || T == 0;
  if (!r.orientable) r.failures.push_back("non-orientable");
  for (const FaceGluing& g : gt.gluings)
    if (perm_sign(g.perm()) > 0) r.coherent = false;

  auto vc = vertex_classes(gt);
  auto ec = edge_classes(gt);
  int nvc = 0, nec = 0;
  for (auto& row : vc)
    for (int x : row) nvc = std::max(nvc, x + 1);
  for (auto& row : ec)
    for (int x : row) nec = std::max(nec, x + 1);
  std::vector<char> ideal = ideal_classes(gt, vc, nvc);
  if (gt.policy == BoundaryPolicy::genuine && !gt.ideal_vertices.empty()) {
    r.policy_consistent = false;
    r.failures.push_back("policy genuine but ideal vertices are marked");
  }
  if (gt.policy == BoundaryPolicy::ideal)
    for (int c = 0; c < nvc; ++c)
      if (!ideal[c]) {
        r.policy_consistent = false;
        r.failures.push_back("policy ideal but vertex class " + std::to_string(c) + " is not marked");
      }

  std::vector<std::vector<char>> glued(T, std::vector<char>(4, 0));
  for (const FaceGluing& g : gt.gluings) glued[g.tet_a][g.face_a] = glued[g.tet_b][g.face_b] = 1;

  // surface of unglued faces, split at shared edges
  std::vector<std::pair<int, int>> free_faces;
  for (int t = 0; t < T; ++t)
    for (int f = 0; f < 4; ++f)
      if (!glued[t][f]) free_faces.push_back({t, f});
  if (!free_faces.empty()) {
    Uf uf((int)free_faces.size());
    std::map<int, int> by_edge;
    for (int i = 0; i < (int)free_faces.size(); ++i) {
      auto [t, f] = free_faces[i];
      for (int e = 0; e < 6; ++e) {
        auto [a, b] = edge_vertices(e);
        if (a == f || b == f) continue;
        auto it = by_edge.emplace(ec[t][e], i).first;
        uf.unite(i, it->second);
      }
    }
    std::map<int, std::vector<int>> comps;
    for (int i = 0; i < (int)free_faces.size(); ++i) comps[uf.find(i)].push_back(i);
    for (auto& [root, members] : comps) {
      std::set<int> vs, es;
      for (int i : members) {
        auto [t, f] = free_faces[i];
        for (int v : face_vertices(f)) vs.insert(vc[t][v]);
        for (int e = 0; e < 6; ++e) {
          auto [a, b] = edge_vertices(e);
          if (a != f && b != f) es.insert(ec[t][e]);
        }
      }
      BoundaryComponentReport c;
      c.source = "faces";
      c.euler = (int)vs.size() - (int)es.size() + (int)members.size();
      c.torus = c.euler == 0;
      r.boundary.push_back(c);
    }
  }

  // vertex links from corner triangles
  for (int cls = 0; cls < nvc; ++cls) {
    int F = 0, unglued = 0;
    Uf ends(T * 16);
    std::set<int> end_ids;
    std::pair<int, int> rep{-1, -1};
    for (int t = 0; t < T; ++t)
      for (int v = 0; v < 4; ++v) {
        if (vc[t][v] != cls) continue;
        if (rep.first < 0) rep = {t, v};
        ++F;
        for (int f = 0; f < 4; ++f)
          if (f != v && !glued[t][f]) ++unglued;
        for (int w = 0; w < 4; ++w)
          if (w != v) end_ids.insert(t * 16 + v * 4 + w);
      }
    for (const FaceGluing& g : gt.gluings) {
      VertexPerm p = g.perm();
      for (int v : face_vertices(g.face_a)) {
        if (vc[g.tet_a][v] != cls) continue;
        for (int w : face_vertices(g.face_a))
          if (w != v) ends.unite(g.tet_a * 16 + v * 4 + w, g.tet_b * 16 + p[v] * 4 + p[w]);
      }
    }
    std::set<int> vroots;
    for (int id : end_ids) vroots.insert(ends.find(id));
    int E = (3 * F + unglued) / 2;
    int chi = (int)vroots.size() - E + F;
    std::string where = std::to_string(rep.first) + "." + std::to_string(rep.second);
    if (ideal[cls]) {
      BoundaryComponentReport c;
      c.source = "ideal vertex " + where;
      c.euler = chi;
      c.torus = chi == 0 && unglued == 0;
      r.boundary.push_back(c);
    } else if (unglued == 0 && chi != 2) {
      r.failures.push_back("link of vertex " + where + " is not a sphere (euler " + std::to_string(chi) + ")");
    } else if (unglued > 0 && chi != 1) {
      r.failures.push_back("link of vertex " + where + " is not a disc (euler " + std::to_string(chi) + ")");
    }
  }
  for (const BoundaryComponentReport& c : r.boundary)
    if (!c.torus) {
      r.boundary_tori = false;
      r.failures.push_back("boundary not torus: " + c.source + " has euler characteristic " + std::to_string(c.euler));
    }
  (void)nec;
  return r;
}

HandleStructure dual_handle_structure(const GeneralisedTriangulation& input) {
  HandleStructure hs;
  // disc words are read with the orientation of each tetrahedron, so work
  // in a coherent labelling whenever one exists
  const GeneralisedTriangulation gt = validate(input).orientable ? coherently_oriented(input) : input;
  int T = gt.tet_count;
  auto vc = vertex_classes(gt);
  auto ec = edge_classes(gt);
  int nvc = 0, nec = 0;
  for (auto& row : vc)
    for (int x : row) nvc = std::max(nvc, x + 1);
  for (auto& row : ec)
    for (int x : row) nec = std::max(nec, x + 1);
  std::vector<char> ideal = ideal_classes(gt, vc, nvc);
  std::vector<std::vector<char>> glued(T, std::vector<char>(4, 0));
  for (const FaceGluing& g : gt.gluings) glued[g.tet_a][g.face_a] = glued[g.tet_b][g.face_b] = 1;
  std::vector<char> edge_on_boundary(nec, 0), vertex_on_boundary(nvc, 0);
  for (int t = 0; t < T; ++t)
    for (int f = 0; f < 4; ++f) {
      if (glued[t][f]) continue;
      for (int v : face_vertices(f)) vertex_on_boundary[vc[t][v]] = 1;
      for (int e = 0; e < 6; ++e) {
        auto [a, b] = edge_vertices(e);
        if (a != f && b != f) edge_on_boundary[ec[t][e]] = 1;
      }
    }
  hs.counts[0] = T;
  hs.one_handles = gt.gluings;
  hs.counts[1] = (int)gt.gluings.size();
  std::vector<int> handle_of_class(nec, -1);
  for (int c = 0; c < nec; ++c) {
    if (edge_on_boundary[c]) continue;
    handle_of_class[c] = (int)hs.two_handle_class.size();
    hs.two_handle_class.push_back(c);
  }
  hs.counts[2] = (int)hs.two_handle_class.size();
  for (int c = 0; c < nvc; ++c)
    if (!ideal[c] && !vertex_on_boundary[c]) hs.three_handle_class.push_back(c);
  hs.counts[3] = (int)hs.three_handle_class.size();
  std::vector<char> interior(nvc, 0);
  for (int c : hs.three_handle_class) interior[c] = 1;

  // attaching circuits: walk around each interior edge
  hs.two_handles.resize(hs.counts[2]);
  std::vector<char> seen(6 * T, 0);
  for (int t = 0; t < T; ++t)
    for (int e = 0; e < 6; ++e) {
      int h = handle_of_class[ec[t][e]];
      if (h < 0 || !hs.two_handles[h].empty()) continue;
      auto [i, j] = edge_vertices(e);
      int ct = t, ce = e, cf = -1;
      for (int f = 0; f < 4; ++f)
        if (f != i && f != j) {
          cf = f;
          break;
        }
      for (int guard = 0; guard < 12 * T + 12; ++guard) {
        hs.two_handles[h].push_back({ct, ce, cf});
        seen[6 * ct + ce] = 1;
        FaceGluing tmp;
        const FaceGluing* g = gt.gluing_at(ct, cf, &tmp);
        VertexPerm p = g->perm();
        int nt = g->tet_b, ne = map_edge(p, ce), nf_in = g->face_b;
        auto [a, b] = edge_vertices(ne);
        int nf = -1;
        for (int f = 0; f < 4; ++f)
          if (f != a && f != b && f != nf_in) nf = f;
        ct = nt;
        ce = ne;
        cf = nf;
        if (ct == t && ce == e && cf == hs.two_handles[h][0].face) break;
      }
    }

  hs.face_disc.assign(T, std::vector<int>(4, -1));
  for (int t = 0; t < T; ++t) {
    unsigned faces = 0, edges = 0;
    for (int f = 0; f < 4; ++f)
      if (glued[t][f]) faces |= 1u << f;
    for (int e = 0; e < 6; ++e)
      if (handle_of_class[ec[t][e]] >= 0) edges |= 1u << e;
    unsigned h3 = 0;
    for (int v = 0; v < 4; ++v)
      if (interior[vc[t][v]]) h3 |= 1u << v;
    SphereComplex sc = tetrahedron_pattern(faces, edges, Orientation::in, h3);
    for (int c = 0; c < (int)sc.cells.size(); ++c)
      if (sc.cells[c].kind == CellKind::zero_handle) hs.face_disc[t][sc.cells[c].label] = c;
    hs.zero_handles.push_back(std::move(sc));
  }
  return hs;
}

void check_handle_structure(const HandleStructure& hs) {
  for (const SphereComplex& sc : hs.zero_handles) {
    sc.validate();
    if (cells_of_kind(sc, CellKind::zero_handle).size() > 4) throw ComplexError("0-handle meets more than four discs");
  }
  std::map<std::pair<int, int>, int> strips;
  for (const auto& circuit : hs.two_handles) {
    if (circuit.empty()) throw ComplexError("2-handle disjoint from the 1-handles");
    for (const TwoHandleStep& s : circuit) ++strips[{s.tet, s.face}];
  }
  for (auto& [k, n] : strips)
    if (n > 3) throw ComplexError("1-handle meets more than three 2-handle strips");
}

BoundarySurfaceReport boundary_surface(const HandleStructure& hs) {
  std::vector<DiscMatch> matches;
  for (const FaceGluing& g : hs.one_handles) {
    DiscMatch m;
    m.ball_a = g.tet_a;
    m.cell_a = hs.face_disc[g.tet_a][g.face_a];
    m.ball_b = g.tet_b;
    m.cell_b = hs.face_disc[g.tet_b][g.face_b];
    m.perm = g.perm();
    matches.push_back(m);
  }
  BoundaryBuild bb = build_boundary(hs.zero_handles, matches);
  BoundarySurfaceReport r;
  r.component_euler = bb.complex.component_euler();
  std::sort(r.component_euler.begin(), r.component_euler.end());
  r.euler = bb.complex.euler();
  r.handle_euler = 2 * (hs.counts[0] - hs.counts[1] + hs.counts[2] - hs.counts[3]);
  return r;
}

}  // namespace dehn
