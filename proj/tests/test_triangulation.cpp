#include <set>

#include "doctest.h"
#include "dehn/triangulation.hpp"
#include "planted.hpp"

using namespace dehn;

namespace {

const char* double_text =
    "tets 2\n"
    "glue 0.0 1.0 : 1 2 3\n"
    "glue 0.1 1.1 : 0 2 3\n"
    "glue 0.2 1.2 : 0 1 3\n"
    "glue 0.3 1.3 : 0 1 2\n";

// one tetrahedron with faces 0 and 1 glued by the four-cycle 0>1>2>3>0
const char* solid_torus_text =
    "tets 1\n"
    "glue 0.0 0.1 : 2 3 0\n";

// counts corner orbits by flooding through every gluing, one corner at a time
struct OrbitOracle {
  int vertices = 0, edges = 0, interior_edges = 0;
};

OrbitOracle count_orbits(const GeneralisedTriangulation& gt) {
  OrbitOracle o;
  auto flood = [&](int per, auto corners_of, auto carry) {
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<std::pair<int, int>>> orbits;
    for (int t = 0; t < gt.tet_count; ++t)
      for (int x = 0; x < per; ++x) {
        if (seen.count({t, x})) continue;
        std::vector<std::pair<int, int>> stack{{t, x}}, orbit;
        seen.insert({t, x});
        while (!stack.empty()) {
          auto cur = stack.back();
          stack.pop_back();
          orbit.push_back(cur);
          for (const FaceGluing& g : gt.gluings)
            for (int side = 0; side < 2; ++side) {
              int tt = side ? g.tet_b : g.tet_a, ff = side ? g.face_b : g.face_a;
              if (tt != cur.first || !corners_of(ff, cur.second)) continue;
              VertexPerm p = side ? inverse(g.perm()) : g.perm();
              std::pair<int, int> nx{side ? g.tet_a : g.tet_b, carry(p, cur.second)};
              if (seen.insert(nx).second) stack.push_back(nx);
            }
        }
        orbits.push_back(orbit);
      }
    return orbits;
  };
  auto vertex_in = [](int f, int v) { return f != v; };
  auto edge_in = [](int f, int e) {
    auto [a, b] = edge_vertices(e);
    return f != a && f != b;
  };
  auto vorb = flood(4, vertex_in, [](const VertexPerm& p, int v) { return p[v]; });
  auto eorb = flood(6, edge_in, [](const VertexPerm& p, int e) { return map_edge(p, e); });
  std::set<std::pair<int, int>> glued;
  for (const FaceGluing& g : gt.gluings) {
    glued.insert({g.tet_a, g.face_a});
    glued.insert({g.tet_b, g.face_b});
  }
  o.vertices = (int)vorb.size();
  o.edges = (int)eorb.size();
  for (auto& orbit : eorb) {
    bool boundary = false;
    for (auto [t, e] : orbit)
      for (int f = 0; f < 4; ++f)
        if (edge_in(f, e) && !glued.count({t, f})) boundary = true;
    if (!boundary) ++o.interior_edges;
  }
  return o;
}

bool has(const ValidationReport& r, const std::string& part) {
  for (auto& f : r.failures)
    if (f.find(part) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("parsing") {
  GeneralisedTriangulation one = parse_triangulation("tets 1\n");
  CHECK(one.tet_count == 1);
  CHECK(one.gluings.empty());
  FaceGluing tmp;
  for (int f = 0; f < 4; ++f) CHECK(one.gluing_at(0, f, &tmp) == nullptr);

  GeneralisedTriangulation two = parse_triangulation("tets 2\n# a comment\nglue 0.3 1.3 : 0 2 1   # trailing\n");
  CHECK(two.gluings.size() == 1);
  const FaceGluing* g = two.gluing_at(1, 3, &tmp);
  REQUIRE(g);
  CHECK(g->tet_b == 0);
  CHECK(g->face_b == 3);

  auto kind_of = [](const char* text) {
    try {
      parse_triangulation(text);
    } catch (const TriangulationError& e) {
      return std::make_pair(e.kind, e.line);
    }
    return std::make_pair(TriangulationError::Kind::malformed, -1);
  };
  using K = TriangulationError::Kind;
  CHECK(kind_of("tets 2\nglue 0.3 1.3 : 0 1 2\nglue 1.3 0.2 : 0 1 3\n") == std::make_pair(K::duplicate_gluing, 3));
  CHECK(kind_of("tets 2\nglue 0.3 1.3 : 0 1 1\n") == std::make_pair(K::non_bijective_map, 2));
  CHECK(kind_of("tets 2\nglue 0.3 1.2 : 0 1 2\n") == std::make_pair(K::non_bijective_map, 2));
  CHECK(kind_of("tets 1\nglue 0.3 1.3 : 0 1 2\n") == std::make_pair(K::malformed, 2));
  CHECK(kind_of("glue 0.3 1.3 : 0 1 2\n") == std::make_pair(K::malformed, 1));
  CHECK(kind_of("tets 1\nflavour mild\n") == std::make_pair(K::malformed, 2));
  CHECK(kind_of("tets 1\npolicy sideways\n") == std::make_pair(K::malformed, 2));
}

TEST_CASE("serialization round trips") {
  for (const char* text : {planted::two_tet_text, double_text, solid_torus_text}) {
    GeneralisedTriangulation gt = parse_triangulation(text);
    std::string s = serialize(gt);
    CHECK(parse_triangulation(s) == gt);
    CHECK(serialize(parse_triangulation(s)) == s);
  }
  CHECK(serialize(parse_triangulation(planted::two_tet_text)) == planted::two_tet_text);
}

TEST_CASE("validation") {
  ValidationReport one = validate(parse_triangulation("tets 1\n"));
  CHECK(one.orientable);
  REQUIRE(one.boundary.size() == 1);
  CHECK(one.boundary[0].euler == 2);
  CHECK_FALSE(one.boundary_tori);
  CHECK(has(one, "boundary not torus"));

  ValidationReport cusp = validate(planted::two_tet());
  CHECK(cusp.ok());
  REQUIRE(cusp.boundary.size() == 1);
  CHECK(cusp.boundary[0].torus);
  CHECK(cusp.boundary[0].euler == 0);

  ValidationReport dbl = validate(parse_triangulation(double_text));
  CHECK(dbl.ok());
  CHECK(dbl.orientable);
  CHECK_FALSE(dbl.coherent);
  CHECK(dbl.boundary.empty());

  // faces 0 and 1 glued by the even permutation (01)(23)
  ValidationReport bad = validate(parse_triangulation("tets 1\nglue 0.0 0.1 : 0 3 2\n"));
  CHECK_FALSE(bad.orientable);
  CHECK(has(bad, "non-orientable"));

  // an unmarked torus cusp is not a manifold point
  std::string closed = planted::two_tet_text;
  closed = closed.substr(0, closed.find("policy")) + closed.substr(closed.find("glue"));
  closed = closed.substr(0, closed.find("ideal"));
  CHECK(has(validate(parse_triangulation(closed)), "not a sphere"));

  ValidationReport wrong = validate(parse_triangulation("tets 1\npolicy ideal\n"));
  CHECK_FALSE(wrong.policy_consistent);
}

TEST_CASE("coherent orientation makes every gluing odd") {
  for (const char* text : {planted::two_tet_text, double_text, solid_torus_text}) {
    GeneralisedTriangulation co = coherently_oriented(parse_triangulation(text));
    ValidationReport r = validate(co);
    CHECK(r.coherent);
    for (const FaceGluing& g : co.gluings) CHECK(perm_sign(g.perm()) < 0);
  }
}

TEST_CASE("dual handle counts") {
  auto counts = [](const GeneralisedTriangulation& gt) {
    HandleStructure hs = dual_handle_structure(gt);
    check_handle_structure(hs);
    return std::array<int, 4>{hs.counts[0], hs.counts[1], hs.counts[2], hs.counts[3]};
  };
  CHECK(counts(parse_triangulation("tets 1\n")) == std::array<int, 4>{1, 0, 0, 0});
  CHECK(counts(parse_triangulation("tets 2\nglue 0.3 1.3 : 0 2 1\n")) == std::array<int, 4>{2, 1, 0, 0});
  CHECK(counts(parse_triangulation(double_text)) == std::array<int, 4>{2, 4, 6, 4});

  for (const char* text : {planted::two_tet_text, double_text, solid_torus_text}) {
    GeneralisedTriangulation gt = parse_triangulation(text);
    OrbitOracle o = count_orbits(gt);
    HandleStructure hs = dual_handle_structure(gt);
    CHECK(hs.counts[0] == gt.tet_count);
    CHECK(hs.counts[1] == (int)gt.gluings.size());
    CHECK(hs.counts[2] == o.interior_edges);
    int ideal = gt.ideal_vertices.empty() ? 0 : 1;
    if (text == double_text) CHECK(hs.counts[3] == o.vertices);
    else CHECK(hs.counts[3] <= o.vertices - ideal);
    int nv = 0, ne = 0;
    for (auto& row : vertex_classes(gt))
      for (int x : row) nv = std::max(nv, x + 1);
    for (auto& row : edge_classes(gt))
      for (int x : row) ne = std::max(ne, x + 1);
    CHECK(nv == o.vertices);
    CHECK(ne == o.edges);
  }
  HandleStructure cusp = dual_handle_structure(planted::two_tet());
  CHECK(cusp.counts[2] == 2);
  CHECK(cusp.counts[3] == 0);
  std::size_t corners = 0;
  for (const auto& circuit : cusp.two_handles) corners += circuit.size();
  CHECK(corners == 12);
}

TEST_CASE("boundary surface") {
  BoundarySurfaceReport one = boundary_surface(dual_handle_structure(parse_triangulation("tets 1\n")));
  CHECK(one.component_euler == std::vector<int>{2});
  CHECK(one.euler == one.handle_euler);

  HandleStructure st = dual_handle_structure(parse_triangulation(solid_torus_text));
  CHECK(st.counts[1] == 1);
  CHECK(st.counts[2] == 0);
  BoundarySurfaceReport torus = boundary_surface(st);
  CHECK(torus.component_euler == std::vector<int>{0});
  CHECK(torus.handle_euler == 0);

  for (const char* text : {planted::two_tet_text, double_text}) {
    BoundarySurfaceReport r = boundary_surface(dual_handle_structure(parse_triangulation(text)));
    CHECK(r.euler == r.handle_euler);
  }
}
