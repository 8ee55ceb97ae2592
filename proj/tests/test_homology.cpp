#include <random>

#include "doctest.h"
#include "dehn/homology.hpp"

using namespace dehn;

namespace {

IntMatrix random_matrix(std::mt19937& rng, int r, int c, int range) {
  IntMatrix m(r, c);
  std::uniform_int_distribution<int> d(-range, range);
  for (auto& x : m.entries) x = (rng() % 3 == 0) ? 0 : d(rng);
  return m;
}

// solid torus: one loop in the graph, the surface is a square torus with
// meridian m off the graph and longitude l running along graph edge 0
MPrime solid_torus() {
  MPrime m;
  m.graph = GraphData{1, {{0, 0}}};
  m.surface.vertex_count = 1;
  m.surface.edges = {{0, 0}, {0, 0}};
  m.surface.graph_edge = {-1, 0};
  m.surface.faces = {{{0, 1}, {1, 1}, {0, -1}, {1, -1}}};
  return m;
}

// the same torus cut into two squares, its longitude running twice along the loop
MPrime doubled_longitude() {
  MPrime m;
  m.graph = GraphData{1, {{0, 0}}};
  m.surface.vertex_count = 2;
  m.surface.edges = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  m.surface.graph_edge = {-1, -1, 0, 0};
  m.surface.faces = {{{0, 1}, {2, 1}, {1, -1}, {2, -1}}, {{1, 1}, {3, 1}, {0, -1}, {3, -1}}};
  return m;
}

}  // namespace

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    int r = rng() % 6, c = rng() % 6;
    IntMatrix a = random_matrix(rng, r, c, 1 + trial % 9);
    SNFResult s = smith_normal_form(a);
    std::string why;
    INFO(a.str());
    REQUIRE_MESSAGE(verify_snf(a, s, &why), why);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    if (r == c) {
      mpz_class prod = 1;
      for (auto& d : s.diagonal()) prod *= d;
      CHECK(prod == abs(determinant(a)));
    }
  }
}

TEST_CASE("smith normal form of known matrices") {
  IntMatrix a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 4;
  a(1, 0) = 6;
  a(1, 1) = 8;
  auto s = smith_normal_form(a);
  CHECK(s.diagonal() == std::vector<mpz_class>{2, 4});
  IntMatrix b(1, 3);
  b(0, 0) = 6;
  b(0, 1) = 10;
  b(0, 2) = 15;
  CHECK(smith_normal_form(b).diagonal() == std::vector<mpz_class>{1});
  CHECK(smith_normal_form(IntMatrix(0, 3)).rank == 0);
}

TEST_CASE("determinant") {
  IntMatrix a(3, 3);
  int v[9] = {2, -1, 0, 1, 3, 4, 0, 5, -2};
  for (int i = 0; i < 9; ++i) a.entries[i] = v[i];
  CHECK(determinant(a) == -54);
}

TEST_CASE("first homology from a graph and relators") {
  GraphData rose{1, {{0, 0}, {0, 0}}};
  CHECK(h1_group(h1_presentation(rose, {})).str() == "Z^2");
  CHECK(h1_group(h1_presentation(rose, {{{0, 1}, {0, 1}}})).str() == "Z + Z/2");
  CHECK(h1_group(h1_presentation(rose, {{{0, 1}, {1, 1}}, {{0, 1}, {1, -1}}})).str() == "Z/2");
  CHECK(h1_group(h1_presentation(rose, {{{0, 1}}, {{1, -1}}})).trivial());

  GraphData theta{2, {{0, 1}, {0, 1}, {0, 1}}};
  CHECK(h1_group(h1_presentation(theta, {})).free_rank == 2);
  CHECK(h1_group(h1_presentation(theta, {{{0, 1}, {1, -1}}})).infinite_cyclic());
  CHECK_THROWS_AS(h1_presentation(theta, {{{0, 1}}}), OpenWalk);
  CHECK_THROWS_AS(h1_presentation(theta, {{{7, 1}}}), OpenWalk);
  // a chain need not be a single walk
  CHECK_NOTHROW(h1_presentation(theta, {{{0, 1}, {1, -1}, {2, 1}, {0, -1}}}));

  GraphData tree{3, {{0, 1}, {1, 2}}};
  CHECK(h1_group(h1_presentation(tree, {})).trivial());
}

TEST_CASE("fundamental cycles close up") {
  GraphData g{4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 3}, {1, 3}}};
  CycleBasis cb(g);
  CHECK(cb.rank == 3);
  for (int j = 0; j < cb.rank; ++j) {
    auto z = cb.fundamental_cycle(g, j);
    std::vector<SignedEdge> w;
    for (int e = 0; e < (int)z.size(); ++e)
      for (int k = 0; k < abs(z[e]); ++k) w.push_back({e, sgn(z[e])});
    CHECK(closed_word(g, w));
    auto c = cb.coordinates(w);
    for (int i = 0; i < cb.rank; ++i) CHECK(c[i] == (i == j ? 1 : 0));
  }
}

TEST_CASE("boundary basis of a solid torus") {
  MPrime m = solid_torus();
  BoundaryBasis b = boundary_basis(m);
  CHECK(verify_basis(m, b));
  // the meridian is edge 0 up to sign
  auto mu = b.in_basis({1, 0});
  CHECK(abs(mu[1]) == 1);
  CHECK(mu[0] == 0);
  auto l = b.in_basis({0, 1});
  CHECK(abs(l[0]) == 1);
  b.reduce_against({1, 5});
  CHECK(verify_basis(m, b));
}

TEST_CASE("slopes and distances") {
  TorusSlope s(2, -4, "x"), t(-1, 2, "x");
  CHECK(s == t);
  CHECK(s.str() == "(1,-2)");
  CHECK(slope_distance(TorusSlope(1, 0, "x"), TorusSlope(3, 7, "x")) == 7);
  CHECK(slope_distance(TorusSlope(0, 1, "x"), TorusSlope(3, 7, "x")) == 3);
  CHECK_THROWS_AS(slope_distance(TorusSlope(1, 0, "x"), TorusSlope(1, 0, "y")), BasisMismatch);
  CHECK_THROWS_AS(TorusSlope(0, 0, "x"), std::invalid_argument);
}

TEST_CASE("boundary basis failures") {
  MPrime lens = solid_torus();
  lens.tau_words = {{{0, 1}, {0, 1}}};
  CHECK_THROWS_AS(boundary_basis(lens), NotInfiniteCyclic);

  MPrime sphere;
  sphere.graph = GraphData{1, {{0, 0}}};
  sphere.surface.vertex_count = 1;
  sphere.surface.edges = {{0, 0}};
  sphere.surface.graph_edge = {-1};
  sphere.surface.faces = {{{0, 1}}, {{0, -1}}};
  CHECK_THROWS_AS(boundary_basis(sphere), NotTorus);

  MPrime two = solid_torus();
  two.surface.vertex_count = 2;
  two.surface.edges = {{0, 0}, {0, 0}, {1, 1}, {1, 1}};
  two.surface.graph_edge = {-1, 0, -1, 0};
  two.surface.faces = {{{0, 1}, {1, 1}, {0, -1}, {1, -1}}, {{2, 1}, {3, 1}, {2, -1}, {3, -1}}};
  CHECK_THROWS_AS(boundary_basis(two), NotTorus);

  CHECK_THROWS_AS(boundary_basis(doubled_longitude()), NotPrimitive);
}

TEST_CASE("homology is independent of edge order") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + rng() % 4, e = rng() % 7;
    GraphData g{n, {}};
    for (int i = 0; i < e; ++i) g.edges.push_back({(int)(rng() % n), (int)(rng() % n)});
    std::vector<std::vector<SignedEdge>> taus;
    for (int k = 0; k < e; ++k) {
      CycleBasis cb(g);
      if (cb.rank == 0) break;
      auto z = cb.fundamental_cycle(g, rng() % cb.rank);
      std::vector<SignedEdge> w;
      for (int i = 0; i < e; ++i)
        for (int c = 0; c < abs(z[i]); ++c) w.push_back({i, sgn(z[i])});
      if (k % 2) w.insert(w.end(), w.begin(), w.end());
      taus.push_back(w);
      if (rng() % 2) break;
    }
    H1Group h = h1_group(h1_presentation(g, taus));
    std::vector<int> perm(e);
    for (int i = 0; i < e; ++i) perm[i] = e - 1 - i;
    GraphData g2{n, std::vector<std::array<int, 2>>(e)};
    for (int i = 0; i < e; ++i) g2.edges[perm[i]] = g.edges[i];
    auto t2 = taus;
    for (auto& w : t2)
      for (auto& [x, s] : w) x = perm[x];
    CHECK(h1_group(h1_presentation(g2, t2)).str() == h.str());
  }
}
