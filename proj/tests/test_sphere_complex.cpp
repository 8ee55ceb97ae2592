#include <random>
#include <set>

#include "doctest.h"
#include "dehn/complexity.hpp"
#include "dehn/curves.hpp"
#include "dehn/sphere_complex.hpp"
#include "fixtures.hpp"

using namespace dehn;

TEST_CASE("tetrahedron pattern has the expected cells") {
  SphereComplex sc = tetrahedron_pattern();
  CHECK_NOTHROW(sc.validate());
  int nv = 0;
  sc.vertex_ids(&nv);
  CHECK(nv == 24);
  CHECK(sc.edge_count() == 36);
  CHECK(cells_of_kind(sc, CellKind::zero_handle).size() == 4);
  CHECK(cells_of_kind(sc, CellKind::one_handle).size() == 6);
  CHECK(cells_of_kind(sc, CellKind::region).size() == 4);
  for (int z : cells_of_kind(sc, CellKind::zero_handle)) {
    CHECK(valence(sc, z) == 3);
    CHECK(zero_handle_index(sc, z) == 1);
  }
}

TEST_CASE("f_components on the full pattern and simple layouts") {
  auto comps = f_components(tetrahedron_pattern());
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].zero_count == 4);
  CHECK(comps[0].one_count == 6);
  CHECK(comps[0].boundary_circles == 4);
  CHECK(comps[0].index() == 4);
  ComponentData cd = component_data(comps[0]);
  CHECK(cd.triple() == ComplexityTriple{7, 4, 4});

  CHECK(f_components(tetrahedron_pattern(0, 0)).empty());
  auto two = f_components(tetrahedron_pattern(0x3, 0));
  CHECK(two.size() == 2);
  for (auto& c : two) {
    CHECK(c.zero_count == 1);
    CHECK(c.one_count == 0);
    CHECK(c.boundary_circles == 1);
  }
}

TEST_CASE("subpatterns validate") {
  for (unsigned f = 0; f < 16; ++f)
    for (unsigned e = 0; e < 64; ++e) {
      SphereComplex sc = tetrahedron_pattern(f, e);
      CHECK_NOTHROW(sc.validate());
    }
  CHECK(cells_of_kind(tetrahedron_pattern(0xF, 0), CellKind::region).size() == 1);
}

TEST_CASE("canonical key is invariant under relabeling") {
  std::mt19937 rng(7);
  for (unsigned bits = 0; bits < 16; ++bits) {
    SphereComplex sc = fixtures::with_orientations(tetrahedron_pattern(), bits);
    std::string k = canonical_key(sc);
    for (int t = 0; t < 5; ++t) CHECK(canonical_key(fixtures::relabel_randomly(sc, rng)) == k);
  }
}

TEST_CASE("the sixteen orientation assignments have distinct keys") {
  std::set<std::string> keys;
  for (unsigned bits = 0; bits < 16; ++bits)
    keys.insert(canonical_key(fixtures::with_orientations(tetrahedron_pattern(), bits)));
  CHECK(keys.size() == 16);
}

TEST_CASE("canonical keys agree with brute-force isomorphism") {
  std::vector<SphereComplex> samples;
  for (unsigned bits = 0; bits < 16; bits += 5) samples.push_back(fixtures::with_orientations(tetrahedron_pattern(), bits));
  for (unsigned f : {1u, 3u, 7u})
    for (unsigned e : {0u, 1u, 9u}) samples.push_back(tetrahedron_pattern(f, e));
  for (std::size_t a = 0; a < samples.size(); ++a)
    for (std::size_t b = 0; b < samples.size(); ++b) {
      if (f_components(samples[a]).size() > 1 || f_components(samples[b]).size() > 1) continue;
      bool key_eq = canonical_key(samples[a]) == canonical_key(samples[b]);
      CHECK(key_eq == fixtures::isomorphic_up_to_reflection(samples[a], samples[b]));
    }
}

TEST_CASE("swapping region orientations gives a different key when not isomorphic") {
  SphereComplex a = fixtures::with_orientations(tetrahedron_pattern(), 0x1);
  SphereComplex b = fixtures::with_orientations(tetrahedron_pattern(), 0xE);
  CHECK(canonical_key(a) != canonical_key(b));
  CHECK(!fixtures::isomorphic_up_to_reflection(a, b));
}

TEST_CASE("tetrahedral symmetries of the labelled pattern give equal keys") {
  // relabel zero-handle labels by a vertex permutation; the symmetry of the
  // tetrahedron realising it is an isomorphism (a reflection for odd ones)
  int perm[4] = {0, 1, 2, 3};
  SphereComplex base = tetrahedron_pattern();
  std::string k = canonical_key(base);
  do {
    SphereComplex sc = base;
    for (auto& c : sc.cells)
      if (c.kind == CellKind::zero_handle) c.label = perm[c.label];
    for (int d = 0; d < sc.dart_count(); ++d)
      if (sc.tag[d] >= 0) {
        auto [i, j] = edge_vertices(sc.tag[d]);
        sc.tag[d] = edge_index(perm[i], perm[j]);
      }
    CHECK(canonical_key(sc) == k);
  } while (std::next_permutation(perm, perm + 4));
}

TEST_CASE("serialization round trips through the canonical form") {
  for (unsigned bits = 0; bits < 16; ++bits) {
    SphereComplex sc = canonical_form(fixtures::with_orientations(tetrahedron_pattern(), bits));
    std::string text = serialize(sc);
    SphereComplex back = parse_sphere_complex(text);
    CHECK(serialize(back) == text);
    CHECK(canonical_key(back) == canonical_key(sc));
  }
  CHECK_THROWS_AS(parse_sphere_complex("sphere 2 1\ncells R:in:-1:0\ndarts 0,0,-1 0,0,-1\n"), ComplexError);
}

TEST_CASE("validate rejects a broken Euler characteristic") {
  SphereComplex sc = tetrahedron_pattern();
  // reroute one cycle so the cell count changes without touching edges
  int d = 0, e = sc.next[sc.next[0]];
  int nd = sc.next[d], ne = sc.next[e];
  sc.link(d, ne);
  sc.link(e, nd);
  CHECK_THROWS_AS(sc.validate(), ComplexError);
}
