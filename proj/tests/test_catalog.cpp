#include <sstream>

#include "doctest.h"
#include "dehn/catalog.hpp"
#include "planted.hpp"

using namespace dehn;

namespace {

Catalog stage_catalog(int stages) {
  EngineCaps caps;
  caps.max_stages = stages;
  return build_catalog(run_engine(base_configs(tetrahedron_pattern()), caps), caps, "tetrahedron");
}

const Catalog& two_stages() {
  static const Catalog c = stage_catalog(2);
  return c;
}

std::string written(const Catalog& c) {
  std::ostringstream os;
  write_catalog(os, c);
  return os.str();
}

bool has_failure(const CatalogCheck& ck, const std::string& part) {
  for (auto& f : ck.failures)
    if (f.find(part) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("one stage gives the sixteen base configurations") {
  Catalog c = stage_catalog(1);
  CHECK(c.configs.size() == 16);
  for (std::size_t i = 1; i < c.configs.size(); ++i) CHECK(c.configs[i - 1].cfg.key < c.configs[i].cfg.key);
  for (auto& cc : c.configs) {
    CHECK(cc.parent == -1);
    CHECK(cc.skeleton.vertex_count == 1);
    CHECK(cc.skeleton.legs.size() == 4);
  }
}

TEST_CASE("graph extraction") {
  StageConfig empty = make_config({});
  auto g = extract_graph(empty, 0);
  REQUIRE(g.size() == 1);
  CHECK(graph_skeleton(empty).vertex_count == 0);
  for (auto& f : g[0].faces) CHECK(f.empty());

  StageConfig loop = make_config({planted::two_disc_ball(2, 3, "gg")});
  GraphSkeleton sk = graph_skeleton(loop);
  CHECK(sk.vertex_count == 1);
  CHECK(sk.legs.size() == 2);
  CHECK(sk.gamma_arcs.size() == 2);
  auto v = extract_graph(loop, 3);
  REQUIRE(v.size() == 4);
  for (std::uint64_t m = 0; m < 4; ++m) {
    CHECK(v[m].config == 3);
    CHECK(v[m].mask == m);
    CHECK(v[m].faces[0].empty());
    CHECK(v[m].faces[1].empty());
  }
  CHECK(v[0].faces[2] != v[3].faces[2]);

  StageConfig banded = make_config({planted::two_disc_ball(2, 0, "gbbg", {{1, 0}, {4, 5}})});
  sk = graph_skeleton(banded);
  CHECK(sk.tau_arcs.size() == 2);
  for (auto& t : sk.tau_arcs) CHECK(t.end_faces == std::array<int, 2>{0, 2});
}

TEST_CASE("catalog round trip and check") {
  const Catalog& c = two_stages();
  std::string text = written(c);
  std::istringstream is(text);
  Catalog back = read_catalog(is);
  CHECK(written(back) == text);
  CHECK(back.configs.size() == c.configs.size());
  CHECK(back.graphs.size() == c.graphs.size());
  CatalogCheck ck = check_catalog(back);
  CHECK(ck.ok());
  CHECK(ck.descent_checks > 0);
  for (std::size_t i = 0; i < c.configs.size(); ++i)
    if (c.configs[i].parent >= 0) CHECK(provenance(c, (int)i).rfind("base>", 0) == 0);
}

TEST_CASE("check detects tampering") {
  Catalog c = two_stages();
  SUBCASE("a transition that does not descend") {
    bool done = false;
    for (std::size_t i = 0; i < c.configs.size() && !done; ++i) {
      int p = c.configs[i].parent;
      if (p < 0) continue;
      for (std::size_t q = 0; q < c.configs.size() && !done; ++q) {
        if (c.configs[q].parent >= 0 || descends(c.configs[p].cfg.balls, c.configs[q].cfg.balls)) continue;
        // a sibling base configuration recorded as the child
        c.configs[i].cfg.balls = c.configs[q].cfg.balls;
        done = true;
      }
    }
    REQUIRE(done);
    CHECK(has_failure(check_catalog(c), "does not descend"));
  }
  SUBCASE("configs out of order") {
    std::swap(c.configs[0], c.configs[1]);
    CHECK_FALSE(check_catalog(c).ok());
  }
  SUBCASE("a corrupted signature") {
    c.graphs[0].faces[0] += "c";
    CHECK_FALSE(check_catalog(c).ok());
  }
  SUBCASE("a corrupted file") {
    std::string text = written(c);
    auto k = text.find("config 0 ");
    REQUIRE(k != std::string::npos);
    text[k + 9] = text[k + 9] == 'a' ? 'b' : 'a';
    std::istringstream is(text);
    CHECK_THROWS_AS(read_catalog(is), CatalogError);
  }
}
