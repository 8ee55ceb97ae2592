#include <sstream>

#include "doctest.h"
#include "dehn/assemble.hpp"
#include "planted.hpp"

using namespace dehn;

namespace {

// every assignment of tiles whose faces agree across every gluing, evaluated one by one
std::vector<Candidate> brute_force(const GeneralisedTriangulation& gt, const Catalog& cat, std::map<std::string, int>* rejected) {
  GeneralisedTriangulation co = coherently_oriented(gt);
  auto tiles = catalog_tiles(cat);
  std::vector<Candidate> out;
  std::vector<int> idx(co.tet_count, 0);
  std::size_t total = 1;
  for (int t = 0; t < co.tet_count; ++t) total *= tiles.size();
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t r = n;
    std::vector<TileRef> refs(co.tet_count);
    for (int t = co.tet_count - 1; t >= 0; --t) {
      refs[t] = tiles[r % tiles.size()].ref;
      idx[t] = (int)(r % tiles.size());
      r /= tiles.size();
    }
    bool ok = true;
    for (int t = 0; t < co.tet_count && ok; ++t)
      for (int f = 0; f < 4 && ok; ++f) {
        FaceGluing tmp;
        if (!co.gluing_at(t, f, &tmp) && !tiles[idx[t]].faces[f].empty()) ok = false;
      }
    for (const FaceGluing& gl : co.gluings) {
      if (!ok) break;
      FaceSignature a = parse_signature(gl.face_a, tiles[idx[gl.tet_a]].faces[gl.face_a]);
      FaceSignature b = parse_signature(gl.face_b, tiles[idx[gl.tet_b]].faces[gl.face_b]);
      ok = compatible(a, b, gl);
    }
    if (!ok) continue;
    Evaluation ev = evaluate_assignment(co, cat, refs);
    if (ev.candidate) out.push_back(*ev.candidate);
    else if (rejected) ++(*rejected)[to_string(ev.rejection)];
  }
  return out;
}

std::vector<std::vector<TileRef>> assignments(const std::vector<Candidate>& cs) {
  std::vector<std::vector<TileRef>> out;
  for (auto& c : cs) out.push_back(c.assignment);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("signature transport") {
  VertexPerm id{{0, 1, 2, 3}};
  // a gluing reverses the reading direction
  CHECK(transport_signature("0ccc5c", id) == "0c5ccc");
  CHECK(transport_signature("", id).empty());
  CHECK(parse_signature(1, "c0cc5c,gc").str() == "0cc5cc,cg");
  CHECK_THROWS(parse_signature(0, "0q"));

  FaceGluing gl;
  gl.tet_a = 0;
  gl.face_a = 2;
  gl.tet_b = 1;
  gl.face_b = 2;
  gl.vertex_map = {1, 0, 3};
  FaceSignature e2{2, {}};
  CHECK(compatible(e2, e2, gl));
  FaceSignature e3{3, {}};
  CHECK_FALSE(compatible(e3, e2, gl));
  std::string carried = transport_signature("0ccc5c,gc", gl.perm());
  CHECK(compatible(parse_signature(2, "0ccc5c,gc"), parse_signature(2, carried), gl));
  // read back through the inverse gluing
  CHECK(transport_signature(carried, inverse(gl.perm())) == parse_signature(2, "0ccc5c,gc").str());
}

TEST_CASE("compatibility is symmetric on every face of the planted catalog") {
  planted::Fixture f = planted::loop_fixture();
  GeneralisedTriangulation co = coherently_oriented(f.gt);
  auto tiles = catalog_tiles(f.catalog);
  for (const FaceGluing& gl : co.gluings) {
    FaceGluing back;
    REQUIRE(co.gluing_at(gl.tet_b, gl.face_b, &back));
    for (auto& x : tiles)
      for (auto& y : tiles) {
        FaceSignature a = parse_signature(gl.face_a, x.faces[gl.face_a]);
        FaceSignature b = parse_signature(gl.face_b, y.faces[gl.face_b]);
        CHECK(compatible(a, b, gl) == compatible(b, a, back));
      }
  }
}

TEST_CASE("mirrored tiles read their disc words backwards") {
  StageConfig a = make_config({planted::two_disc_ball(2, 0, "gbbg", {{1, 0}, {4, 5}})});
  Catalog c = catalog_from_configs({a}, "one ball");
  auto tiles = catalog_tiles(c);
  REQUIRE(tiles.size() == 2 * c.graphs.size());
  StageConfig m = a;
  for (auto& b : m.balls) b = mirror(b);
  for (std::size_t i = 0; i < tiles.size(); i += 2) {
    CHECK_FALSE(tiles[i].ref.mirrored);
    CHECK(tiles[i + 1].ref.mirrored);
    const CatalogGraph& g = c.graphs[tiles[i].ref.graph];
    const CatalogConfig& cc = c.configs[g.config];
    CHECK(face_signatures(m, keep_mask(cc.cfg, cc.skeleton, g.mask)) == tiles[i + 1].faces);
    for (int f = 0; f < 4; ++f) {
      std::string w = tiles[i].faces[f];
      std::reverse(w.begin(), w.end());
      CHECK(parse_signature(f, w).str() == tiles[i + 1].faces[f]);
    }
  }
  Catalog achiral = catalog_from_configs({make_config({planted::two_disc_ball(2, 3, "gg")})}, "one ball");
  CHECK(catalog_tiles(achiral).size() == achiral.graphs.size());
}

TEST_CASE("the planted loop gives exactly one candidate") {
  planted::Fixture f = planted::loop_fixture();
  SearchResult r = search(f.gt, f.catalog, SearchCaps{});
  REQUIRE(r.candidates.size() == 1);
  const Candidate& c = r.candidates[0];
  std::vector<TileRef> want;
  for (int g : f.expected) want.push_back({g, false});
  CHECK(c.assignment == want);
  CHECK(c.h1.str() == "Z");
  CHECK(c.gamma_components - c.stripped_components == 1);
  CHECK(c.delta_mu_sigma == 1);
  CHECK(c.delta_lambda_sigma == 0);
  CHECK(c.flags.size() == 4);

  std::map<std::string, int> rejected;
  auto oracle = brute_force(f.gt, f.catalog, &rejected);
  CHECK(assignments(oracle) == assignments(r.candidates));
  for (auto& [k, v] : rejected) CHECK(r.stats.rejected[k] == (std::size_t)v);
  CHECK(r.stats.rejected["gamma_empty"] > 0);
  CHECK(r.stats.rejected["gamma_disconnected"] > 0);

  CertificationReport rep = certify_candidate(c);
  CHECK(rep.consistent);
  CHECK(rep.summary() == "internally consistent; external checks pending");
  REQUIRE(rep.notes.size() == 1);
  CHECK(rep.notes[0].find("regime") != std::string::npos);
}

TEST_CASE("band tiles meet the search oracle") {
  planted::Fixture f = planted::banded_fixture();
  SearchResult r = search(f.gt, f.catalog, SearchCaps{});
  std::map<std::string, int> rejected;
  auto oracle = brute_force(f.gt, f.catalog, &rejected);
  CHECK(assignments(oracle) == assignments(r.candidates));
  for (auto& [k, v] : rejected) CHECK(r.stats.rejected[k] == (std::size_t)v);
  CHECK(r.stats.rejected["h1"] > 0);
}

TEST_CASE("certification catches tampered arithmetic") {
  planted::Fixture f = planted::loop_fixture();
  SearchResult r = search(f.gt, f.catalog, SearchCaps{});
  REQUIRE(r.candidates.size() == 1);
  Candidate c = r.candidates[0];
  c.delta_mu_sigma += 1;
  CertificationReport rep = certify_candidate(c);
  CHECK_FALSE(rep.consistent);
  CHECK(rep.issues[0].rfind("SlopeArithmeticMismatch", 0) == 0);

  std::ostringstream os;
  write_candidates(os, coherently_oriented(f.gt), r);
  std::string text = os.str();
  std::istringstream ok(text);
  CHECK(check_candidate_report(ok).empty());
  auto k = text.find("delta_mu_sigma 1");
  REQUIRE(k != std::string::npos);
  text.replace(k, 16, "delta_mu_sigma 7");
  std::istringstream bad(text);
  auto issues = check_candidate_report(bad);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].find("SlopeArithmeticMismatch") != std::string::npos);
}

TEST_CASE("search edge cases") {
  planted::Fixture f = planted::loop_fixture();
  Catalog only_empty = catalog_from_configs({make_config({})}, "empty");
  SearchResult r = search(f.gt, only_empty, SearchCaps{});
  CHECK(r.candidates.empty());
  CHECK(r.stats.rejected["gamma_empty"] == 1);

  SearchCaps tiny;
  tiny.max_assignments = 1;
  r = search(f.gt, f.catalog, tiny);
  CHECK(r.stats.capped);
  CHECK(r.stats.assignments <= 1);

  SearchResult one = search(f.gt, f.catalog, SearchCaps{}, 1);
  SearchResult four = search(f.gt, f.catalog, SearchCaps{}, 4);
  std::ostringstream a, b;
  write_candidates(a, f.gt, one);
  write_candidates(b, f.gt, four);
  CHECK(a.str() == b.str());
}
