#include "doctest.h"
#include "dehn/complexity.hpp"
#include "dehn/curves.hpp"
#include "dehn/predicates.hpp"
#include "fixtures.hpp"
#include "planted.hpp"

using namespace dehn;

namespace {

SphereComplex base(unsigned bits = 0x5) { return fixtures::with_orientations(tetrahedron_pattern(), bits); }

// through disc 0, band 03 and disc 3
Curve short_curve(bool left = true) {
  Curve c;
  c.crossings = {1, 2, 43, 44};
  c.normal_left = left;
  return c;
}

long total_index(const std::vector<SphereComplex>& balls) {
  long s = 0;
  for (auto& b : balls)
    for (auto& f : f_components(b)) s += f.index();
  return s;
}

bool has_kind(const std::vector<PositionIssue>& v, PositionViolation k) {
  for (auto& p : v)
    if (p.kind == k) return true;
  return false;
}

}  // namespace

TEST_CASE("standard position") {
  SphereComplex sc = base();
  CHECK(check_standard_position(CurveSystem{}, sc).empty());
  CHECK(check_standard_position(CurveSystem{{short_curve()}, {}}, sc).empty());

  Curve inside;
  inside.inside_cell = 0;
  CHECK(has_kind(check_standard_position(CurveSystem{{inside}, {}}, sc), PositionViolation::inside_zero_handle));

  // into band 03 from disc 0 and straight back out to disc 0
  Curve bent;
  bent.crossings = {1, 2, 3, 0};
  auto rs = realizations(sc, {bent});
  REQUIRE_FALSE(rs.empty());
  CHECK(has_kind(check_standard_position(rs[0], sc), PositionViolation::not_vertical));

  for (const Curve& c : enumerate_curves(sc, 8)) CHECK(check_standard_position(CurveSystem{{c}, {}}, sc).empty());
}

TEST_CASE("conditions") {
  SphereComplex sc = base();
  ConditionReport empty = check_conditions(CurveSystem{}, sc);
  CHECK(empty.all());

  // twice through band 03
  Curve twice;
  twice.crossings = {1, 2, 43, 42, 3, 0};
  auto rs = realizations(sc, {twice});
  REQUIRE_FALSE(rs.empty());
  ConditionReport r = check_conditions(rs[0], sc);
  CHECK_FALSE(r.condition[0].satisfied);
  CHECK(r.condition[0].witness == 7);

  std::size_t good = 0;
  for (const Curve& c : enumerate_curves(sc, 8))
    for (bool left : {true, false}) {
      Curve k = c;
      k.normal_left = left;
      CurveSystem cs{{k}, {}};
      ConditionReport cr = check_conditions(cs, sc);
      CHECK(cr.condition[0].satisfied);
      CHECK(cr.condition[3].satisfied);
      if (cr.all()) ++good;
    }
  CHECK(good > 0);
}

TEST_CASE("conditions 1, 2 and 4 survive deleting a curve") {
  SphereComplex sc = base();
  auto curves = enumerate_curves(sc, 6);
  int pairs = 0;
  for (std::size_t i = 0; i < curves.size() && pairs < 400; ++i)
    for (std::size_t j = i; j < curves.size() && pairs < 400; j += 7)
      for (bool left : {true, false}) {
        Curve b = curves[j];
        b.normal_left = left;
        for (const CurveSystem& cs : realizations(sc, {curves[i], b}, 4)) {
          ++pairs;
          ConditionReport both = check_conditions(cs, sc);
          for (int drop = 0; drop < 2; ++drop) {
            CurveSystem one{{cs.curves[1 - drop]}, {}};
            if (!realizable(sc, one)) continue;
            ConditionReport single = check_conditions(one, sc);
            for (int k : {0, 1, 3})
              if (both.condition[k].satisfied) CHECK(single.condition[k].satisfied);
          }
        }
      }
  CHECK(pairs > 50);
}

TEST_CASE("tubing arcs") {
  SphereComplex sc = base();
  CHECK(find_tubing_arcs(CurveSystem{}, sc).empty());
  CHECK(find_tubing_arcs(CurveSystem{{short_curve()}, {}}, sc).empty());
  // parallel copies whose normals face each other across the corridor
  std::size_t facing = 0;
  for (auto& cs : realizations(sc, {short_curve(true), short_curve(false)})) facing += find_tubing_arcs(cs, sc).size();
  CHECK(facing > 0);
  // parallel copies with the same normal
  for (auto& cs : realizations(sc, {short_curve(true), short_curve(true)})) CHECK(find_tubing_arcs(cs, sc).empty());
}

TEST_CASE("splitting conserves index") {
  for (unsigned bits : {0u, 5u, 9u}) {
    SphereComplex sc = base(bits);
    CHECK(split_along(sc, CurveSystem{}).size() == 1);
    long before = total_index({sc});
    int splits = 0;
    for (const Curve& c : enumerate_curves(sc, 8))
      for (bool left : {true, false}) {
        Curve k = c;
        k.normal_left = left;
        CurveSystem cs{{k}, {}};
        if (!check_conditions(cs, sc).all()) continue;
        auto pieces = split_along(sc, cs);
        CHECK(pieces.size() == 2);
        for (auto& p : pieces) CHECK_NOTHROW(p.validate());
        CHECK(total_index(pieces) == before);
        CHECK(respects(pieces, sc));
        ++splits;
      }
    CHECK(splits > 0);
  }
}

TEST_CASE("a curve in a boundary region only separates") {
  SphereComplex sc = base();
  Curve loop;
  loop.inside_cell = 10;
  auto pieces = split_along(sc, CurveSystem{{loop}, {}});
  REQUIRE(pieces.size() == 2);
  int with_f = 0;
  for (auto& p : pieces)
    if (!f_components(p).empty()) ++with_f;
  CHECK(with_f == 1);
  CHECK(total_index(pieces) == total_index({sc}));
}

TEST_CASE("respects and trivial modifications") {
  SphereComplex sc = base();
  reset_origins(sc);
  CHECK(respects({sc}, sc));
  CHECK(is_trivial_modification(sc, {sc}));

  SphereComplex moved = sc;
  for (auto& c : moved.cells)
    if (c.kind == CellKind::one_handle) {
      c.origins = {0};
      break;
    }
  CHECK_FALSE(respects({moved}, sc));

  REQUIRE_FALSE(positive_components(sc).empty());
  SphereComplex bare = tetrahedron_pattern(0, 0);
  reset_origins(bare);
  CHECK_FALSE(is_trivial_modification(sc, {bare}));

  // one disc of F made of two zero-handles and a band, two sutures from one zero-handle to the other
  SphereComplex disc = planted::two_disc_ball(0, 1, "gbg");
  reset_origins(disc);
  auto comps = f_components(disc);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].euler() == 1);
  CHECK(comps[0].gamma_hits == 4);
  CHECK(comps[0].index() == 2);
  CHECK(suture_arc_count(disc) == 2);
  CHECK(is_final_branch(disc, {disc}));
  CHECK(is_trivial_modification(disc, {disc}));
  CHECK_FALSE(is_final_branch(sc, {sc}));
}

TEST_CASE("important zero-handles") {
  SphereComplex sc = base();
  SphereComplex bare = tetrahedron_pattern(0, 0);
  CHECK(important_zero_handles({bare, sc, bare}) == std::vector<int>{1});
  CHECK(important_zero_handles({}).empty());
}
