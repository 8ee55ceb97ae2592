#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dehn/sphere_complex.hpp"

namespace dehn {

// A closed curve on the sphere, transverse to the graph. crossings[j] is the
// dart crossed at step j, the curve travelling from cell[d] into cell[d^1].
// With normal_left the co-orientation points to the left of the direction of
// travel. A curve without crossings sits in inside_cell and bounds an empty
// disc on its left.
struct Curve {
  std::vector<int> crossings;
  bool normal_left = true;
  int inside_cell = -1;
  std::optional<bool> extras_left;  // side receiving other boundary cycles of a cell it splits

  bool operator==(const Curve&) const = default;
};

using Strand = std::pair<int, int>;  // (curve, step)

struct CurveSystem {
  std::vector<Curve> curves;
  // order of strands along the even dart of an edge, from its origin to its head;
  // needed only for edges crossed more than once
  std::map<int, std::vector<Strand>> orders;
};

class UnrealizableSplit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Overlay {
  SphereComplex map;
  std::vector<int> orig_cell;       // per map cell
  std::vector<int> parent_edge;     // per map dart: original edge, -1 for chord darts
  std::vector<int> chord_curve;     // per map dart: curve index of a chord, else -1
  std::vector<int> chord_step;      // passage from crossing step to step + 1
  std::vector<char> chord_forward;  // dart runs along the curve direction (curve's left side is its cell)
  std::vector<std::vector<int>> from_in;  // per crossing point: dart ending there on the departure side
  std::vector<std::vector<int>> to_in;    // same, on the arrival side
  int original_darts = 0;
};

Overlay build_overlay(const SphereComplex& sc, const CurveSystem& cs);
bool realizable(const SphereComplex& sc, const CurveSystem& cs);
// every choice of strand orders on multiply-crossed edges that embeds
std::vector<CurveSystem> realizations(const SphereComplex& sc, const std::vector<Curve>& curves,
                                      std::size_t limit = 64);

// cap darts carry mark_cap, plus a bit naming the curve for the first seven
inline std::uint8_t curve_mark(std::size_t i) { return mark_cap | (i < 7 ? static_cast<std::uint8_t>(2u << i) : 0); }

// cut along every curve, cap each side, return the resulting spheres (normalized)
std::vector<SphereComplex> split_along(const SphereComplex& sc, const CurveSystem& cs);

enum class PositionViolation { inside_zero_handle, not_vertical, three_handle, not_closed };
const char* to_string(PositionViolation v);

struct PositionIssue {
  PositionViolation kind;
  int curve;
  int dart;
};

std::vector<PositionIssue> check_standard_position(const CurveSystem& cs, const SphereComplex& sc);

struct TubingArc {
  int edge;          // original corner edge
  Strand lower, upper;  // strands at the ends, ordered along the even dart
};

std::vector<TubingArc> find_tubing_arcs(const CurveSystem& cs, const SphereComplex& sc);
std::vector<TubingArc> find_tubing_arcs(const Overlay& ov, const CurveSystem& cs, const SphereComplex& sc);

struct ConditionStatus {
  bool satisfied = true;
  int witness = -1;       // smallest offending dart or cell
  std::string detail;
};

struct ConditionReport {
  ConditionStatus condition[5];  // Conditions 1..5 at indices 0..4
  bool all() const {
    for (auto& c : condition)
      if (!c.satisfied) return false;
    return true;
  }
};

ConditionReport check_conditions(const CurveSystem& cs, const SphereComplex& sc);

// Unoriented closed curves crossing at most max_crossings edges and obeying
// the per-curve constraints that do not depend on co-orientation (standard
// position, each band and each region visited at most once, planar in every
// zero-handle). Each underlying curve appears once, with normal_left = true.
std::vector<Curve> enumerate_curves(const SphereComplex& sc, int max_crossings);

Curve reversed(const Curve& c);
// rotation/reversal invariant description of the underlying curve
std::vector<int> curve_signature(const Curve& c);

}  // namespace dehn
