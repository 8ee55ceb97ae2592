#pragma once

// Generate-and-filter reference for the decomposing step: every closed walk
// through the dual graph up to a crossing bound, kept when some drawing of it
// passes the position and condition checks. Shares only the predicates with
// the engine, not its curve generator or system builder.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "dehn/engine.hpp"
#include "dehn/predicates.hpp"

namespace dehn::detail {
SphereComplex prepared(const SphereComplex& ball);
}

namespace op6_oracle {

using namespace dehn;

// rotation and reversal invariant key of an oriented curve
inline std::vector<int> oriented_key(const Curve& c) {
  std::vector<int> best;
  auto consider = [&](std::vector<int> seq, bool left) {
    int k = (int)seq.size();
    for (int r = 0; r < k; ++r) {
      std::vector<int> v(seq.begin() + r, seq.end());
      v.insert(v.end(), seq.begin(), seq.begin() + r);
      v.push_back(left ? 1 : 0);
      if (best.empty() || v < best) best = v;
    }
  };
  consider(c.crossings, c.normal_left);
  std::vector<int> rev;
  for (auto it = c.crossings.rbegin(); it != c.crossings.rend(); ++it) rev.push_back(*it ^ 1);
  consider(rev, !c.normal_left);
  return best;
}

inline bool repeats_edge(const Curve& c) {
  std::set<int> e;
  for (int d : c.crossings)
    if (!e.insert(d >> 1).second) return true;
  return false;
}

// a walk crossing an edge and straight back is isotopic to a shorter one
inline bool reduced(const std::vector<int>& walk) {
  for (std::size_t j = 0; j < walk.size(); ++j)
    if (walk[(j + 1) % walk.size()] == (walk[j] ^ 1)) return false;
  return true;
}

// every reduced closed walk of 2..max_crossings crossings, one per rotation class
inline std::vector<std::vector<int>> closed_walks(const SphereComplex& sc, int max_crossings) {
  int n = sc.dart_count();
  std::vector<std::vector<int>> darts_of(sc.cells.size());
  for (int d = 0; d < n; ++d) darts_of[sc.cell[d]].push_back(d);
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  auto rotation_min = [](const std::vector<int>& p) {
    std::vector<int> best = p;
    for (std::size_t r = 1; r < p.size(); ++r) {
      std::vector<int> v(p.begin() + r, p.end());
      v.insert(v.end(), p.begin(), p.begin() + r);
      best = std::min(best, v);
    }
    return best;
  };
  auto grow = [&](auto&& self) -> void {
    int here = sc.cell[path.back() ^ 1];
    if (path.size() >= 2 && here == sc.cell[path.front()]) {
      auto key = rotation_min(path);
      if (reduced(key) && seen.insert(key).second) out.push_back(key);
    }
    if ((int)path.size() >= max_crossings) return;
    for (int d : darts_of[here]) {
      if (sc.cell[d ^ 1] == here || d == (path.back() ^ 1)) continue;
      path.push_back(d);
      self(self);
      path.pop_back();
    }
  };
  for (int s = 0; s < n; ++s) {
    if (sc.cell[s] == sc.cell[s ^ 1]) continue;
    path = {s};
    grow(grow);
  }
  return out;
}

inline bool passes(const SphereComplex& sc, const CurveSystem& cs) {
  return check_standard_position(cs, sc).empty() && check_conditions(cs, sc).all();
}

struct Single {
  Curve curve;
  std::vector<CurveSystem> drawings;  // those in standard position satisfying every condition
};

// oriented curves with some good drawing
inline std::vector<Single> single_curves(const SphereComplex& sc, int max_crossings) {
  std::vector<Single> out;
  std::set<std::vector<int>> keys;
  for (const auto& walk : closed_walks(sc, max_crossings))
    for (bool left : {true, false}) {
      Curve c;
      c.crossings = walk;
      c.normal_left = left;
      if (!keys.insert(oriented_key(c)).second) continue;
      Single s{c, {}};
      if (!repeats_edge(c)) {
        CurveSystem cs{{c}, {}};
        if (realizable(sc, cs) && passes(sc, cs)) s.drawings.push_back(cs);
      } else {
        for (const CurveSystem& cs : realizations(sc, {c}))
          if (passes(sc, cs)) s.drawings.push_back(cs);
      }
      if (!s.drawings.empty()) out.push_back(std::move(s));
    }
  return out;
}

struct Result {
  std::set<std::string> child_keys;
  std::size_t single_curves = 0;
  std::size_t systems = 0;
  std::set<std::vector<int>> curve_keys;
};

inline Result decompose(const StageConfig& cfg, int max_crossings) {
  Result res;
  if (!op6_applicable(cfg)) return res;
  for (int b = 0; b < (int)cfg.balls.size(); ++b) {
    SphereComplex sc = detail::prepared(cfg.balls[b]);
    std::vector<Single> singles = single_curves(sc, max_crossings);
    std::vector<Curve> curves;
    for (auto& s : singles) curves.push_back(s.curve);
    res.single_curves += curves.size();
    for (auto& c : curves) res.curve_keys.insert(oriented_key(c));
    std::vector<char> trivial;
    for (auto& c : curves) trivial.push_back(!repeats_edge(c) && is_trivial_pushoff(sc, c));
    auto add = [&](const CurveSystem& cs) {
      ++res.systems;
      for (auto& pieces : reorientations(split_along(sc, cs))) {
        std::vector<SphereComplex> balls;
        for (int i = 0; i < (int)cfg.balls.size(); ++i)
          if (i != b) balls.push_back(cfg.balls[i]);
        balls.insert(balls.end(), pieces.begin(), pieces.end());
        res.child_keys.insert(make_config(std::move(balls), cfg.stage + 1).key);
      }
    };
    for (std::size_t i = 0; i < curves.size(); ++i) {
      if (trivial[i]) continue;
      for (const CurveSystem& cs : singles[i].drawings) add(cs);
    }
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = i + 1; j < curves.size(); ++j) {
        if (trivial[i] && trivial[j]) continue;
        for (const CurveSystem& cs : realizations(sc, {curves[i], curves[j]}))
          if (check_conditions(cs, sc).condition[1].satisfied) add(cs);
      }
  }
  return res;
}

// the engine's children, for comparison
inline std::set<std::string> engine_children(const StageConfig& cfg, int max_crossings, Op6Stats* st = nullptr) {
  EngineCaps caps;
  caps.max_curve_crossings = max_crossings;
  caps.max_children_per_node = 1 << 30;
  std::set<std::string> out;
  for (auto& t : op6_decompose(cfg, caps, st)) out.insert(t.child.key);
  return out;
}

}  // namespace op6_oracle
