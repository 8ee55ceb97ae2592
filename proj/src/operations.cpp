#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "dehn/engine.hpp"
#include "dehn/predicates.hpp"

namespace dehn {

void EngineCaps::validate() const {
  if (max_stages < 1 || max_curve_crossings < 1 || max_children_per_node < 1 || max_catalog_size < 1 ||
      max_system_curves < 1)
    throw std::invalid_argument("engine caps must be positive");
}

namespace {

void put_varint(std::string& out, std::size_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

bool is_blank(const SphereComplex& sc) {
  for (const Cell& c : sc.cells)
    if (c.is_f()) return false;
  for (int d = 0; d < sc.dart_count(); ++d)
    if (sc.is_suture(d)) return false;
  return true;
}

}  // namespace

StageConfig make_config(std::vector<SphereComplex> balls, int stage, bool keep_blank) {
  std::vector<std::pair<std::string, SphereComplex>> keyed;
  for (auto& b : balls) {
    if (is_blank(b) && !keep_blank) continue;
    SphereComplex cf = canonical_form(b);
    keyed.emplace_back(canonical_key(cf), std::move(cf));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  StageConfig cfg;
  cfg.stage = stage;
  for (auto& [k, b] : keyed) {
    put_varint(cfg.key, k.size());
    cfg.key += k;
    cfg.ball_keys.push_back(k);
    cfg.balls.push_back(std::move(b));
  }
  return cfg;
}

std::vector<StageConfig> base_configs(const SphereComplex& pattern) {
  std::vector<int> regions = cells_of_kind(pattern, CellKind::region);
  std::vector<StageConfig> out;
  std::set<std::string> seen;
  for (unsigned bits = 0; bits < (1u << regions.size()); ++bits) {
    SphereComplex sc = pattern;
    for (std::size_t k = 0; k < regions.size(); ++k)
      sc.cells[regions[k]].orientation = (bits >> k & 1u) ? Orientation::out : Orientation::in;
    normalize(sc);
    // an orientation assignment is a configuration even when the ball carries nothing
    StageConfig cfg = make_config({sc}, 1, true);
    cfg.op = "base";
    if (seen.insert(cfg.key).second) out.push_back(std::move(cfg));
  }
  std::sort(out.begin(), out.end(), [](const StageConfig& a, const StageConfig& b) { return a.key < b.key; });
  return out;
}

bool descends(const std::vector<SphereComplex>& parent, const std::vector<SphereComplex>& child) {
  auto c = compare_complexity(complexity_of(child), complexity_of(parent));
  if (c == std::strong_ordering::less) return true;
  if (c == std::strong_ordering::greater) return false;
  return compare_extended(extended_complexity_of(child), extended_complexity_of(parent)) == std::strong_ordering::less;
}

namespace detail {

std::vector<Transition> replace_ball(const StageConfig& cfg, int b, const std::vector<std::vector<SphereComplex>>& options,
                                     const std::string& op) {
  std::vector<Transition> out;
  std::set<std::string> seen;
  for (const auto& pieces : options) {
    std::vector<SphereComplex> balls;
    for (int i = 0; i < (int)cfg.balls.size(); ++i)
      if (i != b) balls.push_back(cfg.balls[i]);
    for (const auto& p : pieces) balls.push_back(p);
    StageConfig child = make_config(std::move(balls), cfg.stage + 1);
    if (!seen.insert(child.key).second) continue;
    child.parent = cfg.key;
    child.op = op;
    out.push_back({std::move(child), op});
  }
  return out;
}

// Turn the doomed F cells into regions. Each takes the orientation of the
// regions it borders, spreading across every edge that is not a chord.
void dissolve(SphereComplex& sc, const std::vector<char>& doomed, const std::vector<char>& chord) {
  int nc = (int)sc.cells.size();
  std::vector<int> orient(nc, -1);
  std::deque<int> queue;
  auto assign = [&](int c, int o) {
    if (orient[c] < 0) {
      orient[c] = o;
      queue.push_back(c);
    } else if (orient[c] != o) {
      throw ComplexError("dissolved cell borders both orientations");
    }
  };
  for (int d = 0; d < sc.dart_count(); ++d) {
    int a = sc.cell[d], b = sc.cell[d ^ 1];
    if (!doomed[a] || doomed[b] || chord[d >> 1]) continue;
    if (sc.cells[b].kind == CellKind::region) assign(a, (int)sc.cells[b].orientation);
  }
  std::vector<std::vector<int>> nbrs(nc);
  for (int d = 0; d < sc.dart_count(); ++d) {
    int a = sc.cell[d], b = sc.cell[d ^ 1];
    if (doomed[a] && doomed[b] && a != b && !chord[d >> 1]) nbrs[a].push_back(b);
  }
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    for (int x : nbrs[c]) assign(x, orient[c]);
  }
  for (int c = 0; c < nc; ++c) {
    if (!doomed[c]) continue;
    if (orient[c] < 0) throw ComplexError("dissolved cell without a neighbouring region");
    sc.cells[c].kind = CellKind::region;
    sc.cells[c].orientation = static_cast<Orientation>(orient[c]);
    sc.cells[c].three_handle = false;
    sc.cells[c].label = -1;
  }
}

SphereComplex finish(SphereComplex sc) {
  normalize(sc);
  sc.validate();
  return sc;
}

SphereComplex prepared(const SphereComplex& ball) {
  SphereComplex sc = ball;
  reset_origins(sc);
  std::fill(sc.mark.begin(), sc.mark.end(), 0);
  return sc;
}

int new_cell_like(SphereComplex& sc, int c) {
  Cell copy = sc.cells[c];
  return sc.add_cell(copy);
}

// vertex at the head of d touches a suture
bool head_on_suture(const SphereComplex& sc, int d) {
  int y = sc.next[d], x = y;
  do {
    if (sc.is_suture(x)) return true;
    x = sc.sigma(x);
  } while (x != y);
  return false;
}

std::vector<int> region_neighbours(const SphereComplex& sc, const std::vector<char>& cells) {
  std::vector<int> out;
  for (int d = 0; d < sc.dart_count(); ++d)
    if (cells[sc.cell[d]] && sc.cells[sc.cell[d ^ 1]].kind == CellKind::region) out.push_back(sc.cell[d ^ 1]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

using namespace detail;

std::vector<Transition> op1_remove_component(const StageConfig& cfg) {
  std::vector<Transition> out;
  std::set<std::string> seen;
  for (int b = 0; b < (int)cfg.balls.size(); ++b) {
    if (cells_of_kind(cfg.balls[b], CellKind::zero_handle).empty()) continue;
    auto t = replace_ball(cfg, b, {{}}, "op1");
    for (auto& x : t)
      if (seen.insert(x.child.key).second) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Transition> op2_remove_handles(const StageConfig& cfg) {
  std::vector<Transition> out;
  std::set<std::string> seen;
  for (int b = 0; b < (int)cfg.balls.size(); ++b) {
    const SphereComplex& ball = cfg.balls[b];
    std::vector<std::vector<SphereComplex>> options;
    int nc = (int)ball.cells.size();
    for (int c = 0; c < nc; ++c) {
      const Cell& cell = ball.cells[c];
      if (!cell.is_f()) continue;
      std::vector<char> unit(nc, 0);
      unit[c] = 1;
      if (cell.kind == CellKind::zero_handle) {
        if (gamma_hits(ball, c) > 0) continue;
        for (int d = 0; d < ball.dart_count(); ++d)
          if (ball.cell[d] == c && ball.cells[ball.cell[d ^ 1]].kind == CellKind::one_handle) unit[ball.cell[d ^ 1]] = 1;
      }
      auto regions = region_neighbours(ball, unit);
      if (regions.empty()) continue;
      bool agree = true;
      for (int r : regions)
        if (ball.cells[r].orientation != ball.cells[regions[0]].orientation || ball.cells[r].three_handle) agree = false;
      if (!agree) continue;
      SphereComplex sc = prepared(ball);
      for (int x = 0; x < nc; ++x)
        if (unit[x]) {
          sc.cells[x].kind = CellKind::region;
          sc.cells[x].orientation = ball.cells[regions[0]].orientation;
          sc.cells[x].label = -1;
        }
      options.push_back({finish(std::move(sc))});
    }
    for (auto& x : replace_ball(cfg, b, options, "op2"))
      if (seen.insert(x.child.key).second) out.push_back(std::move(x));
  }
  return out;
}

namespace {

// ends and sides of a band in cycle order starting from its first end
struct BandShape {
  std::vector<int> ends;
  std::vector<std::vector<int>> sides;
};

BandShape band_shape(const SphereComplex& sc, int band) {
  BandShape s;
  int start = -1;
  for (int d = 0; d < sc.dart_count(); ++d)
    if (sc.cell[d] == band && sc.cells[sc.cell[d ^ 1]].kind == CellKind::zero_handle) {
      start = d;
      break;
    }
  if (start < 0) return s;
  int x = start;
  do {
    if (sc.cells[sc.cell[x ^ 1]].kind == CellKind::zero_handle) {
      s.ends.push_back(x);
      s.sides.emplace_back();
    } else {
      s.sides.back().push_back(x);
    }
    x = sc.next[x];
  } while (x != start);
  return s;
}

}  // namespace

std::vector<Transition> op3_replace_with_suture(const StageConfig& cfg) {
  std::vector<Transition> out;
  std::set<std::string> seen;
  for (int b = 0; b < (int)cfg.balls.size(); ++b) {
    const SphereComplex& ball = cfg.balls[b];
    std::vector<std::vector<SphereComplex>> options;
    int nc = (int)ball.cells.size();
    // a band between regions of opposite orientation
    for (int c = 0; c < nc; ++c) {
      if (ball.cells[c].kind != CellKind::one_handle) continue;
      BandShape s = band_shape(ball, c);
      if (s.ends.size() != 2) continue;
      std::set<int> o1, o2;
      bool h3 = false;
      for (int k = 0; k < 2; ++k)
        for (int d : s.sides[k]) {
          const Cell& r = ball.cells[ball.cell[d ^ 1]];
          if (r.three_handle) h3 = true;
          (k ? o2 : o1).insert((int)r.orientation);
        }
      if (h3 || o1.size() != 1 || o2.size() != 1 || *o1.begin() == *o2.begin()) continue;
      SphereComplex sc = prepared(ball);
      int e1 = s.ends[0], e2 = s.ends[1];
      split_edge(sc, e1);
      split_edge(sc, e2);
      int half = new_cell_like(sc, c);
      int chord = insert_chord(sc, e1, e2, half);
      std::vector<char> doomed(sc.cells.size(), 0), ch(sc.edge_count(), 0);
      doomed[c] = doomed[half] = 1;
      ch[chord >> 1] = 1;
      dissolve(sc, doomed, ch);
      options.push_back({finish(std::move(sc))});
    }
    // a valence-one zero-handle meeting the sutures once, with its band
    for (int v = 0; v < nc; ++v) {
      if (ball.cells[v].kind != CellKind::zero_handle) continue;
      if (valence(ball, v) != 1 || gamma_hits(ball, v) != 1) continue;
      int ev = -1;
      for (int d = 0; d < ball.dart_count(); ++d)
        if (ball.cell[d] == v && ball.cells[ball.cell[d ^ 1]].kind == CellKind::one_handle) ev = d;
      int band = ball.cell[ev ^ 1];
      BandShape s = band_shape(ball, band);
      if (s.ends.size() != 2) continue;
      int f = s.ends[0] == (ev ^ 1) ? s.ends[1] : s.ends[0];
      if (ball.cell[f ^ 1] == v) continue;
      SphereComplex sc = prepared(ball);
      int n = split_edge(sc, ev);
      split_edge(sc, f);
      int g = -1;
      for (int x : sc.cycle_of(ev))
        if (head_on_suture(sc, x)) g = x;
      if (g < 0 || g == ev) continue;
      int vhalf = new_cell_like(sc, v), bhalf = new_cell_like(sc, band);
      int c1 = insert_chord(sc, g, ev, vhalf);
      int c2 = insert_chord(sc, n ^ 1, f, bhalf);
      std::vector<char> doomed(sc.cells.size(), 0), ch(sc.edge_count(), 0);
      doomed[v] = doomed[vhalf] = doomed[band] = doomed[bhalf] = 1;
      ch[c1 >> 1] = ch[c2 >> 1] = 1;
      dissolve(sc, doomed, ch);
      options.push_back({finish(std::move(sc))});
    }
    for (auto& x : replace_ball(cfg, b, options, "op3"))
      if (seen.insert(x.child.key).second) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Transition> op4_remove_product_disc(const StageConfig& cfg) {
  std::vector<Transition> out;
  std::set<std::string> seen;
  for (int b = 0; b < (int)cfg.balls.size(); ++b) {
    const SphereComplex& ball = cfg.balls[b];
    std::vector<std::vector<SphereComplex>> options;
    for (const FComponent& fc : f_components(ball)) {
      if (fc.euler() != 1 || fc.boundary_circles != 1 || fc.gamma_hits != 2) continue;
      SphereComplex sc = prepared(ball);
      int nc0 = (int)sc.cells.size();
      std::vector<char> in_comp(nc0, 0);
      for (int c : fc.cells) in_comp[c] = 1;
      // darts of zero-handles arriving at a suture endpoint
      std::vector<int> ends;
      for (int d = 0; d < sc.dart_count(); ++d)
        if (in_comp[sc.cell[d]] && sc.cell_of(d).kind == CellKind::zero_handle && head_on_suture(sc, d)) ends.push_back(d);
      if (ends.size() != 2) continue;
      int v1 = sc.cell[ends[0]], v2 = sc.cell[ends[1]];
      // path through the handle tree: list of band-end darts, each in the cell left behind
      std::vector<int> via(nc0, -1), from(nc0, -1);
      std::deque<int> q{v1};
      from[v1] = v1;
      while (!q.empty()) {
        int c = q.front();
        q.pop_front();
        for (int d = 0; d < sc.dart_count(); ++d) {
          if (sc.cell[d] != c) continue;
          int o = sc.cell[d ^ 1];
          if (!in_comp[o] || from[o] >= 0) continue;
          from[o] = c;
          via[o] = d;
          q.push_back(o);
        }
      }
      std::vector<int> steps;
      for (int c = v2; c != v1; c = from[c]) steps.push_back(via[c]);
      std::reverse(steps.begin(), steps.end());
      // split each crossed edge; remember the arriving darts on both sides
      std::vector<std::pair<int, int>> mids;  // (dart ending at midpoint in the earlier cell, in the later cell)
      for (int d : steps) {
        int n = split_edge(sc, d);
        mids.push_back({d, n ^ 1});
      }
      std::vector<int> chords;
      int prev_in = ends[0];
      for (std::size_t k = 0; k <= mids.size(); ++k) {
        int target = k < mids.size() ? mids[k].first : ends[1];
        int cell = sc.cell[prev_in];
        int part = new_cell_like(sc, cell);
        chords.push_back(insert_chord(sc, prev_in, target, part));
        if (k < mids.size()) prev_in = mids[k].second;
      }
      std::vector<char> doomed(sc.cells.size(), 0), ch(sc.edge_count(), 0);
      for (int c = 0; c < (int)sc.cells.size(); ++c) {
        bool from_comp = false;
        for (int o : sc.cells[c].origins)
          if (o < nc0 && in_comp[o]) from_comp = true;
        if (sc.cells[c].is_f() && from_comp) doomed[c] = 1;
      }
      for (int c : chords) ch[c >> 1] = 1;
      dissolve(sc, doomed, ch);
      options.push_back({finish(std::move(sc))});
    }
    for (auto& x : replace_ball(cfg, b, options, "op4"))
      if (seen.insert(x.child.key).second) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Transition> op5_merge_valence_two(const StageConfig& cfg) {
  std::vector<Transition> out;
  std::set<std::string> seen;
  for (int b = 0; b < (int)cfg.balls.size(); ++b) {
    const SphereComplex& ball = cfg.balls[b];
    std::vector<std::vector<SphereComplex>> options;
    for (int v = 0; v < (int)ball.cells.size(); ++v) {
      if (ball.cells[v].kind != CellKind::zero_handle || gamma_hits(ball, v) != 0) continue;
      std::vector<int> bands;
      for (int d = 0; d < ball.dart_count(); ++d)
        if (ball.cell[d] == v && ball.cells[ball.cell[d ^ 1]].kind == CellKind::one_handle) bands.push_back(ball.cell[d ^ 1]);
      if (bands.size() != 2 || bands[0] == bands[1]) continue;
      SphereComplex sc = prepared(ball);
      int keep = bands[0];
      for (int& c : sc.cell)
        if (c == v || c == bands[1]) c = keep;
      sc.cells[keep].origins = {keep, v, bands[1]};
      std::sort(sc.cells[keep].origins.begin(), sc.cells[keep].origins.end());
      options.push_back({finish(std::move(sc))});
    }
    for (auto& x : replace_ball(cfg, b, options, "op5"))
      if (seen.insert(x.child.key).second) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace dehn
