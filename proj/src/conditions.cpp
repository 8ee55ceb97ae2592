#include <algorithm>
#include <functional>
#include <set>

#include "dehn/curves.hpp"

namespace dehn {

const char* to_string(PositionViolation v) {
  switch (v) {
    case PositionViolation::inside_zero_handle: return "InsideZeroHandle";
    case PositionViolation::not_vertical: return "NotVertical";
    case PositionViolation::three_handle: return "ThreeHandle";
    default: return "NotClosed";
  }
}

std::vector<PositionIssue> check_standard_position(const CurveSystem& cs, const SphereComplex& sc) {
  std::vector<PositionIssue> out;
  for (int i = 0; i < (int)cs.curves.size(); ++i) {
    const Curve& c = cs.curves[i];
    if (c.crossings.empty()) {
      if (c.inside_cell >= 0 && c.inside_cell < (int)sc.cells.size()) {
        const Cell& x = sc.cells[c.inside_cell];
        if (x.kind == CellKind::zero_handle) out.push_back({PositionViolation::inside_zero_handle, i, -1});
        else if (x.kind == CellKind::one_handle) out.push_back({PositionViolation::not_vertical, i, -1});
        else if (x.three_handle) out.push_back({PositionViolation::three_handle, i, -1});
      } else {
        out.push_back({PositionViolation::not_closed, i, -1});
      }
      continue;
    }
    int len = (int)c.crossings.size();
    for (int j = 0; j < len; ++j) {
      int d = c.crossings[j], nd = c.crossings[(j + 1) % len];
      if (d < 0 || d >= sc.dart_count() || nd < 0 || nd >= sc.dart_count()) {
        out.push_back({PositionViolation::not_closed, i, d});
        break;
      }
      if (sc.cell[d ^ 1] != sc.cell[nd]) {
        out.push_back({PositionViolation::not_closed, i, d});
        continue;
      }
      const Cell& into = sc.cells[sc.cell[d ^ 1]];
      if (into.kind == CellKind::region && into.three_handle) out.push_back({PositionViolation::three_handle, i, d});
      if (sc.is_band_side(d)) out.push_back({PositionViolation::not_vertical, i, d});
      else if (into.kind == CellKind::one_handle && (nd == (d ^ 1) || !sc.is_band_end(nd)))
        out.push_back({PositionViolation::not_vertical, i, nd});
    }
  }
  std::sort(out.begin(), out.end(), [](const PositionIssue& a, const PositionIssue& b) {
    return std::tie(a.curve, a.dart) < std::tie(b.curve, b.dart);
  });
  return out;
}

namespace {

std::map<int, std::vector<Strand>> edge_orders(const CurveSystem& cs) {
  std::map<int, std::vector<Strand>> out;
  for (int i = 0; i < (int)cs.curves.size(); ++i)
    for (int j = 0; j < (int)cs.curves[i].crossings.size(); ++j) out[cs.curves[i].crossings[j] >> 1].push_back({i, j});
  for (auto& [e, list] : out)
    if (list.size() > 1) {
      auto it = cs.orders.find(e);
      if (it == cs.orders.end()) throw UnrealizableSplit("no strand order for edge " + std::to_string(e));
      list = it->second;
    }
  return out;
}

// co-orientation at a crossing points toward the head of the even dart
bool normal_up(const CurveSystem& cs, Strand s) {
  const Curve& c = cs.curves[s.first];
  bool odd = c.crossings[s.second] & 1;
  return c.normal_left != odd;
}

}  // namespace

std::vector<TubingArc> find_tubing_arcs(const Overlay&, const CurveSystem& cs, const SphereComplex& sc) {
  return find_tubing_arcs(cs, sc);
}

std::vector<TubingArc> find_tubing_arcs(const CurveSystem& cs, const SphereComplex& sc) {
  std::vector<TubingArc> out;
  for (auto& [e, order] : edge_orders(cs)) {
    int d = 2 * e;
    if (!sc.is_corner(d)) continue;
    const Cell& r = sc.cells[sc.cell_of(d).kind == CellKind::region ? sc.cell[d] : sc.cell[d ^ 1]];
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      bool lo = normal_up(cs, order[k]), hi = normal_up(cs, order[k + 1]);
      bool toward = lo && !hi, away = !lo && hi;
      if ((toward && r.orientation == Orientation::out) || (away && r.orientation == Orientation::in))
        out.push_back({e, order[k], order[k + 1]});
    }
  }
  return out;
}

ConditionReport check_conditions(const CurveSystem& cs, const SphereComplex& sc) {
  ConditionReport rep;
  auto violate = [&](int idx, int witness, const std::string& detail) {
    ConditionStatus& st = rep.condition[idx];
    if (st.satisfied || witness < st.witness) {
      st.witness = witness;
      st.detail = detail;
    }
    st.satisfied = false;
  };
  for (int i = 0; i < (int)cs.curves.size(); ++i) {
    std::map<int, int> visits;
    for (int d : cs.curves[i].crossings) ++visits[sc.cell[d ^ 1]];
    for (auto [c, k] : visits) {
      if (k < 2) continue;
      if (sc.cells[c].kind == CellKind::one_handle) violate(0, c, "band met in " + std::to_string(k) + " arcs");
      if (sc.cells[c].kind == CellKind::region) violate(3, c, "region met in " + std::to_string(k) + " arcs");
    }
  }
  for (auto& t : find_tubing_arcs(cs, sc)) violate(1, 2 * t.edge, "tubing arc on edge " + std::to_string(t.edge));

  auto orders = edge_orders(cs);
  auto region_orientation = [&](int crossing_dart) {
    int r = sc.cell_of(crossing_dart).kind == CellKind::region ? sc.cell[crossing_dart] : sc.cell[crossing_dart ^ 1];
    return sc.cells[r].orientation;
  };
  auto suture_vertex = [&](int v_dart) {
    int x = v_dart;
    do {
      if (sc.is_suture(x)) return true;
      x = sc.sigma(x);
    } while (x != v_dart);
    return false;
  };

  // tokens around each zero-handle boundary: strands on darts, then the vertex at the dart's head
  struct Token { int dart_index; bool vertex; Strand s; };
  std::map<int, std::vector<Token>> ring;
  std::map<int, std::vector<int>> ring_darts;
  for (int x : cells_of_kind(sc, CellKind::zero_handle)) {
    int first = -1;
    for (int d = 0; d < sc.dart_count(); ++d)
      if (sc.cell[d] == x) {
        first = d;
        break;
      }
    if (first < 0) continue;
    std::vector<int> cyc = sc.cycle_of(first);
    auto& tokens = ring[x];
    ring_darts[x] = cyc;
    for (int k = 0; k < (int)cyc.size(); ++k) {
      auto it = orders.find(cyc[k] >> 1);
      if (it != orders.end()) {
        std::vector<Strand> list = it->second;
        if (cyc[k] & 1) std::reverse(list.begin(), list.end());
        for (Strand st : list) tokens.push_back({k, false, st});
      }
      tokens.push_back({k, true, {-1, -1}});
    }
  }

  for (int i = 0; i < (int)cs.curves.size(); ++i) {
    const Curve& cv = cs.curves[i];
    int len = (int)cv.crossings.size();
    Orientation left_cap = cv.normal_left ? Orientation::in : Orientation::out;
    for (int j = 0; j < len; ++j) {
      int dp = cv.crossings[j], dq = cv.crossings[(j + 1) % len];
      int x = sc.cell[dp ^ 1];
      if (sc.cells[x].kind != CellKind::zero_handle) continue;
      bool p_corner = sc.is_corner(dp), q_corner = sc.is_corner(dq);
      bool p_band = sc.is_band_end(dp), q_band = sc.is_band_end(dq);
      auto& tokens = ring[x];
      auto& cyc = ring_darts[x];
      int nt = (int)tokens.size();
      int tp = -1, tq = -1;
      for (int t = 0; t < nt; ++t) {
        if (tokens[t].vertex) continue;
        if (tokens[t].s == Strand{i, j}) tp = t;
        if (tokens[t].s == Strand{i, (j + 1) % len}) tq = t;
      }
      if (tp < 0 || tq < 0) throw UnrealizableSplit("crossing point missing from zero-handle boundary");
      struct Arc { std::set<int> darts; int points = 0; int sutures = 0; };
      auto walk = [&](int from, int to) {
        Arc a;
        a.darts.insert(tokens[from].dart_index);
        for (int t = (from + 1) % nt; t != to; t = (t + 1) % nt) {
          if (tokens[t].vertex) {
            int k = tokens[t].dart_index;
            a.darts.insert((k + 1) % (int)cyc.size());
            if (suture_vertex(sc.next[cyc[k]])) ++a.sutures;
          } else {
            ++a.points;
          }
        }
        a.darts.insert(tokens[to].dart_index);
        return a;
      };
      // left of the chord is the counterclockwise arc from its exit back to its entry
      Arc sides[2] = {walk(tq, tp), walk(tp, tq)};
      Orientation caps[2] = {left_cap, opposite(left_cap)};
      int witness = std::min(dp, dq);
      if ((p_corner && q_band) || (p_band && q_corner)) {
        Orientation ro = region_orientation(p_corner ? dp : dq);
        for (int s = 0; s < 2; ++s) {
          const Arc& a = sides[s];
          if (a.points > 0) continue;
          std::set<int> ends;
          for (int k : a.darts)
            if (sc.is_band_end(cyc[k])) ends.insert(cyc[k] >> 1);
          bool agree = caps[s] == ro;
          bool ok = ends.size() >= 2 || (a.sutures >= 1 && !agree) || (a.sutures >= 2 && agree);
          if (!ok) violate(2, witness, "disc of contact at curve " + std::to_string(i) + " step " + std::to_string(j));
        }
      }
      if (p_corner && q_corner) {
        Orientation rp = region_orientation(dp), rq = region_orientation(dq);
        for (int s = 0; s < 2; ++s) {
          const Arc& a = sides[s];
          bool band = false;
          for (int k : a.darts)
            if (sc.is_band_end(cyc[k])) band = true;
          int hits = a.sutures + a.points + (caps[s] != rp) + (caps[s] != rq);
          if (!band && hits <= 2)
            violate(4, witness, "corner arc at curve " + std::to_string(i) + " step " + std::to_string(j));
        }
      }
    }
  }
  return rep;
}

std::vector<Curve> enumerate_curves(const SphereComplex& sc, int max_crossings) {
  std::vector<Curve> out;
  int n = sc.dart_count();
  std::vector<int> pos(n, -1), cyc_id(n, -1);
  {
    std::vector<char> seen(n, 0);
    int k = 0;
    for (int d = 0; d < n; ++d) {
      if (seen[d]) continue;
      int p = 0, x = d;
      do {
        seen[x] = 1;
        pos[x] = p++;
        cyc_id[x] = k;
        x = sc.next[x];
      } while (x != d);
      ++k;
    }
  }
  std::vector<std::vector<int>> darts_of(sc.cells.size());
  for (int d = 0; d < n; ++d) darts_of[sc.cell[d]].push_back(d);
  auto allowed = [&](int d) {
    const Cell& a = sc.cell_of(d);
    const Cell& b = sc.cells[sc.cell[d ^ 1]];
    if (sc.is_band_side(d)) return false;
    if ((a.kind == CellKind::region && a.three_handle) || (b.kind == CellKind::region && b.three_handle)) return false;
    return sc.cell[d] != sc.cell[d ^ 1];
  };
  std::vector<int> path;
  std::vector<char> edge_used(n / 2, 0);
  std::vector<int> cell_visits(sc.cells.size(), 0);
  std::vector<std::vector<std::pair<int, int>>> chords(sc.cells.size());

  auto interleaves = [&](int cell, int a, int b) {
    int x = std::min(pos[a], pos[b]), y = std::max(pos[a], pos[b]);
    for (auto [u, v] : chords[cell]) {
      if (cyc_id[u] != cyc_id[a]) continue;
      bool ui = pos[u] > x && pos[u] < y, vi = pos[v] > x && pos[v] < y;
      if (ui != vi) return true;
    }
    return false;
  };

  std::function<void(int)> dfs = [&](int s) {
    int last = path.back();
    int x = sc.cell[last ^ 1];
    const Cell& xc = sc.cells[x];
    bool must_close = xc.kind != CellKind::zero_handle && x == sc.cell[s];
    for (int d : darts_of[x]) {
      if (d == (last ^ 1)) continue;
      bool closing = d == s;
      if (must_close && !closing) continue;
      if (!closing && ((d >> 1) <= (s >> 1) || edge_used[d >> 1] || !allowed(d))) continue;
      if (xc.kind == CellKind::one_handle && !sc.is_band_end(d)) continue;
      if (cyc_id[d] != cyc_id[last ^ 1]) continue;
      if (xc.kind == CellKind::zero_handle && interleaves(x, last ^ 1, d)) continue;
      if (closing) {
        if (path.size() < 2) continue;
        int k = (int)path.size();
        int second = path[1] >> 1, final_e = path[k - 1] >> 1;
        if (second > final_e || (second == final_e && (s & 1))) continue;
        Curve c;
        c.crossings = path;
        out.push_back(c);
        continue;
      }
      if ((int)path.size() >= max_crossings) continue;
      int y = sc.cell[d ^ 1];
      const Cell& yc = sc.cells[y];
      if (yc.kind != CellKind::zero_handle && cell_visits[y] > 0) continue;
      path.push_back(d);
      edge_used[d >> 1] = 1;
      ++cell_visits[y];
      if (xc.kind == CellKind::zero_handle) chords[x].push_back({last ^ 1, d});
      dfs(s);
      if (xc.kind == CellKind::zero_handle) chords[x].pop_back();
      --cell_visits[y];
      edge_used[d >> 1] = 0;
      path.pop_back();
    }
  };

  for (int s = 0; s < n; ++s) {
    if (!allowed(s)) continue;
    int from = sc.cell[s], into = sc.cell[s ^ 1];
    path = {s};
    edge_used[s >> 1] = 1;
    ++cell_visits[into];
    if (from != into) dfs(s);
    --cell_visits[into];
    edge_used[s >> 1] = 0;
  }
  std::sort(out.begin(), out.end(), [](const Curve& a, const Curve& b) {
    if (a.crossings.size() != b.crossings.size()) return a.crossings.size() < b.crossings.size();
    return a.crossings < b.crossings;
  });
  return out;
}

}  // namespace dehn
