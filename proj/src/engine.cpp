#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "dehn/engine.hpp"
#include "dehn/predicates.hpp"

namespace dehn {

namespace detail {
std::vector<Transition> replace_ball(const StageConfig& cfg, int b, const std::vector<std::vector<SphereComplex>>& options,
                                     const std::string& op);
SphereComplex prepared(const SphereComplex& ball);
}  // namespace detail

using detail::prepared;
using detail::replace_ball;

bool op6_applicable(const StageConfig& cfg) {
  if (cfg.balls.empty()) return false;
  for (const SphereComplex& b : cfg.balls) {
    for (int z : cells_of_kind(b, CellKind::zero_handle))
      if (zero_handle_index(b, z) <= 0) return false;
    if (!f_gamma_connected(b)) return false;
  }
  return true;
}

std::vector<Curve> op6_curves(const SphereComplex& sc, int max_crossings) {
  std::vector<Curve> out;
  for (Curve c : enumerate_curves(sc, max_crossings))
    for (bool nl : {true, false}) {
      c.normal_left = nl;
      CurveSystem cs{{c}, {}};
      if (!check_standard_position(cs, sc).empty()) continue;
      if (check_conditions(cs, sc).all()) out.push_back(c);
    }
  return out;
}

bool is_trivial_pushoff(const SphereComplex& sc, const Curve& c) {
  if (c.crossings.empty()) return false;
  for (int d : c.crossings)
    if (!sc.is_band_end(d)) return false;
  std::vector<SphereComplex> pieces;
  try {
    pieces = split_along(sc, CurveSystem{{c}, {}});
  } catch (const UnrealizableSplit&) {
    return false;
  }
  for (const SphereComplex& p : pieces) {
    auto comps = f_components(p);
    if (comps.size() != 1) continue;
    const FComponent& f = comps[0];
    if (f.euler() != 0 || f.boundary_circles != 2 || f.gamma_hits != 0) continue;
    bool collar = suture_arc_count(p) == 0;
    for (int z : cells_of_kind(p, CellKind::zero_handle))
      if (valence(p, z) != 2) collar = false;
    if (collar) return true;
  }
  return false;
}

std::vector<std::vector<SphereComplex>> reorientations(const std::vector<SphereComplex>& pieces) {
  struct Site { int piece, cell; };
  std::vector<Site> sites;
  for (int i = 0; i < (int)pieces.size(); ++i) {
    const SphereComplex& p = pieces[i];
    std::vector<char> capped(p.cells.size(), 0), sutured(p.cells.size(), 0);
    for (int d = 0; d < p.dart_count(); ++d) {
      if (p.mark[d] & mark_cap) capped[p.cell[d]] = 1;
      if (p.is_suture(d)) sutured[p.cell[d]] = 1;
    }
    for (int c = 0; c < (int)p.cells.size(); ++c)
      if (p.cells[c].kind == CellKind::region && !p.cells[c].three_handle && capped[c] && !sutured[c])
        sites.push_back({i, c});
  }
  std::vector<std::vector<SphereComplex>> out;
  for (unsigned bits = 0; bits < (1u << sites.size()); ++bits) {
    std::vector<SphereComplex> v = pieces;
    for (std::size_t k = 0; k < sites.size(); ++k)
      if (bits >> k & 1u) {
        Cell& c = v[sites[k].piece].cells[sites[k].cell];
        c.orientation = opposite(c.orientation);
      }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// two curves can be drawn disjointly and with no tubing arc between them
bool compatible_pair(const SphereComplex& sc, const Curve& a, const Curve& b) {
  for (const CurveSystem& cs : realizations(sc, {a, b}, 8))
    if (check_conditions(cs, sc).condition[1].satisfied) return true;
  return false;
}

}  // namespace

std::vector<Transition> op6_decompose(const StageConfig& cfg, const EngineCaps& caps, Op6Stats* stats) {
  std::vector<Transition> out;
  Op6Stats local;
  Op6Stats& st = stats ? *stats : local;
  if (!op6_applicable(cfg)) return out;
  std::set<std::string> seen;
  std::size_t limit = (std::size_t)caps.max_children_per_node;
  for (int b = 0; b < (int)cfg.balls.size() && !st.capped; ++b) {
    SphereComplex sc = prepared(cfg.balls[b]);
    std::vector<Curve> curves = op6_curves(sc, caps.max_curve_crossings);
    st.single_curves += curves.size();
    int n = (int)curves.size();
    std::vector<char> trivial(n);
    for (int i = 0; i < n; ++i) trivial[i] = is_trivial_pushoff(sc, curves[i]);
    std::vector<std::vector<char>> compat(n, std::vector<char>(n, 0));
    auto emit = [&](const std::vector<int>& sys) {
      bool all_trivial = true;
      for (int i : sys) all_trivial = all_trivial && trivial[i];
      if (all_trivial) {
        ++st.trivial_excluded;
        return;
      }
      std::vector<Curve> cv;
      for (int i : sys) cv.push_back(curves[i]);
      for (const CurveSystem& cs : realizations(sc, cv, 64)) {
        if (sys.size() > 1 && !check_conditions(cs, sc).condition[1].satisfied) continue;
        ++st.systems;
        std::vector<SphereComplex> pieces = split_along(sc, cs);
        for (auto& t : replace_ball(cfg, b, reorientations(pieces), "op6")) {
          if (!seen.insert(t.child.key).second) continue;
          if (out.size() >= limit) {
            st.capped = true;
            return;
          }
          out.push_back(std::move(t));
        }
      }
    };
    // systems by increasing size; every pair in a system must be compatible
    std::vector<std::vector<int>> level;
    for (int i = 0; i < n && !st.capped; ++i) {
      level.push_back({i});
      emit({i});
    }
    bool pairs_ready = false;
    for (int size = 2; size <= caps.max_system_curves && !level.empty() && !st.capped; ++size) {
      if (!pairs_ready) {
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) compat[i][j] = compat[j][i] = compatible_pair(sc, curves[i], curves[j]);
        pairs_ready = true;
      }
      std::vector<std::vector<int>> next;
      for (const auto& sys : level) {
        for (int j = sys.back() + 1; j < n && !st.capped; ++j) {
          bool ok = true;
          for (int i : sys) ok = ok && compat[i][j];
          if (!ok) continue;
          std::vector<int> bigger = sys;
          bigger.push_back(j);
          emit(bigger);
          next.push_back(std::move(bigger));
        }
        if (st.capped) break;
      }
      level = std::move(next);
    }
  }
  return out;
}

bool op7_applicable(const StageConfig& cfg) {
  if (cfg.balls.empty()) return false;
  for (const SphereComplex& b : cfg.balls) {
    for (auto& fc : f_components(b))
      if (fc.index() <= 0) return false;
    for (int z : cells_of_kind(b, CellKind::zero_handle))
      if (zero_handle_index(b, z) <= 0 && (valence(b, z) != 2 || gamma_hits(b, z) != 0)) return false;
  }
  return true;
}

namespace {

// chains band, disc, band, ..., band whose interior discs are sutureless
// and have both their bands in the chain
std::vector<std::vector<int>> amalgam_discs(const SphereComplex& sc) {
  int nc = (int)sc.cells.size();
  std::vector<std::vector<int>> bands_at(nc), ends_of(nc);
  for (int d = 0; d < sc.dart_count(); ++d)
    if (sc.cell_of(d).kind == CellKind::one_handle && sc.cells[sc.cell[d ^ 1]].kind == CellKind::zero_handle) {
      ends_of[sc.cell[d]].push_back(sc.cell[d ^ 1]);
      bands_at[sc.cell[d ^ 1]].push_back(sc.cell[d]);
    }
  auto inner_ok = [&](int z) {
    return bands_at[z].size() == 2 && bands_at[z][0] != bands_at[z][1] && gamma_hits(sc, z) == 0;
  };
  std::set<std::vector<int>> found;
  std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& chain, int tip) {
    std::vector<int> sorted = chain;
    std::sort(sorted.begin(), sorted.end());
    found.insert(sorted);
    if (!inner_ok(tip)) return;
    int band = chain.back();
    int other = bands_at[tip][0] == band ? bands_at[tip][1] : bands_at[tip][0];
    if (std::find(chain.begin(), chain.end(), other) != chain.end()) return;
    if (ends_of[other].size() != 2) return;
    int far = ends_of[other][0] == tip ? ends_of[other][1] : ends_of[other][0];
    if (std::find(chain.begin(), chain.end(), far) != chain.end() || far == tip) return;
    chain.push_back(tip);
    chain.push_back(other);
    grow(chain, far);
    chain.pop_back();
    chain.pop_back();
  };
  for (int c = 0; c < nc; ++c) {
    if (sc.cells[c].kind != CellKind::one_handle || ends_of[c].size() != 2) continue;
    for (int k = 0; k < 2; ++k) {
      std::vector<int> chain{c};
      grow(chain, ends_of[c][k]);
    }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  // the chain must stop at discs outside it
  std::vector<std::vector<int>> valid;
  for (auto& d : out) {
    std::set<int> in(d.begin(), d.end());
    bool ok = true;
    for (int c : d)
      if (sc.cells[c].kind == CellKind::one_handle)
        for (int z : ends_of[c])
          if (!in.count(z) && sc.cells[z].kind != CellKind::zero_handle) ok = false;
    if (ok) valid.push_back(d);
  }
  return valid;
}

// a copy of the boundary of the disc pushed off into the two end discs
std::optional<Curve> pushoff_curve(const SphereComplex& sc, const std::vector<int>& disc) {
  std::vector<char> in(sc.cells.size(), 0);
  for (int c : disc) in[c] = 1;
  int start = -1;
  for (int d = 0; d < sc.dart_count() && start < 0; ++d)
    if (in[sc.cell[d]] && sc.cells[sc.cell[d ^ 1]].kind == CellKind::zero_handle && !in[sc.cell[d ^ 1]]) start = d;
  if (start < 0) return std::nullopt;
  std::vector<int> outer_ends;
  int x = start;
  int guard = 0;
  do {
    if (sc.cells[sc.cell[x ^ 1]].kind == CellKind::zero_handle) outer_ends.push_back(x ^ 1);
    int h = sc.next[x];
    while (in[sc.cell[h ^ 1]]) h = sc.next[h ^ 1];
    x = h;
    if (++guard > 4 * sc.dart_count()) return std::nullopt;
  } while (x != start);
  if (outer_ends.size() != 2) return std::nullopt;
  Curve c;
  for (int e : outer_ends) {
    int p = sc.prev[e], n = sc.next[e];
    if (!sc.is_corner(p) || !sc.is_corner(n)) return std::nullopt;
    c.crossings.push_back(n ^ 1);
    c.crossings.push_back(p);
  }
  int len = (int)c.crossings.size();
  for (int j = 0; j < len; ++j)
    if (sc.cell[c.crossings[j] ^ 1] != sc.cell[c.crossings[(j + 1) % len]]) return std::nullopt;
  c.extras_left = false;
  return c;
}

// the piece between the two copies carries caps of both
bool parallel_strip_has_sutures(const std::vector<SphereComplex>& pieces) {
  std::uint8_t both = curve_mark(0) | curve_mark(1);
  for (const SphereComplex& p : pieces) {
    std::uint8_t m = 0;
    for (auto x : p.mark) m |= x;
    if ((m & both) == both) return suture_arc_count(p) > 0;
  }
  return false;
}

}  // namespace

std::vector<Transition> op7_amalgam_removal(const StageConfig& cfg) {
  std::vector<Transition> out;
  if (!op7_applicable(cfg)) return out;
  std::set<std::string> seen;
  for (int b = 0; b < (int)cfg.balls.size(); ++b) {
    SphereComplex sc = prepared(cfg.balls[b]);
    std::vector<std::vector<SphereComplex>> options;
    for (const auto& disc : amalgam_discs(sc)) {
      std::set<int> orient;
      for (int d = 0; d < sc.dart_count(); ++d) {
        bool inside = std::find(disc.begin(), disc.end(), sc.cell[d]) != disc.end();
        if (inside && sc.cells[sc.cell[d ^ 1]].kind == CellKind::region) orient.insert((int)sc.cells[sc.cell[d ^ 1]].orientation);
      }
      if (orient.size() != 1) continue;
      auto c1 = pushoff_curve(sc, disc);
      if (!c1) continue;
      for (bool nl : {true, false}) {
        Curve c = *c1;
        c.normal_left = nl;
        std::vector<SphereComplex> pieces;
        try {
          pieces = split_along(sc, CurveSystem{{c}, {}});
        } catch (const UnrealizableSplit&) {
          continue;
        }
        if (is_final_branch(sc, pieces)) continue;
        options.push_back(std::move(pieces));
      }
      Curve a = *c1, z = *c1;
      a.normal_left = true;
      z.normal_left = false;
      for (const CurveSystem& cs : realizations(sc, {a, z}, 8)) {
        std::vector<SphereComplex> pieces;
        try {
          pieces = split_along(sc, cs);
        } catch (const UnrealizableSplit&) {
          continue;
        }
        if (parallel_strip_has_sutures(pieces)) options.push_back(std::move(pieces));
      }
    }
    for (auto& t : replace_ball(cfg, b, options, "op7"))
      if (seen.insert(t.child.key).second) out.push_back(std::move(t));
  }
  return out;
}

std::vector<Transition> expand(const StageConfig& cfg, const EngineCaps& caps, bool* capped) {
  std::vector<Transition> out;
  for (auto* op : {op1_remove_component, op2_remove_handles, op3_replace_with_suture, op4_remove_product_disc,
                   op5_merge_valence_two})
    for (auto& t : op(cfg)) out.push_back(std::move(t));
  Op6Stats st;
  for (auto& t : op6_decompose(cfg, caps, &st)) out.push_back(std::move(t));
  for (auto& t : op7_amalgam_removal(cfg)) out.push_back(std::move(t));
  if (capped) *capped = st.capped;
  return out;
}

std::string hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string unhex(const std::string& text) {
  if (text.size() % 2) throw std::invalid_argument("odd-length hex string");
  auto val = [](char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw std::invalid_argument("bad hex digit");
  };
  std::string out;
  for (std::size_t i = 0; i < text.size(); i += 2) out.push_back(static_cast<char>(val(text[i]) * 16 + val(text[i + 1])));
  return out;
}

EngineResult run_engine(const std::vector<StageConfig>& bases, const EngineCaps& caps, int threads) {
  caps.validate();
  EngineResult res;
  std::map<std::string, CatalogEntry> store;
  std::vector<std::string> frontier;
  for (const StageConfig& b : bases) {
    if (store.count(b.key)) continue;
    if ((int)store.size() >= caps.max_catalog_size) {
      res.stats.catalog_cap_hit = true;
      break;
    }
    CatalogEntry e;
    e.cfg = b;
    e.cfg.stage = 1;
    store.emplace(b.key, std::move(e));
    frontier.push_back(b.key);
  }
  std::sort(frontier.begin(), frontier.end());
  for (int stage = 1; !frontier.empty(); ++stage) {
    res.stats.per_stage[stage] = frontier.size();
    if (stage >= caps.max_stages) {
      res.stats.stage_cap_hit = true;
      break;
    }
    if (res.stats.catalog_cap_hit) break;
    std::vector<std::string> next;
    // fixed-size batches keep the stopping point independent of the thread count
    const std::size_t batch = 64;
    for (std::size_t lo = 0; lo < frontier.size() && !res.stats.catalog_cap_hit; lo += batch) {
      std::size_t hi = std::min(frontier.size(), lo + batch);
      std::vector<std::vector<Transition>> results(hi - lo);
      std::vector<char> capped(hi - lo, 0);
      int nt = std::max(1, threads);
      auto work = [&](int t) {
        for (std::size_t i = lo + t; i < hi; i += nt) {
          bool c = false;
          results[i - lo] = expand(store.at(frontier[i]).cfg, caps, &c);
          capped[i - lo] = c;
        }
      };
      if (nt == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
      }
      for (std::size_t i = lo; i < hi; ++i) {
        CatalogEntry& parent = store.at(frontier[i]);
        parent.expanded = true;
        parent.capped = capped[i - lo];
        ++res.stats.nodes_expanded;
        if (parent.capped) ++res.stats.capped_nodes;
        for (Transition& t : results[i - lo]) {
          ++res.stats.transitions;
          ++res.stats.descent_checks;
          if (!descends(parent.cfg.balls, t.child.balls))
            throw DescentViolation(t.op + " transition does not descend: " + hex(parent.cfg.key).substr(0, 16) +
                                   " -> " + hex(t.child.key).substr(0, 16));
          ++res.stats.per_op[t.op];
          if (store.count(t.child.key)) {
            ++res.stats.dedup_hits;
            continue;
          }
          if ((int)store.size() >= caps.max_catalog_size) {
            res.stats.catalog_cap_hit = true;
            continue;
          }
          CatalogEntry e;
          e.cfg = std::move(t.child);
          e.cfg.stage = stage + 1;
          std::string k = e.cfg.key;
          store.emplace(k, std::move(e));
          next.push_back(k);
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  for (auto& [k, e] : store) {
    if (!e.expanded) ++res.stats.frontier_remaining;
    res.entries.push_back(std::move(e));
  }
  return res;
}

}  // namespace dehn
