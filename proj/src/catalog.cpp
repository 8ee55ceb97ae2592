#include "dehn/catalog.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "dehn/faces.hpp"

namespace dehn {

CatalogError::CatalogError(int l, const std::string& what)
    : std::runtime_error("catalog line " + std::to_string(l) + ": " + what), line(l) {}

std::string GraphSkeleton::str() const {
  std::ostringstream os;
  os << "v=" << vertex_count << " legs=";
  for (std::size_t i = 0; i < legs.size(); ++i) os << (i ? "," : "") << legs[i][0] << ':' << legs[i][2];
  if (legs.empty()) os << '-';
  os << " tau=";
  for (std::size_t i = 0; i < tau_arcs.size(); ++i) {
    const TauArc& t = tau_arcs[i];
    os << (i ? "," : "") << t.ball << ':' << t.end_faces[0] << '-' << t.edge << '-' << t.end_faces[1];
  }
  if (tau_arcs.empty()) os << '-';
  os << " gamma=";
  for (std::size_t i = 0; i < gamma_arcs.size(); ++i) {
    const GammaArc& g = gamma_arcs[i];
    os << (i ? "," : "") << g.ball << ':';
    if (g.closed()) os << 'o' << g.edges.size();
    for (std::size_t k = 0; k < g.end_faces.size(); ++k) os << (k ? "-" : "") << g.end_faces[k];
  }
  if (gamma_arcs.empty()) os << '-';
  return os.str();
}

namespace {

std::vector<GammaArc> ball_arcs(const SphereComplex& sc, int ball) {
  int nv = 0;
  std::vector<int> vid = sc.vertex_ids(&nv);
  std::vector<int> face_at(nv, -2);  // -2: vertex away from F
  for (int d = 0; d < sc.dart_count(); ++d) {
    const Cell& c = sc.cell_of(d);
    if (!c.is_f()) continue;
    int v = vid[d];
    if (c.kind == CellKind::zero_handle || face_at[v] == -2) face_at[v] = c.kind == CellKind::zero_handle ? c.label : -1;
  }
  std::vector<std::vector<int>> at(nv);
  std::vector<int> sut;
  for (int e = 0; e < sc.edge_count(); ++e)
    if (sc.is_suture(2 * e)) {
      sut.push_back(e);
      at[vid[2 * e]].push_back(e);
      if (vid[2 * e + 1] != vid[2 * e]) at[vid[2 * e + 1]].push_back(e);
    }
  std::vector<char> done(sc.edge_count(), 0);
  std::vector<GammaArc> out;
  auto walk = [&](int e, int from) {
    GammaArc a;
    a.ball = ball;
    if (face_at[from] != -2) a.end_faces.push_back(face_at[from]);
    int v = from;
    while (e >= 0 && !done[e]) {
      done[e] = 1;
      a.edges.push_back(e);
      v = vid[2 * e] == v ? vid[2 * e + 1] : vid[2 * e];
      if (face_at[v] != -2) {
        a.end_faces.push_back(face_at[v]);
        break;
      }
      int nxt = -1;
      for (int f : at[v])
        if (!done[f]) {
          nxt = f;
          break;
        }
      e = nxt;
    }
    return a;
  };
  // open arcs first, from their lowest end
  for (int e : sut) {
    if (done[e]) continue;
    int t = vid[2 * e], h = vid[2 * e + 1];
    if (face_at[t] != -2) out.push_back(walk(e, t));
    else if (face_at[h] != -2) out.push_back(walk(e, h));
  }
  for (int e : sut)
    if (!done[e]) out.push_back(walk(e, vid[2 * e]));
  return out;
}

}  // namespace

GraphSkeleton graph_skeleton(const StageConfig& cfg) {
  GraphSkeleton sk;
  sk.vertex_count = (int)cfg.balls.size();
  for (int b = 0; b < (int)cfg.balls.size(); ++b) {
    const SphereComplex& sc = cfg.balls[b];
    for (int c : cells_of_kind(sc, CellKind::zero_handle)) sk.legs.push_back({b, c, sc.cells[c].label});
    for (int c : cells_of_kind(sc, CellKind::one_handle)) {
      TauArc t;
      t.ball = b;
      t.band = c;
      int k = 0;
      for (int d = 0; d < sc.dart_count(); ++d) {
        if (sc.cell[d] != c || !sc.is_band_end(d)) continue;
        t.edge = sc.tag[d];
        if (k < 2) t.end_faces[k] = sc.cell_of(d ^ 1).label;
        ++k;
      }
      std::sort(t.end_faces.begin(), t.end_faces.end());
      sk.tau_arcs.push_back(t);
    }
    auto arcs = ball_arcs(sc, b);
    sk.gamma_arcs.insert(sk.gamma_arcs.end(), arcs.begin(), arcs.end());
  }
  return sk;
}

std::vector<std::vector<char>> keep_mask(const StageConfig& cfg, const GraphSkeleton& sk, std::uint64_t mask) {
  std::vector<std::vector<char>> keep(cfg.balls.size());
  for (std::size_t b = 0; b < cfg.balls.size(); ++b) keep[b].assign(cfg.balls[b].edge_count(), 0);
  for (std::size_t i = 0; i < sk.gamma_arcs.size(); ++i)
    if (mask >> i & 1)
      for (int e : sk.gamma_arcs[i].edges) keep[sk.gamma_arcs[i].ball][e] = 1;
  return keep;
}

std::array<std::string, 4> face_signatures(const StageConfig& cfg, const std::vector<std::vector<char>>& keep) {
  std::array<std::vector<std::string>, 4> words;
  for (std::size_t b = 0; b < cfg.balls.size(); ++b)
    for (const DiscWord& w : disc_words(cfg.balls[b])) {
      if (w.face < 0 || w.face > 3) throw ComplexError("zero-handle without a face label");
      words[w.face].push_back(token_string(minimal_rotation(filtered_tokens(w, keep[b]))));
    }
  std::array<std::string, 4> out;
  for (int f = 0; f < 4; ++f) {
    std::sort(words[f].begin(), words[f].end());
    for (std::size_t i = 0; i < words[f].size(); ++i) out[f] += (i ? "," : "") + words[f][i];
  }
  return out;
}

std::vector<CatalogGraph> extract_graph(const StageConfig& cfg, int config_index) {
  GraphSkeleton sk = graph_skeleton(cfg);
  int n = (int)sk.gamma_arcs.size();
  if (n > max_subtangle_arcs) throw CapExceeded("config has " + std::to_string(n) + " suture arcs");
  std::vector<CatalogGraph> out;
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m) {
    CatalogGraph g;
    g.config = config_index;
    g.mask = m;
    g.faces = face_signatures(cfg, keep_mask(cfg, sk, m));
    out.push_back(std::move(g));
  }
  return out;
}

std::string key_digest(const std::string& key) {
  std::uint64_t h = 1469598103934665603ull, h2 = 1099511628211ull;
  for (unsigned char c : key) {
    h = (h ^ c) * 1099511628211ull;
    h2 = (h2 ^ c) * 6364136223846793005ull + 1442695040888963407ull;
  }
  std::string bytes;
  for (int i = 7; i >= 0; --i) bytes.push_back(char(h >> (8 * i)));
  for (int i = 7; i >= 0; --i) bytes.push_back(char(h2 >> (8 * i)));
  return hex(bytes);
}

std::string provenance(const Catalog& c, int config) {
  std::vector<std::string> ops;
  int i = config;
  for (std::size_t guard = 0; i >= 0 && guard <= c.configs.size(); ++guard) {
    const CatalogConfig& cc = c.configs[i];
    if (cc.parent < 0) break;
    ops.push_back(cc.cfg.op);
    i = cc.parent;
  }
  if (ops.empty()) return "base";
  std::string s = "base";
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) s += ">" + *it;
  return s;
}

namespace {

template <class F>
void parallel_for(std::size_t n, int threads, F f) {
  threads = std::max(1, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) f(i);
    });
  for (auto& th : pool) th.join();
}

std::string one_line(const std::string& s) {
  std::string r = s;
  std::replace(r.begin(), r.end(), '\n', ' ');
  while (!r.empty() && r.back() == ' ') r.pop_back();
  return r;
}

}  // namespace

Catalog build_catalog(const EngineResult& r, const EngineCaps& caps, const std::string& pattern, int threads) {
  Catalog c;
  c.pattern = pattern;
  c.caps = caps;
  c.stats = r.stats;
  c.partial = r.stats.frontier_remaining > 0 || r.stats.capped_nodes > 0 || r.stats.catalog_cap_hit;
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    CatalogConfig cc;
    cc.cfg = r.entries[i].cfg;
    cc.expanded = r.entries[i].expanded;
    cc.capped = r.entries[i].capped;
    index.emplace(cc.cfg.key, (int)i);
    c.configs.push_back(std::move(cc));
  }
  for (auto& cc : c.configs)
    if (!cc.cfg.parent.empty()) {
      auto it = index.find(cc.cfg.parent);
      cc.parent = it == index.end() ? -1 : it->second;
    }
  std::vector<std::vector<CatalogGraph>> per(c.configs.size());
  parallel_for(c.configs.size(), threads, [&](std::size_t i) {
    c.configs[i].skeleton = graph_skeleton(c.configs[i].cfg);
    per[i] = extract_graph(c.configs[i].cfg, (int)i);
  });
  for (auto& v : per)
    for (auto& g : v) c.graphs.push_back(std::move(g));
  return c;
}

void write_catalog(std::ostream& os, const Catalog& c) {
  os << "dehn-catalog " << Catalog::version << '\n';
  os << "pattern " << (c.pattern.empty() ? "-" : c.pattern) << '\n';
  os << "caps max_stages=" << c.caps.max_stages << " max_curve_crossings=" << c.caps.max_curve_crossings
     << " max_children_per_node=" << c.caps.max_children_per_node << " max_catalog_size=" << c.caps.max_catalog_size
     << " max_system_curves=" << c.caps.max_system_curves << '\n';
  const EngineStats& s = c.stats;
  os << "stats nodes_expanded=" << s.nodes_expanded << " transitions=" << s.transitions
     << " dedup_hits=" << s.dedup_hits << " frontier_remaining=" << s.frontier_remaining
     << " capped_nodes=" << s.capped_nodes << " descent_checks=" << s.descent_checks
     << " catalog_cap_hit=" << s.catalog_cap_hit << " stage_cap_hit=" << s.stage_cap_hit << '\n';
  os << "per_op";
  for (auto& [k, v] : s.per_op) os << ' ' << k << '=' << v;
  os << "\nper_stage";
  for (auto& [k, v] : s.per_stage) os << ' ' << k << '=' << v;
  os << "\npartial " << (c.partial ? 1 : 0) << '\n';
  os << "configs " << c.configs.size() << '\n';
  for (std::size_t i = 0; i < c.configs.size(); ++i) {
    const CatalogConfig& cc = c.configs[i];
    os << "config " << i << ' ' << key_digest(cc.cfg.key) << " stage=" << cc.cfg.stage << " parent=";
    if (cc.parent < 0) os << '-';
    else os << cc.parent;
    os << " op=" << (cc.cfg.op.empty() ? "-" : cc.cfg.op) << " chain=" << provenance(c, (int)i)
       << " expanded=" << cc.expanded << " capped=" << cc.capped << " balls=" << cc.cfg.balls.size() << '\n';
    for (const SphereComplex& b : cc.cfg.balls) os << "ball " << one_line(serialize(b)) << '\n';
    os << "skeleton " << cc.skeleton.str() << '\n';
  }
  std::map<std::string, int> sig_id;
  std::vector<const std::string*> sigs;
  for (const CatalogGraph& g : c.graphs)
    for (const std::string& f : g.faces) sig_id.emplace(f, 0);
  int k = 0;
  for (auto& [str, id] : sig_id) {
    id = k++;
    sigs.push_back(&str);
  }
  os << "signatures " << sigs.size() << '\n';
  for (std::size_t i = 0; i < sigs.size(); ++i) os << "s " << i << ' ' << (sigs[i]->empty() ? "-" : *sigs[i]) << '\n';
  os << "graphs " << c.graphs.size() << '\n';
  for (const CatalogGraph& g : c.graphs) {
    os << "g " << g.config << ' ' << g.mask;
    for (const std::string& f : g.faces) os << ' ' << sig_id[f];
    os << '\n';
  }
  os << "end\n";
}

namespace {

struct LineReader {
  std::istream& is;
  int line = 0;
  std::string text;

  std::istringstream next(const std::string& expect) {
    if (!std::getline(is, text)) throw CatalogError(line + 1, "unexpected end of file, wanted " + expect);
    ++line;
    std::istringstream ss(text);
    std::string word;
    ss >> word;
    if (word != expect) throw CatalogError(line, "expected '" + expect + "', found '" + word + "'");
    return ss;
  }
  std::map<std::string, std::string> fields(std::istringstream& ss) {
    std::map<std::string, std::string> out;
    std::string f;
    while (ss >> f) {
      auto eq = f.find('=');
      if (eq == std::string::npos) throw CatalogError(line, "malformed field '" + f + "'");
      out[f.substr(0, eq)] = f.substr(eq + 1);
    }
    return out;
  }
  long long num(const std::map<std::string, std::string>& m, const std::string& k) {
    auto it = m.find(k);
    if (it == m.end()) throw CatalogError(line, "missing field " + k);
    try {
      std::size_t pos = 0;
      long long v = std::stoll(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(k);
      return v;
    } catch (const std::exception&) {
      throw CatalogError(line, "field " + k + " is not an integer");
    }
  }
};

}  // namespace

Catalog read_catalog(std::istream& is) {
  LineReader r{is, 0, {}};
  Catalog c;
  {
    auto ss = r.next("dehn-catalog");
    int v = 0;
    if (!(ss >> v) || v != Catalog::version) throw CatalogError(r.line, "unsupported catalog version");
  }
  {
    auto ss = r.next("pattern");
    ss >> c.pattern;
    if (c.pattern == "-") c.pattern.clear();
  }
  {
    auto ss = r.next("caps");
    auto f = r.fields(ss);
    c.caps.max_stages = (int)r.num(f, "max_stages");
    c.caps.max_curve_crossings = (int)r.num(f, "max_curve_crossings");
    c.caps.max_children_per_node = (int)r.num(f, "max_children_per_node");
    c.caps.max_catalog_size = (int)r.num(f, "max_catalog_size");
    c.caps.max_system_curves = (int)r.num(f, "max_system_curves");
  }
  {
    auto ss = r.next("stats");
    auto f = r.fields(ss);
    EngineStats& s = c.stats;
    s.nodes_expanded = r.num(f, "nodes_expanded");
    s.transitions = r.num(f, "transitions");
    s.dedup_hits = r.num(f, "dedup_hits");
    s.frontier_remaining = r.num(f, "frontier_remaining");
    s.capped_nodes = r.num(f, "capped_nodes");
    s.descent_checks = r.num(f, "descent_checks");
    s.catalog_cap_hit = r.num(f, "catalog_cap_hit") != 0;
    s.stage_cap_hit = r.num(f, "stage_cap_hit") != 0;
  }
  {
    auto ss = r.next("per_op");
    for (auto& [k, v] : r.fields(ss)) c.stats.per_op[k] = std::stoull(v);
  }
  {
    auto ss = r.next("per_stage");
    for (auto& [k, v] : r.fields(ss)) c.stats.per_stage[std::stoi(k)] = std::stoull(v);
  }
  {
    auto ss = r.next("partial");
    int p = 0;
    ss >> p;
    c.partial = p != 0;
  }
  std::size_t n = 0;
  {
    auto ss = r.next("configs");
    if (!(ss >> n)) throw CatalogError(r.line, "missing config count");
  }
  std::vector<std::string> digests;
  for (std::size_t i = 0; i < n; ++i) {
    auto ss = r.next("config");
    std::size_t idx = 0;
    std::string digest;
    if (!(ss >> idx >> digest) || idx != i) throw CatalogError(r.line, "config records out of order");
    auto f = r.fields(ss);
    int stage = (int)r.num(f, "stage");
    CatalogConfig cc;
    cc.parent = f["parent"] == "-" ? -1 : (int)r.num(f, "parent");
    if (cc.parent >= (int)n) throw CatalogError(r.line, "parent index out of range");
    cc.expanded = r.num(f, "expanded") != 0;
    cc.capped = r.num(f, "capped") != 0;
    int nb = (int)r.num(f, "balls");
    std::vector<SphereComplex> balls;
    for (int b = 0; b < nb; ++b) {
      r.next("ball");
      try {
        balls.push_back(parse_sphere_complex(r.text.substr(5)));
      } catch (const ComplexError& e) {
        throw CatalogError(r.line, e.what());
      }
    }
    cc.cfg = make_config(balls, stage, cc.parent < 0);
    cc.cfg.op = f["op"] == "-" ? "" : f["op"];
    r.next("skeleton");
    cc.skeleton = graph_skeleton(cc.cfg);
    if ("skeleton " + cc.skeleton.str() != r.text) throw CatalogError(r.line, "skeleton does not match the balls");
    digests.push_back(digest);
    c.configs.push_back(std::move(cc));
  }
  for (auto& cc : c.configs)
    if (cc.parent >= 0) cc.cfg.parent = c.configs[cc.parent].cfg.key;
  std::size_t ns = 0;
  {
    auto ss = r.next("signatures");
    if (!(ss >> ns)) throw CatalogError(r.line, "missing signature count");
  }
  std::vector<std::string> sigs(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    auto ss = r.next("s");
    std::size_t idx = 0;
    if (!(ss >> idx >> sigs[i]) || idx != i) throw CatalogError(r.line, "signature records out of order");
    if (sigs[i] == "-") sigs[i].clear();
  }
  std::size_t ng = 0;
  {
    auto ss = r.next("graphs");
    if (!(ss >> ng)) throw CatalogError(r.line, "missing graph count");
  }
  c.graphs.reserve(ng);
  for (std::size_t i = 0; i < ng; ++i) {
    auto ss = r.next("g");
    CatalogGraph g;
    std::array<std::size_t, 4> id{};
    if (!(ss >> g.config >> g.mask >> id[0] >> id[1] >> id[2] >> id[3])) throw CatalogError(r.line, "malformed graph");
    if (g.config < 0 || g.config >= (int)n) throw CatalogError(r.line, "graph config out of range");
    for (int f = 0; f < 4; ++f) {
      if (id[f] >= ns) throw CatalogError(r.line, "signature index out of range");
      g.faces[f] = sigs[id[f]];
    }
    c.graphs.push_back(std::move(g));
  }
  r.next("end");
  for (std::size_t i = 0; i < n; ++i)
    if (key_digest(c.configs[i].cfg.key) != digests[i])
      throw CatalogError(0, "config " + std::to_string(i) + " key digest does not match its balls");
  return c;
}

CatalogCheck check_catalog(const Catalog& c, int threads) {
  CatalogCheck out;
  for (std::size_t i = 1; i < c.configs.size(); ++i)
    if (!(c.configs[i - 1].cfg.key < c.configs[i].cfg.key))
      out.failures.push_back("configs " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not in key order");
  std::vector<std::string> fail(c.configs.size());
  std::vector<char> checked(c.configs.size(), 0);
  parallel_for(c.configs.size(), threads, [&](std::size_t i) {
    const CatalogConfig& cc = c.configs[i];
    try {
      for (const SphereComplex& b : cc.cfg.balls) b.validate();
      if (graph_skeleton(cc.cfg).str() != cc.skeleton.str()) fail[i] = "config " + std::to_string(i) + ": skeleton mismatch";
    } catch (const std::exception& e) {
      fail[i] = "config " + std::to_string(i) + ": " + e.what();
      return;
    }
    if (cc.parent >= 0) {
      checked[i] = 1;
      const CatalogConfig& p = c.configs[cc.parent];
      if (cc.cfg.stage != p.cfg.stage + 1)
        fail[i] = "config " + std::to_string(i) + ": stage does not follow its parent";
      else if (!descends(p.cfg.balls, cc.cfg.balls))
        fail[i] = "transition " + std::to_string(cc.parent) + " -> " + std::to_string(i) + " (" + cc.cfg.op +
                  ") does not descend";
    }
  });
  for (std::size_t i = 0; i < fail.size(); ++i) {
    if (!fail[i].empty()) out.failures.push_back(fail[i]);
    out.descent_checks += checked[i];
  }
  std::vector<std::size_t> first(c.configs.size() + 1, c.graphs.size());
  for (std::size_t i = c.graphs.size(); i-- > 0;) first[c.graphs[i].config] = i;
  std::vector<std::string> gfail(c.configs.size());
  parallel_for(c.configs.size(), threads, [&](std::size_t i) {
    std::vector<CatalogGraph> want;
    try {
      want = extract_graph(c.configs[i].cfg, (int)i);
    } catch (const std::exception& e) {
      gfail[i] = "config " + std::to_string(i) + ": " + e.what();
      return;
    }
    std::size_t at = first[i];
    for (std::size_t k = 0; k < want.size(); ++k, ++at) {
      if (at >= c.graphs.size() || c.graphs[at].config != (int)i || c.graphs[at].mask != want[k].mask) {
        gfail[i] = "config " + std::to_string(i) + ": subtangle records missing or out of order";
        return;
      }
      if (c.graphs[at].faces != want[k].faces) {
        gfail[i] = "config " + std::to_string(i) + " mask " + std::to_string(want[k].mask) + ": face signature mismatch";
        return;
      }
    }
    if (at < c.graphs.size() && c.graphs[at].config == (int)i)
      gfail[i] = "config " + std::to_string(i) + ": extra subtangle records";
  });
  for (auto& f : gfail)
    if (!f.empty()) out.failures.push_back(f);
  return out;
}

}  // namespace dehn
