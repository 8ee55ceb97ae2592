#include "dehn/assemble.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace dehn {

namespace {

const char* token_chars = "012345tcgx";

std::vector<std::uint8_t> parse_tokens(const std::string& w) {
  std::vector<std::uint8_t> t;
  for (char ch : w) {
    const char* p = std::strchr(token_chars, ch);
    if (!p || !ch) throw std::invalid_argument("bad disc word token '" + std::string(1, ch) + "'");
    t.push_back(static_cast<std::uint8_t>(p - token_chars));
  }
  return t;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t k = text.find(',', start);
    out.push_back(text.substr(start, k == std::string::npos ? std::string::npos : k - start));
    if (k == std::string::npos) break;
    start = k + 1;
  }
  return out;
}

std::string join_sorted(std::vector<std::string> words) {
  std::sort(words.begin(), words.end());
  std::string s;
  for (std::size_t i = 0; i < words.size(); ++i) s += (i ? "," : "") + words[i];
  return s;
}

std::string transported_word(const std::vector<std::uint8_t>& t, const VertexPerm& p) {
  return token_string(minimal_rotation(transported(t, p)));
}

}  // namespace

std::string FaceSignature::str() const { return join_sorted(discs); }

FaceSignature parse_signature(int face, const std::string& text) {
  FaceSignature s;
  s.face = face;
  for (auto& w : split_words(text)) {
    s.discs.push_back(token_string(minimal_rotation(parse_tokens(w))));
  }
  std::sort(s.discs.begin(), s.discs.end());
  return s;
}

FaceSignature face_signature(const CatalogGraph& g, int face) {
  if (face < 0 || face > 3) throw std::out_of_range("face index");
  return parse_signature(face, g.faces[face]);
}

std::string transport_signature(const std::string& text, const VertexPerm& p) {
  std::vector<std::string> out;
  for (auto& w : split_words(text)) out.push_back(transported_word(parse_tokens(w), p));
  return join_sorted(out);
}

bool compatible(const FaceSignature& a, const FaceSignature& b, const FaceGluing& gl) {
  if (a.face != gl.face_a || b.face != gl.face_b) return false;
  return transport_signature(a.str(), gl.perm()) == b.str();
}

const char* to_string(Rejection r) {
  switch (r) {
    case Rejection::glue: return "glue";
    case Rejection::gamma_empty: return "gamma_empty";
    case Rejection::gamma_disconnected: return "gamma_disconnected";
    case Rejection::gamma_not_simple: return "gamma_not_simple";
    case Rejection::gamma_inessential: return "gamma_inessential";
    case Rejection::h1: return "h1";
    case Rejection::not_torus: return "not_torus";
    case Rejection::not_primitive: return "not_primitive";
  }
  return "?";
}

std::string TileRef::str() const { return std::to_string(graph) + (mirrored ? "m" : ""); }

std::vector<Tile> catalog_tiles(const Catalog& cat) {
  std::vector<Tile> out;
  out.reserve(cat.graphs.size());
  std::vector<int> chiral(cat.configs.size(), -1);
  for (int g = 0; g < (int)cat.graphs.size(); ++g) {
    const CatalogGraph& cg = cat.graphs[g];
    out.push_back({{g, false}, cg.faces});
    if (chiral[cg.config] < 0) {
      const StageConfig& cfg = cat.configs.at(cg.config).cfg;
      std::vector<std::string> a, b;
      for (const SphereComplex& ball : cfg.balls) {
        a.push_back(oriented_key(ball));
        b.push_back(oriented_key(mirror(ball)));
      }
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      chiral[cg.config] = a != b;
    }
    if (!chiral[cg.config]) continue;
    // the mirror image reads every disc word backwards
    Tile t{{g, true}, {}};
    for (int f = 0; f < 4; ++f) {
      std::string w = cg.faces[f];
      std::reverse(w.begin(), w.end());
      t.faces[f] = parse_signature(f, w).str();
    }
    out.push_back(std::move(t));
  }
  return out;
}

Catalog catalog_from_configs(const std::vector<StageConfig>& configs, const std::string& pattern) {
  EngineResult r;
  std::map<std::string, StageConfig> sorted;
  for (const StageConfig& c : configs) sorted.emplace(c.key, c);
  for (auto& [k, c] : sorted) {
    CatalogEntry e;
    e.cfg = c;
    e.cfg.parent.clear();
    if (e.cfg.op.empty()) e.cfg.op = "base";
    r.entries.push_back(std::move(e));
  }
  EngineCaps caps;
  caps.max_stages = 1;
  return build_catalog(r, caps, pattern);
}

namespace {

struct Placed {
  int tet, ball;
};

struct Assembly {
  std::vector<SphereComplex> balls;
  std::vector<Placed> where;
  std::vector<std::vector<char>> keep;
  std::vector<DiscMatch> matches;
  std::vector<std::pair<int, int>> match_face;   // (tet, face) on side a
};

std::string tile_id(const Catalog& cat, TileRef r) {
  const CatalogGraph& cg = cat.graphs.at(r.graph);
  return key_digest(cat.configs[cg.config].cfg.key).substr(0, 16) + ":" + std::to_string(cg.mask) + (r.mirrored ? "m" : "");
}

Assembly assemble_balls(const GeneralisedTriangulation& gt, const Catalog& cat, const std::vector<TileRef>& assignment) {
  Assembly a;
  for (int t = 0; t < gt.tet_count; ++t) {
    const CatalogGraph& g = cat.graphs.at(assignment.at(t).graph);
    const CatalogConfig& cc = cat.configs.at(g.config);
    auto keep = keep_mask(cc.cfg, cc.skeleton, g.mask);
    for (std::size_t b = 0; b < cc.cfg.balls.size(); ++b) {
      a.balls.push_back(assignment[t].mirrored ? mirror(cc.cfg.balls[b]) : cc.cfg.balls[b]);
      a.where.push_back({t, (int)b});
      a.keep.push_back(keep[b]);
    }
  }
  struct Disc {
    int ball, cell;
    std::vector<std::uint8_t> tokens;
  };
  std::vector<std::array<std::vector<Disc>, 4>> discs(gt.tet_count);
  for (int b = 0; b < (int)a.balls.size(); ++b)
    for (const DiscWord& w : disc_words(a.balls[b]))
      discs[a.where[b].tet][w.face].push_back({b, w.cell, filtered_tokens(w, a.keep[b])});
  for (const FaceGluing& gl : gt.gluings) {
    VertexPerm p = gl.perm();
    auto& da = discs[gl.tet_a][gl.face_a];
    auto& db = discs[gl.tet_b][gl.face_b];
    if (da.size() != db.size()) throw GlueError("different disc counts across a glued face");
    std::vector<std::pair<std::string, int>> ka, kb;
    for (int i = 0; i < (int)da.size(); ++i) ka.push_back({transported_word(da[i].tokens, p), i});
    for (int i = 0; i < (int)db.size(); ++i) kb.push_back({token_string(minimal_rotation(db[i].tokens)), i});
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    for (std::size_t i = 0; i < ka.size(); ++i) {
      if (ka[i].first != kb[i].first) throw GlueError("disc words differ across a glued face");
      const Disc& x = da[ka[i].second];
      const Disc& y = db[kb[i].second];
      a.matches.push_back({x.ball, x.cell, y.ball, y.cell, p});
      a.match_face.push_back({gl.tet_a, gl.face_a});
    }
  }
  for (int t = 0; t < gt.tet_count; ++t)
    for (int f = 0; f < 4; ++f) {
      FaceGluing tmp;
      if (!discs[t][f].empty() && !gt.gluing_at(t, f, &tmp)) throw GlueError("disc on an unglued face");
    }
  return a;
}

std::string walk_string(const GeneralisedTriangulation& gt, const Assembly& a, const std::vector<SignedEdge>& word) {
  std::map<int, int> count;
  for (auto [e, s] : word) count[e] += s;
  std::string out;
  for (auto [e, n] : count) {
    if (n == 0) continue;
    const DiscMatch& m = a.matches[e];
    FaceGluing tmp;
    auto [t, f] = a.match_face[e];
    const FaceGluing* g = gt.gluing_at(t, f, &tmp);
    std::ostringstream os;
    os << (n > 0 ? "+" : "-");
    if (std::abs(n) > 1) os << std::abs(n) << "*";
    os << t << "." << f << ">" << g->tet_b << "." << g->face_b << "@" << a.where[m.ball_a].ball << "/"
       << a.where[m.ball_b].ball;
    out += (out.empty() ? "" : " ") + os.str();
  }
  return out.empty() ? "-" : out;
}

}  // namespace

Evaluation evaluate_assignment(const GeneralisedTriangulation& gt, const Catalog& cat, const std::vector<TileRef>& assignment) {
  Evaluation ev;
  Assembly a;
  BoundaryBuild bb;
  try {
    a = assemble_balls(gt, cat, assignment);
    bb = build_boundary(a.balls, a.matches, a.keep);
  } catch (const std::exception& e) {
    ev.rejection = Rejection::glue;
    ev.detail = e.what();
    return ev;
  }
  if (!bb.gamma_simple) {
    ev.rejection = Rejection::gamma_not_simple;
    return ev;
  }
  std::vector<const GammaCurve*> kept;
  for (const GammaCurve& g : bb.gamma)
    if (g.disc_crossings > 0 || g.balls_touched > 1) kept.push_back(&g);
  if (kept.empty()) {
    ev.rejection = Rejection::gamma_empty;
    return ev;
  }
  if (kept.size() > 1) {
    ev.rejection = Rejection::gamma_disconnected;
    ev.detail = std::to_string(kept.size()) + " components";
    return ev;
  }
  Candidate c;
  c.assignment = assignment;
  for (TileRef r : assignment) c.tiles.push_back(tile_id(cat, r));
  c.gamma_components = (int)bb.gamma.size();
  c.stripped_components = (int)bb.gamma.size() - 1;
  MPrime& m = c.mprime;
  m.graph.vertex_count = (int)a.balls.size();
  for (const DiscMatch& mt : a.matches) m.graph.edges.push_back({mt.ball_a, mt.ball_b});
  m.tau_words = bb.cap_words;
  m.surface = bb.complex;
  try {
    c.basis = boundary_basis(m);
  } catch (const NotInfiniteCyclic& e) {
    ev.rejection = Rejection::h1;
    ev.detail = e.what();
    return ev;
  } catch (const NotTorus& e) {
    ev.rejection = Rejection::not_torus;
    ev.detail = e.what();
    return ev;
  } catch (const NotPrimitive& e) {
    ev.rejection = Rejection::not_primitive;
    ev.detail = e.what();
    return ev;
  }
  c.h1 = H1Group{1, {}};
  c.sigma_chain.assign(m.surface.edges.size(), 0);
  for (auto [e, s] : kept[0]->chain) c.sigma_chain[e] += s;
  auto s = c.basis.in_basis(c.sigma_chain);
  if (s[0] == 0 && s[1] == 0) {
    ev.rejection = Rejection::gamma_inessential;
    return ev;
  }
  c.basis.reduce_against(s);
  s = c.basis.in_basis(c.sigma_chain);
  c.basis_id = c.basis.id;
  c.lambda = c.basis.lambda;
  c.mu = c.basis.mu;
  c.sigma = TorusSlope(s[0], s[1], c.basis.id);
  c.delta_mu_sigma = slope_distance(c.sigma, TorusSlope(0, 1, c.basis.id));
  c.delta_lambda_sigma = slope_distance(c.sigma, TorusSlope(1, 0, c.basis.id));
  if (c.sigma.a != 0) c.pq = std::make_pair(c.sigma.b, c.sigma.a);
  c.k_walk = walk_string(gt, a, graph_word(m, c.basis.lambda_chain));
  c.flags = {"reducible=unverified", "solid_torus=unverified", "torsion_order=unverified", "norm=unverified"};
  ev.candidate = std::move(c);
  return ev;
}

std::vector<std::vector<int>> static_domains(const GeneralisedTriangulation& gt, const std::vector<Tile>& tiles) {
  std::vector<std::vector<int>> dom(gt.tet_count);
  for (int t = 0; t < gt.tet_count; ++t) {
    std::array<bool, 4> free{};
    for (int f = 0; f < 4; ++f) {
      FaceGluing tmp;
      free[f] = gt.gluing_at(t, f, &tmp) == nullptr;
    }
    for (int g = 0; g < (int)tiles.size(); ++g) {
      bool ok = true;
      for (int f = 0; f < 4 && ok; ++f)
        if (free[f] && !tiles[g].faces[f].empty()) ok = false;
      if (ok) dom[t].push_back(g);
    }
  }
  return dom;
}

namespace {

struct Searcher {
  const GeneralisedTriangulation& gt;
  const Catalog& cat;
  const std::vector<Tile>& tiles;
  const SearchCaps& caps;
  const std::vector<std::vector<int>>& dom;
  const std::unordered_map<std::string, std::vector<int>>& by_face_sig;   // "f|sig" -> sorted tiles
  const std::vector<std::vector<char>>& allowed;   // per tet, membership in its static domain

  std::vector<int> assign;
  SearchStats stats;
  std::vector<Candidate> found;
  std::vector<std::vector<FaceGluing>> at;   // per tet, gluings with side a at it

  bool fits_self(int t, int g) const {
    for (const FaceGluing& gl : at[t])
      if (gl.tet_b == t && transport_signature(tiles[g].faces[gl.face_a], gl.perm()) != tiles[g].faces[gl.face_b])
        return false;
    return true;
  }

  std::vector<int> domain_of(int t) const {
    std::vector<const std::vector<int>*> lists;
    std::vector<int> cur;
    for (const FaceGluing& gl : at[t]) {
      if (gl.tet_b == t || assign[gl.tet_b] < 0) continue;
      // the neighbour's face, carried back to this tetrahedron
      const std::string& theirs = tiles[assign[gl.tet_b]].faces[gl.face_b];
      std::string need = transport_signature(theirs, inverse(gl.perm()));
      auto it = by_face_sig.find(std::to_string(gl.face_a) + "|" + need);
      if (it == by_face_sig.end()) return {};
      lists.push_back(&it->second);
    }
    if (lists.empty()) {
      cur = dom[t];
    } else {
      std::sort(lists.begin(), lists.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
      for (int g : *lists[0])
        if (allowed[t][g]) cur.push_back(g);
      for (std::size_t k = 1; k < lists.size() && !cur.empty(); ++k) {
        std::vector<int> nx;
        std::set_intersection(cur.begin(), cur.end(), lists[k]->begin(), lists[k]->end(), std::back_inserter(nx));
        cur.swap(nx);
      }
    }
    std::vector<int> out;
    for (int g : cur)
      if (fits_self(t, g)) out.push_back(g);
    return out;
  }

  bool stop() const {
    return stats.nodes >= caps.max_nodes || stats.assignments >= caps.max_assignments || found.size() >= caps.max_candidates;
  }

  void run(int depth) {
    if (stop()) {
      stats.capped = true;
      return;
    }
    int best = -1;
    std::vector<int> best_dom;
    for (int t = 0; t < gt.tet_count; ++t) {
      if (assign[t] >= 0) continue;
      auto d = domain_of(t);
      if (best < 0 || d.size() < best_dom.size()) {
        best = t;
        best_dom = std::move(d);
      }
      if (best_dom.empty()) break;
    }
    if (best < 0) {
      ++stats.assignments;
      std::vector<TileRef> refs;
      for (int i : assign) refs.push_back(tiles[i].ref);
      Evaluation ev = evaluate_assignment(gt, cat, refs);
      if (ev.candidate) found.push_back(std::move(*ev.candidate));
      else ++stats.rejected[to_string(ev.rejection)];
      return;
    }
    for (int g : best_dom) {
      if (stop()) {
        stats.capped = true;
        return;
      }
      ++stats.nodes;
      assign[best] = g;
      run(depth + 1);
      assign[best] = -1;
    }
  }
};

}  // namespace

SearchResult search(const GeneralisedTriangulation& input, const Catalog& cat, const SearchCaps& caps, int threads) {
  SearchResult res;
  ValidationReport vr = validate(input);
  if (!vr.orientable) throw std::invalid_argument("triangulation is not orientable");
  GeneralisedTriangulation gt = coherently_oriented(input);
  if (!vr.coherent) res.notes.push_back("tetrahedra relabelled to a coherent orientation");
  std::vector<Tile> tiles = catalog_tiles(cat);
  auto dom = static_domains(gt, tiles);
  std::unordered_map<std::string, std::vector<int>> by_face_sig;
  for (int g = 0; g < (int)tiles.size(); ++g)
    for (int f = 0; f < 4; ++f) by_face_sig[std::to_string(f) + "|" + tiles[g].faces[f]].push_back(g);
  mpz_class bound = 1;
  for (auto& d : dom) {
    bound *= (unsigned long)d.size();
    res.stats.domain.push_back(d.size());
  }
  res.stats.naive_bound = bound.get_str();
  if (gt.tet_count == 0) return res;
  std::vector<std::vector<char>> allowed(gt.tet_count, std::vector<char>(tiles.size(), 0));
  for (int t = 0; t < gt.tet_count; ++t)
    for (int g : dom[t]) allowed[t][g] = 1;

  std::vector<std::vector<FaceGluing>> at(gt.tet_count);
  for (const FaceGluing& gl : gt.gluings) {
    at[gl.tet_a].push_back(gl);
    FaceGluing back;
    gt.gluing_at(gl.tet_b, gl.face_b, &back);
    at[gl.tet_b].push_back(back);
  }
  // the most constrained tetrahedron goes first; branches over its graphs run in parallel
  Searcher probe{gt, cat, tiles, caps, dom, by_face_sig, allowed, std::vector<int>(gt.tet_count, -1), {}, {}, at};
  int root = 0;
  std::size_t bestn = SIZE_MAX;
  for (int t = 0; t < gt.tet_count; ++t) {
    auto d = probe.domain_of(t);
    if (d.size() < bestn) {
      bestn = d.size();
      root = t;
    }
  }
  std::vector<int> top = probe.domain_of(root);
  struct Branch {
    SearchStats stats;
    std::vector<Candidate> found;
  };
  std::vector<Branch> parts(top.size());
  auto work = [&](std::size_t i) {
    Searcher s{gt, cat, tiles, caps, dom, by_face_sig, allowed, std::vector<int>(gt.tet_count, -1), {}, {}, at};
    s.assign[root] = top[i];
    ++s.stats.nodes;
    s.run(1);
    parts[i] = {std::move(s.stats), std::move(s.found)};
  };
  // branches run in order, a chunk at a time, so the caps cut the same place for any thread count
  threads = std::max(1, threads);
  std::size_t nodes = 0, assigns = 0, cands = 0;
  std::size_t chunk = threads == 1 ? 1 : 4 * (std::size_t)threads, done = 0;
  for (std::size_t lo = 0; lo < top.size(); lo += chunk) {
    if (nodes >= caps.max_nodes || assigns >= caps.max_assignments || cands >= caps.max_candidates) break;
    std::size_t hi = std::min(top.size(), lo + chunk);
    if (threads == 1) {
      for (std::size_t i = lo; i < hi; ++i) work(i);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (std::size_t i = lo + t; i < hi; i += threads) work(i);
        });
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = lo; i < hi; ++i) {
      nodes += parts[i].stats.nodes;
      assigns += parts[i].stats.assignments;
      cands += parts[i].found.size();
    }
    done = hi;
  }
  if (done < top.size()) res.stats.capped = true;
  // merge in branch order and apply the global caps to the merged sequence
  for (std::size_t i = 0; i < done; ++i) {
    SearchStats& s = parts[i].stats;
    if (res.stats.nodes >= caps.max_nodes || res.stats.assignments >= caps.max_assignments ||
        res.candidates.size() >= caps.max_candidates) {
      res.stats.capped = true;
      break;
    }
    res.stats.nodes += s.nodes;
    res.stats.assignments += s.assignments;
    res.stats.capped = res.stats.capped || s.capped;
    for (auto& [k, v] : s.rejected) res.stats.rejected[k] += v;
    for (auto& c : parts[i].found) {
      if (res.candidates.size() >= caps.max_candidates) {
        res.stats.capped = true;
        break;
      }
      res.candidates.push_back(std::move(c));
    }
  }
  std::sort(res.candidates.begin(), res.candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.assignment < b.assignment; });
  res.stats.candidates = res.candidates.size();
  return res;
}

std::string CertificationReport::summary() const {
  if (!consistent) return "internally inconsistent";
  return "internally consistent; external checks pending";
}

namespace {

void slope_checks(const mpz_class& sa, const mpz_class& sb, const mpz_class& dls, const mpz_class& dms,
                  const std::optional<std::pair<mpz_class, mpz_class>>& pq, std::vector<std::string>& issues) {
  if (dms != abs(sa))
    issues.push_back("SlopeArithmeticMismatch: delta(sigma,mu) is " + dms.get_str() + " but the slope gives " + mpz_class(abs(sa)).get_str());
  if (dls != abs(sb))
    issues.push_back("SlopeArithmeticMismatch: delta(lambda,sigma) is " + dls.get_str() + " but the slope gives " + mpz_class(abs(sb)).get_str());
  if (pq) {
    if (pq->second != sa || pq->first != sb)
      issues.push_back("SlopeArithmeticMismatch: p/q " + pq->first.get_str() + "/" + pq->second.get_str() +
                       " disagrees with the slope");
  } else if (sa != 0) {
    issues.push_back("SlopeArithmeticMismatch: p/q missing");
  }
}

}  // namespace

CertificationReport certify_candidate(const Candidate& c) {
  CertificationReport r;
  slope_checks(c.sigma.a, c.sigma.b, c.delta_lambda_sigma, c.delta_mu_sigma, c.pq, r.issues);
  if (c.sigma.basis != c.basis_id) r.issues.push_back("BasisMismatch: slope and basis ids differ");
  try {
    H1Group h = h1_group(h1_presentation(c.mprime.graph, c.mprime.tau_words));
    if (!h.infinite_cyclic()) r.issues.push_back("HomologyMismatch: H1 recomputes as " + h.str());
    BoundaryBasis b = c.basis;
    if (!verify_basis(c.mprime, b)) r.issues.push_back("HomologyMismatch: lambda/mu fail the H1 test");
    auto s = b.in_basis(c.sigma_chain);
    TorusSlope again(s[0], s[1], b.id);
    if (!(again == c.sigma)) r.issues.push_back("SlopeArithmeticMismatch: sigma recomputes as " + again.str());
    if (b.lambda != c.lambda || b.mu != c.mu) r.issues.push_back("BasisMismatch: stored lambda/mu differ from the basis");
    int comps = 0;
    c.mprime.surface.vertex_components(&comps);
    if (comps != 1 || c.mprime.surface.euler() != 0) r.issues.push_back("NotTorus: boundary is not a torus");
  } catch (const std::exception& e) {
    r.issues.push_back(std::string("recomputation failed: ") + e.what());
  }
  if (c.gamma_components - c.stripped_components != 1) r.issues.push_back("gamma is not a single curve");
  r.consistent = r.issues.empty();
  if (c.delta_mu_sigma <= 1)
    r.notes.push_back("delta(sigma,mu) = " + c.delta_mu_sigma.get_str() + ": outside the delta(sigma,mu) > 1 regime");
  r.external = {"reducibility of the filled manifold: unverified", "solid torus recognition: unverified",
                "order of the core in pi1: unverified", "Thurston norm comparison: unverified"};
  return r;
}

void write_candidates(std::ostream& os, const GeneralisedTriangulation& gt, const SearchResult& r) {
  os << "dehn-candidates 1\n";
  os << "triangulation tets=" << gt.tet_count << " gluings=" << gt.gluings.size() << " policy=" << to_string(gt.policy)
     << '\n';
  const SearchStats& s = r.stats;
  os << "stats nodes=" << s.nodes << " assignments=" << s.assignments << " candidates=" << s.candidates
     << " capped=" << s.capped << " naive_bound=" << s.naive_bound << '\n';
  os << "domains";
  for (auto d : s.domain) os << ' ' << d;
  os << "\nrejected";
  for (auto& [k, v] : s.rejected) os << ' ' << k << '=' << v;
  os << '\n';
  for (auto& n : r.notes) os << "note " << n << '\n';
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    const Candidate& c = r.candidates[i];
    os << "candidate " << i << '\n';
    os << "assignment";
    for (std::size_t t = 0; t < c.assignment.size(); ++t) os << ' ' << t << ':' << c.assignment[t].str() << '=' << c.tiles[t];
    os << '\n';
    os << "h1 " << c.h1.str() << '\n';
    os << "basis " << c.basis_id << " lambda=(" << c.lambda[0].get_str() << ',' << c.lambda[1].get_str() << ") mu=("
       << c.mu[0].get_str() << ',' << c.mu[1].get_str() << ")\n";
    os << "sigma " << c.sigma.a.get_str() << ' ' << c.sigma.b.get_str() << '\n';
    os << "delta_lambda_sigma " << c.delta_lambda_sigma.get_str() << '\n';
    os << "delta_mu_sigma " << c.delta_mu_sigma.get_str() << '\n';
    os << "pq " << (c.pq ? c.pq->first.get_str() + "/" + c.pq->second.get_str() : "-") << '\n';
    os << "gamma components=" << c.gamma_components << " stripped=" << c.stripped_components << '\n';
    os << "K " << c.k_walk << '\n';
    os << "flags";
    for (auto& f : c.flags) os << ' ' << f;
    os << '\n';
    CertificationReport rep = certify_candidate(c);
    os << "certify " << rep.summary() << '\n';
    for (auto& n : rep.notes) os << "note " << n << '\n';
    for (auto& n : rep.issues) os << "issue " << n << '\n';
  }
  os << "end\n";
}

std::vector<std::string> check_candidate_report(std::istream& is) {
  std::vector<std::string> out;
  std::string line;
  if (!std::getline(is, line) || line != "dehn-candidates 1") return {"not a candidate report"};
  struct Rec {
    int line = 0;
    std::optional<mpz_class> sa, sb, dls, dms;
    std::optional<std::pair<mpz_class, mpz_class>> pq;
    bool pq_seen = false;
  };
  std::vector<Rec> recs;
  int ln = 1;
  bool ended = false;
  std::size_t declared = 0;
  while (std::getline(is, line)) {
    ++ln;
    std::istringstream ss(line);
    std::string w;
    ss >> w;
    try {
      if (w == "candidate") {
        recs.push_back({});
        recs.back().line = ln;
      } else if (w == "stats") {
        std::string f;
        while (ss >> f)
          if (f.rfind("candidates=", 0) == 0) declared = std::stoul(f.substr(11));
      } else if (!recs.empty() && w == "sigma") {
        std::string a, b;
        ss >> a >> b;
        recs.back().sa = mpz_class(a);
        recs.back().sb = mpz_class(b);
      } else if (!recs.empty() && w == "delta_lambda_sigma") {
        std::string a;
        ss >> a;
        recs.back().dls = mpz_class(a);
      } else if (!recs.empty() && w == "delta_mu_sigma") {
        std::string a;
        ss >> a;
        recs.back().dms = mpz_class(a);
      } else if (!recs.empty() && w == "pq") {
        std::string a;
        ss >> a;
        recs.back().pq_seen = true;
        if (a != "-") {
          auto k = a.find('/');
          if (k == std::string::npos) throw std::invalid_argument("pq");
          recs.back().pq = std::make_pair(mpz_class(a.substr(0, k)), mpz_class(a.substr(k + 1)));
        }
      } else if (w == "end") {
        ended = true;
      }
    } catch (const std::exception&) {
      out.push_back("line " + std::to_string(ln) + ": malformed number");
    }
  }
  if (!ended) out.push_back("report is truncated");
  if (declared != recs.size()) out.push_back("stats declare " + std::to_string(declared) + " candidates, found " + std::to_string(recs.size()));
  for (const Rec& r : recs) {
    std::string at = "candidate at line " + std::to_string(r.line) + ": ";
    if (!r.sa || !r.dls || !r.dms || !r.pq_seen) {
      out.push_back(at + "missing slope fields");
      continue;
    }
    std::vector<std::string> issues;
    slope_checks(*r.sa, *r.sb, *r.dls, *r.dms, r.pq, issues);
    for (auto& i : issues) out.push_back(at + i);
  }
  return out;
}

}  // namespace dehn
