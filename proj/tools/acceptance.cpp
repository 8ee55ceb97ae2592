#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <sys/wait.h>

#include "dehn/assemble.hpp"
#include "dehn/catalog.hpp"
#include "dehn/complexity.hpp"
#include "dehn/homology.hpp"
#include "fixtures.hpp"
#include "op6_oracle.hpp"
#include "planted.hpp"

using namespace dehn;

namespace {

using T = ComplexityTriple;
using S = FComplexitySet;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int threads_for_runs() { return std::max(2u, std::thread::hardware_concurrency()); }

T random_triple(std::mt19937& rng) { return {long(1 + rng() % 4), long(rng() % 5), long(rng() % 4)}; }

S random_set(std::mt19937& rng, int max_size) {
  std::vector<T> t;
  int n = rng() % (max_size + 1);
  for (int i = 0; i < n; ++i) t.push_back(random_triple(rng));
  return S(t);
}

template <class X, class Cmp>
std::size_t order_failures(const std::vector<X>& xs, Cmp cmp, std::mt19937& rng) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const X& a = xs[i];
    const X& b = xs[rng() % xs.size()];
    const X& c = xs[rng() % xs.size()];
    auto ab = cmp(a, b), ba = cmp(b, a), bc = cmp(b, c), ac = cmp(a, c);
    if ((ab == 0) != (a == b)) ++bad;                    // totality: equal exactly when identical
    if ((ab < 0) != (ba > 0) || (ab == 0) != (ba == 0)) ++bad;  // antisymmetry
    if (ab <= 0 && bc <= 0 && !(ac <= 0)) ++bad;          // transitivity
    if (ab < 0 && bc < 0 && !(ac < 0)) ++bad;
    if (cmp(a, a) != 0) ++bad;
  }
  return bad;
}

Outcome ordering_laws() {
  std::mt19937 rng(101);
  const int n = 10000;
  std::vector<T> ts;
  std::vector<S> ss;
  std::vector<Complexity> cs;
  std::vector<ExtendedComplexity> es;
  for (int i = 0; i < n; ++i) {
    ts.push_back(random_triple(rng));
    ss.push_back(random_set(rng, 4));
    cs.push_back({random_set(rng, 3), int(rng() % 4)});
    es.push_back({random_set(rng, 3), int(rng() % 4)});
  }
  std::size_t bad = order_failures(ts, compare_triples, rng) + order_failures(ss, compare_sets, rng) +
                    order_failures(cs, compare_complexity, rng) + order_failures(es, compare_extended, rng);
  return {bad == 0, std::to_string(4 * n) + " inputs, " + std::to_string(bad) + " failures"};
}

struct FullRun {
  std::string catalog_text;
  std::size_t configs = 0, transitions = 0, descent_checks = 0, violations = 0;
  bool threw = false;
  std::string error;
};

FullRun full_catalog(int threads) {
  FullRun fr;
  EngineCaps caps;
  EngineResult r;
  try {
    r = run_engine(base_configs(tetrahedron_pattern()), caps, threads);
  } catch (const DescentViolation& e) {
    fr.threw = true;
    fr.error = e.what();
    return fr;
  }
  std::map<std::string, const StageConfig*> by_key;
  for (auto& e : r.entries) by_key[e.cfg.key] = &e.cfg;
  for (auto& e : r.entries) {
    if (e.cfg.parent.empty()) continue;
    auto it = by_key.find(e.cfg.parent);
    if (it == by_key.end() || !descends(it->second->balls, e.cfg.balls)) ++fr.violations;
  }
  fr.configs = r.entries.size();
  fr.transitions = r.stats.transitions;
  fr.descent_checks = r.stats.descent_checks;
  Catalog c = build_catalog(r, caps, "tetrahedron", threads);
  std::ostringstream os;
  write_catalog(os, c);
  fr.catalog_text = os.str();
  return fr;
}

FullRun& first_run() {
  static FullRun fr = full_catalog(1);
  return fr;
}

Outcome descent() {
  FullRun& fr = first_run();
  if (fr.threw) return {false, fr.error};
  bool ok = fr.violations == 0 && fr.descent_checks == fr.transitions;
  return {ok, std::to_string(fr.transitions) + " transitions checked, " + std::to_string(fr.violations) +
                  " violations among " + std::to_string(fr.configs) + " retained configs"};
}

S join(const std::vector<S>& parts) {
  S out;
  for (auto& p : parts)
    for (auto& t : p.triples) out.insert(t);
  return out;
}

S shrink(const S& s, std::mt19937& rng) {
  std::vector<T> out;
  for (T t : s.triples) {
    int r = rng() % 4;
    if (r == 0) continue;
    if (r == 1) {
      if (t.c3 > 0) --t.c3;
      else if (t.c2 > 0) --t.c2;
      else if (t.c1 > 1) t = {t.c1 - 1, long(rng() % 6), long(rng() % 6)};
    }
    out.push_back(t);
  }
  return S(out);
}

Outcome partition_monotonicity() {
  std::mt19937 rng(202);
  std::size_t bad = 0, strict_cases = 0;
  for (int it = 0; it < 1000; ++it) {
    int parts = 1 + rng() % 5;
    std::vector<S> a, b;
    bool strict = false;
    for (int i = 0; i < parts; ++i) {
      a.push_back(random_set(rng, 3));
      b.push_back(rng() % 3 ? shrink(a.back(), rng) : a.back());
      if (compare_sets(b.back(), a.back()) > 0) ++bad;
      if (compare_sets(b.back(), a.back()) < 0) strict = true;
    }
    auto r = compare_sets(join(b), join(a));
    if (r > 0) ++bad;
    if (strict) {
      ++strict_cases;
      if (r >= 0) ++bad;
    }
  }
  return {bad == 0, "1000 instances (" + std::to_string(strict_cases) + " strict), " + std::to_string(bad) + " failures"};
}

Outcome index_conservation() {
  std::mt19937 rng(303);
  auto bases = base_configs(tetrahedron_pattern());
  std::vector<SphereComplex> spheres;
  std::vector<std::vector<Curve>> curves;
  for (auto& b : bases) {
    SphereComplex sc = detail::prepared(b.balls[0]);
    curves.push_back(op6_curves(sc, 6));
    spheres.push_back(std::move(sc));
  }
  int done = 0, bad = 0, tries = 0;
  while (done < 500 && tries < 20000) {
    ++tries;
    std::size_t k = rng() % spheres.size();
    const SphereComplex& sc = spheres[k];
    const auto& cv = curves[k];
    std::vector<Curve> pick{cv[rng() % cv.size()]};
    if (rng() % 2) pick.push_back(cv[rng() % cv.size()]);
    auto rs = realizations(sc, pick, 4);
    if (rs.empty()) continue;
    const CurveSystem& cs = rs[rng() % rs.size()];
    if (pick.size() > 1 && !check_conditions(cs, sc).condition[1].satisfied) continue;
    std::vector<SphereComplex> pieces = split_along(sc, cs);
    ++done;
    // per original zero-handle, the indices of the zero-handles cut from it
    std::map<int, long> before, after;
    for (int z : cells_of_kind(sc, CellKind::zero_handle)) before[z] = zero_handle_index(sc, z);
    long f_before = 0, f_after = 0;
    for (auto& f : f_components(sc)) f_before += f.index();
    for (auto& p : pieces) {
      for (int z : cells_of_kind(p, CellKind::zero_handle)) after[p.cells[z].origins.front()] += zero_handle_index(p, z);
      for (auto& f : f_components(p)) f_after += f.index();
    }
    if (before != after || f_before != f_after) ++bad;
  }
  return {done == 500 && bad == 0, std::to_string(done) + " splits, " + std::to_string(bad) + " failures"};
}

std::string run_cli(const std::string& args, int* code) {
  std::string cmd = std::string(DEHN_CLI) + " " + args;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) {
    *code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = ::pclose(p);
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Outcome base_catalog() {
  int code = 0;
  std::string text = run_cli("catalog --caps.max_stages=1 --quiet", &code);
  if (code != 0) return {false, "exit code " + std::to_string(code)};
  std::istringstream is(text);
  Catalog c = read_catalog(is);
  std::size_t stage1 = 0;
  for (auto& cc : c.configs) stage1 += cc.cfg.stage == 1;
  return {c.configs.size() == 16 && stage1 == 16,
          std::to_string(c.configs.size()) + " configs, " + std::to_string(c.graphs.size()) + " graphs"};
}

Outcome op6_oracle_match() {
  std::size_t engine_total = 0, oracle_total = 0;
  int mismatched = 0;
  for (const StageConfig& cfg : base_configs(tetrahedron_pattern())) {
    auto engine = op6_oracle::engine_children(cfg, 6);
    auto oracle = op6_oracle::decompose(cfg, 6);
    engine_total += engine.size();
    oracle_total += oracle.child_keys.size();
    if (engine != oracle.child_keys) ++mismatched;
  }
  return {mismatched == 0, "16 bases, " + std::to_string(engine_total) + " engine children, " +
                               std::to_string(oracle_total) + " oracle children"};
}

Outcome index_spots() {
  auto single = [](const SphereComplex& sc, long* index) {
    auto comps = f_components(sc);
    if (comps.empty()) return false;
    for (auto& c : comps)
      if (c.index() != comps[0].index()) return false;
    *index = comps[0].index();
    return true;
  };
  long disc = -1, product = -1, annulus = -1;
  bool ok = single(planted::two_disc_ball(0, 1, "gbg"), &disc) && disc == 2;
  ok = ok && single(planted::two_disc_ball(0, 1, "gb"), &product) && product == 0;
  ok = ok && single(planted::two_disc_ball(0, 1, "bb"), &annulus) && annulus == 0;
  ok = ok && index_of_component(1, 4) == 2 && index_of_component(1, 2) == 0 && index_of_component(0, 0) == 0;
  return {ok, "disc with four points " + std::to_string(disc) + ", product disc " + std::to_string(product) +
                  ", annulus " + std::to_string(annulus)};
}

bool divides(const mpz_class& a, const mpz_class& b) { return a == 0 ? b == 0 : b % a == 0; }

Outcome snf() {
  std::mt19937 rng(404);
  int bad = 0;
  for (int it = 0; it < 1000; ++it) {
    int r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix a(r, c);
    for (auto& e : a.entries) e = int(rng() % 11) - 5;
    SNFResult s = smith_normal_form(a);
    bool ok = s.U * a * s.V == s.D;
    mpz_class du = determinant(s.U), dv = determinant(s.V);
    ok = ok && abs(du) == 1 && abs(dv) == 1;
    int k = std::min(r, c);
    for (int i = 0; i < r && ok; ++i)
      for (int j = 0; j < c && ok; ++j)
        if (i != j && s.D(i, j) != 0) ok = false;
    for (int i = 0; i < k && ok; ++i) {
      if (s.D(i, i) < 0) ok = false;
      if (i + 1 < k && !divides(s.D(i, i), s.D(i + 1, i + 1))) ok = false;
    }
    if (!ok) ++bad;
  }
  return {bad == 0, "1000 matrices, " + std::to_string(bad) + " failures"};
}

// every assignment whose faces agree across every gluing, evaluated one by one
std::vector<Candidate> brute_force(const GeneralisedTriangulation& gt, const Catalog& cat) {
  GeneralisedTriangulation co = coherently_oriented(gt);
  auto tiles = catalog_tiles(cat);
  std::vector<Candidate> out;
  std::size_t total = 1;
  for (int t = 0; t < co.tet_count; ++t) total *= tiles.size();
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t r = n;
    std::vector<int> idx(co.tet_count);
    std::vector<TileRef> refs(co.tet_count);
    for (int t = co.tet_count - 1; t >= 0; --t) {
      idx[t] = int(r % tiles.size());
      refs[t] = tiles[idx[t]].ref;
      r /= tiles.size();
    }
    bool ok = true;
    for (const FaceGluing& gl : co.gluings) {
      FaceSignature a = parse_signature(gl.face_a, tiles[idx[gl.tet_a]].faces[gl.face_a]);
      FaceSignature b = parse_signature(gl.face_b, tiles[idx[gl.tet_b]].faces[gl.face_b]);
      if (!compatible(a, b, gl)) ok = false;
    }
    if (!ok) continue;
    Evaluation ev = evaluate_assignment(co, cat, refs);
    if (ev.candidate) out.push_back(*ev.candidate);
  }
  return out;
}

Outcome planted_candidate() {
  planted::Fixture f = planted::loop_fixture();
  SearchResult r = search(f.gt, f.catalog, SearchCaps{});
  auto oracle = brute_force(f.gt, f.catalog);
  if (r.candidates.size() != 1 || oracle.size() != 1) return {false, std::to_string(r.candidates.size()) + " candidates"};
  const Candidate& c = r.candidates[0];
  const Candidate& o = oracle[0];
  bool ok = c.h1.str() == "Z" && c.assignment == o.assignment && c.delta_mu_sigma == 1 && c.delta_lambda_sigma == 0 &&
            c.delta_mu_sigma == o.delta_mu_sigma && c.delta_lambda_sigma == o.delta_lambda_sigma &&
            certify_candidate(c).consistent;
  return {ok, "1 candidate, H1 " + c.h1.str() + ", delta(mu,sigma) " + c.delta_mu_sigma.get_str() +
                  ", delta(lambda,sigma) " + c.delta_lambda_sigma.get_str()};
}

Outcome bound_formula() {
  std::mt19937 rng(505);
  int bad = 0;
  for (int it = 0; it < 100; ++it) {
    long chi = long(rng() % 9) - 6, g = long(rng() % 12), d = 2 + long(rng() % 9);
    mpq_class want(mpz_class(-2 * chi + g), mpz_class(2 * (d - 1)));
    want.canonicalize();
    if (surgery_bound(chi, g, d) != want) ++bad;
  }
  return {bad == 0, "100 triples, " + std::to_string(bad) + " mismatches"};
}

Outcome determinism() {
  FullRun& a = first_run();
  FullRun b = full_catalog(threads_for_runs());
  bool same_catalog = !a.threw && !b.threw && a.catalog_text == b.catalog_text;
  b.catalog_text.clear();

  // search the engine's own catalog over the cusped two-tetrahedron complex
  std::istringstream is(a.catalog_text);
  Catalog cat = read_catalog(is);
  GeneralisedTriangulation gt = planted::two_tet();
  SearchCaps caps;
  caps.max_nodes = 200000;
  caps.max_assignments = 20000;
  std::ostringstream x, y;
  write_candidates(x, gt, search(gt, cat, caps, 1));
  write_candidates(y, gt, search(gt, cat, caps, threads_for_runs()));
  bool same_candidates = x.str() == y.str();

  planted::Fixture f = planted::loop_fixture();
  std::ostringstream p, q;
  write_candidates(p, f.gt, search(f.gt, f.catalog, SearchCaps{}, 1));
  write_candidates(q, f.gt, search(f.gt, f.catalog, SearchCaps{}, threads_for_runs()));
  same_candidates = same_candidates && p.str() == q.str();
  return {same_catalog && same_candidates, std::string("catalog ") + (same_catalog ? "identical" : "differs") + " (" +
                                               std::to_string(a.catalog_text.size()) + " bytes), candidates " +
                                               (same_candidates ? "identical" : "differ")};
}

struct Criterion {
  const char* name;
  double limit;   // seconds, 0 for none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> all = {
      {"ordering laws", 10, ordering_laws},
      {"descent over a full catalog run", 300, descent},
      {"partition monotonicity", 10, partition_monotonicity},
      {"index conservation under splitting", 30, index_conservation},
      {"base catalog at one stage", 1, base_catalog},
      {"decomposing-curve oracle", 120, op6_oracle_match},
      {"index spot values", 0, index_spots},
      {"Smith normal form", 30, snf},
      {"planted candidate", 60, planted_candidate},
      {"surgery bound formula", 0, bound_formula},
      {"determinism across thread counts", 0, determinism},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit == 0 || s < c.limit;
    bool pass = o.pass && in_time;
    if (!pass) ++failed;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", s);
    std::cout << (pass ? "PASS " : "FAIL ") << c.name << " [" << secs << (in_time ? "" : " over limit") << "] " << o.detail
              << std::endl;
  }
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
