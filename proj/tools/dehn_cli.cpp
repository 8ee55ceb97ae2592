#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dehn/assemble.hpp"
#include "dehn/catalog.hpp"
#include "dehn/triangulation.hpp"
#include "diagram.hpp"

using namespace dehn;

namespace {

enum Exit { ok = 0, usage = 1, invalid = 2, violation = 3 };

struct Failure {
  Exit code;
  std::string what;
};

struct Options {
  std::string out;
  int threads = 1;
  std::string diagrams;
  bool quiet = false;
  EngineCaps caps;
  SearchCaps search_caps;
  std::string pattern = "tetrahedron";
  std::vector<std::string> inputs;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{usage, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// the artifact goes to --out or stdout; the summary never mixes with it
void emit(const Options& o, const std::string& artifact, const std::string& summary) {
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Failure{usage, "cannot write " + o.out};
    f << artifact;
    if (!o.quiet) std::cout << summary;
  } else {
    std::cout << artifact;
    if (!o.quiet) std::cerr << summary;
  }
}

void write_diagram(const Options& o, const std::string& name, const std::string& svg) {
  std::filesystem::create_directories(o.diagrams);
  std::ofstream f(std::filesystem::path(o.diagrams) / name, std::ios::binary);
  if (!f) throw Failure{usage, "cannot write diagram " + name};
  f << svg;
}

GeneralisedTriangulation load_triangulation(const std::string& path) {
  try {
    return parse_triangulation(slurp(path));
  } catch (const TriangulationError& e) {
    throw Failure{invalid, path + ": " + e.what()};
  }
}

// "tetrahedron", "empty" or "faces=F,edges=E[,h3=H]" with hexadecimal masks
SphereComplex pattern_of(const std::string& sel) {
  if (sel == "tetrahedron") return tetrahedron_pattern();
  if (sel == "empty") return tetrahedron_pattern(0, 0);
  unsigned faces = 0xF, edges = 0x3F, h3 = 0;
  std::istringstream ss(sel);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw Failure{usage, "bad pattern selector " + sel};
    std::string k = part.substr(0, eq);
    unsigned v = 0;
    try {
      v = (unsigned)std::stoul(part.substr(eq + 1), nullptr, 16);
    } catch (const std::exception&) {
      throw Failure{usage, "bad pattern selector " + sel};
    }
    if (k == "faces" && v <= 0xF) faces = v;
    else if (k == "edges" && v <= 0x3F) edges = v;
    else if (k == "h3" && v <= 0xF) h3 = v;
    else throw Failure{usage, "bad pattern selector " + sel};
  }
  return tetrahedron_pattern(faces, edges, Orientation::in, h3);
}

int cmd_dual(const Options& o) {
  GeneralisedTriangulation gt = load_triangulation(o.inputs[0]);
  ValidationReport v = validate(gt);
  std::ostringstream os;
  bool fatal = false;
  for (auto& f : v.failures)
    if (f.rfind("boundary not torus", 0) != 0) fatal = true;
  if (fatal) {
    for (auto& f : v.failures) std::cerr << "failure: " << f << '\n';
    return invalid;
  }
  HandleStructure hs = dual_handle_structure(gt);
  try {
    check_handle_structure(hs);
  } catch (const ComplexError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return violation;
  }
  BoundarySurfaceReport b = boundary_surface(hs);
  os << "handles: " << hs.counts[0] << ' ' << hs.counts[1] << ' ' << hs.counts[2] << ' ' << hs.counts[3] << '\n';
  os << "boundary: euler " << b.euler << " components";
  for (int e : b.component_euler) os << ' ' << e;
  os << '\n';
  os << "orientable " << (v.orientable ? "yes" : "no") << " coherent " << (v.coherent ? "yes" : "no") << " tori "
     << (v.boundary_tori ? "yes" : "no") << '\n';
  std::ostringstream sum;
  for (auto& f : v.failures) sum << "note: " << f << '\n';
  emit(o, os.str(), sum.str());
  return ok;
}

int cmd_catalog(const Options& o) {
  SphereComplex pattern = pattern_of(o.pattern);
  EngineResult r;
  try {
    r = run_engine(base_configs(pattern), o.caps, o.threads);
  } catch (const DescentViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return violation;
  }
  Catalog c = build_catalog(r, o.caps, o.pattern, o.threads);
  std::ostringstream os, sum;
  write_catalog(os, c);
  const EngineStats& s = r.stats;
  sum << "configs " << c.configs.size() << " graphs " << c.graphs.size() << '\n';
  sum << "nodes_expanded " << s.nodes_expanded << " transitions " << s.transitions << " dedup_hits " << s.dedup_hits
      << " frontier_remaining " << s.frontier_remaining << " descent_checks " << s.descent_checks << '\n';
  sum << "capped_nodes " << s.capped_nodes << " catalog_cap " << s.catalog_cap_hit << " stage_cap " << s.stage_cap_hit
      << " partial " << c.partial << '\n';
  if (!o.diagrams.empty())
    for (std::size_t i = 0; i < c.configs.size(); ++i) {
      const CatalogConfig& cc = c.configs[i];
      std::string title = "config " + std::to_string(i) + " stage " + std::to_string(cc.cfg.stage) +
                          (cc.cfg.op.empty() ? "" : " " + cc.cfg.op);
      write_diagram(o, "config_" + std::to_string(i) + ".svg", spheres_svg(cc.cfg.balls, title));
    }
  emit(o, os.str(), sum.str());
  return ok;
}

Catalog load_catalog(const std::string& path) {
  std::istringstream is(slurp(path));
  try {
    return read_catalog(is);
  } catch (const CatalogError& e) {
    throw Failure{invalid, path + ": " + e.what()};
  }
}

int cmd_search(const Options& o) {
  GeneralisedTriangulation gt = load_triangulation(o.inputs[0]);
  ValidationReport v = validate(gt);
  if (!v.ok()) {
    for (auto& f : v.failures) std::cerr << "failure: " << f << '\n';
    return invalid;
  }
  Catalog cat = load_catalog(o.inputs[1]);
  SearchResult r = search(gt, cat, o.search_caps, o.threads);
  std::ostringstream os, sum;
  write_candidates(os, gt, r);
  sum << "candidates " << r.candidates.size() << " assignments " << r.stats.assignments << " nodes " << r.stats.nodes
      << " capped " << r.stats.capped << '\n';
  for (auto& n : r.notes) sum << "note: " << n << '\n';
  emit(o, os.str(), sum.str());
  return ok;
}

int report(const Options& o, const std::string& kind, const std::vector<std::string>& failures, const std::string& detail) {
  std::ostringstream os;
  if (failures.empty()) os << kind << ": ok" << detail << '\n';
  else {
    os << kind << ": " << failures.size() << " violation" << (failures.size() == 1 ? "" : "s") << '\n';
    for (auto& f : failures) os << "violation: " << f << '\n';
  }
  emit(o, os.str(), "");
  return failures.empty() ? ok : violation;
}

int cmd_check(const Options& o) {
  std::string text = slurp(o.inputs[0]);
  std::istringstream head(text);
  std::string word;
  head >> word;
  if (word == "dehn-catalog") {
    Catalog c = load_catalog(o.inputs[0]);
    CatalogCheck ck = check_catalog(c, o.threads);
    return report(o, "catalog", ck.failures,
                  " (" + std::to_string(c.configs.size()) + " configs, " + std::to_string(ck.descent_checks) +
                      " descent checks)");
  }
  if (word == "dehn-candidates") {
    std::istringstream is(text);
    return report(o, "candidates", check_candidate_report(is), "");
  }
  if (word == "sphere") {
    SphereComplex sc;
    try {
      sc = parse_sphere_complex(text);
    } catch (const ComplexError& e) {
      throw Failure{invalid, o.inputs[0] + ": " + e.what()};
    }
    std::vector<std::string> failures;
    try {
      sc.validate();
    } catch (const ComplexError& e) {
      failures.push_back(e.what());
    }
    if (failures.empty() && !o.diagrams.empty()) write_diagram(o, "sphere.svg", sphere_svg(sc, o.inputs[0]));
    return report(o, "sphere", failures, " (euler " + std::to_string(sc.euler_characteristic()) + ")");
  }
  GeneralisedTriangulation gt = load_triangulation(o.inputs[0]);
  ValidationReport v = validate(gt);
  if (!v.ok()) {
    for (auto& f : v.failures) std::cerr << "failure: " << f << '\n';
    return invalid;
  }
  std::vector<std::string> failures;
  HandleStructure hs = dual_handle_structure(gt);
  try {
    check_handle_structure(hs);
  } catch (const ComplexError& e) {
    failures.push_back(e.what());
  }
  BoundarySurfaceReport b = boundary_surface(hs);
  if (b.euler != b.handle_euler) failures.push_back("boundary euler characteristic disagrees with the handle count");
  return report(o, "triangulation", failures, "");
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "write the artifact here instead of stdout");
  sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--quiet", o.quiet, "print exactly the artifact and nothing else");
  sub->add_option("--emit-diagrams", o.diagrams, "directory for SVG diagrams of the sphere complexes");
}

void add_engine_caps(CLI::App* sub, Options& o) {
  sub->add_option("--caps.max_stages", o.caps.max_stages);
  sub->add_option("--caps.max_curve_crossings", o.caps.max_curve_crossings);
  sub->add_option("--caps.max_children_per_node", o.caps.max_children_per_node);
  sub->add_option("--caps.max_catalog_size", o.caps.max_catalog_size);
  sub->add_option("--caps.max_system_curves", o.caps.max_system_curves);
}

void add_search_caps(CLI::App* sub, Options& o) {
  sub->add_option("--caps.max_nodes", o.search_caps.max_nodes);
  sub->add_option("--caps.max_assignments", o.search_caps.max_assignments);
  sub->add_option("--caps.max_candidates", o.search_caps.max_candidates);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tangle catalog and exceptional surgery search"};
  app.require_subcommand(1);
  Options o;
  std::string tri, cat, file;

  auto* dual = app.add_subcommand("dual", "dual handle structure of a triangulation");
  dual->add_option("triangulation", tri)->required();
  add_common(dual, o);

  auto* catalog = app.add_subcommand("catalog", "build the tangle catalog");
  catalog->add_option("--pattern", o.pattern, "tetrahedron, empty or faces=F,edges=E,h3=H (hex masks)");
  add_engine_caps(catalog, o);
  add_common(catalog, o);

  auto* srch = app.add_subcommand("search", "assemble catalog tiles over a triangulation");
  srch->add_option("triangulation", tri)->required();
  srch->add_option("catalog", cat)->required();
  add_search_caps(srch, o);
  add_common(srch, o);

  auto* check = app.add_subcommand("check", "run the invariant checks for an artifact file");
  check->add_option("file", file)->required();
  add_common(check, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    o.caps.validate();
    if (o.search_caps.max_nodes == 0 || o.search_caps.max_assignments == 0 || o.search_caps.max_candidates == 0)
      throw std::invalid_argument("search caps must be positive");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    if (*dual) {
      o.inputs = {tri};
      return cmd_dual(o);
    }
    if (*catalog) return cmd_catalog(o);
    if (*srch) {
      o.inputs = {tri, cat};
      return cmd_search(o);
    }
    o.inputs = {file};
    return cmd_check(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what << '\n';
    return f.code;
  } catch (const DescentViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return violation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return invalid;
  }
}
