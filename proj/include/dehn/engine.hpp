#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dehn/complexity.hpp"
#include "dehn/curves.hpp"
#include "dehn/sphere_complex.hpp"

namespace dehn {

struct EngineCaps {
  int max_stages = 4;
  int max_curve_crossings = 8;
  int max_children_per_node = 256;
  int max_catalog_size = 100000;
  int max_system_curves = 2;   // curves per decomposing system in op6
  void validate() const;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DescentViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One search state: the balls of a stage, i.e. their boundary spheres.
// Region orientations live in the cells of each sphere.
struct StageConfig {
  std::vector<SphereComplex> balls;       // canonical forms, sorted by key
  std::vector<std::string> ball_keys;
  int stage = 1;
  std::string parent;                     // key of the parent, empty for bases
  std::string op;                         // operation that produced it

  std::string key;
  bool empty() const { return balls.empty(); }
};

StageConfig make_config(std::vector<SphereComplex> balls, int stage = 1, bool keep_blank = false);

struct Transition {
  StageConfig child;
  std::string op;
};

std::vector<StageConfig> base_configs(const SphereComplex& pattern);

std::vector<Transition> op1_remove_component(const StageConfig& cfg);
std::vector<Transition> op2_remove_handles(const StageConfig& cfg);
std::vector<Transition> op3_replace_with_suture(const StageConfig& cfg);
std::vector<Transition> op4_remove_product_disc(const StageConfig& cfg);
std::vector<Transition> op5_merge_valence_two(const StageConfig& cfg);

struct Op6Stats {
  std::size_t single_curves = 0;
  std::size_t systems = 0;
  std::size_t trivial_excluded = 0;
  bool capped = false;
};

bool op6_applicable(const StageConfig& cfg);
// oriented single curves of one ball satisfying Conditions 1-5
std::vector<Curve> op6_curves(const SphereComplex& sc, int max_crossings);
// a curve running inside F parallel to a sutureless boundary circle
bool is_trivial_pushoff(const SphereComplex& sc, const Curve& c);
std::vector<Transition> op6_decompose(const StageConfig& cfg, const EngineCaps& caps, Op6Stats* stats = nullptr);
// every orientation of the sutureless regions that border a cap
std::vector<std::vector<SphereComplex>> reorientations(const std::vector<SphereComplex>& pieces);

bool op7_applicable(const StageConfig& cfg);
std::vector<Transition> op7_amalgam_removal(const StageConfig& cfg);

// all operations, children in a deterministic order
std::vector<Transition> expand(const StageConfig& cfg, const EngineCaps& caps, bool* capped = nullptr);

// strictly smaller complexity, or equal complexity and smaller extended complexity
bool descends(const std::vector<SphereComplex>& parent, const std::vector<SphereComplex>& child);

struct CatalogEntry {
  StageConfig cfg;
  bool expanded = false;
  bool capped = false;       // children were truncated at max_children_per_node
};

struct EngineStats {
  std::size_t nodes_expanded = 0;
  std::size_t transitions = 0;
  std::size_t dedup_hits = 0;
  std::size_t frontier_remaining = 0;
  std::size_t capped_nodes = 0;
  std::size_t descent_checks = 0;
  bool catalog_cap_hit = false;
  bool stage_cap_hit = false;
  std::map<std::string, std::size_t> per_op;
  std::map<int, std::size_t> per_stage;
};

struct EngineResult {
  std::vector<CatalogEntry> entries;   // sorted by key
  EngineStats stats;
};

EngineResult run_engine(const std::vector<StageConfig>& bases, const EngineCaps& caps, int threads = 1);

std::string hex(const std::string& bytes);
std::string unhex(const std::string& text);

}  // namespace dehn
