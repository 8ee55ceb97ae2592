#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dehn/engine.hpp"

namespace dehn {

// a suture component of one ball, cut at the zero-handle discs
struct GammaArc {
  int ball = -1;
  std::vector<int> edges;          // suture edges in order along the arc
  std::vector<int> end_faces;      // faces of the discs at its ends, empty for a closed curve
  bool closed() const { return end_faces.empty(); }
};

struct TauArc {
  int ball = -1;
  int band = -1;                   // one-handle cell
  int edge = -1;                   // tetrahedron edge of the band, -1 if untagged
  std::array<int, 2> end_faces{-1, -1};
};

struct GraphSkeleton {
  int vertex_count = 0;                      // balls
  std::vector<std::array<int, 3>> legs;      // (ball, zero-handle cell, face)
  std::vector<TauArc> tau_arcs;
  std::vector<GammaArc> gamma_arcs;
  std::string str() const;
};

GraphSkeleton graph_skeleton(const StageConfig& cfg);

// per ball, per edge: is it a kept suture when only the arcs in mask survive
std::vector<std::vector<char>> keep_mask(const StageConfig& cfg, const GraphSkeleton& sk, std::uint64_t mask);

// canonical boundary data on each face, discs separated by ',' in sorted order
std::array<std::string, 4> face_signatures(const StageConfig& cfg, const std::vector<std::vector<char>>& keep);

struct CatalogGraph {
  int config = -1;
  std::uint64_t mask = 0;
  std::array<std::string, 4> faces;
};

inline constexpr int max_subtangle_arcs = 16;

std::vector<CatalogGraph> extract_graph(const StageConfig& cfg, int config_index);

struct CatalogConfig {
  StageConfig cfg;
  int parent = -1;                 // index of the parent record
  bool expanded = false;
  bool capped = false;
  GraphSkeleton skeleton;
};

struct Catalog {
  static constexpr int version = 1;
  std::string pattern;             // base pattern description
  EngineCaps caps;
  EngineStats stats;
  bool partial = false;
  std::vector<CatalogConfig> configs;   // sorted by key
  std::vector<CatalogGraph> graphs;     // by config, then mask
};

class CatalogError : public std::runtime_error {
 public:
  CatalogError(int line, const std::string& what);
  int line;
};

Catalog build_catalog(const EngineResult& r, const EngineCaps& caps, const std::string& pattern, int threads = 1);
void write_catalog(std::ostream& os, const Catalog& c);
Catalog read_catalog(std::istream& is);

// the key digest written for each config
std::string key_digest(const std::string& key);
// the chain of operations from a base configuration
std::string provenance(const Catalog& c, int config);

struct CatalogCheck {
  std::vector<std::string> failures;
  std::size_t descent_checks = 0;
  bool ok() const { return failures.empty(); }
};

// keys, ordering, skeletons, signatures and the descent of every recorded transition
CatalogCheck check_catalog(const Catalog& c, int threads = 1);

}  // namespace dehn
