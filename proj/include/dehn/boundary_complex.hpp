#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "dehn/faces.hpp"
#include "dehn/sphere_complex.hpp"

namespace dehn {

using SignedEdge = std::pair<int, int>;  // (edge, +1 or -1)

// A finite 2-complex given by its cellular chains. Faces are attached along
// closed edge walks.
struct BoundaryComplex {
  int vertex_count = 0;
  std::vector<std::array<int, 2>> edges;   // tail, head
  std::vector<std::vector<SignedEdge>> faces;
  std::vector<int> graph_edge;             // graph edge run along by a vertical edge, -1 otherwise

  int euler() const { return vertex_count - (int)edges.size() + (int)faces.size(); }
  // component id per vertex; faces without vertices get their own component
  std::vector<int> vertex_components(int* count) const;
  // (euler characteristic) per component
  std::vector<int> component_euler() const;
};

// One zero-handle disc of ball_a glued to one of ball_b. The disc words are
// aligned as in align(); graph_edge names the edge of the dual graph.
struct DiscMatch {
  int ball_a = -1, cell_a = -1, ball_b = -1, cell_b = -1;
  VertexPerm perm{0, 1, 2, 3};
};

struct GammaCurve {
  std::map<int, int> chain;   // signed boundary-complex edges
  int disc_crossings = 0;
  int balls_touched = 0;
};

struct BoundaryBuild {
  BoundaryComplex complex;
  // each capped 2-handle circle, as a signed walk and as a signed word in graph edges
  std::vector<std::vector<SignedEdge>> cap_walks;
  std::vector<std::vector<SignedEdge>> cap_words;
  std::vector<GammaCurve> gamma;
  bool gamma_simple = true;    // every kept suture end is paired exactly once
};

class GlueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Surface made of the unused regions of every ball, a rectangle for each
// corner segment of every glued disc and a cap for each circle of band
// sides. Regions and caps inside 3-handles are left out. keep_suture, when
// non-empty, selects the suture edges of each ball that count as gamma.
BoundaryBuild build_boundary(const std::vector<SphereComplex>& balls, const std::vector<DiscMatch>& matches,
                             const std::vector<std::vector<char>>& keep_suture = {});

}  // namespace dehn
