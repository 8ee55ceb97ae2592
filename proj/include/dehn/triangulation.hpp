#pragma once

#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dehn/faces.hpp"
#include "dehn/sphere_complex.hpp"

namespace dehn {

enum class BoundaryPolicy { genuine, ideal, mixed };
const char* to_string(BoundaryPolicy p);

struct FaceGluing {
  int tet_a = 0, face_a = 0, tet_b = 0, face_b = 0;
  std::array<int, 3> vertex_map{};  // images of the vertices of face_a, in ascending order
  bool operator==(const FaceGluing&) const = default;
  VertexPerm perm() const;
};

struct GeneralisedTriangulation {
  int tet_count = 0;
  std::vector<FaceGluing> gluings;
  std::set<std::pair<int, int>> ideal_vertices;  // (tet, vertex)
  BoundaryPolicy policy = BoundaryPolicy::genuine;
  bool operator==(const GeneralisedTriangulation&) const = default;

  // the gluing on a face, oriented so that side a is (tet, face); nullptr if unglued
  const FaceGluing* gluing_at(int tet, int face, FaceGluing* scratch) const;
};

class TriangulationError : public std::runtime_error {
 public:
  enum class Kind { malformed, duplicate_gluing, non_bijective_map };
  TriangulationError(Kind k, int line, const std::string& field, const std::string& what);
  Kind kind;
  int line;
  std::string field;
};

GeneralisedTriangulation parse_triangulation(const std::string& text);
std::string serialize(const GeneralisedTriangulation& gt);

// face vertices in ascending order
std::array<int, 3> face_vertices(int face);

struct BoundaryComponentReport {
  std::string source;   // "faces" or "ideal vertex t.v"
  int euler = 0;
  bool torus = false;
};

struct ValidationReport {
  bool orientable = true;
  bool coherent = true;          // every gluing reverses the given orientations
  bool policy_consistent = true;
  std::vector<BoundaryComponentReport> boundary;
  bool boundary_tori = true;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

ValidationReport validate(const GeneralisedTriangulation& gt);

// corner orbits: classes of (tet, vertex) and (tet, edge) under the gluings
std::vector<std::vector<int>> vertex_classes(const GeneralisedTriangulation& gt);  // [tet][v] -> class
std::vector<std::vector<int>> edge_classes(const GeneralisedTriangulation& gt);    // [tet][e] -> class

// relabel tetrahedra with the wrong handedness so that every gluing is odd
GeneralisedTriangulation coherently_oriented(const GeneralisedTriangulation& gt);

struct TwoHandleStep {
  int tet, edge, face;    // the strip crossing the 1-handle of face (tet, face)
};

struct HandleStructure {
  int counts[4] = {0, 0, 0, 0};
  // 1-handle i glues (tet_a, face_a) to (tet_b, face_b)
  std::vector<FaceGluing> one_handles;
  // attaching circuit of each 2-handle: the corners of its edge class, in order
  std::vector<std::vector<TwoHandleStep>> two_handles;
  std::vector<int> two_handle_class;   // edge class of each 2-handle
  std::vector<int> three_handle_class; // vertex class of each 3-handle
  std::vector<SphereComplex> zero_handles;  // boundary sphere of each 0-handle, orientations all In
  std::vector<std::vector<int>> face_disc;  // [tet][face] -> zero-handle cell, -1 if unglued
  std::vector<std::string> sutures;         // no vertical sutures for a plain triangulation
};

HandleStructure dual_handle_structure(const GeneralisedTriangulation& gt);
void check_handle_structure(const HandleStructure& hs);  // throws ComplexError

struct BoundarySurfaceReport {
  std::vector<int> component_euler;
  int euler = 0;
  int handle_euler = 0;   // 2 * (h0 - h1 + h2 - h3)
};

BoundarySurfaceReport boundary_surface(const HandleStructure& hs);

}  // namespace dehn
