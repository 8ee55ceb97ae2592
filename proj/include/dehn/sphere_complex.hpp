#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dehn {

enum class CellKind : std::uint8_t { zero_handle = 0, one_handle = 1, region = 2 };
enum class Orientation : std::uint8_t { in = 0, out = 1 };

inline Orientation opposite(Orientation o) { return o == Orientation::in ? Orientation::out : Orientation::in; }
const char* to_string(CellKind k);
const char* to_string(Orientation o);

struct Cell {
  CellKind kind = CellKind::region;
  Orientation orientation = Orientation::in;
  int label = -1;              // tetrahedron face for zero-handle cells
  bool three_handle = false;   // region lying in the boundary of a 3-handle
  std::vector<int> origins;    // provenance: cells of the parent complex (not part of identity)

  bool is_f() const { return kind != CellKind::region; }
};

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint8_t mark_cap = 1;

// Half-edge map on the 2-sphere. Darts come in pairs, twin(d) == d ^ 1, and
// cell[d] is the cell on the left of d. Cells may own several boundary
// cycles when the underlying graph is disconnected.
struct SphereComplex {
  std::vector<int> next;
  std::vector<int> prev;
  std::vector<int> cell;
  std::vector<int> tag;        // edge label, shared by both darts of an edge
  std::vector<std::uint8_t> mark;
  std::vector<Cell> cells;

  static int twin(int d) { return d ^ 1; }
  int dart_count() const { return static_cast<int>(next.size()); }
  int edge_count() const { return dart_count() / 2; }
  int sigma(int d) const { return next[d ^ 1]; }
  int left(int d) const { return cell[d]; }
  int right(int d) const { return cell[d ^ 1]; }
  const Cell& cell_of(int d) const { return cells[cell[d]]; }

  int add_cell(Cell c);
  int add_edge(int tag_value = -1);
  void link(int a, int b) { next[a] = b; prev[b] = a; }

  bool is_suture(int d) const;
  bool is_corner(int d) const;     // zero-handle on one side, region on the other
  bool is_band_end(int d) const;   // zero-handle against one-handle
  bool is_band_side(int d) const;  // one-handle against region

  std::vector<int> vertex_ids(int* count = nullptr) const;
  std::vector<int> cycle_ids(int* count = nullptr) const;
  std::vector<int> component_ids(int* count = nullptr) const;
  std::vector<int> cycle_of(int d) const;

  // structural checks; throws ComplexError describing the first failure
  void validate() const;
  int euler_characteristic() const;
};

// Primitive surgery. All of these leave the complex possibly non-normal.
int split_edge(SphereComplex& sc, int d);
int insert_chord(SphereComplex& sc, int a, int b, int new_cell);
void delete_edge(SphereComplex& sc, int e);
void compact(SphereComplex& sc);
// merge like regions across edges, drop redundant vertices, renumber
void normalize(SphereComplex& sc);
SphereComplex mirror(const SphereComplex& sc);

// builder from explicit vertex endpoints; region cycles are completed
// automatically when every vertex has at most one unassigned corner
struct MapBuilder {
  struct EdgeSpec { int from, to, tag; };
  std::vector<EdgeSpec> edges;
  struct FaceSpec { Cell cell; std::vector<std::vector<int>> cycles; };  // cycles of darts
  std::vector<FaceSpec> faces;

  int edge(int from, int to, int tag = -1);
  static int fwd(int e) { return 2 * e; }
  static int bwd(int e) { return 2 * e + 1; }
  void face(Cell c, std::vector<int> cycle) { faces.push_back({std::move(c), {std::move(cycle)}}); }
  SphereComplex build(Orientation region_default = Orientation::in) const;
};

struct FComponent {
  std::vector<int> cells;
  int zero_count = 0;
  int one_count = 0;
  int boundary_circles = 0;
  int gamma_hits = 0;
  int euler() const { return zero_count - one_count; }
  int index() const { return -2 * euler() + gamma_hits; }
};

std::vector<FComponent> f_components(const SphereComplex& sc);
int valence(const SphereComplex& sc, int zero_cell);
int gamma_hits(const SphereComplex& sc, int zero_cell);
int zero_handle_index(const SphereComplex& sc, int zero_cell);
std::vector<int> cells_of_kind(const SphereComplex& sc, CellKind kind);

std::string canonical_key(const SphereComplex& sc);
SphereComplex canonical_form(const SphereComplex& sc);
// like canonical_key, without identifying a complex with its mirror
std::string oriented_key(const SphereComplex& sc);
std::string serialize(const SphereComplex& sc);
SphereComplex parse_sphere_complex(const std::string& text);

// Labels for the six tetrahedron edges, edge_index(i,j) with i<j.
int edge_index(int i, int j);
std::pair<int, int> edge_vertices(int e);

// The ribbon graph of a single tetrahedron: a zero-handle disc on each face
// present in `faces`, a band along each edge in `edges` and one region per
// complementary component. All regions carry the given orientation. The
// corner regions of the vertices in h3_corners lie in 3-handles.
SphereComplex tetrahedron_pattern(unsigned faces = 0xF, unsigned edges = 0x3F,
                                  Orientation o = Orientation::in, unsigned h3_corners = 0);

}  // namespace dehn
