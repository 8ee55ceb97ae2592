#pragma once

#include <array>
#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dehn/boundary_complex.hpp"

namespace dehn {

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<mpz_class> entries;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}
  static IntMatrix identity(int n);
  mpz_class& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
  const mpz_class& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }
  bool operator==(const IntMatrix&) const = default;
  std::string str() const;   // row lists
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
mpz_class determinant(const IntMatrix& a);  // fraction-free elimination

struct SNFResult {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  int rank = 0;
  std::vector<mpz_class> diagonal() const;
};

SNFResult smith_normal_form(const IntMatrix& a);
// U*A*V == D, D diagonal with nonnegative divisibility chain, U and V unimodular
bool verify_snf(const IntMatrix& a, const SNFResult& r, std::string* why = nullptr);

struct GraphData {
  int vertex_count = 0;
  std::vector<std::array<int, 2>> edges;   // tail, head
};

class OpenWalk : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NotTorus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotInfiniteCyclic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotPrimitive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class BasisMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// spanning forest of a graph; cycles get coordinates on the other edges
struct CycleBasis {
  std::vector<int> tree_parent_edge;
  std::vector<int> coordinate_of_edge;   // -1 for forest edges
  int rank = 0;
  explicit CycleBasis(const GraphData& g);
  std::vector<mpz_class> coordinates(const std::vector<SignedEdge>& word) const;
  // the cycle closed by non-forest edge number j, as a chain over edges
  std::vector<mpz_class> fundamental_cycle(const GraphData& g, int j) const;
};

bool closed_word(const GraphData& g, const std::vector<SignedEdge>& word);
// relator rows over a cycle basis of the graph; throws OpenWalk
IntMatrix h1_presentation(const GraphData& g, const std::vector<std::vector<SignedEdge>>& tau_words);

struct H1Group {
  int free_rank = 0;
  std::vector<mpz_class> torsion;
  bool infinite_cyclic() const { return free_rank == 1 && torsion.empty(); }
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;
};

H1Group h1_group(const IntMatrix& relators);

// the data of a candidate M' that homology needs
struct MPrime {
  GraphData graph;
  std::vector<std::vector<SignedEdge>> tau_words;
  BoundaryComplex surface;   // boundary of M', vertical edges know their graph edge
};

struct TorusSlope {
  mpz_class a, b;            // a*lambda + b*mu, reduced
  std::string basis;
  TorusSlope() = default;
  TorusSlope(mpz_class x, mpz_class y, std::string basis_id);
  bool operator==(const TorusSlope&) const = default;
  std::string str() const;
};

mpz_class slope_distance(const TorusSlope& s, const TorusSlope& t);

struct BoundaryBasis {
  std::string id;
  // surface homology coordinates and representative cycles on the surface
  std::array<mpz_class, 2> lambda, mu;
  std::vector<mpz_class> lambda_chain, mu_chain;   // over surface edges
  // the map H1(surface) -> H1(M') = Z as a covector
  std::array<mpz_class, 2> image;

  // reduction data: cycle coordinates on the surface's non-forest edges,
  // then the unimodular change that splits off the face relations
  std::vector<int> coordinate_of_edge;
  IntMatrix u2;
  int r2 = 0;

  std::vector<mpz_class> chain_graph_image(const MPrime& m, const std::vector<mpz_class>& chain) const;
  std::array<mpz_class, 2> surface_coordinates(const std::vector<mpz_class>& chain) const;
  // coordinates (c_lambda, c_mu) of a surface cycle
  std::array<mpz_class, 2> in_basis(const std::vector<mpz_class>& chain) const;
  // replace lambda by lambda + k mu so that |c_mu| of the given class is minimal
  void reduce_against(const std::array<mpz_class, 2>& sigma);
};

BoundaryBasis boundary_basis(const MPrime& m);
// lambda generates H1(M') and mu dies there, computed from scratch
bool verify_basis(const MPrime& m, const BoundaryBasis& b);

// graph edge word of a surface chain, for feeding back into h1_presentation
std::vector<SignedEdge> graph_word(const MPrime& m, const std::vector<mpz_class>& chain);

}  // namespace dehn
