#pragma once

#include <gmpxx.h>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dehn/boundary_complex.hpp"
#include "dehn/catalog.hpp"
#include "dehn/homology.hpp"
#include "dehn/triangulation.hpp"

namespace dehn {

struct FaceSignature {
  int face = -1;
  std::vector<std::string> discs;   // canonical disc words, sorted
  std::string str() const;          // the catalog form
};

FaceSignature face_signature(const CatalogGraph& g, int face);
FaceSignature parse_signature(int face, const std::string& text);
// the signature as read from the far side of a gluing whose permutation is p
std::string transport_signature(const std::string& text, const VertexPerm& p);
// a on gl.face_a, b on gl.face_b
bool compatible(const FaceSignature& a, const FaceSignature& b, const FaceGluing& gl);

// a catalog graph placed in a tetrahedron as stored, or as its mirror image
struct TileRef {
  int graph = -1;
  bool mirrored = false;
  auto operator<=>(const TileRef&) const = default;
  std::string str() const;   // "5" or "5m"
};

struct Tile {
  TileRef ref;
  std::array<std::string, 4> faces;
};

// every catalog graph, followed by its mirror unless the config is achiral; sorted by ref
std::vector<Tile> catalog_tiles(const Catalog& cat);

struct SearchCaps {
  std::size_t max_nodes = 10000000;        // partial assignments tried
  std::size_t max_assignments = 1000000;   // complete assignments evaluated
  std::size_t max_candidates = 10000;
};

enum class Rejection { glue, gamma_empty, gamma_disconnected, gamma_not_simple, gamma_inessential, h1, not_torus, not_primitive };
const char* to_string(Rejection r);

struct Candidate {
  std::vector<TileRef> assignment;      // catalog tile per tetrahedron
  std::vector<std::string> tiles;       // config digest and mask per tetrahedron
  H1Group h1;
  std::string basis_id;
  std::array<mpz_class, 2> lambda, mu;  // surface coordinates
  TorusSlope sigma;                     // sigma = a lambda + b mu
  mpz_class delta_lambda_sigma, delta_mu_sigma;
  std::optional<std::pair<mpz_class, mpz_class>> pq;
  std::string k_walk;                   // lambda realization in the dual 1-skeleton
  int gamma_components = 0;             // before stripping unknotted pieces
  int stripped_components = 0;
  std::vector<std::string> flags;       // external checks, all unverified

  // kept for re-verification
  MPrime mprime;
  BoundaryBasis basis;
  std::vector<mpz_class> sigma_chain;
};

struct Evaluation {
  std::optional<Candidate> candidate;
  Rejection rejection = Rejection::glue;
  std::string detail;
};

// assemble one complete assignment on a coherently oriented triangulation;
// the faces are assumed to be signature compatible
Evaluation evaluate_assignment(const GeneralisedTriangulation& coherent, const Catalog& cat,
                               const std::vector<TileRef>& assignment);

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t assignments = 0;
  std::map<std::string, std::size_t> rejected;
  std::size_t candidates = 0;
  bool capped = false;
  std::string naive_bound;   // product of the per-tetrahedron domains
  std::vector<std::size_t> domain;
};

struct SearchResult {
  std::vector<Candidate> candidates;   // sorted by assignment
  SearchStats stats;
  std::vector<std::string> notes;
};

// per tetrahedron, the indices of the tiles that respect unglued faces
std::vector<std::vector<int>> static_domains(const GeneralisedTriangulation& coherent, const std::vector<Tile>& tiles);

SearchResult search(const GeneralisedTriangulation& gt, const Catalog& cat, const SearchCaps& caps, int threads = 1);

struct CertificationReport {
  bool consistent = true;
  std::vector<std::string> issues;
  std::vector<std::string> notes;
  std::vector<std::string> external;   // checks left to external algorithms
  std::string summary() const;
};

CertificationReport certify_candidate(const Candidate& c);

void write_candidates(std::ostream& os, const GeneralisedTriangulation& gt, const SearchResult& r);

// arithmetic checks of a written candidate report; one message per inconsistency
std::vector<std::string> check_candidate_report(std::istream& is);

// a catalog made of the given configurations, without any engine run
Catalog catalog_from_configs(const std::vector<StageConfig>& configs, const std::string& pattern);

}  // namespace dehn
