#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dehn/sphere_complex.hpp"

namespace dehn {

// Tetrahedron vertex permutation carried by a face gluing; perm[v] is the
// image of vertex v, perm[face_a] = face_b.
using VertexPerm = std::array<int, 4>;

int perm_sign(const VertexPerm& p);
VertexPerm inverse(const VertexPerm& p);
int map_edge(const VertexPerm& p, int edge);

// tokens of a disc word
enum : std::uint8_t { tok_band_untagged = 6, tok_corner = 7, tok_suture = 8, tok_other = 9 };
// 0..5 are band ends along that tetrahedron edge

// Boundary of one zero-handle cell read counterclockwise: one token per
// dart, followed by a suture token for every suture leaving the vertex at
// its head.
struct DiscWord {
  int cell = -1;
  int face = -1;
  std::vector<int> darts;
  std::vector<std::uint8_t> tokens;
  std::vector<int> token_dart;    // dart position for dart tokens, -1 for suture tokens
  std::vector<int> token_suture;  // dart leaving the junction along the suture, -1 otherwise
};

DiscWord disc_word(const SphereComplex& sc, int zero_cell);
std::vector<DiscWord> disc_words(const SphereComplex& sc);

// keep only suture tokens whose edge passes the filter
std::vector<std::uint8_t> filtered_tokens(const DiscWord& w, const std::vector<char>& keep_edge);

std::string token_string(const std::vector<std::uint8_t>& t);
std::vector<std::uint8_t> minimal_rotation(const std::vector<std::uint8_t>& t);
// the word as seen from the other side of the glued face
std::vector<std::uint8_t> transported(const std::vector<std::uint8_t>& t, const VertexPerm& p);

// Smallest shift s with transported(a)[i] == reverse(b)[i + s]; token i of
// a then corresponds to token n-1-((i+s) mod n) of b.
std::optional<int> align(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b, const VertexPerm& p);
inline int partner_token(int i, int n, int shift) { return ((n - 1 - (i + shift)) % n + n) % n; }

}  // namespace dehn
