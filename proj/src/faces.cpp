#include "dehn/faces.hpp"

#include <algorithm>

namespace dehn {

int perm_sign(const VertexPerm& p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

VertexPerm inverse(const VertexPerm& p) {
  VertexPerm q{};
  for (int i = 0; i < 4; ++i) q[p[i]] = i;
  return q;
}

int map_edge(const VertexPerm& p, int edge) {
  auto [i, j] = edge_vertices(edge);
  int a = p[i], b = p[j];
  return edge_index(std::min(a, b), std::max(a, b));
}

DiscWord disc_word(const SphereComplex& sc, int zero_cell) {
  DiscWord w;
  w.cell = zero_cell;
  w.face = sc.cells[zero_cell].label;
  int start = -1;
  for (int d = 0; d < sc.dart_count(); ++d)
    if (sc.cell[d] == zero_cell) {
      start = d;
      break;
    }
  if (start < 0) throw ComplexError("zero-handle without boundary");
  int d = start;
  do {
    w.darts.push_back(d);
    d = sc.next[d];
  } while (d != start);
  int count = 0;
  for (int x = 0; x < sc.dart_count(); ++x)
    if (sc.cell[x] == zero_cell) ++count;
  if (count != (int)w.darts.size()) throw ComplexError("zero-handle with several boundary cycles");
  int n = (int)w.darts.size();
  for (int i = 0; i < n; ++i) {
    int a = w.darts[i];
    const Cell& other = sc.cell_of(a ^ 1);
    std::uint8_t t = tok_other;
    if (other.kind == CellKind::one_handle) t = sc.tag[a] >= 0 && sc.tag[a] < 6 ? static_cast<std::uint8_t>(sc.tag[a]) : static_cast<std::uint8_t>(tok_band_untagged);
    else if (other.kind == CellKind::region) t = tok_corner;
    w.tokens.push_back(t);
    w.token_dart.push_back(i);
    w.token_suture.push_back(-1);
    int b = w.darts[(i + 1) % n];
    for (int x = sc.sigma(b); x != (a ^ 1); x = sc.sigma(x)) {
      if (!sc.is_suture(x)) continue;
      w.tokens.push_back(tok_suture);
      w.token_dart.push_back(-1);
      w.token_suture.push_back(x);
    }
  }
  return w;
}

std::vector<DiscWord> disc_words(const SphereComplex& sc) {
  std::vector<DiscWord> out;
  for (int c = 0; c < (int)sc.cells.size(); ++c)
    if (sc.cells[c].kind == CellKind::zero_handle) out.push_back(disc_word(sc, c));
  return out;
}

std::vector<std::uint8_t> filtered_tokens(const DiscWord& w, const std::vector<char>& keep_edge) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < w.tokens.size(); ++i)
    if (w.token_suture[i] < 0 || keep_edge[w.token_suture[i] >> 1]) out.push_back(w.tokens[i]);
  return out;
}

std::string token_string(const std::vector<std::uint8_t>& t) {
  static const char sym[] = "012345tcgx";
  std::string s;
  for (auto x : t) s.push_back(sym[x]);
  return s;
}

std::vector<std::uint8_t> minimal_rotation(const std::vector<std::uint8_t>& t) {
  std::vector<std::uint8_t> best = t;
  std::vector<std::uint8_t> r = t;
  for (std::size_t s = 1; s < t.size(); ++s) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

std::vector<std::uint8_t> transported(const std::vector<std::uint8_t>& t, const VertexPerm& p) {
  std::vector<std::uint8_t> out(t.rbegin(), t.rend());
  for (auto& x : out)
    if (x < 6) x = static_cast<std::uint8_t>(map_edge(p, x));
  return out;
}

std::optional<int> align(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b, const VertexPerm& p) {
  int n = (int)a.size();
  if ((int)b.size() != n) return std::nullopt;
  if (n == 0) return 0;
  std::vector<std::uint8_t> m = a;
  for (auto& x : m)
    if (x < 6) x = static_cast<std::uint8_t>(map_edge(p, x));
  for (int s = 0; s < n; ++s) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = m[i] == b[partner_token(i, n, s)];
    if (ok) return s;
  }
  return std::nullopt;
}

}  // namespace dehn
