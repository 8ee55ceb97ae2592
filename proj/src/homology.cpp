#include "dehn/homology.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace dehn {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < cols; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shapes do not match");
  IntMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const mpz_class& x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

mpz_class determinant(const IntMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("determinant of a non-square matrix");
  int n = a.rows;
  if (n == 0) return 1;
  IntMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<mpz_class> SNFResult::diagonal() const {
  std::vector<mpz_class> d;
  for (int i = 0; i < std::min(D.rows, D.cols); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

struct Reducer {
  SNFResult& r;

  void row_add(int i, int j, const mpz_class& q) {  // row_i += q row_j
    if (q == 0) return;
    for (int c = 0; c < r.D.cols; ++c) r.D(i, c) += q * r.D(j, c);
    for (int c = 0; c < r.U.cols; ++c) r.U(i, c) += q * r.U(j, c);
    for (int c = 0; c < r.U_inv.rows; ++c) r.U_inv(c, j) -= q * r.U_inv(c, i);
  }
  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < r.D.cols; ++c) std::swap(r.D(i, c), r.D(j, c));
    for (int c = 0; c < r.U.cols; ++c) std::swap(r.U(i, c), r.U(j, c));
    for (int c = 0; c < r.U_inv.rows; ++c) std::swap(r.U_inv(c, i), r.U_inv(c, j));
  }
  void row_negate(int i) {
    for (int c = 0; c < r.D.cols; ++c) r.D(i, c) = -r.D(i, c);
    for (int c = 0; c < r.U.cols; ++c) r.U(i, c) = -r.U(i, c);
    for (int c = 0; c < r.U_inv.rows; ++c) r.U_inv(c, i) = -r.U_inv(c, i);
  }
  void col_add(int j, int i, const mpz_class& q) {  // col_j += q col_i
    if (q == 0) return;
    for (int c = 0; c < r.D.rows; ++c) r.D(c, j) += q * r.D(c, i);
    for (int c = 0; c < r.V.rows; ++c) r.V(c, j) += q * r.V(c, i);
    for (int c = 0; c < r.V_inv.cols; ++c) r.V_inv(i, c) -= q * r.V_inv(j, c);
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < r.D.rows; ++c) std::swap(r.D(c, i), r.D(c, j));
    for (int c = 0; c < r.V.rows; ++c) std::swap(r.V(c, i), r.V(c, j));
    for (int c = 0; c < r.V_inv.cols; ++c) std::swap(r.V_inv(i, c), r.V_inv(j, c));
  }
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& a) {
  SNFResult r;
  r.D = a;
  r.U = IntMatrix::identity(a.rows);
  r.U_inv = IntMatrix::identity(a.rows);
  r.V = IntMatrix::identity(a.cols);
  r.V_inv = IntMatrix::identity(a.cols);
  Reducer red{r};
  IntMatrix& d = r.D;
  int n = std::min(a.rows, a.cols);
  for (int t = 0; t < n; ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < d.rows; ++i)
      for (int j = t; j < d.cols; ++j)
        if (d(i, j) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) pi = i, pj = j;
    if (pi < 0) break;
    red.row_swap(t, pi);
    red.col_swap(t, pj);
    for (;;) {
      bool changed = false;
      for (int i = t + 1; i < d.rows; ++i) {
        if (d(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        red.row_add(i, t, -q);
        if (d(i, t) != 0) changed = true;
      }
      if (changed) {
        int best = t;
        for (int i = t + 1; i < d.rows; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < abs(d(best, t))) best = i;
        red.row_swap(t, best);
        continue;
      }
      for (int j = t + 1; j < d.cols; ++j) {
        if (d(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        red.col_add(j, t, -q);
        if (d(t, j) != 0) changed = true;
      }
      if (changed) {
        int best = t;
        for (int j = t + 1; j < d.cols; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < abs(d(t, best))) best = j;
        red.col_swap(t, best);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < d.rows && bad < 0; ++i)
        for (int j = t + 1; j < d.cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      red.row_add(t, bad, 1);
    }
    if (d(t, t) < 0) red.row_negate(t);
    ++r.rank;
  }
  return r;
}

bool verify_snf(const IntMatrix& a, const SNFResult& r, std::string* why) {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  if (r.U * a * r.V != r.D) return fail("U*A*V differs from D");
  if (r.U * r.U_inv != IntMatrix::identity(a.rows)) return fail("U_inv is not the inverse of U");
  if (r.V * r.V_inv != IntMatrix::identity(a.cols)) return fail("V_inv is not the inverse of V");
  for (int i = 0; i < r.D.rows; ++i)
    for (int j = 0; j < r.D.cols; ++j)
      if (i != j && r.D(i, j) != 0) return fail("D is not diagonal");
  auto diag = r.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) return fail("negative diagonal entry");
    bool nonzero = (int)i < r.rank;
    if (nonzero != (diag[i] != 0)) return fail("rank does not match the diagonal");
    if (i + 1 < diag.size() && diag[i] != 0 && diag[i + 1] % diag[i] != 0) return fail("divisibility chain broken");
    if (i + 1 < diag.size() && diag[i] == 0 && diag[i + 1] != 0) return fail("zero before a nonzero diagonal entry");
  }
  return true;
}

CycleBasis::CycleBasis(const GraphData& g) {
  int n = g.vertex_count;
  tree_parent_edge.assign(n, -1);
  coordinate_of_edge.assign(g.edges.size(), -1);
  std::vector<std::vector<int>> inc(n);
  for (int e = 0; e < (int)g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
    inc[u].push_back(e);
    if (v != u) inc[v].push_back(e);
  }
  std::vector<char> seen(n, 0), in_tree(g.edges.size(), 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : inc[v]) {
        int w = g.edges[e][0] == v ? g.edges[e][1] : g.edges[e][0];
        if (seen[w]) continue;
        seen[w] = 1;
        tree_parent_edge[w] = e;
        in_tree[e] = 1;
        q.push(w);
      }
    }
  }
  for (int e = 0; e < (int)g.edges.size(); ++e)
    if (!in_tree[e]) coordinate_of_edge[e] = rank++;
}

std::vector<mpz_class> CycleBasis::coordinates(const std::vector<SignedEdge>& word) const {
  std::vector<mpz_class> c(rank);
  for (auto [e, s] : word) {
    if (e < 0 || e >= (int)coordinate_of_edge.size()) throw std::invalid_argument("edge index out of range");
    int k = coordinate_of_edge[e];
    if (k >= 0) c[k] += s;
  }
  return c;
}

std::vector<mpz_class> CycleBasis::fundamental_cycle(const GraphData& g, int j) const {
  std::vector<mpz_class> chain(g.edges.size());
  int e0 = -1;
  for (int e = 0; e < (int)coordinate_of_edge.size(); ++e)
    if (coordinate_of_edge[e] == j) e0 = e;
  if (e0 < 0) throw std::out_of_range("no such cycle coordinate");
  chain[e0] += 1;
  auto up = [&](int v, int sign) {
    while (tree_parent_edge[v] >= 0) {
      int e = tree_parent_edge[v];
      int parent = g.edges[e][0] == v ? g.edges[e][1] : g.edges[e][0];
      chain[e] += sign * (g.edges[e][0] == v ? 1 : -1);
      v = parent;
    }
  };
  up(g.edges[e0][1], 1);
  up(g.edges[e0][0], -1);
  return chain;
}

bool closed_word(const GraphData& g, const std::vector<SignedEdge>& word) {
  std::vector<long> b(g.vertex_count, 0);
  for (auto [e, s] : word) {
    if (e < 0 || e >= (int)g.edges.size()) return false;
    b[g.edges[e][1]] += s;
    b[g.edges[e][0]] -= s;
  }
  return std::all_of(b.begin(), b.end(), [](long x) { return x == 0; });
}

IntMatrix h1_presentation(const GraphData& g, const std::vector<std::vector<SignedEdge>>& tau_words) {
  CycleBasis cb(g);
  IntMatrix m((int)tau_words.size(), cb.rank);
  for (int i = 0; i < (int)tau_words.size(); ++i) {
    if (!closed_word(g, tau_words[i])) throw OpenWalk("relator " + std::to_string(i) + " is not a closed walk");
    auto c = cb.coordinates(tau_words[i]);
    for (int j = 0; j < cb.rank; ++j) m(i, j) = c[j];
  }
  return m;
}

std::string H1Group::str() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

H1Group h1_group(const IntMatrix& relators) {
  auto r = smith_normal_form(relators);
  H1Group h;
  h.free_rank = relators.cols - r.rank;
  for (int i = 0; i < r.rank; ++i)
    if (r.D(i, i) != 1) h.torsion.push_back(r.D(i, i));
  return h;
}

TorusSlope::TorusSlope(mpz_class x, mpz_class y, std::string basis_id) : basis(std::move(basis_id)) {
  if (x == 0 && y == 0) throw std::invalid_argument("slope (0,0)");
  mpz_class g = gcd(x, y);
  x /= g;
  y /= g;
  if (x < 0 || (x == 0 && y < 0)) x = -x, y = -y;
  a = x;
  b = y;
}

std::string TorusSlope::str() const { return "(" + a.get_str() + "," + b.get_str() + ")"; }

mpz_class slope_distance(const TorusSlope& s, const TorusSlope& t) {
  if (s.basis != t.basis) throw BasisMismatch("slopes in bases " + s.basis + " and " + t.basis);
  return abs(s.a * t.b - s.b * t.a);
}

namespace {

GraphData skeleton(const BoundaryComplex& s) { return GraphData{s.vertex_count, s.edges}; }

std::vector<SignedEdge> chain_word(const std::vector<mpz_class>& chain) {
  std::vector<SignedEdge> w;
  for (int e = 0; e < (int)chain.size(); ++e) {
    int s = sgn(chain[e]);
    for (mpz_class k = abs(chain[e]); k > 0; --k) w.push_back({e, s});
  }
  return w;
}

struct GraphMap {
  CycleBasis basis;
  SNFResult snf;
  int cols = 0;

  explicit GraphMap(const MPrime& m) : basis(m.graph) {
    IntMatrix r = h1_presentation(m.graph, m.tau_words);
    cols = r.cols;
    snf = smith_normal_form(r);
  }
  H1Group group() const {
    H1Group h;
    h.free_rank = cols - snf.rank;
    for (int i = 0; i < snf.rank; ++i)
      if (snf.D(i, i) != 1) h.torsion.push_back(snf.D(i, i));
    return h;
  }
  mpz_class phi(const std::vector<mpz_class>& graph_chain) const {
    mpz_class v = 0;
    for (int e = 0; e < (int)graph_chain.size(); ++e) {
      int k = basis.coordinate_of_edge[e];
      if (k >= 0) v += graph_chain[e] * snf.V(k, cols - 1);
    }
    return v;
  }
};

}  // namespace

std::vector<mpz_class> BoundaryBasis::chain_graph_image(const MPrime& m, const std::vector<mpz_class>& chain) const {
  std::vector<mpz_class> g(m.graph.edges.size());
  for (int e = 0; e < (int)chain.size(); ++e) {
    int ge = m.surface.graph_edge[e];
    if (ge >= 0) g[ge] += chain[e];
  }
  return g;
}

std::array<mpz_class, 2> BoundaryBasis::surface_coordinates(const std::vector<mpz_class>& chain) const {
  int k = u2.rows;
  std::vector<mpz_class> c(k);
  for (int e = 0; e < (int)chain.size(); ++e)
    if (coordinate_of_edge[e] >= 0) c[coordinate_of_edge[e]] += chain[e];
  std::array<mpz_class, 2> h;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < k; ++j) h[i] += u2(r2 + i, j) * c[j];
  return h;
}

std::array<mpz_class, 2> BoundaryBasis::in_basis(const std::vector<mpz_class>& chain) const {
  auto h = surface_coordinates(chain);
  mpz_class det = lambda[0] * mu[1] - lambda[1] * mu[0];
  return {(h[0] * mu[1] - h[1] * mu[0]) / det, (lambda[0] * h[1] - lambda[1] * h[0]) / det};
}

void BoundaryBasis::reduce_against(const std::array<mpz_class, 2>& sigma) {
  if (sigma[0] == 0) return;
  mpz_class k;
  // k rounds sigma_mu / sigma_lambda to the nearest integer
  mpq_class ratio(sigma[1], sigma[0]);
  ratio.canonicalize();
  mpq_class shifted = ratio + mpq_class(1, 2);
  mpz_fdiv_q(k.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  for (int i = 0; i < 2; ++i) lambda[i] += k * mu[i];
  for (std::size_t e = 0; e < lambda_chain.size(); ++e) lambda_chain[e] += k * mu_chain[e];
}

BoundaryBasis boundary_basis(const MPrime& m) {
  GraphMap gm(m);
  H1Group h = gm.group();
  if (!h.infinite_cyclic()) throw NotInfiniteCyclic("H1 is " + h.str());

  const BoundaryComplex& s = m.surface;
  int comps = 0;
  s.vertex_components(&comps);
  if (comps != 1) throw NotTorus("surface has " + std::to_string(comps) + " components");
  if (s.euler() != 0) throw NotTorus("surface has euler characteristic " + std::to_string(s.euler()));
  if ((int)s.graph_edge.size() != (int)s.edges.size()) throw std::invalid_argument("graph_edge size mismatch");

  GraphData sk = skeleton(s);
  CycleBasis cb(sk);
  IntMatrix q(cb.rank, (int)s.faces.size());
  for (int f = 0; f < (int)s.faces.size(); ++f) {
    if (!closed_word(sk, s.faces[f])) throw NotTorus("face " + std::to_string(f) + " is not attached along a loop");
    auto c = cb.coordinates(s.faces[f]);
    for (int i = 0; i < cb.rank; ++i) q(i, f) = c[i];
  }
  SNFResult sq = smith_normal_form(q);
  if (cb.rank - sq.rank != 2) throw NotTorus("surface H1 has rank " + std::to_string(cb.rank - sq.rank));
  for (int i = 0; i < sq.rank; ++i)
    if (sq.D(i, i) != 1) throw NotTorus("surface H1 has torsion");

  BoundaryBasis b;
  b.coordinate_of_edge = cb.coordinate_of_edge;
  b.u2 = sq.U;
  b.r2 = sq.rank;

  std::array<std::vector<mpz_class>, 2> gen;
  for (int j = 0; j < 2; ++j) {
    gen[j].assign(s.edges.size(), 0);
    for (int i = 0; i < cb.rank; ++i) {
      const mpz_class& c = sq.U_inv(i, sq.rank + j);
      if (c == 0) continue;
      auto z = cb.fundamental_cycle(sk, i);
      for (std::size_t e = 0; e < z.size(); ++e) gen[j][e] += c * z[e];
    }
  }
  for (int j = 0; j < 2; ++j) b.image[j] = gm.phi(b.chain_graph_image(m, gen[j]));

  for (const auto& f : s.faces) {
    std::vector<mpz_class> fc(s.edges.size());
    for (auto [e, sg] : f) fc[e] += sg;
    if (gm.phi(b.chain_graph_image(m, fc)) != 0) throw std::logic_error("a surface face does not die in H1");
  }

  mpz_class a = b.image[0], bb = b.image[1];
  mpz_class g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), bb.get_mpz_t());
  if (g != 1) throw NotPrimitive("boundary maps onto a subgroup of index " + g.get_str());
  b.lambda = {x, y};
  b.mu = {bb, -a};
  b.lambda_chain.assign(s.edges.size(), 0);
  b.mu_chain.assign(s.edges.size(), 0);
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    b.lambda_chain[e] = x * gen[0][e] + y * gen[1][e];
    b.mu_chain[e] = bb * gen[0][e] - a * gen[1][e];
  }
  std::ostringstream id;
  id << "surface:" << s.vertex_count << "v" << s.edges.size() << "e" << s.faces.size() << "f";
  b.id = id.str();
  return b;
}

std::vector<SignedEdge> graph_word(const MPrime& m, const std::vector<mpz_class>& chain) {
  std::vector<mpz_class> g(m.graph.edges.size());
  for (int e = 0; e < (int)chain.size(); ++e) {
    int ge = m.surface.graph_edge[e];
    if (ge >= 0) g[ge] += chain[e];
  }
  return chain_word(g);
}

bool verify_basis(const MPrime& m, const BoundaryBasis& b) {
  auto with = [&](const std::vector<mpz_class>& chain) {
    auto taus = m.tau_words;
    taus.push_back(graph_word(m, chain));
    return h1_group(h1_presentation(m.graph, taus));
  };
  return with(b.mu_chain).infinite_cyclic() && with(b.lambda_chain).trivial();
}

}  // namespace dehn
