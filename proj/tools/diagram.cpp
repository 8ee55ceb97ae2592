#include "diagram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dehn {

namespace {

constexpr double cell_size = 320.0;

struct Layout {
  std::vector<double> x, y;
  std::vector<int> vertex;   // per dart, its origin
};

Layout lay_out(const SphereComplex& sc) {
  Layout l;
  int nv = 0;
  l.vertex = sc.vertex_ids(&nv);
  l.x.assign(nv, 0.0);
  l.y.assign(nv, 0.0);
  if (nv == 0) return l;
  int ncyc = 0;
  std::vector<int> cyc = sc.cycle_ids(&ncyc);
  std::vector<int> len(ncyc, 0), first(ncyc, -1);
  for (int d = 0; d < sc.dart_count(); ++d) {
    ++len[cyc[d]];
    if (first[cyc[d]] < 0) first[cyc[d]] = d;
  }
  int outer = int(std::max_element(len.begin(), len.end()) - len.begin());
  std::vector<int> ring;
  std::vector<char> fixed(nv, 0);
  int d = first[outer];
  do {
    if (!fixed[l.vertex[d]]) ring.push_back(l.vertex[d]);
    fixed[l.vertex[d]] = 1;
    d = sc.next[d];
  } while (d != first[outer]);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    double a = 2 * std::numbers::pi * double(i) / double(ring.size());
    l.x[ring[i]] = std::cos(a);
    l.y[ring[i]] = std::sin(a);
  }
  std::vector<std::vector<int>> nbr(nv);
  for (int e = 0; e < sc.edge_count(); ++e) {
    int a = l.vertex[2 * e], b = l.vertex[2 * e + 1];
    if (a == b) continue;
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  for (int it = 0; it < 400; ++it)
    for (int v = 0; v < nv; ++v) {
      if (fixed[v] || nbr[v].empty()) continue;
      double sx = 0, sy = 0;
      for (int w : nbr[v]) {
        sx += l.x[w];
        sy += l.y[w];
      }
      l.x[v] = sx / double(nbr[v].size());
      l.y[v] = sy / double(nbr[v].size());
    }
  return l;
}

const char* fill_of(const Cell& c) {
  if (c.kind == CellKind::zero_handle) return "#9ecae1";
  if (c.kind == CellKind::one_handle) return "#a1d99b";
  if (c.three_handle) return "#636363";
  return c.orientation == Orientation::in ? "#d9d9d9" : "#ffffff";
}

void draw(std::ostream& os, const SphereComplex& sc, double ox, double oy) {
  Layout l = lay_out(sc);
  double r = cell_size * 0.42, cx = ox + cell_size / 2, cy = oy + cell_size / 2;
  auto px = [&](int v) { return cx + r * l.x[v]; };
  auto py = [&](int v) { return cy + r * l.y[v]; };
  int ncyc = 0;
  std::vector<int> cyc = sc.cycle_ids(&ncyc);
  std::vector<int> cycles_in(sc.cells.size(), 0);
  std::vector<int> first(ncyc, -1);
  for (int d = 0; d < sc.dart_count(); ++d)
    if (first[cyc[d]] < 0) {
      first[cyc[d]] = d;
      ++cycles_in[sc.cell[d]];
    }
  // regions under the F cells
  for (int pass = 0; pass < 2; ++pass)
    for (int k = 0; k < ncyc; ++k) {
      int d0 = first[k];
      const Cell& c = sc.cell_of(d0);
      if ((pass == 0) == c.is_f() || cycles_in[sc.cell[d0]] != 1) continue;
      os << "<polygon fill=\"" << fill_of(c) << "\" stroke=\"none\" points=\"";
      int d = d0;
      do {
        os << px(l.vertex[d]) << ',' << py(l.vertex[d]) << ' ';
        d = sc.next[d];
      } while (d != d0);
      os << "\"/>\n";
    }
  for (int e = 0; e < sc.edge_count(); ++e) {
    int a = l.vertex[2 * e], b = l.vertex[2 * e + 1];
    bool suture = sc.is_suture(2 * e);
    os << "<line x1=\"" << px(a) << "\" y1=\"" << py(a) << "\" x2=\"" << px(b) << "\" y2=\"" << py(b) << "\" stroke=\""
       << (suture ? "#d62728" : "#333333") << "\" stroke-width=\"" << (suture ? 3 : 1) << "\"/>\n";
  }
  for (std::size_t v = 0; v < l.x.size(); ++v)
    os << "<circle cx=\"" << px(int(v)) << "\" cy=\"" << py(int(v)) << "\" r=\"2.5\" fill=\"#000000\"/>\n";
}

}  // namespace

std::string spheres_svg(const std::vector<SphereComplex>& balls, const std::string& title) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed;
  double w = cell_size * double(std::max<std::size_t>(1, balls.size())), h = cell_size + 30;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' '
     << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#f7f7f7\"/>\n";
  os << "<text x=\"8\" y=\"20\" font-family=\"monospace\" font-size=\"13\">" << title << "</text>\n";
  for (std::size_t i = 0; i < balls.size(); ++i) draw(os, balls[i], cell_size * double(i), 30);
  os << "</svg>\n";
  return os.str();
}

std::string sphere_svg(const SphereComplex& sc, const std::string& title) { return spheres_svg({sc}, title); }

}  // namespace dehn
