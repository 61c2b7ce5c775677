#include "stringnet/surface.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "stringnet/graph.hpp"  // TopologyError

namespace stringnet {

using Json = nlohmann::ordered_json;

void validate_complex(const PlcwComplex& c) {
  for (const auto& [a, b] : c.edges)
    if (a < 0 || a >= c.num_vertices || b < 0 || b >= c.num_vertices)
      throw TopologyError("complex: edge endpoint out of range");
  std::vector<int> fwd(c.edges.size(), 0), bwd(c.edges.size(), 0);
  for (const auto& word : c.cells) {
    if (word.empty()) throw TopologyError("complex: empty cell word");
    for (std::size_t t = 0; t < word.size(); ++t) {
      int w = word[t];
      int e = PlcwComplex::edge_of(w);
      if (e < 0 || std::size_t(e) >= c.edges.size())
        throw TopologyError("complex: cell word references unknown edge");
      (PlcwComplex::forward(w) ? fwd : bwd)[e]++;
      int wn = word[(t + 1) % word.size()];
      if (c.head_of(w) != c.tail_of(wn))
        throw TopologyError("complex: cell word corners are inconsistent");
    }
  }
  for (std::size_t e = 0; e < c.edges.size(); ++e)
    if (fwd[e] != 1 || bwd[e] != 1)
      throw TopologyError("complex: each edge must appear once in each orientation");
  // connectivity over vertices (isolated vertices are not allowed)
  if (c.num_vertices > 0) {
    std::vector<int> comp(c.num_vertices, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& [a, b] : c.edges) {
        if (a == v && comp[b] < 0) comp[b] = 0, stack.push_back(b);
        if (b == v && comp[a] < 0) comp[a] = 0, stack.push_back(a);
      }
    }
    for (int v = 0; v < c.num_vertices; ++v)
      if (comp[v] < 0) throw TopologyError("complex: not connected");
  }
  if (c.euler_characteristic() % 2 != 0 || c.euler_characteristic() > 2)
    throw TopologyError("complex: Euler characteristic is not 2-2g");
}

DualGraphLayout dual_graph(const PlcwComplex& c) {
  validate_complex(c);
  DualGraphLayout d;
  for (std::size_t cell = 0; cell < c.cells.size(); ++cell) {
    d.offset.push_back(int(d.cell_of.size()));
    for (std::size_t p = 0; p < c.cells[cell].size(); ++p) {
      d.cell_of.push_back(int(cell));
      d.pos_of.push_back(int(p));
    }
  }
  d.partner.assign(d.cell_of.size(), -1);
  std::vector<std::pair<int, int>> occ(c.edges.size(), {-1, -1});
  for (std::size_t dart = 0; dart < d.cell_of.size(); ++dart) {
    int w = c.cells[d.cell_of[dart]][d.pos_of[dart]];
    int e = PlcwComplex::edge_of(w);
    (PlcwComplex::forward(w) ? occ[e].first : occ[e].second) = int(dart);
  }
  for (const auto& [a, b] : occ) {
    d.partner[a] = b;
    d.partner[b] = a;
  }
  return d;
}

PlcwComplex standard_sphere(int cells) {
  if (cells < 2) throw TopologyError("sphere: need at least two cells");
  PlcwComplex c;
  c.num_vertices = 1;
  for (int e = 0; e < cells - 1; ++e) c.edges.push_back({0, 0});
  c.cells.push_back({PlcwComplex::letter(0, true)});
  for (int t = 1; t < cells - 1; ++t)
    c.cells.push_back({PlcwComplex::letter(t - 1, false), PlcwComplex::letter(t, true)});
  c.cells.push_back({PlcwComplex::letter(cells - 2, false)});
  return c;
}

PlcwComplex standard_torus() {
  PlcwComplex c;
  c.num_vertices = 1;
  c.edges = {{0, 0}, {0, 0}};
  c.cells = {{1, 2, -1, -2}};
  return c;
}

PlcwComplex standard_genus(int g) {
  if (g < 0) throw TopologyError("genus: negative genus");
  if (g == 0) return standard_sphere(2);
  PlcwComplex c;
  c.num_vertices = 1;
  std::vector<int> word;
  for (int i = 0; i < g; ++i) {
    int a = 2 * i, b = 2 * i + 1;
    c.edges.push_back({0, 0});
    c.edges.push_back({0, 0});
    word.push_back(PlcwComplex::letter(a, true));
    word.push_back(PlcwComplex::letter(b, true));
    word.push_back(PlcwComplex::letter(a, false));
    word.push_back(PlcwComplex::letter(b, false));
  }
  c.cells = {word};
  return c;
}

PlcwComplex standard_surface(const std::string& name) {
  if (name == "sphere2") return standard_sphere(2);
  if (name == "sphere3") return standard_sphere(3);
  if (name == "torus") return standard_torus();
  if (name == "genus2") return standard_genus(2);
  throw DataError("unknown surface: " + name);
}

int vertex_valence(const PlcwComplex& c, int vertex) {
  int val = 0;
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    if (c.edges[e].first == vertex) ++val;
    if (c.edges[e].second == vertex) ++val;
  }
  return val;
}

PlcwComplex subdivide_edge(const PlcwComplex& c, int edge) {
  validate_complex(c);
  if (edge < 0 || std::size_t(edge) >= c.edges.size())
    throw TopologyError("subdivide: unknown edge");
  PlcwComplex out = c;
  int w = out.num_vertices++;
  int e2 = int(out.edges.size());
  int head = out.edges[edge].second;
  out.edges[edge].second = w;
  out.edges.push_back({w, head});
  for (auto& word : out.cells) {
    std::vector<int> nw;
    for (int l : word) {
      if (PlcwComplex::edge_of(l) != edge) {
        nw.push_back(l);
      } else if (PlcwComplex::forward(l)) {
        nw.push_back(PlcwComplex::letter(edge, true));
        nw.push_back(PlcwComplex::letter(e2, true));
      } else {
        nw.push_back(PlcwComplex::letter(e2, false));
        nw.push_back(PlcwComplex::letter(edge, false));
      }
    }
    word = std::move(nw);
  }
  validate_complex(out);
  return out;
}

PlcwComplex move_m1(const PlcwComplex& c, int vertex) {
  validate_complex(c);
  if (vertex < 0 || vertex >= c.num_vertices) throw TopologyError("m1: unknown vertex");
  if (vertex_valence(c, vertex) != 2) throw TopologyError("m1: vertex valence is not 2");
  // the two incident edge ends; merging a loop would orphan the circle
  int e1 = -1, e2 = -1;
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    if (c.edges[e].first == vertex || c.edges[e].second == vertex) {
      if (e1 < 0)
        e1 = int(e);
      else
        e2 = int(e);
    }
  }
  if (e2 < 0) throw TopologyError("m1: vertex sits on a loop");
  // normalize: a -> vertex -> b with e1 ending at vertex, e2 starting there
  PlcwComplex out = c;
  auto flip_edge = [&](int e) {
    std::swap(out.edges[e].first, out.edges[e].second);
    for (auto& word : out.cells)
      for (auto& l : word)
        if (PlcwComplex::edge_of(l) == e) l = -l;
  };
  if (out.edges[e1].second != vertex) flip_edge(e1);
  if (out.edges[e2].first != vertex) flip_edge(e2);
  // merged edge reuses e1 with head of e2
  out.edges[e1].second = out.edges[e2].second;
  for (auto& word : out.cells) {
    std::vector<int> nw;
    for (std::size_t t = 0; t < word.size(); ++t) {
      int l = word[t];
      int ln = word[(t + 1) % word.size()];
      if (PlcwComplex::edge_of(l) == e1 && PlcwComplex::forward(l)) {
        if (PlcwComplex::edge_of(ln) != e2 || !PlcwComplex::forward(ln))
          throw TopologyError("m1: edges are not consecutive in a cell");
        nw.push_back(PlcwComplex::letter(e1, true));
      } else if (PlcwComplex::edge_of(l) == e1 && !PlcwComplex::forward(l)) {
        nw.push_back(PlcwComplex::letter(e1, false));
      } else if (PlcwComplex::edge_of(l) == e2) {
        if (PlcwComplex::forward(l)) continue;  // swallowed by +e1
        // -e2 must be followed by -e1; emit nothing here, -e1 emits above
        int lp = word[(t + 1) % word.size()];
        if (PlcwComplex::edge_of(lp) != e1 || PlcwComplex::forward(lp))
          throw TopologyError("m1: edges are not consecutive in a cell");
      } else {
        nw.push_back(l);
      }
    }
    word = std::move(nw);
  }
  // drop edge e2 and the vertex
  out.edges.erase(out.edges.begin() + e2);
  for (auto& word : out.cells)
    for (auto& l : word) {
      int e = PlcwComplex::edge_of(l);
      if (e > e2) l = PlcwComplex::letter(e - 1, PlcwComplex::forward(l));
    }
  for (auto& [a, b] : out.edges) {
    if (a > vertex) --a;
    if (b > vertex) --b;
  }
  --out.num_vertices;
  validate_complex(out);
  return out;
}

PlcwComplex move_m2(const PlcwComplex& c, int edge) {
  validate_complex(c);
  if (edge < 0 || std::size_t(edge) >= c.edges.size()) throw TopologyError("m2: unknown edge");
  int cell_f = -1, cell_b = -1, pos_f = -1, pos_b = -1;
  for (std::size_t cell = 0; cell < c.cells.size(); ++cell)
    for (std::size_t p = 0; p < c.cells[cell].size(); ++p) {
      int l = c.cells[cell][p];
      if (PlcwComplex::edge_of(l) != edge) continue;
      if (PlcwComplex::forward(l)) {
        cell_f = int(cell);
        pos_f = int(p);
      } else {
        cell_b = int(cell);
        pos_b = int(p);
      }
    }
  if (cell_f == cell_b) throw TopologyError("m2: edge does not separate two distinct cells");
  // rotate cell_f so +e is last, cell_b so -e is first, then concatenate
  std::vector<int> wf = c.cells[cell_f], wb = c.cells[cell_b];
  std::rotate(wf.begin(), wf.begin() + (pos_f + 1) % wf.size(), wf.end());
  std::rotate(wb.begin(), wb.begin() + pos_b, wb.end());
  std::vector<int> merged(wf.begin(), wf.end() - 1);
  merged.insert(merged.end(), wb.begin() + 1, wb.end());
  if (merged.empty()) throw TopologyError("m2: merge would produce an empty cell");
  PlcwComplex out = c;
  out.cells[std::min(cell_f, cell_b)] = merged;
  out.cells.erase(out.cells.begin() + std::max(cell_f, cell_b));
  // drop the edge
  out.edges.erase(out.edges.begin() + edge);
  for (auto& word : out.cells)
    for (auto& l : word) {
      int e = PlcwComplex::edge_of(l);
      if (e > edge) l = PlcwComplex::letter(e - 1, PlcwComplex::forward(l));
    }
  validate_complex(out);
  return out;
}

PlcwComplex split_cell(const PlcwComplex& c, int cell, int p, int q) {
  validate_complex(c);
  if (cell < 0 || std::size_t(cell) >= c.cells.size()) throw TopologyError("split: unknown cell");
  const std::vector<int>& word = c.cells[cell];
  int n = int(word.size());
  if (p == q || p < 0 || q < 0 || p >= n || q >= n)
    throw TopologyError("split: invalid corner positions");
  PlcwComplex out = c;
  int f = int(out.edges.size());
  out.edges.push_back({c.tail_of(word[p]), c.tail_of(word[q])});
  std::vector<int> wa, wb;
  for (int t = p; t != q; t = (t + 1) % n) wa.push_back(word[t]);
  wa.push_back(PlcwComplex::letter(f, false));
  for (int t = q; t != p; t = (t + 1) % n) wb.push_back(word[t]);
  wb.push_back(PlcwComplex::letter(f, true));
  out.cells[cell] = wa;
  out.cells.push_back(wb);
  validate_complex(out);
  return out;
}

std::string save_surface_json(const PlcwComplex& c) {
  Json j;
  j["format"] = "plcw-1";
  j["vertices"] = c.num_vertices;
  Json edges = Json::array();
  for (const auto& [a, b] : c.edges) edges.push_back({a, b});
  j["edges"] = edges;
  j["cells"] = c.cells;
  return j.dump(2) + "\n";
}

PlcwComplex load_surface_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("surface file: invalid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "plcw-1")
      throw DataError("surface file: unsupported format tag");
    PlcwComplex c;
    c.num_vertices = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges")) c.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    c.cells = j.at("cells").get<std::vector<std::vector<int>>>();
    return c;
  } catch (const Json::exception& e) {
    throw DataError(std::string("surface file: ") + e.what());
  }
}

PlcwComplex load_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open surface file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_surface_json(ss.str());
}

}  // namespace stringnet
