#pragma once

#include <string>
#include <vector>

#include "stringnet/category.hpp"

namespace stringnet {

/// PLCW cell decomposition of a closed oriented surface. Cells are signed
/// edge words: letter +(e+1) traverses edge e along its orientation,
/// -(e+1) against it. Words may repeat edges and vertices.
struct PlcwComplex {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (tail, head)
  std::vector<std::vector<int>> cells;     // ccw signed words

  static int letter(int edge, bool forward) { return forward ? edge + 1 : -(edge + 1); }
  static int edge_of(int letter) { return std::abs(letter) - 1; }
  static bool forward(int letter) { return letter > 0; }
  int tail_of(int letter) const {
    int e = edge_of(letter);
    return forward(letter) ? edges[e].first : edges[e].second;
  }
  int head_of(int letter) const {
    int e = edge_of(letter);
    return forward(letter) ? edges[e].second : edges[e].first;
  }
  long euler_characteristic() const {
    return long(num_vertices) - long(edges.size()) + long(cells.size());
  }
  int genus() const { return int((2 - euler_characteristic()) / 2); }
};

/// Throws TopologyError unless the complex is a valid closed oriented PLCW
/// decomposition (each edge in exactly two word slots with opposite signs,
/// consistent corners, connected, even characteristic).
void validate_complex(const PlcwComplex& c);

/// Dual graph: one vertex per 2-cell, one edge per edge of the complex;
/// darts are cell-word slots.
struct DualGraphLayout {
  std::vector<int> offset;   // dart range start per cell
  std::vector<int> cell_of;  // per dart
  std::vector<int> pos_of;   // word position per dart
  std::vector<int> partner;  // the other occurrence of the same edge
  std::size_t dart_count() const { return cell_of.size(); }
};

DualGraphLayout dual_graph(const PlcwComplex& c);

/// sphere(n): n >= 2 cells from nested circles; torus_square: one vertex,
/// two edges, one square; genus(g): the standard 4g-gon (sphere(2) for g=0).
PlcwComplex standard_sphere(int cells);
PlcwComplex standard_torus();
PlcwComplex standard_genus(int g);
PlcwComplex standard_surface(const std::string& name);  // sphere2, sphere3, torus, genus2

/// Elementary moves. Coarsening: m1 erases a valence-2 vertex, m2 erases an
/// edge separating two distinct cells. Refinements are their inverses.
PlcwComplex move_m1(const PlcwComplex& c, int vertex);
PlcwComplex move_m2(const PlcwComplex& c, int edge);
PlcwComplex subdivide_edge(const PlcwComplex& c, int edge);             // inverse m1
PlcwComplex split_cell(const PlcwComplex& c, int cell, int p, int q);   // inverse m2

int vertex_valence(const PlcwComplex& c, int vertex);

std::string save_surface_json(const PlcwComplex& c);
PlcwComplex load_surface_json(const std::string& text);
PlcwComplex load_surface_file(const std::string& path);

}  // namespace stringnet
