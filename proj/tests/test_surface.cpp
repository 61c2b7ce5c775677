#include "stringnet/surface.hpp"

#include <random>

#include "doctest.h"
#include "stringnet/graph.hpp"

using namespace stringnet;

TEST_CASE("standard surfaces have the right characteristics") {
  CHECK(standard_torus().euler_characteristic() == 0);
  CHECK(standard_sphere(2).euler_characteristic() == 2);
  CHECK(standard_sphere(3).euler_characteristic() == 2);
  CHECK(standard_sphere(5).euler_characteristic() == 2);
  CHECK(standard_genus(2).euler_characteristic() == -2);
  CHECK(standard_genus(3).genus() == 3);
  for (const char* n : {"sphere2", "sphere3", "torus", "genus2"})
    CHECK_NOTHROW(validate_complex(standard_surface(n)));
}

TEST_CASE("dual graph counts") {
  auto torus = standard_torus();
  auto d = dual_graph(torus);
  CHECK(d.dart_count() == 4);  // one cell of valence 4
  CHECK(d.offset.size() == 1);
  auto sphere = standard_sphere(2);
  auto ds = dual_graph(sphere);
  CHECK(ds.dart_count() == 2);
  CHECK(ds.partner[0] == 1);
  auto g2 = dual_graph(standard_genus(2));
  CHECK(g2.dart_count() == 8);
}

TEST_CASE("subdivide then m1 returns to the original complex") {
  for (const char* n : {"sphere2", "torus", "genus2"}) {
    PlcwComplex c = standard_surface(n);
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
      PlcwComplex fine = subdivide_edge(c, int(e));
      CHECK(fine.euler_characteristic() == c.euler_characteristic());
      int w = fine.num_vertices - 1;
      CHECK(vertex_valence(fine, w) == 2);
      PlcwComplex back = move_m1(fine, w);
      CHECK(back.num_vertices == c.num_vertices);
      CHECK(back.edges.size() == c.edges.size());
      CHECK(back.euler_characteristic() == c.euler_characteristic());
    }
  }
}

TEST_CASE("split then m2 returns to the original cell structure") {
  PlcwComplex torus = standard_torus();
  PlcwComplex split = split_cell(torus, 0, 0, 2);
  CHECK(split.cells.size() == 2);
  CHECK(split.euler_characteristic() == 0);
  int new_edge = int(split.edges.size()) - 1;
  PlcwComplex back = move_m2(split, new_edge);
  CHECK(back.cells.size() == 1);
  CHECK(back.euler_characteristic() == 0);
}

TEST_CASE("m2 on a sphere with two equator edges") {
  // two vertices, two parallel edges, two bigons
  PlcwComplex c;
  c.num_vertices = 2;
  c.edges = {{0, 1}, {0, 1}};
  c.cells = {{1, -2}, {2, -1}};
  validate_complex(c);
  PlcwComplex merged = move_m2(c, 1);
  CHECK(merged.cells.size() == 1);
  CHECK(merged.euler_characteristic() == 2);
}

TEST_CASE("random refinement sequences preserve the characteristic") {
  std::mt19937 rng(31);
  for (const char* n : {"sphere3", "torus", "genus2"}) {
    PlcwComplex c = standard_surface(n);
    long chi = c.euler_characteristic();
    for (int step = 0; step < 12; ++step) {
      int kind = int(rng() % 2);
      try {
        if (kind == 0) {
          c = subdivide_edge(c, int(rng() % c.edges.size()));
        } else {
          int cell = int(rng() % c.cells.size());
          int n_word = int(c.cells[cell].size());
          if (n_word < 2) continue;
          int p = int(rng() % n_word), q = int(rng() % n_word);
          if (p == q) continue;
          c = split_cell(c, cell, p, q);
        }
      } catch (const TopologyError&) {
        continue;
      }
      CHECK(c.euler_characteristic() == chi);
      CHECK_NOTHROW(validate_complex(c));
    }
  }
}

TEST_CASE("validity checker rejects broken complexes") {
  PlcwComplex bad;
  bad.num_vertices = 1;
  bad.edges = {{0, 0}};
  bad.cells = {{1, 1}};  // edge twice with the same sign: not orientable
  CHECK_THROWS_AS(validate_complex(bad), TopologyError);
  PlcwComplex bad2;
  bad2.num_vertices = 2;
  bad2.edges = {{0, 1}};
  bad2.cells = {{1, -1}, {1, -1}};  // edge appears four times
  CHECK_THROWS_AS(validate_complex(bad2), TopologyError);
  PlcwComplex bad3;  // mismatched corners
  bad3.num_vertices = 2;
  bad3.edges = {{0, 0}, {1, 1}};
  bad3.cells = {{1, 2}, {-1, -2}};
  CHECK_THROWS_AS(validate_complex(bad3), TopologyError);
}

TEST_CASE("surface JSON round-trip") {
  for (const char* n : {"sphere3", "torus", "genus2"}) {
    PlcwComplex c = standard_surface(n);
    std::string text = save_surface_json(c);
    PlcwComplex back = load_surface_json(text);
    CHECK(save_surface_json(back) == text);
    CHECK(back.euler_characteristic() == c.euler_characteristic());
  }
  CHECK_THROWS_AS(load_surface_json("{"), DataError);
  CHECK_THROWS_AS(load_surface_file("missing.json"), DataError);
}
