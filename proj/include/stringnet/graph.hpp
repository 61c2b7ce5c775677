#pragma once

#include <optional>

#include "stringnet/hom.hpp"

namespace stringnet {

struct TopologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Ambient { Disk, Annulus };

struct GraphVertex {
  int start_dart = -1;  // first dart of the ccw rotation; -1 for isolated scalar vertices
  HomVector color;      // labels = outgoing dart colors in ccw order from start_dart
};

/// Half-edge (rotation system) graph in a disk or annulus. Boundary darts
/// live on the boundary circles; every edge pairs two darts.
struct EmbeddedGraph {
  Ambient ambient = Ambient::Disk;
  std::vector<int> partner;             // dart involution
  std::vector<int> next;                // next dart ccw at the same vertex; -1 on boundary darts
  std::vector<int> vertex_of;           // vertex index; -1 on boundary darts
  std::vector<Label> color;             // color of the dart's outgoing orientation
  std::vector<GraphVertex> vertices;
  std::vector<std::vector<int>> boundary;  // ccw boundary darts, one cycle per circle

  std::size_t dart_count() const { return partner.size(); }
};

struct GraphSum {
  std::vector<std::pair<Scalar, EmbeddedGraph>> terms;
};

/// Convenience constructor: vertices are declared with an ordered list of
/// ports (ccw), then ports are wired into edges or boundary legs.
class GraphBuilder {
 public:
  GraphBuilder(CatPtr cat, Ambient ambient = Ambient::Disk, int circles = 1);
  int add_vertex(const HomVector& color);
  /// Connect port `pu` of vertex u to port `pv` of vertex v (u != v or a
  /// self-loop with pu != pv). Colors must be mutually dual.
  void connect(int u, int pu, int v, int pv);
  /// Expose a port as a boundary leg on the given circle; legs accumulate in
  /// ccw boundary order per circle.
  void leg(int u, int pu, int circle = 0);
  EmbeddedGraph build();

 private:
  CatPtr cat_;
  Ambient ambient_;
  struct Port {
    int other_vertex = -1, other_port = -1;
    int circle = -1;
    bool used = false;
  };
  std::vector<HomVector> colors_;
  std::vector<std::vector<Port>> ports_;
  std::vector<std::vector<std::pair<int, int>>> boundary_;  // (vertex, port) per circle
};

struct SumColorComponent {
  Label label;
  HomVector u_color;  // replacement color at the dart's vertex
  HomVector v_color;  // replacement color at the partner's vertex
};

class GraphCtx {
 public:
  explicit GraphCtx(std::shared_ptr<HomCtx> hom);
  const HomCtx& hom() const { return *hom_; }
  const CatPtr& cat() const { return hom_->cat(); }

  /// Structural validation: rotation system, colors, vertex colors, Euler
  /// characteristic of the closed-up map, boundary consistency.
  void validate_graph(const EmbeddedGraph& g) const;

  /// Evaluation in a disk: the invariant vector over the ccw boundary legs.
  HomVector evaluate(const EmbeddedGraph& g) const;
  HomVector evaluate(const GraphSum& gs) const;
  /// Deterministic evaluation with a seeded contraction order; used by the
  /// isotopy-invariance property suite.
  HomVector evaluate_shuffled(const EmbeddedGraph& g, std::uint64_t seed) const;

  /// Linearity in edge colors: replace a direct-sum colored edge by its
  /// simple summands with the given vertex-color projections.
  GraphSum expand_colors(const EmbeddedGraph& g, int dart,
                         const std::vector<SumColorComponent>& comps) const;

  /// Contract an edge joining two distinct vertices; evaluation is unchanged.
  EmbeddedGraph merge_vertices(const EmbeddedGraph& g, int dart) const;

  /// Sum over simple colors i, weight d_i, of a small loop placed in the face
  /// containing `face_dart` (or in an empty region when absent).
  GraphSum insert_regular_loop(const EmbeddedGraph& g, std::optional<int> face_dart) const;

  /// Both sides of the edge-crossing identity for objects V, W given as
  /// multiplicity lists and a morphism Phi given per simple type.
  bool edge_crossing_identity_check(const std::vector<Label>& v_summands,
                                    const std::vector<Label>& w_summands,
                                    const std::map<Label, ScalarMatrix>& phi, Label i) const;

  /// Evaluation of an annulus graph after cutting along a declared radial arc
  /// running from boundary[0] position 0 to boundary[1] position 0 and
  /// crossing the listed darts in order (innermost first). Strands crossing
  /// the cut are rebundled into a single edge per cut color via dual bases;
  /// the result is one disk vector per contributing cut color, over boundary
  /// (inner legs.., c*, reversed outer legs.., c).
  std::map<Label, HomVector> evaluate_annulus_cut(const EmbeddedGraph& g,
                                                  const std::vector<int>& crossed_darts) const;

 private:
  std::shared_ptr<HomCtx> hom_;
  HomVector reduce(const EmbeddedGraph& g, std::uint64_t seed, bool shuffled) const;
};

std::string save_graph_json(const EmbeddedGraph& g, const FusionCat& cat);
EmbeddedGraph load_graph_json(const std::string& text, const CatPtr& cat);

}  // namespace stringnet
