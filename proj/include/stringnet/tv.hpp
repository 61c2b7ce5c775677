#pragma once

#include "stringnet/graph.hpp"
#include "stringnet/surface.hpp"

namespace stringnet {

/// Turaev-Viro state space of a closed decorated surface: direct sum over
/// simple edge colorings of the tensor product of cell spaces.
struct TvStateSpace {
  PlcwComplex complex;
  std::vector<std::vector<Label>> colorings;  // lexicographic, only nonzero blocks
  struct Item {
    std::size_t coloring;
    std::vector<int> trees;  // per-cell basis index
  };
  std::vector<Item> basis;  // coloring-major, last cell fastest
  std::size_t dim() const { return basis.size(); }
};

class TvEngine {
 public:
  TvEngine(std::shared_ptr<HomCtx> hom, std::size_t cap = 1000000);
  const HomCtx& hom() const { return *hom_; }

  /// Labels of the cell space H(C, l): word letters with signs applied.
  std::vector<Label> cell_labels(const PlcwComplex& c, const std::vector<Label>& coloring,
                                 int cell) const;

  TvStateSpace build_state_space(const PlcwComplex& c) const;

  /// Matrix of B_p on the state space: insert the d-weighted loop around the
  /// vertex in the dual-graph picture and resolve back onto the basis,
  /// with the sqrt(d) coloring weights folded in.
  ScalarMatrix b_p_matrix(const TvStateSpace& s, int vertex, int threads = 1) const;

  /// Product of all vertex projectors.
  ScalarMatrix b_product(const TvStateSpace& s, int threads = 1) const;

  /// rank of the product projector = dim Z_TV.
  std::size_t tv_dimension(const PlcwComplex& c, int threads = 1) const;

  /// Identity sanity of the resolution: re-expanding the dual-graph picture
  /// with no loop inserted must reproduce the basis exactly.
  ScalarMatrix resolution_identity(const TvStateSpace& s) const;

  /// Transport along elementary moves (the string-net presentation map).
  ScalarMatrix transport_subdivide(const TvStateSpace& src, const TvStateSpace& dst,
                                   int edge) const;
  ScalarMatrix transport_m1(const TvStateSpace& src, const TvStateSpace& dst, int vertex) const;
  ScalarMatrix transport_m2(const TvStateSpace& src, const TvStateSpace& dst, int edge) const;
  ScalarMatrix transport_split(const TvStateSpace& src, const TvStateSpace& dst, int cell, int p,
                               int q) const;

  struct MoveStep {
    enum Kind { M1, M2, SubdivideEdge, SplitCell } kind;
    int a = 0, b = 0, c = 0;
  };
  /// Applies the moves, checking tv_dimension at every step; in strong mode
  /// additionally transports bases and checks compatibility on im(B).
  bool verify_move_invariance(const PlcwComplex& c, const std::vector<MoveStep>& moves,
                              bool strong, int threads = 1) const;

  std::size_t cap() const { return cap_; }

 private:
  std::shared_ptr<HomCtx> hom_;
  GraphCtx gctx_;
  std::size_t cap_;

  // Core of b_p / resolution: matrix of the map that presents each basis
  // vector as a dual-graph picture (with an optional d-weighted loop around
  // `vertex`) and re-expands it onto the basis.
  ScalarMatrix star_resolution(const TvStateSpace& s, int vertex, bool with_loop,
                               int threads) const;
};

}  // namespace stringnet
