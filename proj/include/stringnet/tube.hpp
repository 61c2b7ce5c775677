#pragma once

#include "stringnet/algebra.hpp"
#include "stringnet/graph.hpp"
#include "stringnet/surface.hpp"

namespace stringnet {

/// Basis element of the tube algebra: an annulus morphism (i) -> (j) with
/// wrapping color k and a fusion-tree index into <i*, k, j, k*>.
struct TubeBasisElt {
  Label i, k, j;
  int tree;
};

/// Morphism I(V) -> I(W) between induced objects, stored as matrices graded
/// by the probe simple m; rows/cols run over (component label, comb).
class IMorph {
 public:
  Label v = 0, w = 0;  // middle labels (simple)
  std::map<Label, ScalarMatrix> mats;
  IMorph() = default;
};

class TubeCenter;

/// The tube algebra of a spherical fusion category: string nets on the
/// annulus with single marked points, multiplied by stacking and resolving
/// the middle circle.
class TubeAlgebra {
 public:
  explicit TubeAlgebra(std::shared_ptr<HomCtx> hom);

  const std::vector<TubeBasisElt>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  const FiniteAlgebra& algebra() const { return *alg_; }
  const HomCtx& hom() const { return *hom_; }
  const CatPtr& cat() const { return hom_->cat(); }

  std::vector<Scalar> unit() const { return alg_->unit(); }
  std::vector<Scalar> multiply(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    return alg_->multiply(x, y);
  }
  /// Coordinates of a pure tube.
  std::vector<Scalar> coords(const TubeBasisElt& t, const Scalar& c) const;
  int index_of(Label i, Label k, Label j, int tree) const;
  /// Projection of x onto the corner with source color i and target color j.
  std::vector<Scalar> corner(const std::vector<Scalar>& x, Label i, Label j) const;

 private:
  std::shared_ptr<HomCtx> hom_;
  GraphCtx gctx_;
  std::vector<TubeBasisElt> basis_;
  std::map<std::array<int, 4>, int> index_;
  std::unique_ptr<FiniteAlgebra> alg_;

  std::vector<Scalar> stack_product(const TubeBasisElt& x, const TubeBasisElt& y) const;
};

/// One simple object of the Drinfeld center, presented through its
/// convolution-block idempotent. The basis of each multiplicity space is the
/// documented gauge: columns of the block idempotent acting on I(V0).
struct CenterObject {
  std::string name;
  std::vector<int> mult;  // n_Y(a) per simple a
  Scalar qdim;
  Label v0 = 0;     // anchor simple with n_Y(v0) > 0
  IMorph embed;     // idempotent endomorphism of I(v0) with image Y
  // crossing tensors: cross[w] maps (a, mu, b, nu) -> vector in <w, b, w*, a*>
  std::map<Label, std::map<std::array<int, 4>, HomVector>> cross;
  std::size_t total_mult() const {
    std::size_t n = 0;
    for (int m : mult) n += std::size_t(m);
    return n;
  }
};

struct CenterBlockInfo {
  std::vector<Scalar> idempotent;  // tube algebra coordinates
  std::size_t algebra_dim;
  std::size_t center_degree;       // geometric simples represented
  Scalar sum_d_squared;            // sum of d_Y^2 over the block's simples
  bool split;                      // center degree 1 and object extracted
  int object_index = -1;           // into the objects list when split
};

class TubeCenter {
 public:
  explicit TubeCenter(std::shared_ptr<HomCtx> hom, std::uint64_t seed = 7);

  const TubeAlgebra& tubes() const { return tubes_; }
  const std::vector<CenterBlockInfo>& blocks() const { return blocks_; }
  const std::vector<CenterObject>& simples() const { return objects_; }
  /// Number of simple objects over the algebraic closure.
  std::size_t geometric_simple_count() const;
  /// Exact sum of d_Y^2 over all geometric simples.
  Scalar sum_qdim_squared() const;
  /// Index of the unit object of the center.
  int unit_object() const;
  /// Index of the dual of a split simple (from the reversed-annulus
  /// involution on blocks).
  int dual_object(int idx) const;

  // --- induced objects -----------------------------------------------------
  /// Half-braiding I(v) (x) w -> w (x) I(v) on probe-graded spaces.
  const IMorph& half_braiding(Label v, Label w) const;
  IMorph identity_morphism(Label v) const;
  IMorph compose(const IMorph& f, const IMorph& g) const;  // f after g
  bool commutes_with_half_braidings(const IMorph& f) const;
  /// Image of a tube-algebra corner element under the canonical isomorphism
  /// onto Hom_{Z}(I(v), I(w)).
  IMorph tube_to_imorph(const std::vector<Scalar>& x, Label v, Label w) const;

  /// Checks that the two adjunction isomorphisms between Hom_A(V, F(X)) and
  /// center morphisms out of I(V) are mutually inverse on a basis.
  bool verify_adjunction_units(Label v) const;

  /// The commuting triangle f2 = f3 . f1 on all center simples.
  bool verify_adjunction_triangle(Label v, Label w) const;

  /// Projector onto the Y-isotypic part of I(F(Y)); returned as per-probe
  /// matrices over (i-component, (b,beta)-summand, comb) bases.
  std::map<Label, ScalarMatrix> p_y_projector(int object_index) const;
  /// Per-probe ranks of p_y_projector; equals n_Y(m) for each probe m.
  bool verify_p_y(int object_index) const;

  /// The annular projector carving Hom(V-object, K(Y)) out of the tube
  /// corner; returns its fixed-subspace dimension for a one- or two-point
  /// boundary object.
  std::size_t p_fixed_dim(const std::vector<Label>& boundary, int object_index) const;

  /// dim H^string of the sphere with marked points carrying the listed
  /// center simples.
  std::size_t punctured_sphere_dim(const std::vector<int>& object_indices) const;

 private:
  std::shared_ptr<HomCtx> hom_;
  GraphCtx gctx_;
  TubeAlgebra tubes_;
  AlgebraSplit split_;
  std::vector<CenterBlockInfo> blocks_;
  std::vector<CenterObject> objects_;
  mutable std::map<std::pair<Label, Label>, IMorph> hb_cache_;
  mutable std::mutex mu_;

  void extract_objects(std::uint64_t seed);
  std::vector<Label> icomp_labels(Label comp, Label mid, Label probe) const;
  struct IBasis {
    std::vector<std::tuple<Label, int>> items;  // (component, comb index)
    std::vector<int> offset;
  };
  IBasis ibasis(Label mid, Label probe) const;
  HomVector include_column(const CenterObject& y, Label comp, std::size_t mu, Label probe) const;
};

/// Machine-readable center report.
std::string center_report_json(const TubeCenter& tc, std::size_t torus_dim);

}  // namespace stringnet
