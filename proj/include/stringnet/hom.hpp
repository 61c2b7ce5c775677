#pragma once

#include <map>
#include <mutex>

#include "stringnet/category.hpp"

namespace stringnet {

/// Left-comb fusion tree over a leaf sequence u_0..u_{n-1}: mid[k] is the
/// intermediate after absorbing u_k (mid[n-1] must be the unit), mult[k]
/// indexes the vertex space Hom(mid[k], mid[k-1] (x) u_k).
struct Comb {
  std::vector<Label> mid;
  std::vector<int> mult;
  bool operator<(const Comb& o) const {
    return std::tie(mid, mult) < std::tie(o.mid, o.mult);
  }
  bool operator==(const Comb& o) const { return mid == o.mid && mult == o.mult; }
};

struct TreeSpace {
  std::vector<Label> labels;
  std::vector<Comb> basis;
  std::map<Comb, int> index;
  std::size_t dim() const { return basis.size(); }
};

/// Element of <u_0,...,u_{n-1}> as coefficients over the comb basis.
struct HomVector {
  std::vector<Label> labels;
  std::vector<Scalar> coef;
};

/// Per-category engine for invariant-space computations. All caches are
/// write-once behind a mutex; operations are pure.
class HomCtx {
 public:
  explicit HomCtx(CatPtr cat);
  const CatPtr& cat() const { return cat_; }
  const FieldPtr& field() const { return cat_->field; }

  const TreeSpace& space(const std::vector<Label>& labels) const;

  HomVector zero(std::vector<Label> labels) const;
  HomVector basis_vector(const std::vector<Label>& labels, std::size_t idx) const;
  /// The coevaluation vector in <X, X*> (the unique basis tree).
  HomVector coev(Label x) const;
  bool is_zero(const HomVector& v) const;
  Scalar scalar_value(const HomVector& v) const;  // for empty label sequences
  HomVector scaled(const HomVector& v, const Scalar& s) const;
  void accumulate(HomVector& into, const HomVector& v, const Scalar& s) const;

  /// Insert a born pair (X, X*) at leg position pos.
  HomVector cup(const HomVector& v, std::size_t pos, Label x) const;
  /// Contract adjacent legs (pos, pos+1); their labels must be dual.
  HomVector cap(const HomVector& v, std::size_t pos) const;
  /// Splice a closed vector w (root unit) into v at leg position pos.
  HomVector insert(const HomVector& v, std::size_t pos, const HomVector& w) const;

  /// Cyclic rotation z: <V0..Vn-1> -> <Vn-1, V0..Vn-2>; z^n = id.
  HomVector rotate(const HomVector& v) const;
  HomVector rotate_by(const HomVector& v, long k) const;
  /// Composition over a dual pair: phi in <A..,X>, psi in <X*,B..>.
  HomVector compose(const HomVector& phi, const HomVector& psi) const;
  /// Non-degenerate pairing <V0..Vn-1> x <Vn-1*..V0*> -> scalars.
  Scalar pairing(const HomVector& phi, const HomVector& psi) const;

  /// Gram matrix of pairing(basis_i, revdual basis_j).
  const ScalarMatrix& gram(const std::vector<Label>& labels) const;
  /// Pairing-dual basis of <V(n-1)*..V0*>: pairing(e_a, out[b]) = delta_ab.
  const std::vector<HomVector>& dual_basis(const std::vector<Label>& labels) const;

  std::vector<Label> reversed_duals(const std::vector<Label>& labels) const;

 private:
  CatPtr cat_;
  mutable std::map<std::vector<Label>, TreeSpace> spaces_;
  mutable std::map<std::vector<Label>, ScalarMatrix> grams_;
  mutable std::map<std::vector<Label>, std::vector<HomVector>> duals_;
  mutable std::mutex mu_;

  void mount(Label ctx, const std::vector<Label>& wl, const Comb& s,
             std::vector<std::pair<Comb, Scalar>>& out) const;
};

/// Independent enumeration used as a test oracle: counts admissible label
/// chains without building trees.
std::size_t brute_force_dim(const FusionCat& cat, const std::vector<Label>& labels);

}  // namespace stringnet
