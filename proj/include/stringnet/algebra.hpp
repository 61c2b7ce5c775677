#pragma once

#include <cstdint>
#include <vector>

#include "stringnet/matrix.hpp"

namespace stringnet {

struct FieldExtensionError : std::runtime_error {
  std::string minimal_polynomial;
  FieldExtensionError(const std::string& mp)
      : std::runtime_error("block splitting requires an undeclared field extension; "
                           "minimal polynomial: " + mp),
        minimal_polynomial(mp) {}
};

/// Finite-dimensional associative algebra given by structure constants:
/// basis b_0..b_{n-1} with b_i * b_j = sum_k structure[i][j][k] b_k.
class FiniteAlgebra {
 public:
  FiniteAlgebra(FieldPtr f, std::vector<std::vector<std::vector<Scalar>>> structure);

  const FieldPtr& field() const { return f_; }
  std::size_t dim() const { return n_; }

  std::vector<Scalar> multiply(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;
  ScalarMatrix left_mult(const std::vector<Scalar>& x) const;
  ScalarMatrix right_mult(const std::vector<Scalar>& x) const;
  std::vector<Scalar> basis_vector(std::size_t i) const;

  /// Checks b_i (b_j b_k) = (b_i b_j) b_k on all triples.
  bool is_associative() const;
  /// Two-sided unit; throws if none exists.
  const std::vector<Scalar>& unit() const;
  /// Trace form of the left regular representation is nondegenerate
  /// (equivalent to semisimplicity in characteristic zero).
  bool is_semisimple() const;
  /// Basis of the center.
  std::vector<std::vector<Scalar>> center_basis() const;

 private:
  FieldPtr f_;
  std::size_t n_;
  std::vector<std::vector<std::vector<Scalar>>> sc_;
  mutable std::vector<Scalar> unit_;
  mutable bool unit_computed_ = false;
};

struct AlgebraBlock {
  std::vector<Scalar> idempotent;  // coordinates over the algebra basis
  std::size_t dim = 0;             // dim of the two-sided ideal e*A
  std::size_t center_degree = 1;   // degree of the block's center over the scalar field
};

struct AlgebraSplit {
  std::vector<AlgebraBlock> blocks;
  std::size_t geometric_simple_count() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.center_degree;
    return n;
  }
};

/// Central primitive idempotent decomposition of a semisimple algebra.
/// Splitting uses the left-regular representation of the center plus
/// eigenspace splitting of seeded random elements; every eigenvalue is
/// reconstructed in the declared field and verified exactly. Blocks whose
/// central character does not lie in the field are returned whole, with
/// center_degree recording the degree of the needed extension.
AlgebraSplit split_idempotents(const FiniteAlgebra& a, std::uint64_t seed = 1);

}  // namespace stringnet
