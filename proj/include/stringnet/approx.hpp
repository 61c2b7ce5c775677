#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <vector>

#include "stringnet/scalar.hpp"

namespace stringnet {

// High-precision floating cross-check backend. Never used on acceptance
// paths; exact arithmetic is authoritative.
using HpFloat = boost::multiprecision::cpp_bin_float_100;
using HpComplex = boost::multiprecision::cpp_complex_100;

/// Numeric evaluation of field elements under the principal (all-positive)
/// real embedding.
class ApproxContext {
 public:
  explicit ApproxContext(FieldPtr f);
  HpFloat eval(const Scalar& x) const;
  const std::vector<HpFloat>& mono_values() const { return mono_; }

 private:
  FieldPtr f_;
  std::vector<HpFloat> mono_;
};

/// Roots of a monic-or-not polynomial (little-endian coefficients) by
/// Durand-Kerner iteration.
std::vector<HpComplex> polynomial_roots(const std::vector<HpComplex>& coeffs);

/// Rank of a float matrix with an explicit zero threshold.
std::size_t approx_rank(std::vector<std::vector<HpFloat>> m, const HpFloat& threshold);

}  // namespace stringnet
