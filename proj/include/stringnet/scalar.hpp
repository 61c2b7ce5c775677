#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stringnet {

using Rational = mpq_class;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::size_t p, const std::string& msg)
      : std::runtime_error(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

/// Exact element of a real tower field Q(sqrt(g_1), ..., sqrt(g_k)).
///
/// Coefficient vector over the 2^k square-root monomials; all arithmetic is
/// exact and equality is decidable.
class Scalar {
 public:
  Scalar() = default;  // empty; only assignable
  Scalar(FieldPtr f, std::vector<Rational> coeffs);

  const FieldPtr& field() const { return f_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational() const;  // throws unless is_rational()

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar inverse() const;  // throws on zero

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  double to_double() const;
  std::string str() const;  // canonical, reparseable

 private:
  FieldPtr f_;
  std::vector<Rational> c_;
  friend class Field;
};

/// A tower of real quadratic extensions of Q. Each generator is a positive
/// element of the field below it that is not already a square there; the
/// common case is a square-free positive integer.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr rationals();
  /// Generator expressions are parsed left to right, each in the field
  /// spanned by the previous ones.
  static FieldPtr make(const std::vector<std::string>& generator_exprs);

  int num_generators() const { return k_; }
  std::size_t degree() const { return std::size_t(1) << k_; }
  const std::string& generator_str(int j) const { return gen_str_[j]; }
  std::vector<std::string> generator_strs() const { return gen_str_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_rational(const Rational& q) const;
  Scalar from_int(long n) const;
  Scalar generator_sqrt(int j) const;  // the monomial sqrt(g_j)

  /// Exact square root. Returns false if x is not a perfect square in the
  /// field; on success the root has non-negative principal embedding.
  bool try_sqrt(const Scalar& x, Scalar& out) const;

  bool same(const Field& o) const;  // structural comparison

  double mono_value(std::size_t mask) const { return mono_val_[mask]; }

 private:
  Field() = default;
  int k_ = 0;
  // generator values as coefficient vectors over the full monomial basis
  // (support below bit j for generator j)
  std::vector<std::vector<Rational>> gen_;
  std::vector<std::string> gen_str_;  // canonical serialization of gen value
  // mono_table_[a][b] = coefficient vector of sqrt-monomial(a) * sqrt-monomial(b)
  std::vector<std::vector<std::vector<Rational>>> mono_table_;
  std::vector<double> mono_val_;

  std::vector<Rational> mono_mul(std::size_t a, std::size_t b) const;
  std::vector<Rational> vec_mul(const std::vector<Rational>& x,
                                const std::vector<Rational>& y) const;
  std::vector<Rational> vec_inverse(const std::vector<Rational>& x, int level) const;
  bool vec_sqrt(const std::vector<Rational>& x, int level, std::vector<Rational>& out) const;
  double vec_value(const std::vector<Rational>& x) const;
  void build_tables();

  friend class Scalar;
  friend Scalar parse_scalar(const FieldPtr&, std::string_view);
};

/// Parses `rationals, sqrt(<expr>), + - * / ( )`. sqrt succeeds exactly when
/// its argument is a perfect square in the field (declared generators
/// included); otherwise a ParseError pointing at the radicand is thrown.
Scalar parse_scalar(const FieldPtr& f, std::string_view text);

}  // namespace stringnet
