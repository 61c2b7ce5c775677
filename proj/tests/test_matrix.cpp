#include "stringnet/matrix.hpp"

#include <random>

#include "doctest.h"

using namespace stringnet;

namespace {

ScalarMatrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  ScalarMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = f->from_rational(Rational(coeff(rng)));
  return m;
}

}  // namespace

TEST_CASE("rank of identity and zero") {
  auto f = Field::rationals();
  CHECK(ScalarMatrix::identity(f, 3).rank() == 3);
  CHECK(ScalarMatrix(f, 2, 2).rank() == 0);
}

TEST_CASE("rank-nullity on random matrices") {
  auto f = Field::make({"5"});
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
    ScalarMatrix m = random_matrix(f, r, c, rng);
    CHECK(m.rank() + m.kernel_basis().size() == c);
    // kernel vectors are genuinely annihilated
    for (const auto& v : m.kernel_basis()) {
      auto mv = m.apply(v);
      for (const auto& x : mv) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("inverse and solve") {
  auto f = Field::make({"2"});
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    ScalarMatrix m = random_matrix(f, 5, 5, rng);
    if (m.rank() < 5) continue;
    ScalarMatrix inv = m.inverse();
    CHECK(m * inv == ScalarMatrix::identity(f, 5));
    std::vector<Scalar> b(5, f->one()), x;
    CHECK(m.solve(b, x));
    auto mx = m.apply(x);
    for (std::size_t i = 0; i < 5; ++i) CHECK(mx[i] == b[i]);
  }
}

TEST_CASE("rank equals rref pivot count") {
  auto f = Field::make({"2", "3"});
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    ScalarMatrix m = random_matrix(f, 2 + rng() % 7, 2 + rng() % 7, rng);
    std::vector<std::size_t> pivots;
    m.rref(&pivots);
    CHECK(m.rank() == pivots.size());
  }
}

TEST_CASE("idempotent trace equals rank") {
  auto f = Field::rationals();
  // projector onto a 2-dim subspace of Q^3
  ScalarMatrix p(f, 3, 3);
  p.at(0, 0) = f->one();
  p.at(1, 1) = f->from_rational(Rational(1, 2));
  p.at(1, 2) = f->from_rational(Rational(1, 2));
  p.at(2, 1) = f->from_rational(Rational(1, 2));
  p.at(2, 2) = f->from_rational(Rational(1, 2));
  CHECK(p * p == p);
  CHECK(p.trace() == f->from_int(2));
  CHECK(p.rank() == 2);
}
