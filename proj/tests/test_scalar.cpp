#include "stringnet/scalar.hpp"

#include <random>

#include "doctest.h"

using namespace stringnet;

TEST_CASE("rational literals and arithmetic") {
  auto f = Field::rationals();
  Scalar half = parse_scalar(f, "1/2");
  CHECK(half.rational() == Rational(1, 2));
  CHECK(parse_scalar(f, "2/4") == half);
  CHECK(parse_scalar(f, "1 - 3/2") == -half);
  CHECK(parse_scalar(f, "(2+3)*(1/5)") == f->one());
}

TEST_CASE("sqrt(2)*sqrt(2) = 2") {
  auto f = Field::make({"2"});
  Scalar s2 = parse_scalar(f, "sqrt(2)");
  CHECK(s2 * s2 == f->from_int(2));
  CHECK(parse_scalar(f, "sqrt(2)*sqrt(2)") == f->from_int(2));
  CHECK(parse_scalar(f, "sqrt(8)") == f->from_int(2) * s2);
  CHECK(parse_scalar(f, "sqrt(4)") == f->from_int(2));
}

TEST_CASE("golden ratio satisfies phi^2 = phi + 1") {
  auto f = Field::make({"5"});
  Scalar phi = parse_scalar(f, "(1+sqrt(5))/2");
  CHECK((phi * phi - phi - f->one()).is_zero());
  CHECK(phi.to_double() == doctest::Approx(1.6180339887));
}

TEST_CASE("tower field: sqrt(phi) and its square") {
  auto f = Field::make({"5", "(1+sqrt(5))/2", "2 + (1+sqrt(5))/2"});
  CHECK(f->degree() == 8);
  Scalar phi = parse_scalar(f, "(1+sqrt(5))/2");
  Scalar sphi = parse_scalar(f, "sqrt((1+sqrt(5))/2)");
  CHECK(sphi * sphi == phi);
  // 1/sqrt(phi) = sqrt(phi) * (phi - 1)
  Scalar inv = sphi.inverse();
  CHECK(inv == sphi * (phi - f->one()));
  // total quantum dimension of the associated field: sqrt(phi + 2)
  Scalar d2 = phi + f->from_int(2);
  Scalar dd = parse_scalar(f, "sqrt(2 + (1+sqrt(5))/2)");
  CHECK(dd * dd == d2);
}

TEST_CASE("non-squares are rejected") {
  auto f = Field::make({"5"});
  Scalar out;
  CHECK(!f->try_sqrt(f->from_int(2), out));
  CHECK(!f->try_sqrt(parse_scalar(f, "(1+sqrt(5))/2"), out));
  CHECK_THROWS_AS(parse_scalar(f, "sqrt(3)"), ParseError);
  CHECK_THROWS_AS(parse_scalar(f, "sqrt(0-1)"), ParseError);
}

TEST_CASE("parse errors report a position") {
  auto f = Field::rationals();
  CHECK_THROWS_AS(parse_scalar(f, "1 + "), ParseError);
  CHECK_THROWS_AS(parse_scalar(f, "(1"), ParseError);
  CHECK_THROWS_AS(parse_scalar(f, "1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar(f, "1 2"), ParseError);
  try {
    parse_scalar(f, "1 + x");
  } catch (const ParseError& e) {
    CHECK(e.pos == 4);
  }
}

TEST_CASE("canonical serialization round-trips") {
  auto f = Field::make({"2", "sqrt(2)"});
  Scalar x = parse_scalar(f, "3/7 - 2*sqrt(2) + sqrt(sqrt(2))/5");
  Scalar y = parse_scalar(f, x.str());
  CHECK(x == y);
  CHECK(f->zero().str() == "0");
}

TEST_CASE("field axioms on random elements") {
  auto f = Field::make({"5", "(1+sqrt(5))/2"});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-6, 6);
  auto rand_scalar = [&] {
    std::vector<Rational> c(f->degree());
    for (auto& q : c) {
      q = Rational(coeff(rng), 1 + std::abs(coeff(rng)));
      q.canonicalize();
    }
    return Scalar(f, std::move(c));
  };
  for (int i = 0; i < 200; ++i) {
    Scalar x = rand_scalar(), y = rand_scalar(), z = rand_scalar();
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    if (!x.is_zero()) CHECK(x * x.inverse() == f->one());
    Scalar sq = x * x, root;
    CHECK(f->try_sqrt(sq, root));
    CHECK(root * root == sq);
  }
}

TEST_CASE("generator validation") {
  CHECK_THROWS(Field::make({"4"}));       // already a square
  CHECK_THROWS(Field::make({"0-2"}));     // negative
  CHECK_THROWS(Field::make({"2", "8"}));  // 8 = (2*sqrt(2))^2 in Q(sqrt 2)
  auto f = Field::make({"2", "3"});       // plain multiquadratic still fine
  Scalar s6 = parse_scalar(f, "sqrt(6)");
  CHECK(s6 == parse_scalar(f, "sqrt(2)*sqrt(3)"));
}
