#include "stringnet/category.hpp"

#include "doctest.h"

using namespace stringnet;

namespace {

std::string failures(const ValidationReport& rep) {
  std::string s;
  for (const auto& c : rep.checks)
    if (!c.pass) s += c.check + ": " + c.witness + "; ";
  return s;
}

}  // namespace

TEST_CASE("all builtins validate cleanly") {
  for (const char* name : {"vec_z2", "vec_z3", "fibonacci", "ising"}) {
    auto cat = builtin(name);
    auto rep = validate(*cat);
    INFO(name, ": ", failures(rep));
    CHECK(rep.ok());
  }
}

TEST_CASE("total dim squared") {
  auto z2 = builtin("vec_z2");
  CHECK(z2->total_dim_squared() == z2->field->from_int(2));
  auto fib = builtin("fibonacci");
  Scalar phi = parse_scalar(fib->field, "(1+sqrt(5))/2");
  CHECK(fib->total_dim_squared() == phi + fib->field->from_int(2));
  auto is = builtin("ising");
  CHECK(is->total_dim_squared() == is->field->from_int(4));
  auto z3 = builtin("vec_z3");
  CHECK(z3->total_dim_squared() == z3->field->from_int(3));
}

TEST_CASE("flipped F sign breaks the pentagon with a witness") {
  auto fib = builtin("fibonacci");
  auto broken = std::make_shared<FusionCat>(*fib);
  // flip the sign of one F[t,t,t;t] entry
  auto key = std::array<int, 10>{1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
  broken->f_entries[key] = -broken->f_entries[key];
  broken->finalize();
  auto rep = validate(*broken);
  CHECK(!rep.ok());
  bool pentagon_failed = false;
  for (const auto& c : rep.checks)
    if (c.check == "pentagon" && !c.pass && !c.witness.empty()) pentagon_failed = true;
  CHECK(pentagon_failed);
}

TEST_CASE("wrong quantum dimension fails consistency") {
  auto fib = builtin("fibonacci");
  auto broken = std::make_shared<FusionCat>(*fib);
  broken->qdim[1] = broken->field->one();
  broken->sqrt_qdim[1] = broken->field->one();
  broken->finalize();
  auto rep = validate(*broken);
  bool dim_failed = false;
  for (const auto& c : rep.checks)
    if (c.check == "qdim-fusion-consistency" && !c.pass) dim_failed = true;
  CHECK(dim_failed);
}

TEST_CASE("category JSON round-trip is exact") {
  for (const char* name : {"vec_z2", "fibonacci", "ising"}) {
    auto cat = builtin(name);
    std::string text = save_category_json(*cat);
    auto back = load_category_json(text);
    CHECK(save_category_json(*back) == text);
    CHECK(validate(*back).ok());
    CHECK(back->total_dim_squared() == cat->total_dim_squared());
  }
}

TEST_CASE("semion: kappa = -1 self-dual object") {
  // test-only data with a nontrivial Frobenius-Schur indicator
  std::string text = R"({
    "format": "sfc-1",
    "name": "semion",
    "field_generators": ["2"],
    "simples": ["1", "s"],
    "unit": "1",
    "dual": [["1","1"],["s","s"]],
    "fusion": [["1","1","1",1],["1","s","s",1],["s","1","s",1],["s","s","1",1]],
    "qdim": [["1","1"],["s","1"]],
    "sqrt_qdim": [["1","1"],["s","1"]],
    "fs_indicator": [["s",-1]],
    "F": [["s","s","s","s","1","1",0,0,0,0,"0-1"]]
  })";
  auto sem = load_category_json(text);
  auto rep = validate(*sem);
  INFO(failures(rep));
  CHECK(rep.ok());
  // derived loop value is kappa * d = -1
  CHECK(sem->cap_scalar(1) == -sem->field->one());
}

TEST_CASE("loop values match kappa*d on builtins") {
  for (const char* name : {"vec_z2", "vec_z3", "fibonacci", "ising"}) {
    auto cat = builtin(name);
    for (std::size_t x = 0; x < cat->rank(); ++x)
      CHECK(cat->cap_scalar(Label(x)) == cat->qdim[x]);
  }
}

TEST_CASE("malformed files throw DataError") {
  CHECK_THROWS_AS(load_category_json("{"), DataError);
  CHECK_THROWS_AS(load_category_json("{\"format\":\"bogus\"}"), DataError);
  CHECK_THROWS_AS(load_category_file("no_such_file.json"), DataError);
  CHECK_THROWS_AS(builtin("nope"), DataError);
}
