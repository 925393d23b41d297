#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lietower/chain.hpp"
#include "lietower/errors.hpp"
#include "lietower/sparse.hpp"

using namespace lietower;
using namespace lietower::qalg;

TEST_CASE("solve_linear on the identity") {
  SparseMatrix m(2, 2);
  m.set(0, 0, 1);
  m.set(1, 1, 1);
  Vec b{Rational(3), Rational(-1, 2)};
  auto x = solve_linear(m, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rational(3));
  CHECK((*x)[1] == Rational(-1, 2));
}

TEST_CASE("solve_linear reports inconsistency") {
  SparseMatrix m(1, 1);
  Vec b{Rational(1)};
  CHECK_FALSE(solve_linear(m, b).has_value());
}

TEST_CASE("solve_linear picks the pivot-rule solution") {
  // [[2,4],[1,2]] x = (2,1): pivot at column 0, free column 1 set to zero.
  SparseMatrix m(2, 2);
  m.set(0, 0, 2);
  m.set(0, 1, 4);
  m.set(1, 0, 1);
  m.set(1, 1, 2);
  Vec b{Rational(2), Rational(1)};
  auto x = solve_linear(m, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rational(1));
  CHECK((*x)[1] == Rational(0));
  Vec back = m.apply(*x);
  CHECK(back == b);
}

TEST_CASE("solve_linear rejects mismatched dimensions") {
  SparseMatrix m(2, 2);
  CHECK_THROWS_AS(solve_linear(m, Vec{Rational(1)}), InputError);
}

namespace {

SparseMatrix random_matrix(std::mt19937& rng, Index rows, Index cols) {
  SparseMatrix m(rows, cols);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      if (rng() % 3 != 0) m.set(r, c, frac(num(rng), den(rng)));
  return m;
}

}  // namespace

TEST_CASE("random systems: substituting the solution back is exact") {
  std::mt19937 rng(20240911);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int iter = 0; iter < 60; ++iter) {
    Index rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    SparseMatrix m = random_matrix(rng, rows, cols);
    Vec x0(cols);
    for (auto& v : x0) v = Rational(val(rng));
    Vec b = m.apply(x0);
    auto x = solve_linear(m, b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
    for (const auto& q : *x) {
      // canonical form: reduced, positive denominator
      CHECK(gcd(q.get_num(), q.get_den()) == 1);
      CHECK(q.get_den() > 0);
    }
  }
}

TEST_CASE("rank-nullity on random matrices") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 60; ++iter) {
    Index rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    SparseMatrix m = random_matrix(rng, rows, cols);
    CHECK(kernel_basis(m).size() + rank(m) == cols);
  }
}

TEST_CASE("kernel vectors are exact kernel elements") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 40; ++iter) {
    Index rows = 1 + rng() % 4, cols = 1 + rng() % 5;
    SparseMatrix m = random_matrix(rng, rows, cols);
    for (const auto& k : kernel_basis(m)) {
      Vec y = m.apply(k);
      for (const auto& v : y) CHECK(v == 0);
    }
  }
}

TEST_CASE("chain homology: zero differential gives H = C") {
  ChainComplexSlice c;
  c.dims[0] = 1;
  c.dims[1] = 1;
  auto h = chain_homology(c, 0, 1);
  CHECK(h.at(0).dim() == 1);
  CHECK(h.at(1).dim() == 1);
}

TEST_CASE("chain homology: identity boundary is acyclic") {
  ChainComplexSlice c;
  c.dims[0] = 1;
  c.dims[1] = 1;
  SparseMatrix d1(1, 1);
  d1.set(0, 0, 1);
  c.boundary.emplace(1, d1);
  auto h = chain_homology(c, 0, 1);
  CHECK(h.at(0).dim() == 0);
  CHECK(h.at(1).dim() == 0);
}

TEST_CASE("chain homology: circle") {
  ChainComplexSlice c;
  c.dims[0] = 1;
  c.dims[1] = 1;
  c.boundary.emplace(1, SparseMatrix(1, 1));  // de = v - v = 0
  auto h = chain_homology(c, 0, 1);
  CHECK(h.at(0).dim() == 1);
  CHECK(h.at(1).dim() == 1);
}

TEST_CASE("chain homology flags a broken complex by degree") {
  ChainComplexSlice c;
  c.dims[0] = 1;
  c.dims[1] = 1;
  c.dims[2] = 1;
  SparseMatrix d1(1, 1), d2(1, 1);
  d1.set(0, 0, 1);
  d2.set(0, 0, 1);
  c.boundary.emplace(1, d1);
  c.boundary.emplace(2, d2);
  CHECK_THROWS_WITH_AS(chain_homology(c, 0, 2), "boundary squared is nonzero at degree 2",
                       InternalError);
}

TEST_CASE("homology representatives are cycles and reduce to themselves") {
  // 2-dimensional kernel with a 1-dimensional image: H has dim 1.
  ChainComplexSlice c;
  c.dims[0] = 1;
  c.dims[1] = 3;
  c.dims[2] = 1;
  SparseMatrix d1(1, 3);
  d1.set(0, 2, 1);  // third basis vector is not a cycle
  SparseMatrix d2(3, 1);
  d2.set(0, 0, 1);
  d2.set(1, 0, -1);
  c.boundary.emplace(1, d1);
  c.boundary.emplace(2, d2);
  auto h = chain_homology(c, 0, 2);
  CHECK(h.at(1).dim() == 1);
  const auto& space = h.at(1);
  for (const auto& rep : space.representatives()) {
    Vec dr = d1.apply(rep);
    for (const auto& v : dr) CHECK(v == 0);
  }
  // coords of rep + boundary equals coords of rep
  Vec rep = space.representatives()[0];
  Vec shifted = rep;
  shifted[0] += 1;
  shifted[1] -= 1;
  CHECK(space.coords(shifted) == space.coords(rep));
}

TEST_CASE("SpanBuilder membership") {
  SpanBuilder span(3);
  CHECK(span.insert(Vec{Rational(1), Rational(1), Rational(0)}));
  CHECK(span.insert(Vec{Rational(0), Rational(1), Rational(1)}));
  CHECK_FALSE(span.insert(Vec{Rational(1), Rational(2), Rational(1)}));
  CHECK(span.rank() == 2);
  CHECK(span.contains(Vec{Rational(2), Rational(3), Rational(1)}));
  CHECK_FALSE(span.contains(Vec{Rational(1), Rational(0), Rational(0)}));
}
