#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lietower/errors.hpp"
#include "lietower/simplex_model.hpp"

using namespace lietower;
using namespace lietower::lsc;
using cdgl::differential_check;
using cdgl::is_mc;
using freelie::LieElement;

TEST_CASE("bernoulli numbers, B1 = -1/2 convention") {
  auto b = bernoulli_numbers(7);
  CHECK(b[0] == 1);
  CHECK(b[1] == Rational(-1, 2));
  CHECK(b[2] == Rational(1, 6));
  CHECK(b[3] == 0);
  CHECK(b[4] == Rational(-1, 30));
  CHECK(b[5] == 0);
  CHECK(b[6] == Rational(1, 42));
}

TEST_CASE("interval: endpoints are MC and the linear part is a1 - a0") {
  Cdgl L = ls_interval(6);
  CHECK(is_mc(L, L.gen("a0")));
  CHECK(is_mc(L, L.gen("a1")));
  LieElement dx = L.d_of(*L.generators()->find("a01"));
  CHECK(dx.linear_part().str() == "-a0 + a1");
  CHECK(differential_check(L).ok());  // d(dx) = 0 mod words of length > 6
}

TEST_CASE("interval truncates consistently across orders") {
  Cdgl big = ls_interval(6);
  Cdgl small = ls_interval(3);
  auto x = *big.generators()->find("a01");
  CHECK(big.d_of(x).truncated(3) == small.d_of(x));
}

TEST_CASE("simplex model in dimension 0") {
  const SimplexModel& m = simplex_model(0, 4);
  CHECK(m.algebra.d_of(0).str() == "-1/2 [a0,a0]");
  CHECK(is_mc(m.algebra, m.algebra.gen("a0")));
}

TEST_CASE("simplex model in dimension 2") {
  const SimplexModel& m = simplex_model(2, 4);
  LieElement dtop = m.algebra.d_of(m.generator_of({0, 1, 2}));
  CHECK(dtop.linear_part().str() == "a01 - a02 + a12");
  CHECK(differential_check(m.algebra).ok());
  for (int v = 0; v <= 2; ++v) CHECK(is_mc(m.algebra, m.algebra.gen(subset_name({v}))));
}

TEST_CASE("simplex model in dimension 3 has the right generator counts") {
  const SimplexModel& m = simplex_model(3, 3);
  const auto& gens = *m.algebra.generators();
  REQUIRE(gens.size() == 15);
  std::map<int, int> by_degree;
  for (freelie::GenIndex g = 0; g < gens.size(); ++g) ++by_degree[gens[g].degree];
  CHECK(by_degree[-1] == 4);
  CHECK(by_degree[0] == 6);
  CHECK(by_degree[1] == 4);
  CHECK(by_degree[2] == 1);
  CHECK(differential_check(m.algebra).ok());
}

TEST_CASE("face differentials restrict the top of the lower simplex") {
  const int N = 4;
  const SimplexModel& m2 = simplex_model(2, N);
  const SimplexModel& m1 = simplex_model(1, N);
  // The edge 02 inherits the interval differential along 0 -> 0, 1 -> 2.
  CdglMorphism f = cosimplicial_operator(CosimplicialKind::coface, 1, 2, N);
  LieElement expect = f.apply(m1.algebra.d_of(m1.generator_of({0, 1})));
  CHECK(expect == m2.algebra.d_of(m2.generator_of({0, 2})));
}

TEST_CASE("codegeneracy s0 collapses the interval") {
  CdglMorphism s0 = cosimplicial_operator(CosimplicialKind::codegeneracy, 0, 1, 4);
  CHECK(s0.images[*s0.source.generators()->find("a0")].str() == "a0");
  CHECK(s0.images[*s0.source.generators()->find("a1")].str() == "a0");
  CHECK(s0.images[*s0.source.generators()->find("a01")].zero());
  CHECK(s0.commutes_with_differentials());
}

TEST_CASE("cosimplicial identities on generators, n <= 3") {
  const int N = 3;
  auto coface = [&](int i, int n) {
    return cosimplicial_operator(CosimplicialKind::coface, i, n, N);
  };
  auto codeg = [&](int i, int n) {
    return cosimplicial_operator(CosimplicialKind::codegeneracy, i, n, N);
  };
  auto same_images = [](const CdglMorphism& a, const CdglMorphism& b) {
    REQUIRE(a.images.size() == b.images.size());
    for (std::size_t i = 0; i < a.images.size(); ++i)
      if (!(a.images[i] == b.images[i])) return false;
    return true;
  };

  for (int n = 2; n <= 3; ++n) {
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        CHECK(same_images(compose(coface(j, n), coface(i, n - 1)),
                          compose(coface(i, n), coface(j - 1, n - 1))));
    for (int j = 0; j + 1 <= n - 1; ++j)
      for (int i = 0; i <= j; ++i)
        CHECK(same_images(compose(codeg(j, n - 1), codeg(i, n)),
                          compose(codeg(i, n - 1), codeg(j + 1, n))));
    // mixed identities
    for (int j = 0; j <= n - 1; ++j) {
      for (int i = 0; i <= n; ++i) {
        CdglMorphism lhs = compose(codeg(j, n), coface(i, n));
        if (i < j) {
          CHECK(same_images(lhs, compose(coface(i, n - 1), codeg(j - 1, n - 1))));
        } else if (i == j || i == j + 1) {
          for (freelie::GenIndex g = 0; g < lhs.source.generators()->size(); ++g)
            CHECK(lhs.images[g] == lhs.source.gen(g).truncated(N));
        } else {
          CHECK(same_images(lhs, compose(coface(i - 1, n - 1), codeg(j, n - 1))));
        }
      }
    }
  }
}

TEST_CASE("cosimplicial operators are cdgl morphisms, n <= 3") {
  const int N = 4;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i <= n; ++i)
      CHECK(cosimplicial_operator(CosimplicialKind::coface, i, n, N).commutes_with_differentials());
    for (int i = 0; i < n; ++i)
      CHECK(cosimplicial_operator(CosimplicialKind::codegeneracy, i, n, N)
                .commutes_with_differentials());
  }
}

TEST_CASE("simplex models truncate consistently across orders") {
  const SimplexModel& big = simplex_model(2, 5);
  const SimplexModel& small = simplex_model(2, 3);
  for (freelie::GenIndex g = 0; g < big.algebra.generators()->size(); ++g)
    CHECK(big.algebra.d_of(g).truncated(3) == small.algebra.d_of(g));
}

TEST_CASE("dimension overflow is reported with the limit") {
  CHECK_THROWS_AS(simplex_model(10, 2), InputError);
}
