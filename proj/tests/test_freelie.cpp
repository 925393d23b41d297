#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lietower/errors.hpp"
#include "lietower/freelie.hpp"

using namespace lietower;
using namespace lietower::freelie;

namespace {

GeneratorSetPtr two_even() {
  return make_generators({{"x", 0}, {"y", 0}});
}

GeneratorSetPtr one_odd() {
  return make_generators({{"u", 1}});
}

LieElement gen(const GeneratorSetPtr& g, const std::string& name, int trunc) {
  return generator_element(g, *g->find(name), trunc);
}

}  // namespace

TEST_CASE("generator order is (degree, name)") {
  auto g = make_generators({{"z", 1}, {"a", 0}, {"b", -1}});
  CHECK((*g)[0].name == "b");
  CHECK((*g)[1].name == "a");
  CHECK((*g)[2].name == "z");
}

TEST_CASE("lyndon words, small cases") {
  auto w2 = lyndon_words(2, 2);
  REQUIRE(w2.size() == 1);
  CHECK(w2[0] == Word{0, 1});
  CHECK(lyndon_words(1, 2).empty());
  CHECK(lyndon_words(2, 1).size() == 2);
  CHECK(lyndon_words(3, 3).size() == 8);
}

TEST_CASE("standard factorization splits at the least proper suffix") {
  auto [u, v] = standard_factorization(Word{0, 0, 1});
  CHECK(u == Word{0});
  CHECK(v == Word{0, 1});
  auto [u2, v2] = standard_factorization(Word{0, 1, 1});
  CHECK(u2 == Word{0, 1});
  CHECK(v2 == Word{1});
}

TEST_CASE("lyndon basis: two degree-0 generators, length 2") {
  auto g = two_even();
  auto basis = lyndon_basis(g, 2);
  REQUIRE(basis.size() == 1);
  CHECK(bracket_to_string(*g, basis[0]) == "[x,y]");
}

TEST_CASE("lyndon basis: length 1 is the generators") {
  auto g = make_generators({{"x", 0}, {"y", 0}, {"u", 3}});
  auto basis = lyndon_basis(g, 1);
  REQUIRE(basis.size() == 3);
  CHECK(bracket_to_string(*g, basis[0]) == "x");
  CHECK(bracket_to_string(*g, basis[1]) == "y");
  CHECK(bracket_to_string(*g, basis[2]) == "u");
}

TEST_CASE("lyndon basis: one odd generator has the square and nothing longer") {
  auto g = one_odd();
  auto b2 = lyndon_basis(g, 2);
  REQUIRE(b2.size() == 1);
  CHECK(b2[0].square);
  CHECK(bracket_to_string(*g, b2[0]) == "[u,u]");
  CHECK(lyndon_basis(g, 3).empty());
}

TEST_CASE("degree filter") {
  auto g = make_generators({{"a", -1}, {"x", 0}});
  auto basis = lyndon_basis(g, 2, 0);
  // length-2, degree-0 brackets: none ([a,x] has degree -1, [a,a] degree -2)
  CHECK(basis.empty());
  auto m1 = lyndon_basis(g, 2, -1);
  REQUIRE(m1.size() == 1);
  CHECK(bracket_to_string(*g, m1[0]) == "[a,x]");
}

TEST_CASE("normalize_bracket: antisymmetry basics") {
  auto g = two_even();
  auto x = gen(g, "x", 4), y = gen(g, "y", 4);
  CHECK(normalize_bracket(x, x).zero());
  LieElement yx = normalize_bracket(y, x);
  LieElement xy = normalize_bracket(x, y);
  LieElement sum = yx + xy;
  CHECK(sum.zero());
  CHECK(xy.str() == "[x,y]");
  CHECK(yx.str() == "-[x,y]");
}

TEST_CASE("normalize_bracket: odd generator square and triple") {
  auto g = one_odd();
  auto u = gen(g, "u", 6);
  LieElement uu = normalize_bracket(u, u);
  CHECK(uu.str() == "[u,u]");
  CHECK(normalize_bracket(u, uu).zero());
}

TEST_CASE("normalize_bracket rewrites to the normal basis") {
  auto g = two_even();
  auto x = gen(g, "x", 4), y = gen(g, "y", 4);
  LieElement xy = normalize_bracket(x, y);
  LieElement left = normalize_bracket(xy, x);  // [[x,y],x] = -[x,[x,y]]
  REQUIRE(left.terms().size() == 1);
  CHECK(left.str() == "-[x,[x,y]]");
}

TEST_CASE("mismatched algebras are rejected") {
  auto g1 = two_even();
  auto g2 = one_odd();
  CHECK_THROWS_AS(normalize_bracket(gen(g1, "x", 3), gen(g2, "u", 3)), InputError);
  CHECK_THROWS_AS(normalize_bracket(gen(g1, "x", 3), gen(g1, "y", 4)), InputError);
}

TEST_CASE("bracket length is additive, overflow discarded") {
  auto g = two_even();
  const int N = 3;
  auto x = gen(g, "x", N), y = gen(g, "y", N);
  LieElement xy = normalize_bracket(x, y);
  LieElement l3 = normalize_bracket(xy, normalize_bracket(x, y));  // length 4 > N
  CHECK(l3.zero());
  LieElement xxy = normalize_bracket(x, xy);
  for (const auto& [b, c] : xxy.terms()) CHECK(b.length() == 3);
}

TEST_CASE("graded witt dimensions: two degree-0 generators") {
  auto g = two_even();
  std::vector<std::size_t> expect{2, 1, 2, 3, 6};
  for (std::size_t q = 1; q <= 5; ++q) {
    CHECK(graded_witt_dimension(g, q) == expect[q - 1]);
    CHECK(witt_formula(2, q) == expect[q - 1]);
    CHECK(lyndon_basis(g, q).size() == expect[q - 1]);
  }
}

TEST_CASE("graded witt dimensions: single generators") {
  auto even = make_generators({{"x", 0}});
  CHECK(graded_witt_dimension(even, 1) == 1);
  for (std::size_t q = 2; q <= 5; ++q) CHECK(graded_witt_dimension(even, q) == 0);

  auto odd = one_odd();
  CHECK(graded_witt_dimension(odd, 1) == 1);
  CHECK(graded_witt_dimension(odd, 2) == 1);
  CHECK(graded_witt_dimension(odd, 3) == 0);
  CHECK(graded_witt_dimension(odd, 4) == 0);
}

TEST_CASE("basis size equals the tensor-rank oracle on mixed alphabets") {
  std::vector<GeneratorSetPtr> alphabets = {
      two_even(),
      one_odd(),
      make_generators({{"a", -1}, {"x", 0}}),
      make_generators({{"a", -1}, {"u", 1}}),
      make_generators({{"a", -1}, {"x", 0}, {"u", 1}}),
      make_generators({{"u", 1}, {"v", 1}}),
      make_generators({{"u", 1}, {"v", 2}}),
  };
  for (const auto& g : alphabets) {
    for (std::size_t q = 1; q <= 6; ++q) {
      CAPTURE(q);
      CHECK(lyndon_basis(g, q).size() == graded_witt_dimension(g, q));
    }
  }
}

TEST_CASE("expansion round trip: project(expand(b)) = b") {
  auto g = make_generators({{"a", -1}, {"x", 0}, {"u", 1}});
  for (std::size_t q = 1; q <= 5; ++q) {
    for (const auto& b : lyndon_basis(g, q)) {
      TensorElement t = expand(g, b);
      LieElement back = lie_project(t, 6);
      REQUIRE(back.terms().size() == 1);
      CHECK(back.terms().begin()->first == b);
      CHECK(back.terms().begin()->second == Rational(1));
    }
  }
}

TEST_CASE("dynkin projection is the identity on the Lie subspace") {
  auto g = make_generators({{"a", -1}, {"x", 0}, {"u", 1}});
  for (std::size_t q = 1; q <= 5; ++q) {
    for (const auto& b : lyndon_basis(g, q)) {
      LieElement e = zero_element(g, 6);
      e.add(b, Rational(1));
      LieElement back = dynkin_project(expand(e), 6);
      CHECK(back == e);
    }
  }
}

namespace {

// Graded antisymmetry and Jacobi, checked exactly over basis elements.
void check_graded_identities(const GeneratorSetPtr& g, int N) {
  std::vector<LieElement> elems;
  std::vector<int> degs;
  for (int q = 1; q <= 4; ++q) {
    for (const auto& b : lyndon_basis(g, static_cast<std::size_t>(q))) {
      LieElement e = zero_element(g, N);
      e.add(b, Rational(1));
      elems.push_back(e);
      degs.push_back(degree_of(*g, b));
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      LieElement lhs = normalize_bracket(elems[i], elems[j]);
      LieElement rhs = normalize_bracket(elems[j], elems[i]);
      if ((degs[i] % 2 != 0) && (degs[j] % 2 != 0))
        rhs *= Rational(-1);  // [u,v] = -(-1)^{|u||v|}[v,u]
      LieElement sum = lhs + rhs;
      CHECK(sum.zero());
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      for (std::size_t k = 0; k < elems.size(); ++k) {
        std::size_t len = 0;
        // skip triples whose total length always truncates away
        len = elems[i].terms().begin()->first.length() + elems[j].terms().begin()->first.length() +
              elems[k].terms().begin()->first.length();
        if (len > static_cast<std::size_t>(N)) continue;
        LieElement lhs = normalize_bracket(elems[i], normalize_bracket(elems[j], elems[k]));
        LieElement r1 = normalize_bracket(normalize_bracket(elems[i], elems[j]), elems[k]);
        LieElement r2 = normalize_bracket(elems[j], normalize_bracket(elems[i], elems[k]));
        if ((degs[i] % 2 != 0) && (degs[j] % 2 != 0)) r2 *= Rational(-1);
        LieElement diff = lhs - r1 - r2;
        CHECK(diff.zero());
      }
    }
  }
}

}  // namespace

TEST_CASE("graded antisymmetry and Jacobi hold after normalization") {
  check_graded_identities(two_even(), 5);
  check_graded_identities(make_generators({{"a", -1}, {"u", 1}}), 5);
  check_graded_identities(make_generators({{"a", -1}, {"x", 0}, {"u", 1}}), 4);
}

TEST_CASE("scalars in normal forms stay canonical") {
  auto g = two_even();
  auto x = gen(g, "x", 5), y = gen(g, "y", 5);
  LieElement e = normalize_bracket(x, y);
  e *= frac(6, 4);
  e += normalize_bracket(y, x);
  for (const auto& [b, c] : e.terms()) {
    CHECK(gcd(c.get_num(), c.get_den()) == 1);
    CHECK(c.get_den() > 0);
  }
  CHECK(e.str() == "1/2 [x,y]");
}

TEST_CASE("relabel preserves normal forms") {
  auto g = make_generators({{"p", 0}, {"q", 0}});
  auto big = make_generators({{"a", -1}, {"p", 0}, {"q", 0}, {"r", 0}});
  auto p = gen(g, "p", 4), q = gen(g, "q", 4);
  LieElement e = normalize_bracket(p, normalize_bracket(p, q));
  LieElement moved = relabel(e, big, {*big->find("p"), *big->find("q")}, 4);
  CHECK(moved.str() == "[p,[p,q]]");
}
