#include "doctest.h"

#include "oracles.hpp"
#include "rdmom/poly.hpp"

using namespace rdmom;
using testutil::make_poly;

TEST_CASE("terms accumulate and cancel") {
  Poly p;
  p.add({1, 0}, Rat(2));
  p.add({1, 0}, Rat(-2));
  CHECK(p.zero());
  CHECK(p.term_count() == 0);
  p.add({2, 1}, Rat(5, 3));
  CHECK(p.coeff({2, 1}) == Rat(5, 3));
  CHECK(p.coeff({0, 0}) == 0);
  CHECK(p.degree() == 3);
}

TEST_CASE("arithmetic keeps exact coefficients") {
  const Poly a = make_poly({{1, 0, Rat(1)}, {0, 1, Rat(-1)}});   // x - y
  const Poly b = make_poly({{1, 0, Rat(1)}, {0, 1, Rat(1)}});    // x + y
  const Poly prod = a * b;
  CHECK(prod == make_poly({{2, 0, Rat(1)}, {0, 2, Rat(-1)}}));   // x^2 - y^2
  CHECK((a + b) == make_poly({{1, 0, Rat(2)}}));
  CHECK((a - a).zero());
  CHECK(a.scaled(Rat(3)).coeff({0, 1}) == Rat(-3));
}

TEST_CASE("shift multiplies by a monomial") {
  const Poly p = make_poly({{0, 0, Rat(4)}, {1, 1, Rat(1)}});
  const Poly s = p.shifted({2, 0});
  CHECK(s == make_poly({{2, 0, Rat(4)}, {3, 1, Rat(1)}}));
}

TEST_CASE("variable swap mirrors every exponent pair") {
  const Poly q = make_poly({{3, 0, Rat(1)}, {1, 2, Rat(-7)}});
  CHECK(q.swapped_vars() == make_poly({{0, 3, Rat(1)}, {2, 1, Rat(-7)}}));
  CHECK(q.swapped_vars().swapped_vars() == q);
}

TEST_CASE("evaluation, exact and floating") {
  const Poly p = make_poly({{2, 0, Rat(1)}, {0, 1, Rat(-3)}, {0, 0, Rat(1, 2)}});
  CHECK(p.eval(Rat(2), Rat(1)) == Rat(3, 2));
  CHECK(p.eval(2.0, 1.0) == doctest::Approx(1.5));
}

TEST_CASE("coefficient vector against an explicit basis") {
  const Poly p = make_poly({{0, 0, Rat(1)}, {1, 1, Rat(2)}});
  const auto basis = monomials_up_to(2);
  const auto v = p.coeff_vector(basis);
  REQUIRE(v.size() == 6);
  CHECK(v[0] == 1);
  CHECK(v[4] == 2);
  CHECK_THROWS_AS((void)p.coeff_vector(monomials_up_to(1)), std::out_of_range);
}

TEST_CASE("printing follows deglex order with signs") {
  const Poly q = make_poly({{1, 0, Rat(-5)}, {0, 1, Rat(20)}, {1, 2, Rat(8)}});
  CHECK(q.str() == "-5 x + 20 y + 8 x y^2");
  CHECK(Poly().str() == "0");
  CHECK(Poly::constant(Rat(1, 3)).str() == "1/3");
}
