#include "doctest.h"

#include "oracles.hpp"
#include "rdmom/fixtures.hpp"
#include "rdmom/moment.hpp"

using namespace rdmom;
using testutil::make_poly;

namespace {

MomentSequence point_mass_23(unsigned half) {
  RatMeasure mu;
  mu.atoms.push_back({Rat(2), Rat(3), Rat(1)});
  return moments_from_atoms(mu, half);
}

}  // namespace

TEST_CASE("moments of a unit point mass are the coordinate powers") {
  const auto beta = point_mass_23(1);
  CHECK(beta.max_degree() == 2);
  CHECK(beta.at({0, 0}) == 1);
  CHECK(beta.at({1, 0}) == 2);
  CHECK(beta.at({0, 1}) == 3);
  CHECK(beta.at({2, 0}) == 4);
  CHECK(beta.at({1, 1}) == 6);
  CHECK(beta.at({0, 2}) == 9);
  CHECK_THROWS_AS((void)beta.at({3, 0}), std::out_of_range);
}

TEST_CASE("riesz functional is linear in the coefficients") {
  const auto beta = point_mass_23(1);
  const Poly p = make_poly({{1, 0, Rat(1)}, {0, 1, Rat(1)}});
  CHECK(riesz(beta, p) == 5);
  const Poly q = make_poly({{2, 2, Rat(1)}});
  CHECK_THROWS_AS((void)riesz(beta, q), RieszDegreeError);
  CHECK(riesz(beta, Poly()) == 0);
}

TEST_CASE("moment matrix entries follow the shared-index rule") {
  const auto m = build_moment_matrix(point_mass_23(1), 1);
  CHECK(m.dim() == 3);
  CHECK(m.mat().at(0, 0) == 1);
  CHECK(m.mat().at(1, 1) == 4);
  CHECK(m.mat().at(1, 2) == 6);
  CHECK(m.mat().at(2, 2) == 9);
  CHECK(m.mat().mat().is_symmetric());
  CHECK(validate_structure(m.mat(), 1).empty());
}

TEST_CASE("structure audit pinpoints a corrupted cell") {
  const auto m = build_moment_matrix(fixtures::grid_family(2, 2), 2);
  CHECK(validate_structure(m.mat(), 2).empty());

  SymMat broken = m.mat();
  // cell (x, xy) carries moment x^2 y, as does (y, x^2); desync them
  broken.set(1, 4, broken.at(1, 4) + 1);
  const auto viols = validate_structure(broken, 2);
  REQUIRE(!viols.empty());
  CHECK(viols.front().index == Monomial{2, 1});
  CHECK(viols.front().value_a != viols.front().value_b);
}

TEST_CASE("sequence swap and scale") {
  const auto beta = point_mass_23(2);
  const auto sw = beta.swapped();
  CHECK(sw.at({1, 0}) == 3);
  CHECK(sw.at({2, 1}) == beta.at({1, 2}));
  CHECK(sw.swapped() == beta);
  const auto sc = beta.scaled(Rat(5, 2));
  CHECK(sc.at({0, 0}) == Rat(5, 2));
  CHECK(sc.at({1, 1}) == 15);
}

TEST_CASE("grid measures enumerate the product row major") {
  const auto mu = grid_measure({Rat(0), Rat(1)}, {Rat(5), Rat(7)});
  REQUIRE(mu.atoms.size() == 4);
  CHECK(mu.atoms[0].x == 0);
  CHECK(mu.atoms[0].y == 5);
  CHECK(mu.atoms[1].y == 7);
  CHECK(mu.atoms[2].x == 1);
  for (const auto& a : mu.atoms) CHECK(a.weight == 1);
  CHECK_THROWS_AS((void)grid_measure({Rat(0)}, {Rat(0)}, {Rat(1), Rat(2)}),
                  std::invalid_argument);
}

TEST_CASE("grid fixture moments match direct summation") {
  const auto beta = fixtures::grid_family(3, 3);
  // sum over {0,1,2}^2 of x^i y^j
  CHECK(beta.at({0, 0}) == 9);
  CHECK(beta.at({1, 0}) == 9);
  CHECK(beta.at({2, 2}) == 25);
  CHECK(beta.at({3, 1}) == 27);  // (0+1+8) * (0+1+2)
  const auto m = build_moment_matrix(beta, 3);
  CHECK(validate_structure(m.mat(), 3).empty());
}
