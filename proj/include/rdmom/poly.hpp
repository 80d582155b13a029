#pragma once

#include "rdmom/monomial.hpp"
#include "rdmom/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace rdmom {

// Sparse bivariate polynomial with exact coefficients. Zero coefficients are
// never stored, so term_count() == 0 iff the polynomial is zero.
class Poly {
 public:
  Poly() = default;

  static Poly term(const Monomial& m, const Rat& c);
  static Poly constant(const Rat& c);

  void add(const Monomial& m, const Rat& c);  // accumulates; erases on cancellation
  Rat coeff(const Monomial& m) const;

  bool zero() const { return t_.empty(); }
  unsigned degree() const;  // 0 for the zero polynomial
  std::size_t term_count() const { return t_.size(); }

  Poly shifted(const Monomial& m) const;  // multiply by x^i y^j
  Poly swapped_vars() const;              // x <-> y
  Poly scaled(const Rat& c) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const = default;

  Rat eval(const Rat& x, const Rat& y) const;
  double eval(double x, double y) const;

  // Coefficients against an explicit monomial list. Throws std::out_of_range
  // when a term lies outside the list.
  std::vector<Rat> coeff_vector(const std::vector<Monomial>& basis) const;

  auto begin() const { return t_.begin(); }
  auto end() const { return t_.end(); }

  std::string str() const;  // deglex term order, e.g. "-5 x + 20 y + 8 x y^2"

 private:
  std::map<Monomial, Rat, DeglexLess> t_;
};

}  // namespace rdmom
