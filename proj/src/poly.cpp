#include "rdmom/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace rdmom {

Poly Poly::term(const Monomial& m, const Rat& c) {
  Poly p;
  p.add(m, c);
  return p;
}

Poly Poly::constant(const Rat& c) { return term({0, 0}, c); }

void Poly::add(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) t_.erase(it);
}

Rat Poly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Rat(0) : it->second;
}

unsigned Poly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.degree());
  return d;
}

Poly Poly::shifted(const Monomial& m) const {
  Poly out;
  for (const auto& [t, c] : t_) out.t_.emplace(t + m, c);
  return out;
}

Poly Poly::swapped_vars() const {
  Poly out;
  for (const auto& [t, c] : t_) out.t_.emplace(t.swapped(), c);
  return out;
}

Poly Poly::scaled(const Rat& c) const {
  Poly out;
  if (c == 0) return out;
  for (const auto& [t, v] : t_) out.t_.emplace(t, v * c);
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  for (const auto& [m, c] : o.t_) out.add(m, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out = *this;
  for (const auto& [m, c] : o.t_) out.add(m, -c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out;
  for (const auto& [a, ca] : t_)
    for (const auto& [b, cb] : o.t_) out.add(a + b, ca * cb);
  return out;
}

Rat Poly::eval(const Rat& x, const Rat& y) const {
  Rat s = 0;
  for (const auto& [m, c] : t_) {
    Rat t = c;
    for (unsigned k = 0; k < m.i; ++k) t *= x;
    for (unsigned k = 0; k < m.j; ++k) t *= y;
    s += t;
  }
  return s;
}

double Poly::eval(double x, double y) const {
  double s = 0;
  for (const auto& [m, c] : t_)
    s += rat_double(c) * std::pow(x, double(m.i)) * std::pow(y, double(m.j));
  return s;
}

std::vector<Rat> Poly::coeff_vector(const std::vector<Monomial>& basis) const {
  std::vector<Rat> v(basis.size());
  std::map<Monomial, std::size_t, DeglexLess> pos;
  for (std::size_t k = 0; k < basis.size(); ++k) pos.emplace(basis[k], k);
  for (const auto& [m, c] : t_) {
    auto it = pos.find(m);
    if (it == pos.end()) throw std::out_of_range("coeff_vector: term outside basis");
    v[it->second] = c;
  }
  return v;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : t_) {
    Rat a = c;
    if (s.empty()) {
      if (a < 0) {
        s += "-";
        a = -a;
      }
    } else {
      s += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    const bool unit = a == 1 && m.degree() > 0;
    if (!unit) s += rat_str(a);
    if (m.degree() > 0) {
      if (!unit) s += ' ';
      s += to_string(m);
    }
  }
  return s;
}

}  // namespace rdmom
