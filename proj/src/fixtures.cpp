#include "rdmom/fixtures.hpp"

namespace rdmom {
namespace fixtures {

MomentSequence cubic_curve_family(const Rat& c, std::optional<Rat> d_entry) {
  MomentSequence b(3);
  const Rat d = d_entry ? *d_entry : Rat(2026881) - 2844 * c + c * c;
  const struct {
    unsigned i, j;
    long v;
  } vals[] = {
      {0, 0, 1},  {1, 0, 0},  {0, 1, 0},
      {2, 0, 1},  {1, 1, 2},  {0, 2, 5},
      {3, 0, 0},  {2, 1, 0},  {1, 2, 0},  {0, 3, 0},
      {4, 0, 2},  {3, 1, 5},  {2, 2, 14}, {1, 3, 42}, {0, 4, 132},
      {5, 0, 0},  {4, 1, 0},  {3, 2, 0},  {2, 3, 0},  {1, 4, 0},  {0, 5, 0},
      {6, 0, 5},  {5, 1, 14}, {4, 2, 42}, {3, 3, 132}, {2, 4, 429},
  };
  for (const auto& e : vals) b.set({e.i, e.j}, Rat(e.v));
  b.set({1, 5}, c);
  b.set({0, 6}, d);
  return b;
}

MomentSequence overdetermined_family(const Rat& r) {
  MomentSequence b(3);
  const Rat gamma =
      (Rat("443272376768") - Rat("2742712830") * r + Rat("4826809") * r * r) / Rat("41327767");
  b.set({0, 0}, 1);
  b.set({1, 0}, 0);
  b.set({0, 1}, 0);
  b.set({2, 0}, 1);
  b.set({1, 1}, 0);
  b.set({0, 2}, 1);
  b.set({3, 0}, 0);
  b.set({2, 1}, 0);
  b.set({1, 2}, 2);
  b.set({0, 3}, 0);
  b.set({4, 0}, 2);
  b.set({3, 1}, 0);
  b.set({2, 2}, 5);
  b.set({1, 3}, 0);
  b.set({0, 4}, 22);
  b.set({5, 0}, -1);
  b.set({4, 1}, -2);
  b.set({3, 2}, 13);
  b.set({2, 3}, 3);
  b.set({1, 4}, Rat(894, 13));
  b.set({0, 5}, Rat(336, 13));
  b.set({6, 0}, 178);
  b.set({5, 1}, 139);
  b.set({4, 2}, 159);
  b.set({3, 3}, Rat(1657, 13));
  b.set({2, 4}, Rat(4298, 13));
  b.set({1, 5}, r);
  b.set({0, 6}, gamma);
  return b;
}

MomentSequence quartic_pair_family(const Rat& a, const Rat& b, const Rat& g, const Rat& h) {
  MomentSequence out(4);
  // degree <= 6: zero except the even pattern below
  for (const Monomial& mo : monomials_up_to(8)) out.set(mo, 0);
  for (auto mo : {Monomial{0, 0}, Monomial{2, 0}, Monomial{0, 2}, Monomial{2, 2}})
    out.set(mo, 1);
  for (auto mo : {Monomial{4, 0}, Monomial{0, 4}, Monomial{4, 2}, Monomial{2, 4}})
    out.set(mo, 2);
  out.set({6, 0}, 5);
  out.set({0, 6}, 5);
  // degree 7: the four free parameters
  out.set({7, 0}, a);
  out.set({6, 1}, b);
  out.set({1, 6}, g);
  out.set({0, 7}, h);
  // degree 8
  out.set({8, 0}, Rat(13) + a * a + b * b);
  out.set({7, 1}, a * b);
  out.set({6, 2}, 5);
  out.set({5, 3}, 0);
  out.set({4, 4}, 4);
  out.set({3, 5}, 0);
  out.set({2, 6}, 5);
  out.set({1, 7}, g * h);
  out.set({0, 8}, Rat(13) + g * g + h * h);
  return out;
}

MomentSequence grid_family(unsigned k, unsigned half_degree) {
  std::vector<Rat> nodes;
  for (unsigned t = 0; t < k; ++t) nodes.push_back(Rat(long(t)));
  return moments_from_atoms(grid_measure(nodes, nodes), half_degree);
}

}  // namespace fixtures
}  // namespace rdmom
