#pragma once

#include "rdmom/moment.hpp"

#include <optional>

namespace rdmom {
namespace fixtures {

// Degree-6 family supported on the curve y = x^3. c is the free moment
// beta_{1,5}; beta_{0,6} defaults to 2026881 - 2844 c + c^2, which keeps the
// matrix singular, and can be overridden to break that.
MomentSequence cubic_curve_family(const Rat& c, std::optional<Rat> d_entry = std::nullopt);

// Degree-6 family carrying a third, extra column relation besides the
// determinate pair. The candidate extension is inconsistent for every r
// except 49462/169. beta_{1,5} = r; beta_{0,6} follows a fixed quadratic in r.
MomentSequence overdetermined_family(const Rat& r);

// Degree-8 family with relations of the form X^4 = ... and Y^4 = ...; the
// four degree-7 parameters steer how far the chain survives. Symmetric choices
// like (a, 1/4, 1/4, 0) keep the start positive semidefinite.
MomentSequence quartic_pair_family(const Rat& a, const Rat& b, const Rat& g, const Rat& h);

// Uniform unit-weight k x k grid on {0..k-1}^2, moments up to 2 * half_degree.
MomentSequence grid_family(unsigned k, unsigned half_degree);

}  // namespace fixtures
}  // namespace rdmom
