#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace rdmom {

// Exact rational scalar used everywhere outside the float recovery layer.
using Rat = mpq_class;

// Accepts "-12", "3/4", "2.75", "-0.125", optionally with a decimal exponent
// ("1.5e3"). Decimal forms convert exactly. Returns nullopt for anything else,
// including a zero denominator.
std::optional<Rat> parse_rat(const std::string& text);

// Canonical short form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_str(const Rat& v);

double rat_double(const Rat& v);

}  // namespace rdmom
