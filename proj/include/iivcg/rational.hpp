#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace iivcg {

// Exact rational number. Every value in the engine is one of these; there is
// no floating-point mode. All helpers below keep values canonicalized, which
// GMP requires for comparisons.
using Rat = mpq_class;

// num/den as an exact rational. den must be nonzero.
Rat rat(long num, long den = 1);

// base^exp with exp possibly negative (base must be nonzero then).
Rat rat_pow(const Rat& base, long exp);

// Parses "p/q", an integer literal, or a decimal literal ("0.25" -> 1/4).
// Throws std::invalid_argument on anything else.
Rat parse_rat(const std::string& text);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_fraction(const Rat& value);

// Decimal rendering for display only; never used in comparisons.
std::string to_decimal(const Rat& value, int digits = 6);

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b);

bool lex_less(const std::vector<Rat>& a, const std::vector<Rat>& b);

}  // namespace iivcg
