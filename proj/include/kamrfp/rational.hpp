#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace kamrfp {

/// Exact rational number used everywhere in the solver core.
using Rat = boost::multiprecision::mpq_rational;

/// Parses "p" or "p/q" (q != 0). Throws std::invalid_argument on bad syntax.
Rat parse_rational(const std::string& text);

/// Renders as "p" when the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& value);

}  // namespace kamrfp
