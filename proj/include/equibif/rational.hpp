#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace equibif {

// Exact scalar used throughout the algebraic layer. int64 is comfortable for
// desk-scale groups, spectra and potentials; parse/format keep CLI artifacts
// round-trippable.
using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);
double to_double(const Rational& r);

// Accepts "p", "p/q", and plain decimals ("-1.25", "3e2" is not supported).
std::optional<Rational> parse_rational(std::string_view text);

// Best rational approximation with denominator <= max_den (continued
// fractions). Returns nothing if |x - p/q| > tol.
std::optional<Rational> rationalize(double x, long long max_den, double tol);

}  // namespace equibif
