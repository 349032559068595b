#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace cinf {

using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q", decimals ("0.25") and scientific notation
/// ("1e-10") into an exact rational. Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

bool is_dyadic(const Rational& q);
double to_double(const Rational& q);

/// Exact rational square root when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

Rational midpoint(const Rational& a, const Rational& b);

}  // namespace cinf
