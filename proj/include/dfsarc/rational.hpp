#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace dfsarc {

// Exact arbitrary-precision rational. GMP keeps the canonical form
// (reduced fraction, positive denominator) after every operation.
using Rational = mpq_class;

// Builds num/den in canonical form. Throws std::invalid_argument when den == 0.
Rational make_rational(long num, long den = 1);

// Parses "123" or "-4/7" (optional surrounding whitespace). Floating-point
// literals are rejected: exactness is part of the interface.
std::optional<Rational> parse_rational(const std::string& text);

// "p/q" for non-integers, plain "p" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

// A numeric assignment for the three formal variables w, x, z.
struct EvalPoint {
  Rational w;
  Rational x;
  Rational z;

  friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

}  // namespace dfsarc
