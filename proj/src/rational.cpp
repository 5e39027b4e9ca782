#include "dfsarc/rational.hpp"

#include <stdexcept>

namespace dfsarc {

Rational make_rational(long num, long den) {
  if (den == 0) {
    throw std::invalid_argument("make_rational: zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::optional<Rational> parse_rational(const std::string& text) {
  std::string s = text;
  auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return std::nullopt;
  auto last = s.find_last_not_of(" \t");
  s = s.substr(first, last - first + 1);

  Rational q;
  if (q.set_str(s, 10) != 0) return std::nullopt;
  // Must reject 1/0 before canonicalize: GMP aborts on a zero denominator.
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace dfsarc
