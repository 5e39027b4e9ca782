#pragma once

#include <map>
#include <optional>
#include <string>

#include "dfsarc/linear_form.hpp"
#include "dfsarc/monomial.hpp"
#include "dfsarc/rational.hpp"

namespace dfsarc {

// Sparse polynomial in w, x, z over the rationals. Terms are held in
// descending graded-lex order (w > x > z) and zero coefficients are never
// stored, so map equality is polynomial equality and iteration order is the
// canonical serialization order.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  Polynomial() = default;  // zero
  explicit Polynomial(const Rational& c);
  static Polynomial one() { return Polynomial(Rational(1)); }
  static Polynomial from_linear(const LinearForm& f);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Total degree; -1 for the zero polynomial.
  int total_degree() const;
  const TermMap& terms() const { return terms_; }
  Rational coeff(const Monomial& m) const;

  // Accumulates c into the coefficient of m, pruning a resulting zero.
  void add_term(const Monomial& m, const Rational& c);

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Rational eval(const EvalPoint& pt) const;

  // Ring homomorphism: every variable replaced by its image under the map,
  // fully expanded.
  Polynomial substituted(const AffineMap& map) const;

  // Exact division by a nonzero linear form: returns q with q*f == *this, or
  // nullopt when no such polynomial exists. Non-divisibility is a normal
  // outcome here, not an error.
  std::optional<Polynomial> divided_exactly_by(const LinearForm& f) const;

  // Canonical text form: terms "c * w^a x^b z^c" joined by " + ".
  std::string to_string() const;

 private:
  TermMap terms_;
};

}  // namespace dfsarc
