#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dfsarc/errors.hpp"
#include "dfsarc/polynomial.hpp"

namespace dfsarc {

inline constexpr int kDefaultDegreeCap = 600;

// Rational function held as a numerator polynomial over a multiset of linear
// denominator factors. The denominator is never expanded during arithmetic.
//
// Invariants, restored after every operation:
//   - each stored factor is canonically scaled (leading coefficient 1 in the
//     order cw, cx, cz, c0); extracted scalars are folded into the numerator;
//   - no factor divides the numerator;
//   - the zero function has an empty factor multiset.
class RationalFunction {
 public:
  using FactorMap = std::map<LinearForm, int>;

  RationalFunction() = default;  // zero
  explicit RationalFunction(Polynomial num) : num_(std::move(num)) {}
  explicit RationalFunction(const Rational& c) : num_(Polynomial(c)) {}
  static RationalFunction one() { return RationalFunction(Rational(1)); }

  // General constructor for possibly unreduced input; normalizes.
  static RationalFunction from_parts(Polynomial num,
                                     const std::vector<std::pair<LinearForm, int>>& factors);

  const Polynomial& numerator() const { return num_; }
  const FactorMap& denominator_factors() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Polynomial denominator_polynomial() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const Rational& s, const RationalFunction& a);

  RationalFunction divided_by(const LinearForm& f) const;
  RationalFunction substituted(const AffineMap& map) const;

  // Exact value at a point; throws PoleError when a factor vanishes there.
  Rational eval(const EvalPoint& pt) const;

  std::string to_string() const;

 private:
  void push_factor(const LinearForm& f, int mult);
  void normalize();

  Polynomial num_;
  FactorMap den_;
};

// Equality as rational functions, decided by cross-multiplication of the
// expanded numerator/denominator products after cancelling the factors the
// two denominators share. Throws ResourceError when the expansion would
// exceed degree_cap in total degree.
bool rf_equal(const RationalFunction& a, const RationalFunction& b,
              int degree_cap = kDefaultDegreeCap);

}  // namespace dfsarc
