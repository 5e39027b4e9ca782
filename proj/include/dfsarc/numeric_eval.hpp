#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <utility>

#include "dfsarc/families.hpp"
#include "dfsarc/rational.hpp"

namespace dfsarc {

// Evaluates the recursive families at exact rational points without ever
// constructing symbolic objects. x and z are fixed per evaluator; the
// recursions only shift the w argument (by multiples of z, plus x for the
// Check and F families), so memo keys on (indices, exact w value) collide
// often and keep the recursion polynomial-size.
class NumericEvaluator {
 public:
  NumericEvaluator(Rational x0, Rational z0) : x0_(std::move(x0)), z0_(std::move(z0)) {}

  const Rational& x0() const { return x0_; }
  const Rational& z0() const { return z0_; }

  // All four throw PoleError when a denominator vanishes at the point.
  Rational hat(int n, const Rational& w);
  Rational check(int n, const Rational& w);
  Rational std_g(int n, const Rational& w);
  Rational f(int k, int n, const Rational& w);

 private:
  Rational x0_;
  Rational z0_;
  std::map<std::pair<int, Rational>, Rational> hat_;
  std::map<std::pair<int, Rational>, Rational> check_;
  std::map<std::pair<int, Rational>, Rational> std_;
  std::map<std::tuple<int, int, Rational>, Rational> f_;
};

// One-shot evaluation of a family member at a point.
Rational eval_family(const FamilyId& id, const EvalPoint& pt);

// Deterministic safe evaluation point: all three coordinates strictly
// negative with numerator and denominator magnitudes in [1, bound]. At such
// points every denominator arising in the Hat/Check recursions has the shape
// 1 - (w + c*z + d*x) - m*x with c, d, m >= 0 and is therefore >= 1; the Std
// and F families are evaluated at the reflected point (1-w, -x, -z), whose
// all-positive coordinates keep every w + c*z + d*x denominator positive.
EvalPoint sample_safe_point(std::uint64_t seed, int bound);

// The reflected companion point (1-w, -x, -z).
EvalPoint reflect_point(const EvalPoint& pt);

}  // namespace dfsarc
