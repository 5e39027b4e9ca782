#include <vector>

#include "doctest.h"

#include "dfsarc/errors.hpp"
#include "dfsarc/identity_verify.hpp"
#include "dfsarc/polynomial.hpp"
#include "dfsarc/rational_function.hpp"
#include "dfsarc/rng.hpp"

using namespace dfsarc;

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

LinearForm lf(long c0, long cw, long cx, long cz) {
  return LinearForm(q(c0), q(cw), q(cx), q(cz));
}

Polynomial poly(const LinearForm& f) { return Polynomial::from_linear(f); }

Polynomial monomial_poly(int ew, int ex, int ez, long coeff = 1) {
  Polynomial p;
  p.add_term(Monomial{ew, ex, ez}, q(coeff));
  return p;
}

EvalPoint point(const Rational& w, const Rational& x, const Rational& z) {
  return EvalPoint{w, x, z};
}

// Small random inputs for the property tests.
Rational random_rational(Rng& rng) {
  const long num = static_cast<long>(rng.uniform_below(9)) - 4;
  const long den = 1 + static_cast<long>(rng.uniform_below(4));
  return make_rational(num, den);
}

Polynomial random_poly(Rng& rng) {
  Polynomial p;
  const int terms = 1 + static_cast<int>(rng.uniform_below(4));
  for (int t = 0; t < terms; ++t) {
    Monomial m{static_cast<int>(rng.uniform_below(3)), static_cast<int>(rng.uniform_below(3)),
               static_cast<int>(rng.uniform_below(3))};
    p.add_term(m, random_rational(rng));
  }
  return p;
}

LinearForm random_nonzero_linear(Rng& rng) {
  while (true) {
    LinearForm f(random_rational(rng), random_rational(rng), random_rational(rng),
                 random_rational(rng));
    if (!f.is_zero()) return f;
  }
}

AffineMap random_affine(Rng& rng) {
  AffineMap map;
  map.w = random_nonzero_linear(rng);
  map.x = random_nonzero_linear(rng);
  map.z = random_nonzero_linear(rng);
  return map;
}

EvalPoint random_point(Rng& rng) {
  return {random_rational(rng), random_rational(rng), random_rational(rng)};
}

}  // namespace

TEST_CASE("rational construction and parsing") {
  CHECK(to_string(q(3, 4)) == "3/4");
  CHECK(to_string(q(-1, 2)) == "-1/2");
  CHECK(to_string(q(7)) == "7");
  CHECK(q(1, -2) == q(-1, 2));      // canonical sign lives in the numerator
  CHECK(q(2, 4) == q(1, 2));        // reduced form
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);

  CHECK(parse_rational("3/4") == q(3, 4));
  CHECK(parse_rational("-1/2") == q(-1, 2));
  CHECK(parse_rational("7") == q(7));
  CHECK(parse_rational(" 1/2 ") == q(1, 2));
  CHECK(parse_rational("6/4") == q(3, 2));
  CHECK_FALSE(parse_rational("0.5").has_value());
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("abc").has_value());
  CHECK_FALSE(parse_rational("").has_value());
  CHECK_FALSE(parse_rational("1/2/3").has_value());
}

TEST_CASE("graded-lex monomial order, w > x > z, leading term first") {
  CHECK(grlex_less(Monomial{0, 1, 0}, Monomial{2, 0, 0}));   // degree dominates
  CHECK(grlex_less(Monomial{0, 2, 0}, Monomial{1, 0, 1}));   // then w exponent
  CHECK(grlex_less(Monomial{0, 0, 2}, Monomial{0, 1, 1}));   // then x exponent
  CHECK_FALSE(grlex_less(Monomial{1, 0, 0}, Monomial{1, 0, 0}));

  Polynomial p = monomial_poly(0, 0, 1) + monomial_poly(2, 0, 0) + monomial_poly(1, 1, 0);
  CHECK(p.to_string() == "1 * w^2 x^0 z^0 + 1 * w^1 x^1 z^0 + 1 * w^0 x^0 z^1");
}

TEST_CASE("polynomial addition") {
  const Polynomial w_plus_x = poly(lf(0, 1, 1, 0));
  const Polynomial minus_w = poly(lf(0, -1, 0, 0));
  CHECK(w_plus_x + minus_w == poly(lf(0, 0, 1, 0)));

  Rng rng(41);
  const Polynomial p = random_poly(rng);
  CHECK(Polynomial() + p == p);

  CHECK(q(2) * poly(LinearForm::var_w()) + q(3) * poly(LinearForm::var_w()) ==
        q(5) * poly(LinearForm::var_w()));
}

TEST_CASE("polynomial multiplication") {
  CHECK(poly(lf(1, -1, 0, 0)) * poly(lf(1, 1, 0, 0)) ==
        Polynomial::one() - monomial_poly(2, 0, 0));

  Rng rng(42);
  CHECK((random_poly(rng) * Polynomial()).is_zero());

  Polynomial expanded = monomial_poly(2, 0, 0) + monomial_poly(1, 1, 0) +
                        monomial_poly(1, 0, 1) + monomial_poly(0, 1, 1);
  CHECK(poly(lf(0, 1, 0, 1)) * poly(lf(0, 1, 1, 0)) == expanded);
}

TEST_CASE("polynomial evaluation") {
  const Polynomial sum = poly(lf(0, 1, 1, 1));
  CHECK(sum.eval(point(q(1, 2), q(1, 3), q(1, 6))) == 1);

  CHECK(Polynomial(q(7)).eval(point(q(5), q(-3), q(100))) == 7);

  const Polynomial product = poly(lf(1, -1, 0, 0)) * poly(lf(1, -1, -1, 0));
  CHECK(product.eval(point(q(-1), q(-1), q(-1))) == 6);
}

TEST_CASE("affine substitution") {
  AffineMap flip;
  flip.w = lf(1, -1, 0, 0);
  CHECK(poly(lf(1, -1, 0, 0)).substituted(flip) == poly(LinearForm::var_w()));

  CHECK(poly(LinearForm::var_w()).substituted(AffineMap::shift_w(0, 2)) == poly(lf(0, 1, 0, 2)));

  Polynomial w_squared = monomial_poly(2, 0, 0);
  Polynomial expected = monomial_poly(2, 0, 0) + q(2) * monomial_poly(1, 0, 1) +
                        monomial_poly(0, 0, 2);
  CHECK(w_squared.substituted(AffineMap::shift_w(0, 1)) == expected);
}

TEST_CASE("exact division by a linear form") {
  const Polynomial p = monomial_poly(2, 0, 0) + monomial_poly(1, 0, 1);
  auto quotient = p.divided_exactly_by(LinearForm::var_w());
  REQUIRE(quotient.has_value());
  CHECK(*quotient == poly(lf(0, 1, 0, 1)));

  auto binomial = (Polynomial::one() - monomial_poly(2, 0, 0)).divided_exactly_by(lf(1, -1, 0, 0));
  REQUIRE(binomial.has_value());
  CHECK(*binomial == poly(lf(1, 1, 0, 0)));

  CHECK_FALSE(poly(lf(1, 1, 0, 0)).divided_exactly_by(LinearForm::var_w()).has_value());
}

TEST_CASE("linear form canonical scaling") {
  LinearForm f = lf(1, 2, 0, 1);  // 2w + z + 1
  const Rational s = f.make_canonical();
  CHECK(s == 2);
  CHECK(f == LinearForm(q(1, 2), q(1), q(0), q(1, 2)));

  LinearForm only_constant = LinearForm::constant(q(-3, 4));
  const Rational c = only_constant.make_canonical();
  CHECK(c == q(-3, 4));
  CHECK(only_constant == LinearForm::constant(q(1)));

  LinearForm x_led = lf(0, 0, -2, 4);
  const Rational sx = x_led.make_canonical();
  CHECK(sx == -2);
  CHECK(x_led == LinearForm(q(0), q(0), q(1), q(-2)));
}

TEST_CASE("rational function addition") {
  const LinearForm one_minus_w = lf(1, -1, 0, 0);
  const RationalFunction ghat1 = RationalFunction::one().divided_by(one_minus_w);
  const RationalFunction neg = q(-1) * ghat1;
  CHECK((ghat1 + neg).is_zero());

  const RationalFunction inv_w = RationalFunction::one().divided_by(LinearForm::var_w());
  const RationalFunction inv_wz = RationalFunction::one().divided_by(lf(0, 1, 0, 1));
  const RationalFunction sum = inv_w + inv_wz;
  CHECK(sum.numerator() == poly(lf(0, 2, 0, 1)));
  RationalFunction::FactorMap expected_den{{LinearForm::var_w(), 1}, {lf(0, 1, 0, 1), 1}};
  CHECK(sum.denominator_factors() == expected_den);

  CHECK(rf_equal(sum + RationalFunction(), sum));
}

TEST_CASE("rational function multiplication") {
  const RationalFunction a = RationalFunction::one().divided_by(lf(1, -1, 0, 0));
  const RationalFunction b = RationalFunction::one().divided_by(lf(1, -1, 0, -1));
  const RationalFunction product = a * b;
  CHECK(product.denominator_factors().size() == 2);
  CHECK(rf_equal(product,
                 RationalFunction::from_parts(Polynomial::one(),
                                              {{lf(1, -1, 0, 0), 1}, {lf(1, -1, 0, -1), 1}})));

  CHECK(rf_equal(a * RationalFunction::one(), a));

  const RationalFunction w_over_wx =
      RationalFunction(poly(LinearForm::var_w())).divided_by(lf(0, 1, 1, 0));
  const RationalFunction wx_over_w =
      RationalFunction(poly(lf(0, 1, 1, 0))).divided_by(LinearForm::var_w());
  const RationalFunction unit = w_over_wx * wx_over_w;
  CHECK(unit.numerator() == Polynomial::one());
  CHECK(unit.denominator_factors().empty());
}

TEST_CASE("rational function division by a linear form") {
  const RationalFunction ghat1 = RationalFunction::one().divided_by(lf(1, -1, 0, 0));
  CHECK(ghat1.eval(point(q(-1), q(0), q(0))) == q(1, 2));

  const RationalFunction self = RationalFunction(poly(lf(0, 1, 1, 0))).divided_by(lf(0, 1, 1, 0));
  CHECK(self.numerator() == Polynomial::one());
  CHECK(self.denominator_factors().empty());

  const RationalFunction stacked =
      RationalFunction::one().divided_by(LinearForm::var_w()).divided_by(lf(0, 1, 0, 1));
  CHECK(stacked.denominator_factors().size() == 2);
}

TEST_CASE("normalization cancels factors and content") {
  const RationalFunction reduced = RationalFunction::from_parts(
      monomial_poly(2, 0, 0) + monomial_poly(1, 0, 1), {{LinearForm::var_w(), 1}});
  CHECK(reduced.numerator() == poly(lf(0, 1, 0, 1)));
  CHECK(reduced.denominator_factors().empty());

  const RationalFunction content = RationalFunction::from_parts(
      q(2) * poly(LinearForm::var_w()), {{LinearForm::constant(q(2)), 1}});
  CHECK(content.numerator() == poly(LinearForm::var_w()));
  CHECK(content.denominator_factors().empty());

  const RationalFunction multiplicity = RationalFunction::from_parts(
      poly(lf(0, 1, 0, 1)), {{lf(0, 1, 0, 1), 2}});
  CHECK(multiplicity.numerator() == Polynomial::one());
  RationalFunction::FactorMap expected{{lf(0, 1, 0, 1), 1}};
  CHECK(multiplicity.denominator_factors() == expected);
}

TEST_CASE("rational function equality") {
  const RationalFunction a = RationalFunction::one().divided_by(lf(1, -1, 0, 0));
  CHECK(rf_equal(a, a));

  const RationalFunction sum = RationalFunction::one().divided_by(LinearForm::var_w()) +
                               RationalFunction::one().divided_by(lf(0, 1, 0, 1));
  const RationalFunction closed = RationalFunction::from_parts(
      poly(lf(0, 2, 0, 1)), {{LinearForm::var_w(), 1}, {lf(0, 1, 0, 1), 1}});
  CHECK(rf_equal(sum, closed));

  CHECK_FALSE(rf_equal(RationalFunction::one().divided_by(LinearForm::var_w()),
                       RationalFunction::one().divided_by(lf(0, 1, 0, 1))));

  CHECK_FALSE(rf_equal(RationalFunction(), RationalFunction::one()));
  CHECK(rf_equal(RationalFunction(), RationalFunction()));
}

TEST_CASE("equality degree guard") {
  const RationalFunction big = RationalFunction(monomial_poly(2, 0, 0));
  const RationalFunction other = RationalFunction(poly(LinearForm::var_w()));
  CHECK_THROWS_AS(rf_equal(big, other, 1), ResourceError);
  CHECK(rf_equal(big, big, 2));
}

TEST_CASE("rational function evaluation and poles") {
  const RationalFunction ghat1 = RationalFunction::one().divided_by(lf(1, -1, 0, 0));
  CHECK(ghat1.eval(point(q(-1), q(0), q(0))) == q(1, 2));
  CHECK_THROWS_AS(ghat1.eval(point(q(1), q(0), q(0))), PoleError);

  const RationalFunction ghat2 = RationalFunction::one()
                                     .divided_by(lf(1, -1, 0, 0))
                                     .divided_by(lf(1, -1, 0, -1))
                                     .divided_by(lf(1, -1, -1, 0));
  CHECK(ghat2.eval(point(q(-1), q(-1), q(-1))) == q(1, 18));
}

TEST_CASE("ring laws on random polynomials") {
  Rng rng(2024);
  for (int iteration = 0; iteration < 60; ++iteration) {
    const Polynomial a = random_poly(rng);
    const Polynomial b = random_poly(rng);
    const Polynomial c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("substitution is a ring homomorphism") {
  Rng rng(2025);
  for (int iteration = 0; iteration < 40; ++iteration) {
    const Polynomial p = random_poly(rng);
    const Polynomial r = random_poly(rng);
    const AffineMap map = random_affine(rng);
    CHECK((p * r).substituted(map) == p.substituted(map) * r.substituted(map));
    CHECK((p + r).substituted(map) == p.substituted(map) + r.substituted(map));
  }
}

TEST_CASE("substitution commutes with evaluation") {
  Rng rng(2026);
  for (int iteration = 0; iteration < 40; ++iteration) {
    const Polynomial p = random_poly(rng);
    const AffineMap map = random_affine(rng);
    const EvalPoint pt = random_point(rng);
    CHECK(p.substituted(map).eval(pt) == p.eval(map.apply(pt)));
  }
}

TEST_CASE("division round-trips multiplication") {
  Rng rng(2027);
  for (int iteration = 0; iteration < 40; ++iteration) {
    const Polynomial quotient = random_poly(rng);
    const LinearForm f = random_nonzero_linear(rng);
    const auto back = (quotient * poly(f)).divided_exactly_by(f);
    REQUIRE(back.has_value());
    CHECK(*back == quotient);
  }
}

TEST_CASE("equality agrees with evaluation") {
  Rng rng(2028);
  for (int iteration = 0; iteration < 20; ++iteration) {
    // Same value, intentionally different construction: a vs (a*f)/f plus a
    // redundant common factor.
    const LinearForm f = random_nonzero_linear(rng);
    if (f.is_constant()) continue;
    const RationalFunction a = RationalFunction::from_parts(
        random_poly(rng), {{random_nonzero_linear(rng), 1}});
    if (a.is_zero()) continue;
    const RationalFunction b = RationalFunction::from_parts(
        a.numerator() * poly(f),
        [&] {
          std::vector<std::pair<LinearForm, int>> factors(
              a.denominator_factors().begin(), a.denominator_factors().end());
          factors.emplace_back(f, 1);
          return factors;
        }());
    CHECK(rf_equal(a, b));
    for (int trial = 0; trial < 5; ++trial) {
      const EvalPoint pt = sample_safe_point(derive_stream_seed(99, iteration * 7 + trial), 16);
      try {
        CHECK(a.eval(pt) == b.eval(pt));
      } catch (const PoleError&) {
        // random denominators may vanish at the sampled point; skip
      }
    }

    const RationalFunction displaced = a + RationalFunction::one().divided_by(LinearForm::var_w());
    REQUIRE_FALSE(rf_equal(a, displaced));
    const auto witness = find_witness(a, displaced, 4242);
    REQUIRE(witness.has_value());
    bool differs = false;
    try {
      differs = a.eval(*witness) != displaced.eval(*witness);
    } catch (const PoleError&) {
    }
    CHECK(differs);
  }
}

TEST_CASE("normalize preserves value") {
  Rng rng(2029);
  for (int iteration = 0; iteration < 30; ++iteration) {
    Polynomial num = random_poly(rng);
    const LinearForm f = random_nonzero_linear(rng);
    const LinearForm g = random_nonzero_linear(rng);
    // (num*f) / (f*g) normalizes to num/g; both evaluate identically.
    const RationalFunction reduced =
        RationalFunction::from_parts(num * poly(f), {{f, 1}, {g, 1}});
    for (int trial = 0; trial < 5; ++trial) {
      const EvalPoint pt = random_point(rng);
      const Rational fv = poly(f).eval(pt);
      const Rational gv = poly(g).eval(pt);
      if (fv == 0 || gv == 0) continue;
      CHECK(reduced.eval(pt) == num.eval(pt) / gv);
    }
  }
}
