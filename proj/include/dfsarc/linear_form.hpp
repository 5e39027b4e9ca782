#pragma once

#include <string>

#include "dfsarc/rational.hpp"

namespace dfsarc {

struct AffineMap;

// Affine form c0 + cw*w + cx*x + cz*z. Every denominator in this project is a
// product of such forms, which is what makes cancellation cheap: no general
// multivariate GCD, only trial division by linear factors.
class LinearForm {
 public:
  LinearForm() = default;  // the zero form; invalid as a denominator factor
  LinearForm(Rational c0, Rational cw, Rational cx, Rational cz);

  static LinearForm constant(const Rational& c) { return {c, 0, 0, 0}; }
  static LinearForm var_w() { return {0, 1, 0, 0}; }
  static LinearForm var_x() { return {0, 0, 1, 0}; }
  static LinearForm var_z() { return {0, 0, 0, 1}; }

  const Rational& c0() const { return c0_; }
  const Rational& cw() const { return cw_; }
  const Rational& cx() const { return cx_; }
  const Rational& cz() const { return cz_; }

  bool is_zero() const;
  bool is_constant() const;

  Rational eval(const EvalPoint& pt) const;

  // Rescales so that the first nonzero coefficient in the order
  // (cw, cx, cz, c0) becomes 1; returns the extracted scalar s with
  // old == s * new. The scalar is the caller's to fold into a numerator.
  Rational make_canonical();

  // The form composed with a substitution of each variable by a linear form.
  LinearForm composed(const AffineMap& map) const;

  friend LinearForm operator+(const LinearForm& a, const LinearForm& b) {
    return {a.c0_ + b.c0_, a.cw_ + b.cw_, a.cx_ + b.cx_, a.cz_ + b.cz_};
  }
  friend LinearForm operator*(const Rational& s, const LinearForm& f) {
    return {s * f.c0_, s * f.cw_, s * f.cx_, s * f.cz_};
  }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  // Total order on (cw, cx, cz, c0); used for sorted factor multisets.
  friend bool operator<(const LinearForm& a, const LinearForm& b);

  std::string to_string() const;

 private:
  Rational c0_ = 0;
  Rational cw_ = 0;
  Rational cx_ = 0;
  Rational cz_ = 0;
};

// Substitution target: each of w, x, z maps to a linear form.
struct AffineMap {
  LinearForm w = LinearForm::var_w();
  LinearForm x = LinearForm::var_x();
  LinearForm z = LinearForm::var_z();

  static AffineMap identity() { return {}; }

  // w -> w + a*x + b*z, with x and z fixed.
  static AffineMap shift_w(const Rational& a, const Rational& b) {
    AffineMap m;
    m.w = LinearForm{0, 1, a, b};
    return m;
  }

  // The involution w -> 1-w, x -> -x, z -> -z.
  static AffineMap reflect() {
    AffineMap m;
    m.w = LinearForm{1, -1, 0, 0};
    m.x = LinearForm{0, 0, -1, 0};
    m.z = LinearForm{0, 0, 0, -1};
    return m;
  }

  EvalPoint apply(const EvalPoint& pt) const {
    return {w.eval(pt), x.eval(pt), z.eval(pt)};
  }
};

}  // namespace dfsarc
