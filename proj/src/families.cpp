#include "dfsarc/families.hpp"

#include <stdexcept>

namespace dfsarc {

namespace {

// 1 - w - m*x
LinearForm one_minus_w_minus_mx(int m) { return {1, -1, Rational(-m), 0}; }
// w + m*x
LinearForm w_plus_mx(int m) { return {0, 1, Rational(m), 0}; }
// w + i*z as a numerator polynomial
Polynomial w_plus_iz_poly(int i) {
  return Polynomial::from_linear(LinearForm{0, 1, 0, Rational(i)});
}

AffineMap shift_w_by_kz(int k) { return AffineMap::shift_w(0, Rational(k)); }
AffineMap shift_w_by_x() { return AffineMap::shift_w(1, 0); }
AffineMap shift_w_by_iz(int i) { return shift_w_by_kz(i); }

}  // namespace

void FamilyId::validate() const {
  if (n < 1) throw std::invalid_argument("FamilyId: n must be >= 1");
  if (family == Family::F) {
    if (k < 1 || k >= n) throw std::invalid_argument("FamilyId: F requires 1 <= k < n");
  }
}

std::string FamilyId::to_string() const {
  switch (family) {
    case Family::Hat:
      return "hat(" + std::to_string(n) + ")";
    case Family::Check:
      return "check(" + std::to_string(n) + ")";
    case Family::Std:
      return "G(" + std::to_string(n) + ")";
    case Family::F:
      return "F(" + std::to_string(k) + "," + std::to_string(n) + ")";
  }
  return "?";
}

void FamilyCache::require_in_cap(int n) const {
  if (n < 1) throw std::invalid_argument("family index must be >= 1");
  if (n > limits_.max_index) {
    throw ResourceError("symbolic construction refused: n = " + std::to_string(n) +
                        " exceeds cap " + std::to_string(limits_.max_index));
  }
}

const RationalFunction& FamilyCache::hat(int n) {
  require_in_cap(n);
  auto it = hat_.find(n);
  if (it != hat_.end()) return it->second;

  RationalFunction result;
  if (n == 1) {
    result = RationalFunction::one().divided_by(LinearForm{1, -1, 0, 0});
  } else {
    RationalFunction acc;
    for (int k = 1; k <= n - 1; ++k) {
      acc = acc + hat(k) * hat(n - k).substituted(shift_w_by_kz(k));
    }
    result = acc.divided_by(one_minus_w_minus_mx(n - 1));
  }
  return hat_.emplace(n, std::move(result)).first->second;
}

const RationalFunction& FamilyCache::check(int n) {
  require_in_cap(n);
  auto it = check_.find(n);
  if (it != check_.end()) return it->second;

  RationalFunction result;
  if (n == 1) {
    result = RationalFunction::one().divided_by(LinearForm{1, -1, 0, 0});
  } else {
    RationalFunction acc;
    for (int k = 1; k <= n - 1; ++k) {
      acc = acc + check(k).substituted(shift_w_by_x()) *
                      check(n - k).substituted(shift_w_by_kz(k));
    }
    result = acc.divided_by(LinearForm{1, -1, 0, 0});
  }
  return check_.emplace(n, std::move(result)).first->second;
}

const RationalFunction& FamilyCache::std_g(int n) {
  require_in_cap(n);
  auto it = std_.find(n);
  if (it != std_.end()) return it->second;

  RationalFunction result;
  if (n == 1) {
    result = RationalFunction::one().divided_by(LinearForm::var_w());
  } else {
    RationalFunction acc;
    for (int k = 1; k <= n - 1; ++k) {
      acc = acc + std_g(k) * std_g(n - k).substituted(shift_w_by_kz(k));
    }
    result = acc.divided_by(w_plus_mx(n - 1));
  }
  return std_.emplace(n, std::move(result)).first->second;
}

const RationalFunction& FamilyCache::f(int k, int n) {
  FamilyId{Family::F, n, k}.validate();
  require_in_cap(n);
  auto it = f_.find({k, n});
  if (it != f_.end()) return it->second;

  RationalFunction result;
  if (k == 1) {
    result = std_g(n);
  } else {
    // Empty index ranges contribute zero.
    RationalFunction acc;
    for (int i = 1; i <= n - k - 1; ++i) {
      RationalFunction term = std_g(n - k - i).substituted(shift_w_by_kz(k + i)) * f(k, k + i);
      acc = acc + term.divided_by(w_plus_mx(n - 1));
    }
    for (int i = 1; i <= k - 1; ++i) {
      RationalFunction term = RationalFunction(w_plus_iz_poly(i)) *
                              std_g(i).substituted(shift_w_by_x()) *
                              f(k - i, n - i).substituted(shift_w_by_iz(i));
      acc = acc + term.divided_by(LinearForm::var_w()).divided_by(w_plus_mx(n - 1));
    }
    result = acc;
  }
  return f_.emplace(std::make_pair(k, n), std::move(result)).first->second;
}

const RationalFunction& FamilyCache::get(const FamilyId& id) {
  id.validate();
  switch (id.family) {
    case Family::Hat:
      return hat(id.n);
    case Family::Check:
      return check(id.n);
    case Family::Std:
      return std_g(id.n);
    case Family::F:
      return f(id.k, id.n);
  }
  throw std::logic_error("unreachable");
}

}  // namespace dfsarc
