#include "dfsarc/numeric_eval.hpp"

#include <stdexcept>

#include "dfsarc/errors.hpp"
#include "dfsarc/rng.hpp"

namespace dfsarc {

namespace {

Rational nonzero(Rational v) {
  if (v == 0) throw PoleError("denominator vanishes at evaluation point");
  return v;
}

}  // namespace

Rational NumericEvaluator::hat(int n, const Rational& w) {
  if (n < 1) throw std::invalid_argument("hat: n must be >= 1");
  auto key = std::make_pair(n, w);
  auto it = hat_.find(key);
  if (it != hat_.end()) return it->second;

  Rational result;
  if (n == 1) {
    result = 1 / nonzero(1 - w);
  } else {
    Rational den = nonzero(1 - w - (n - 1) * x0_);
    Rational acc = 0;
    for (int k = 1; k <= n - 1; ++k) {
      acc += hat(k, w) * hat(n - k, w + k * z0_);
    }
    result = acc / den;
  }
  return hat_.emplace(std::move(key), std::move(result)).first->second;
}

Rational NumericEvaluator::check(int n, const Rational& w) {
  if (n < 1) throw std::invalid_argument("check: n must be >= 1");
  auto key = std::make_pair(n, w);
  auto it = check_.find(key);
  if (it != check_.end()) return it->second;

  Rational result;
  if (n == 1) {
    result = 1 / nonzero(1 - w);
  } else {
    Rational den = nonzero(1 - w);
    Rational acc = 0;
    for (int k = 1; k <= n - 1; ++k) {
      acc += check(k, w + x0_) * check(n - k, w + k * z0_);
    }
    result = acc / den;
  }
  return check_.emplace(std::move(key), std::move(result)).first->second;
}

Rational NumericEvaluator::std_g(int n, const Rational& w) {
  if (n < 1) throw std::invalid_argument("std_g: n must be >= 1");
  auto key = std::make_pair(n, w);
  auto it = std_.find(key);
  if (it != std_.end()) return it->second;

  Rational result;
  if (n == 1) {
    result = 1 / nonzero(w);
  } else {
    Rational den = nonzero(w + (n - 1) * x0_);
    Rational acc = 0;
    for (int k = 1; k <= n - 1; ++k) {
      acc += std_g(k, w) * std_g(n - k, w + k * z0_);
    }
    result = acc / den;
  }
  return std_.emplace(std::move(key), std::move(result)).first->second;
}

Rational NumericEvaluator::f(int k, int n, const Rational& w) {
  FamilyId{Family::F, n, k}.validate();
  auto key = std::make_tuple(k, n, w);
  auto it = f_.find(key);
  if (it != f_.end()) return it->second;

  Rational result;
  if (k == 1) {
    result = std_g(n, w);
  } else {
    Rational outer = nonzero(w + (n - 1) * x0_);
    Rational acc = 0;
    for (int i = 1; i <= n - k - 1; ++i) {
      acc += std_g(n - k - i, w + (k + i) * z0_) * f(k, k + i, w) / outer;
    }
    Rational w_nonzero = nonzero(w);
    for (int i = 1; i <= k - 1; ++i) {
      acc += (w + i * z0_) * std_g(i, w + x0_) * f(k - i, n - i, w + i * z0_) /
             (w_nonzero * outer);
    }
    result = acc;
  }
  return f_.emplace(std::move(key), std::move(result)).first->second;
}

Rational eval_family(const FamilyId& id, const EvalPoint& pt) {
  id.validate();
  NumericEvaluator ev(pt.x, pt.z);
  switch (id.family) {
    case Family::Hat:
      return ev.hat(id.n, pt.w);
    case Family::Check:
      return ev.check(id.n, pt.w);
    case Family::Std:
      return ev.std_g(id.n, pt.w);
    case Family::F:
      return ev.f(id.k, id.n, pt.w);
  }
  throw std::logic_error("unreachable");
}

EvalPoint sample_safe_point(std::uint64_t seed, int bound) {
  if (bound < 2) throw std::invalid_argument("sample_safe_point: bound must be >= 2");
  Rng rng(derive_stream_seed(seed, 0x5AFEull));
  auto draw = [&rng, bound]() {
    long num = 1 + static_cast<long>(rng.uniform_below(static_cast<std::uint64_t>(bound)));
    long den = 1 + static_cast<long>(rng.uniform_below(static_cast<std::uint64_t>(bound)));
    return make_rational(-num, den);
  };
  Rational w = draw();
  Rational x = draw();
  Rational z = draw();
  return {w, x, z};
}

EvalPoint reflect_point(const EvalPoint& pt) {
  return {1 - pt.w, -pt.x, -pt.z};
}

}  // namespace dfsarc
