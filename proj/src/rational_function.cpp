#include "dfsarc/rational_function.hpp"

#include <sstream>
#include <stdexcept>

namespace dfsarc {

namespace {

Polynomial factor_product(const RationalFunction::FactorMap& factors) {
  Polynomial out = Polynomial::one();
  for (const auto& [f, mult] : factors) {
    Polynomial fp = Polynomial::from_linear(f);
    for (int i = 0; i < mult; ++i) out = out * fp;
  }
  return out;
}

int factor_count(const RationalFunction::FactorMap& factors) {
  int n = 0;
  for (const auto& [f, mult] : factors) n += mult;
  return n;
}

}  // namespace

RationalFunction RationalFunction::from_parts(
    Polynomial num, const std::vector<std::pair<LinearForm, int>>& factors) {
  RationalFunction out(std::move(num));
  for (const auto& [f, mult] : factors) out.push_factor(f, mult);
  out.normalize();
  return out;
}

Polynomial RationalFunction::denominator_polynomial() const { return factor_product(den_); }

void RationalFunction::push_factor(const LinearForm& f, int mult) {
  if (f.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator factor");
  if (mult <= 0) {
    if (mult == 0) return;
    throw std::invalid_argument("RationalFunction: negative multiplicity");
  }
  LinearForm canon = f;
  Rational s = canon.make_canonical();
  if (s != 1) {
    Rational scale = 1;
    for (int i = 0; i < mult; ++i) scale /= s;
    num_ = scale * num_;
  }
  if (canon.is_constant()) return;  // the canonical constant form is exactly 1
  den_[canon] += mult;
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  // One sweep suffices: cancelling one factor can never make another factor
  // newly divide the numerator.
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      auto q = num_.divided_exactly_by(it->first);
      if (!q) break;
      num_ = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // Work over the least common multiple of the factored denominators.
  RationalFunction::FactorMap lcm = a.den_;
  for (const auto& [f, mult] : b.den_) {
    auto [it, inserted] = lcm.try_emplace(f, mult);
    if (!inserted && it->second < mult) it->second = mult;
  }
  auto cofactor = [&lcm](const RationalFunction::FactorMap& own) {
    RationalFunction::FactorMap missing;
    for (const auto& [f, mult] : lcm) {
      auto it = own.find(f);
      int have = it == own.end() ? 0 : it->second;
      if (mult > have) missing.emplace(f, mult - have);
    }
    return factor_product(missing);
  };
  RationalFunction out;
  out.num_ = a.num_ * cofactor(a.den_) + b.num_ * cofactor(b.den_);
  out.den_ = std::move(lcm);
  out.normalize();
  return out;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return a + Rational(-1) * b;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  RationalFunction out;
  out.num_ = a.num_ * b.num_;
  out.den_ = a.den_;
  for (const auto& [f, mult] : b.den_) out.den_[f] += mult;
  out.normalize();
  return out;
}

RationalFunction operator*(const Rational& s, const RationalFunction& a) {
  if (s == 0) return RationalFunction{};
  RationalFunction out = a;
  out.num_ = s * out.num_;
  return out;
}

RationalFunction RationalFunction::divided_by(const LinearForm& f) const {
  RationalFunction out = *this;
  out.push_factor(f, 1);
  out.normalize();
  return out;
}

RationalFunction RationalFunction::substituted(const AffineMap& map) const {
  RationalFunction out(num_.substituted(map));
  for (const auto& [f, mult] : den_) {
    LinearForm g = f.composed(map);
    if (g.is_zero()) {
      throw std::invalid_argument("RationalFunction::substituted: factor maps to zero");
    }
    out.push_factor(g, mult);
  }
  out.normalize();
  return out;
}

Rational RationalFunction::eval(const EvalPoint& pt) const {
  Rational den = 1;
  for (const auto& [f, mult] : den_) {
    Rational v = f.eval(pt);
    if (v == 0) throw PoleError("denominator factor vanishes at evaluation point");
    for (int i = 0; i < mult; ++i) den *= v;
  }
  return num_.eval(pt) / den;
}

std::string RationalFunction::to_string() const {
  std::ostringstream os;
  os << "(" << num_.to_string() << ")";
  for (const auto& [f, mult] : den_) {
    os << " / (" << f.to_string() << ")";
    if (mult > 1) os << "^" << mult;
  }
  return os.str();
}

bool rf_equal(const RationalFunction& a, const RationalFunction& b, int degree_cap) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  // Shared factors cancel from both sides of the cross-multiplication.
  RationalFunction::FactorMap da = a.denominator_factors();
  RationalFunction::FactorMap db = b.denominator_factors();
  for (auto it = da.begin(); it != da.end();) {
    auto jt = db.find(it->first);
    if (jt != db.end()) {
      int common = std::min(it->second, jt->second);
      it->second -= common;
      jt->second -= common;
      if (jt->second == 0) db.erase(jt);
    }
    it = it->second == 0 ? da.erase(it) : std::next(it);
  }
  int deg_lhs = a.numerator().total_degree() + factor_count(db);
  int deg_rhs = b.numerator().total_degree() + factor_count(da);
  if (deg_lhs > degree_cap || deg_rhs > degree_cap) {
    throw ResourceError("rf_equal: cross-multiplication exceeds total degree cap " +
                        std::to_string(degree_cap));
  }
  return a.numerator() * factor_product(db) == b.numerator() * factor_product(da);
}

}  // namespace dfsarc
