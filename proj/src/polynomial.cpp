#include "dfsarc/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dfsarc {

namespace {

// Powers base^0 .. base^max, computed once per evaluation pass.
std::vector<Rational> power_table(const Rational& base, int max) {
  std::vector<Rational> p(static_cast<size_t>(max) + 1);
  p[0] = 1;
  for (int i = 1; i <= max; ++i) p[static_cast<size_t>(i)] = p[static_cast<size_t>(i - 1)] * base;
  return p;
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::from_linear(const LinearForm& f) {
  Polynomial p;
  p.add_term({1, 0, 0}, f.cw());
  p.add_term({0, 1, 0}, f.cx());
  p.add_term({0, 0, 1}, f.cz());
  p.add_term({0, 0, 0}, f.c0());
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  // Leading term comes first under the graded order.
  return terms_.begin()->first.total_degree();
}

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial out;
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(ma + mb, ca * cb);
    }
  }
  return out;
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
  Polynomial out;
  if (s == 0) return out;
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
  return out;
}

Rational Polynomial::eval(const EvalPoint& pt) const {
  int dw = 0, dx = 0, dz = 0;
  for (const auto& [m, c] : terms_) {
    dw = std::max(dw, m.ew);
    dx = std::max(dx, m.ex);
    dz = std::max(dz, m.ez);
  }
  auto pw = power_table(pt.w, dw);
  auto px = power_table(pt.x, dx);
  auto pz = power_table(pt.z, dz);
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    acc += c * pw[static_cast<size_t>(m.ew)] * px[static_cast<size_t>(m.ex)] *
           pz[static_cast<size_t>(m.ez)];
  }
  return acc;
}

Polynomial Polynomial::substituted(const AffineMap& map) const {
  int dw = 0, dx = 0, dz = 0;
  for (const auto& [m, c] : terms_) {
    dw = std::max(dw, m.ew);
    dx = std::max(dx, m.ex);
    dz = std::max(dz, m.ez);
  }
  auto powers = [](const LinearForm& f, int max) {
    std::vector<Polynomial> p(static_cast<size_t>(max) + 1);
    p[0] = Polynomial::one();
    Polynomial base = Polynomial::from_linear(f);
    for (int i = 1; i <= max; ++i) p[static_cast<size_t>(i)] = p[static_cast<size_t>(i - 1)] * base;
    return p;
  };
  auto pw = powers(map.w, dw);
  auto px = powers(map.x, dx);
  auto pz = powers(map.z, dz);
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial t = pw[static_cast<size_t>(m.ew)] * px[static_cast<size_t>(m.ex)];
    t = t * pz[static_cast<size_t>(m.ez)];
    for (const auto& [tm, tc] : t.terms()) out.add_term(tm, c * tc);
  }
  return out;
}

std::optional<Polynomial> Polynomial::divided_exactly_by(const LinearForm& f) const {
  if (f.is_zero()) throw std::invalid_argument("divided_exactly_by: zero form");
  if (is_zero()) return Polynomial{};

  if (f.is_constant()) {
    Rational inv = 1 / f.c0();
    return inv * *this;
  }

  // Pivot: first variable with a nonzero coefficient, in the order w, x, z.
  enum Var { W, X, Z };
  Var v;
  Rational a;
  if (f.cw() != 0) {
    v = W;
    a = f.cw();
  } else if (f.cx() != 0) {
    v = X;
    a = f.cx();
  } else {
    v = Z;
    a = f.cz();
  }
  auto exp_of = [v](const Monomial& m) { return v == W ? m.ew : (v == X ? m.ex : m.ez); };

  int deg_v = 0;
  for (const auto& [m, c] : terms_) deg_v = std::max(deg_v, exp_of(m));
  if (deg_v == 0) return std::nullopt;  // f has positive pivot degree, *this does not

  // Cheap certain rejection: if f divides *this, the polynomial vanishes on
  // the hyperplane f == 0. Evaluate at one fixed point of that plane; a
  // nonzero value proves non-divisibility, a zero sends us to the division.
  {
    EvalPoint pt{make_rational(5, 2), make_rational(7, 3), make_rational(11, 5)};
    Rational rest = f.c0();
    if (v != W) rest += f.cw() * pt.w;
    if (v != X) rest += f.cx() * pt.x;
    if (v != Z) rest += f.cz() * pt.z;
    Rational pivot_val = -rest / a;
    (v == W ? pt.w : v == X ? pt.x : pt.z) = pivot_val;
    if (eval(pt) != 0) return std::nullopt;
  }

  // Synthetic division in the pivot variable. Write f = a*v + g with g free
  // of v, and *this = sum coef[i] * v^i; then descending from the top,
  //   q[i-1] = (coef[i] - g*q[i]) / a,  remainder = coef[0] - g*q[0].
  Polynomial g = Polynomial::from_linear(f);
  {
    Monomial mv{};
    (v == W ? mv.ew : v == X ? mv.ex : mv.ez) = 1;
    g.add_term(mv, -a);
  }
  std::vector<Polynomial> coef(static_cast<size_t>(deg_v) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    int e = exp_of(m);
    (v == W ? rest.ew : v == X ? rest.ex : rest.ez) = 0;
    coef[static_cast<size_t>(e)].add_term(rest, c);
  }

  Rational inv_a = 1 / a;
  std::vector<Polynomial> q(static_cast<size_t>(deg_v));
  q[static_cast<size_t>(deg_v - 1)] = inv_a * coef[static_cast<size_t>(deg_v)];
  for (int i = deg_v - 1; i >= 1; --i) {
    q[static_cast<size_t>(i - 1)] =
        inv_a * (coef[static_cast<size_t>(i)] - g * q[static_cast<size_t>(i)]);
  }
  Polynomial rem = coef[0] - g * q[0];
  if (!rem.is_zero()) return std::nullopt;

  Polynomial out;
  for (int i = 0; i < deg_v; ++i) {
    for (const auto& [m, c] : q[static_cast<size_t>(i)].terms()) {
      Monomial shifted = m;
      (v == W ? shifted.ew : v == X ? shifted.ex : shifted.ez) += i;
      out.add_term(shifted, c);
    }
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    os << c.get_str() << " * w^" << m.ew << " x^" << m.ex << " z^" << m.ez;
    first = false;
  }
  return os.str();
}

}  // namespace dfsarc
