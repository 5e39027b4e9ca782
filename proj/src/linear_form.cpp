#include "dfsarc/linear_form.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace dfsarc {

LinearForm::LinearForm(Rational c0, Rational cw, Rational cx, Rational cz)
    : c0_(std::move(c0)), cw_(std::move(cw)), cx_(std::move(cx)), cz_(std::move(cz)) {}

bool LinearForm::is_zero() const {
  return c0_ == 0 && cw_ == 0 && cx_ == 0 && cz_ == 0;
}

bool LinearForm::is_constant() const { return cw_ == 0 && cx_ == 0 && cz_ == 0; }

Rational LinearForm::eval(const EvalPoint& pt) const {
  Rational v = c0_;
  v += cw_ * pt.w;
  v += cx_ * pt.x;
  v += cz_ * pt.z;
  return v;
}

Rational LinearForm::make_canonical() {
  const Rational* lead = nullptr;
  for (const Rational* c : {&cw_, &cx_, &cz_, &c0_}) {
    if (*c != 0) {
      lead = c;
      break;
    }
  }
  if (lead == nullptr) {
    throw std::invalid_argument("LinearForm::make_canonical: zero form");
  }
  Rational s = *lead;
  if (s != 1) {
    Rational inv = 1 / s;
    c0_ *= inv;
    cw_ *= inv;
    cx_ *= inv;
    cz_ *= inv;
  }
  return s;
}

LinearForm LinearForm::composed(const AffineMap& map) const {
  LinearForm out = LinearForm::constant(c0_);
  out = out + cw_ * map.w;
  out = out + cx_ * map.x;
  out = out + cz_ * map.z;
  return out;
}

bool operator<(const LinearForm& a, const LinearForm& b) {
  int c = cmp(a.cw_, b.cw_);
  if (c != 0) return c < 0;
  c = cmp(a.cx_, b.cx_);
  if (c != 0) return c < 0;
  c = cmp(a.cz_, b.cz_);
  if (c != 0) return c < 0;
  return cmp(a.c0_, b.c0_) < 0;
}

std::string LinearForm::to_string() const {
  // Same term syntax as the polynomial serializer.
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rational& c, int ew, int ex, int ez) {
    if (c == 0) return;
    if (!first) os << " + ";
    os << c.get_str() << " * w^" << ew << " x^" << ex << " z^" << ez;
    first = false;
  };
  emit(cw_, 1, 0, 0);
  emit(cx_, 0, 1, 0);
  emit(cz_, 0, 0, 1);
  emit(c0_, 0, 0, 0);
  if (first) os << "0";
  return os.str();
}

}  // namespace dfsarc
