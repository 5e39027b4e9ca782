#pragma once

namespace dfsarc {

// Exponent triple (e_w, e_x, e_z) of a power product w^ew x^ex z^ez.
struct Monomial {
  int ew = 0;
  int ex = 0;
  int ez = 0;

  int total_degree() const { return ew + ex + ez; }

  friend Monomial operator+(const Monomial& a, const Monomial& b) {
    return {a.ew + b.ew, a.ex + b.ex, a.ez + b.ez};
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order with w > x > z.
inline bool grlex_less(const Monomial& a, const Monomial& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  if (a.ew != b.ew) return a.ew < b.ew;
  if (a.ex != b.ex) return a.ex < b.ex;
  return a.ez < b.ez;
}

// Map comparator that puts the leading term first, so iteration order is the
// canonical serialization order.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

}  // namespace dfsarc
