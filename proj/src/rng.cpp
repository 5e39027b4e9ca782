#include "dfsarc/rng.hpp"

#include <stdexcept>

namespace dfsarc {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if (bound == 1) return 0;
  // Largest multiple of bound that fits in 64 bits; draws past it are biased
  // and get rejected.
  std::uint64_t zone = (UINT64_MAX / bound) * bound;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r < zone) return r % bound;
  }
}

bool Rng::bernoulli(const Rational& p) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("bernoulli: p must lie in (0,1)");
  const mpz_class& num = p.get_num();
  const mpz_class& den = p.get_den();
  if (!den.fits_ulong_p()) {
    throw std::invalid_argument("bernoulli: denominator does not fit in 64 bits");
  }
  std::uint64_t d = den.get_ui();
  std::uint64_t a = num.get_ui();
  return uniform_below(d) < a;
}

}  // namespace dfsarc
