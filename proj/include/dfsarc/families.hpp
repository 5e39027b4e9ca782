#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "dfsarc/rational_function.hpp"

namespace dfsarc {

// The four recursively defined families.
//
//   Hat:   H_1 = 1/(1-w),  H_n = sum_{k=1}^{n-1} H_k(w) H_{n-k}(w+kz) / (1-w-(n-1)x)
//   Check: C_1 = 1/(1-w),  C_n = sum_{k=1}^{n-1} C_k(w+x) C_{n-k}(w+kz) / (1-w)
//   Std:   G_1 = 1/w,      G_n = sum_{k=1}^{n-1} G_k(w) G_{n-k}(w+kz) / (w+(n-1)x)
//   F:     F_{1,n} = G_n, and for k >= 2
//          F_{k,n} = sum_{i=1}^{n-k-1} G_{n-k-i}(w+(k+i)z) F_{k,k+i}(w) / (w+(n-1)x)
//                  + sum_{i=1}^{k-1} (w+iz) G_i(w+x) F_{k-i,n-i}(w+iz) / (w (w+(n-1)x))
//
// Std is built by its own recursion, not by substituting into Hat; the
// relation G_n(w) = Hat_n(1-w,-x,-z) is one of the identities under test.
enum class Family { Hat, Check, Std, F };

struct FamilyId {
  Family family = Family::Hat;
  int n = 1;
  int k = 0;  // meaningful for Family::F only; requires 1 <= k < n

  // Throws std::invalid_argument when the indices are out of range.
  void validate() const;
  std::string to_string() const;
};

struct SymbolicLimits {
  // Symbolic construction refuses indices above this; numeric evaluation has
  // no such cap.
  int max_index = 10;
  int degree_cap = kDefaultDegreeCap;
};

// Memoized symbolic constructor for all four families. Not synchronized:
// use one cache per task.
class FamilyCache {
 public:
  FamilyCache() = default;
  explicit FamilyCache(SymbolicLimits limits) : limits_(limits) {}

  const SymbolicLimits& limits() const { return limits_; }

  const RationalFunction& hat(int n);
  const RationalFunction& check(int n);
  const RationalFunction& std_g(int n);
  const RationalFunction& f(int k, int n);

  const RationalFunction& get(const FamilyId& id);

 private:
  void require_in_cap(int n) const;

  SymbolicLimits limits_;
  std::map<int, RationalFunction> hat_;
  std::map<int, RationalFunction> check_;
  std::map<int, RationalFunction> std_;
  std::map<std::pair<int, int>, RationalFunction> f_;
};

}  // namespace dfsarc
