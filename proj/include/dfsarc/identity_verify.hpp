#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "json.hpp"

#include "dfsarc/families.hpp"
#include "dfsarc/numeric_eval.hpp"

namespace dfsarc {

// The identities under test, by their command-line tokens:
//   main        -- hat(n) == check(n)
//   transform   -- G(n) == hat(n) composed with (w,x,z) -> (1-w,-x,-z)
//   thm21       -- F(2,n) == G(n) - G(n-1)(w+z) / (w (w+x))
//   thm22       -- F(n-1,n) == G(n-1)(w+x) / (w (w+(n-1)z))
//   thm23       -- F(k,n) - F(k+1,n) == G(k)(w+x) G(n-k)(w+kz) / w, 1 <= k <= n-2
//   telescoping -- sum_{k=1}^{n-1} G(k)(w+x) G(n-k)(w+kz) / w == G(n)
enum class Identity { Main, Transform, F2, LastF, FDifference, Telescoping };

std::string identity_token(Identity id);
std::optional<Identity> identity_from_token(const std::string& token);
// Smallest n for which the identity is defined.
int identity_min_n(Identity id);

enum class VerifyMode { Symbolic, Numeric };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Symbolic;
  int points = 20;          // numeric mode: safe points per n
  std::uint64_t seed = 0;   // numeric mode: master seed for point sampling
  int point_bound = 64;     // numerator/denominator bound for safe points
  SymbolicLimits limits{};  // symbolic caps; degree_cap also guards rf_equal
};

struct Witness {
  int n = 0;
  std::optional<int> k;
  std::optional<EvalPoint> point;     // numeric mode
  std::optional<std::string> lhs;     // numeric mode: the two values
  std::optional<std::string> rhs;
  std::optional<std::string> difference;  // symbolic mode: cross-multiplied difference
};

struct IdentityReport {
  std::string identity;
  int n_lo = 1;
  int n_hi = 1;
  std::optional<std::pair<int, int>> k_range;
  VerifyMode mode = VerifyMode::Symbolic;
  std::optional<int> points;
  std::optional<std::uint64_t> seed;
  bool pass = true;
  std::optional<Witness> witness;
  std::int64_t elapsed_ms = 0;
};

// elapsed_ms is wall time and varies run to run; callers that need
// byte-stable output leave include_timing off.
nlohmann::ordered_json to_json(const IdentityReport& report, bool include_timing = true);

// Checks one identity for every n from its minimum up to n_max (every valid
// k at each n for the difference identity). The cache is shared so repeated
// calls within one run reuse symbolic work; pass a fresh cache for isolation.
IdentityReport verify_identity(Identity id, int n_max, const VerifyOptions& opts,
                               FamilyCache& cache);

// Single-index forms.
IdentityReport verify_main(int n_max, const VerifyOptions& opts);
IdentityReport verify_transform(int n_max, const VerifyOptions& opts);
IdentityReport verify_f2(int n, const VerifyOptions& opts);
IdentityReport verify_last_f(int n, const VerifyOptions& opts);
IdentityReport verify_f_difference(int n, const VerifyOptions& opts);
IdentityReport verify_telescoping(int n, const VerifyOptions& opts);

// Random-point search over the safe region for a point where the two
// functions take different values; nullopt when none is found in `tries`
// attempts (points where either side has a pole are skipped).
std::optional<EvalPoint> find_witness(const RationalFunction& a, const RationalFunction& b,
                                      std::uint64_t seed, int tries = 200, int bound = 64);

}  // namespace dfsarc
