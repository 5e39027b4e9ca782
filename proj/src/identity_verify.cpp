#include "dfsarc/identity_verify.hpp"

#include <chrono>
#include <stdexcept>
#include <vector>

#include "dfsarc/errors.hpp"
#include "dfsarc/rng.hpp"

namespace dfsarc {

namespace {

using Clock = std::chrono::steady_clock;

LinearForm w_plus_mx(int m) { return LinearForm(0, 1, m, 0); }
LinearForm w_plus_mz(int m) { return LinearForm(0, 1, 0, m); }

// Both sides of an identity at one index pair, as rational functions.
// k participates only in the difference identity.
struct Sides {
  RationalFunction lhs;
  RationalFunction rhs;
};

Sides symbolic_sides(Identity id, int n, int k, FamilyCache& cache) {
  switch (id) {
    case Identity::Main:
      return {cache.hat(n), cache.check(n)};
    case Identity::Transform:
      return {cache.std_g(n), cache.hat(n).substituted(AffineMap::reflect())};
    case Identity::F2: {
      RationalFunction correction = cache.std_g(n - 1)
                                        .substituted(AffineMap::shift_w(0, 1))
                                        .divided_by(LinearForm::var_w())
                                        .divided_by(w_plus_mx(1));
      return {cache.f(2, n), cache.std_g(n) - correction};
    }
    case Identity::LastF: {
      RationalFunction rhs = cache.std_g(n - 1)
                                 .substituted(AffineMap::shift_w(1, 0))
                                 .divided_by(LinearForm::var_w())
                                 .divided_by(w_plus_mz(n - 1));
      return {cache.f(n - 1, n), rhs};
    }
    case Identity::FDifference: {
      RationalFunction rhs = (cache.std_g(k).substituted(AffineMap::shift_w(1, 0)) *
                              cache.std_g(n - k).substituted(AffineMap::shift_w(0, k)))
                                 .divided_by(LinearForm::var_w());
      return {cache.f(k, n) - cache.f(k + 1, n), rhs};
    }
    case Identity::Telescoping: {
      RationalFunction sum;
      for (int j = 1; j <= n - 1; ++j) {
        sum = sum + (cache.std_g(j).substituted(AffineMap::shift_w(1, 0)) *
                     cache.std_g(n - j).substituted(AffineMap::shift_w(0, j)))
                        .divided_by(LinearForm::var_w());
      }
      return {sum, cache.std_g(n)};
    }
  }
  throw std::logic_error("unknown identity");
}

// Exact values of both sides at a safe point. The hat/check side is
// evaluated at the sampled (negative-coordinate) point; identities over the
// standard family use its reflection, where every denominator is positive.
struct SideValues {
  Rational lhs;
  Rational rhs;
};

SideValues numeric_sides(Identity id, int n, int k, const EvalPoint& pt) {
  const EvalPoint ref = reflect_point(pt);
  switch (id) {
    case Identity::Main: {
      NumericEvaluator ev(pt.x, pt.z);
      return {ev.hat(n, pt.w), ev.check(n, pt.w)};
    }
    case Identity::Transform: {
      NumericEvaluator neg(pt.x, pt.z);
      NumericEvaluator pos(ref.x, ref.z);
      return {pos.std_g(n, ref.w), neg.hat(n, pt.w)};
    }
    case Identity::F2: {
      NumericEvaluator ev(ref.x, ref.z);
      Rational correction =
          ev.std_g(n - 1, ref.w + ref.z) / (ref.w * (ref.w + ref.x));
      return {ev.f(2, n, ref.w), ev.std_g(n, ref.w) - correction};
    }
    case Identity::LastF: {
      NumericEvaluator ev(ref.x, ref.z);
      Rational rhs = ev.std_g(n - 1, ref.w + ref.x) /
                     (ref.w * (ref.w + Rational(n - 1) * ref.z));
      return {ev.f(n - 1, n, ref.w), rhs};
    }
    case Identity::FDifference: {
      NumericEvaluator ev(ref.x, ref.z);
      Rational rhs = ev.std_g(k, ref.w + ref.x) *
                     ev.std_g(n - k, ref.w + Rational(k) * ref.z) / ref.w;
      return {ev.f(k, n, ref.w) - ev.f(k + 1, n, ref.w), rhs};
    }
    case Identity::Telescoping: {
      NumericEvaluator ev(ref.x, ref.z);
      Rational sum = 0;
      for (int j = 1; j <= n - 1; ++j) {
        sum += ev.std_g(j, ref.w + ref.x) *
               ev.std_g(n - j, ref.w + Rational(j) * ref.z) / ref.w;
      }
      return {sum, ev.std_g(n, ref.w)};
    }
  }
  throw std::logic_error("unknown identity");
}

// k values to check at one n: a single dummy entry for identities without a
// second index, all interior k for the difference identity.
std::vector<int> k_values(Identity id, int n) {
  if (id != Identity::FDifference) return {0};
  std::vector<int> ks;
  for (int k = 1; k <= n - 2; ++k) ks.push_back(k);
  return ks;
}

EvalPoint sample_point_for(std::uint64_t seed, int n, int j, int attempt, int bound) {
  std::uint64_t level = derive_stream_seed(seed, static_cast<std::uint64_t>(n));
  std::uint64_t sub = derive_stream_seed(
      level, static_cast<std::uint64_t>(j) * 131ull + static_cast<std::uint64_t>(attempt));
  return sample_safe_point(sub, bound);
}

}  // namespace

std::string identity_token(Identity id) {
  switch (id) {
    case Identity::Main: return "main";
    case Identity::Transform: return "transform";
    case Identity::F2: return "thm21";
    case Identity::LastF: return "thm22";
    case Identity::FDifference: return "thm23";
    case Identity::Telescoping: return "telescoping";
  }
  throw std::logic_error("unknown identity");
}

std::optional<Identity> identity_from_token(const std::string& token) {
  if (token == "main") return Identity::Main;
  if (token == "transform") return Identity::Transform;
  if (token == "thm21") return Identity::F2;
  if (token == "thm22") return Identity::LastF;
  if (token == "thm23") return Identity::FDifference;
  if (token == "telescoping") return Identity::Telescoping;
  return std::nullopt;
}

int identity_min_n(Identity id) {
  switch (id) {
    case Identity::Main:
    case Identity::Transform:
      return 1;
    case Identity::LastF:
      return 2;
    case Identity::F2:
    case Identity::FDifference:
    case Identity::Telescoping:
      return 3;
  }
  throw std::logic_error("unknown identity");
}

IdentityReport verify_identity(Identity id, int n_max, const VerifyOptions& opts,
                               FamilyCache& cache) {
  const int n_lo = identity_min_n(id);
  if (n_max < n_lo) {
    throw std::invalid_argument("n_max " + std::to_string(n_max) + " is below " +
                                std::to_string(n_lo) + ", the smallest index of identity " +
                                identity_token(id));
  }
  if (opts.mode == VerifyMode::Numeric && opts.points < 1) {
    throw std::invalid_argument("numeric verification needs at least one point");
  }

  IdentityReport report;
  report.identity = identity_token(id);
  report.n_lo = n_lo;
  report.n_hi = n_max;
  report.mode = opts.mode;
  if (id == Identity::FDifference) report.k_range = {1, n_max - 2};
  if (opts.mode == VerifyMode::Numeric) {
    report.points = opts.points;
    report.seed = opts.seed;
  }

  const auto start = Clock::now();
  for (int n = n_lo; n <= n_max && report.pass; ++n) {
    for (int k : k_values(id, n)) {
      if (opts.mode == VerifyMode::Symbolic) {
        Sides sides = symbolic_sides(id, n, k, cache);
        if (!rf_equal(sides.lhs, sides.rhs, opts.limits.degree_cap)) {
          Witness w;
          w.n = n;
          if (id == Identity::FDifference) w.k = k;
          w.difference = (sides.lhs - sides.rhs).to_string();
          report.witness = std::move(w);
          report.pass = false;
          break;
        }
      } else {
        for (int j = 0; j < opts.points; ++j) {
          SideValues values;
          EvalPoint pt;
          bool evaluated = false;
          // Safe points keep every denominator away from zero, so the
          // retry loop is a guard rail rather than an expected path.
          for (int attempt = 0; attempt < 32 && !evaluated; ++attempt) {
            pt = sample_point_for(opts.seed, n, j, attempt, opts.point_bound);
            try {
              values = numeric_sides(id, n, k, pt);
              evaluated = true;
            } catch (const PoleError&) {
            }
          }
          if (!evaluated) {
            throw ResourceError("could not find a pole-free evaluation point for " +
                                identity_token(id) + " at n=" + std::to_string(n));
          }
          if (values.lhs != values.rhs) {
            Witness w;
            w.n = n;
            if (id == Identity::FDifference) w.k = k;
            w.point = pt;
            w.lhs = to_string(values.lhs);
            w.rhs = to_string(values.rhs);
            report.witness = std::move(w);
            report.pass = false;
            break;
          }
        }
        if (!report.pass) break;
      }
    }
  }
  report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  return report;
}

namespace {

IdentityReport verify_with_fresh_cache(Identity id, int n_max, const VerifyOptions& opts) {
  FamilyCache cache(opts.limits);
  return verify_identity(id, n_max, opts, cache);
}

}  // namespace

IdentityReport verify_main(int n_max, const VerifyOptions& opts) {
  return verify_with_fresh_cache(Identity::Main, n_max, opts);
}
IdentityReport verify_transform(int n_max, const VerifyOptions& opts) {
  return verify_with_fresh_cache(Identity::Transform, n_max, opts);
}
IdentityReport verify_f2(int n, const VerifyOptions& opts) {
  return verify_with_fresh_cache(Identity::F2, n, opts);
}
IdentityReport verify_last_f(int n, const VerifyOptions& opts) {
  return verify_with_fresh_cache(Identity::LastF, n, opts);
}
IdentityReport verify_f_difference(int n, const VerifyOptions& opts) {
  return verify_with_fresh_cache(Identity::FDifference, n, opts);
}
IdentityReport verify_telescoping(int n, const VerifyOptions& opts) {
  return verify_with_fresh_cache(Identity::Telescoping, n, opts);
}

nlohmann::ordered_json to_json(const IdentityReport& report, bool include_timing) {
  nlohmann::ordered_json out;
  out["identity"] = report.identity;
  out["n_range"] = {report.n_lo, report.n_hi};
  if (report.k_range) {
    out["k_range"] = {report.k_range->first, report.k_range->second};
  } else {
    out["k_range"] = nullptr;
  }
  out["mode"] = report.mode == VerifyMode::Symbolic ? "symbolic" : "numeric";
  if (report.points) out["points"] = *report.points; else out["points"] = nullptr;
  if (report.seed) out["seed"] = *report.seed; else out["seed"] = nullptr;
  out["verdict"] = report.pass ? "pass" : "fail";
  out["strength"] = report.mode == VerifyMode::Symbolic ? "exact-symbolic"
                                                        : "consistent-at-sampled-points";
  if (report.witness) {
    nlohmann::ordered_json w;
    w["n"] = report.witness->n;
    if (report.witness->k) w["k"] = *report.witness->k; else w["k"] = nullptr;
    if (report.witness->point) {
      w["point"] = {{"w", to_string(report.witness->point->w)},
                    {"x", to_string(report.witness->point->x)},
                    {"z", to_string(report.witness->point->z)}};
    } else {
      w["point"] = nullptr;
    }
    if (report.witness->lhs) w["lhs"] = *report.witness->lhs; else w["lhs"] = nullptr;
    if (report.witness->rhs) w["rhs"] = *report.witness->rhs; else w["rhs"] = nullptr;
    if (report.witness->difference) w["difference"] = *report.witness->difference;
    else w["difference"] = nullptr;
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  if (include_timing) out["elapsed_ms"] = report.elapsed_ms;
  return out;
}

std::optional<EvalPoint> find_witness(const RationalFunction& a, const RationalFunction& b,
                                      std::uint64_t seed, int tries, int bound) {
  for (int t = 0; t < tries; ++t) {
    EvalPoint pt = sample_safe_point(derive_stream_seed(seed, static_cast<std::uint64_t>(t)),
                                     bound);
    try {
      if (a.eval(pt) != b.eval(pt)) return pt;
    } catch (const PoleError&) {
      // General rational functions may still have poles in the safe region;
      // skip such points and keep searching.
    }
  }
  return std::nullopt;
}

}  // namespace dfsarc
