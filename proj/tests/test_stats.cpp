#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"

#include "dfsarc/errors.hpp"
#include "dfsarc/stats.hpp"

using namespace dfsarc;

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

ModelParams params(int n, long p_num, long p_den) {
  ModelParams out;
  out.n = n;
  out.p = q(p_num, p_den);
  return out;
}

JointCounts synthetic_counts(int n, const Rational& p,
                             std::initializer_list<std::pair<std::array<std::uint64_t, 5>,
                                                             std::uint64_t>> rows) {
  JointCounts j;
  j.n = n;
  j.p = p;
  for (const auto& [key, count] : rows) {
    j.counts[key] = count;
    j.total_samples += count;
  }
  return j;
}

double relative_error(double got, double want) {
  return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

}  // namespace

TEST_CASE("incomplete gamma against closed forms") {
  const double xs[] = {0.05, 0.3, 0.9, 1.7, 3.0, 6.5, 14.0, 33.0};

  for (double x : xs) {
    // Q(1,x) = exp(-x)
    CHECK(relative_error(regularized_gamma_q(1.0, x), std::exp(-x)) < 1e-12);
    // Q(2,x) = exp(-x)(1+x)
    CHECK(relative_error(regularized_gamma_q(2.0, x), std::exp(-x) * (1.0 + x)) < 1e-12);
    // Q(5,x): Erlang sum
    double erlang = 0.0;
    double term = 1.0;
    for (int j = 0; j < 5; ++j) {
      if (j > 0) term *= x / j;
      erlang += term;
    }
    erlang *= std::exp(-x);
    CHECK(relative_error(regularized_gamma_q(5.0, x), erlang) < 1e-11);
    // Q(1/2,x) = erfc(sqrt(x)); Q(3/2,x) adds the density correction term
    CHECK(relative_error(regularized_gamma_q(0.5, x), std::erfc(std::sqrt(x))) < 1e-11);
    const double q32 = std::erfc(std::sqrt(x)) +
                       2.0 * std::sqrt(x / M_PI) * std::exp(-x);
    CHECK(relative_error(regularized_gamma_q(1.5, x), q32) < 1e-11);
  }

  CHECK(regularized_gamma_q(3.0, 0.0) == 1.0);
  double previous = 1.0;
  for (double x : xs) {
    const double value = regularized_gamma_q(2.5, x);
    CHECK(value < previous);
    previous = value;
  }
  CHECK_THROWS_AS(regularized_gamma_q(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(regularized_gamma_q(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("chi-square p-values") {
  for (double s : {0.5, 2.0, 3.84, 10.0}) {
    CHECK(relative_error(chi_square_pvalue(s, 1), std::erfc(std::sqrt(s / 2.0))) < 1e-11);
    CHECK(relative_error(chi_square_pvalue(s, 2), std::exp(-s / 2.0)) < 1e-12);
  }
  CHECK_THROWS_AS(chi_square_pvalue(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(chi_square_pvalue(-1.0, 2), std::invalid_argument);
}

TEST_CASE("paired mean test") {
  // every sample satisfies F == B exactly
  const JointCounts equal = synthetic_counts(4, q(1, 2), {{{0, 1, 1, 0, 3}, 1500}});
  const ComparisonReport exact = paired_mean_test(equal);
  CHECK(exact.pass);
  CHECK(exact.statistic == 0.0);

  // single-vertex profile: F = B = 0 throughout
  const JointCounts loops_only =
      synthetic_counts(1, q(1, 2), {{{0, 0, 0, 0, 0}, 600}, {{3, 0, 0, 0, 0}, 600}});
  CHECK(paired_mean_test(loops_only).pass);

  // symmetric +1/-1 differences: z exactly 0
  const JointCounts balanced = synthetic_counts(
      4, q(1, 2), {{{0, 2, 1, 0, 3}, 5000}, {{0, 1, 2, 0, 3}, 5000}});
  const ComparisonReport sym = paired_mean_test(balanced);
  CHECK(sym.pass);
  CHECK(sym.statistic == 0.0);

  // shifting F moves the mean one sd of D away times sqrt(N): decisive fail
  const ComparisonReport shifted = paired_mean_test(balanced, 1);
  CHECK_FALSE(shifted.pass);
  CHECK(std::fabs(shifted.statistic) > 50.0);

  // degenerate sd with nonzero mean: infinite statistic, JSON null
  const JointCounts constant_gap = synthetic_counts(4, q(1, 2), {{{0, 2, 1, 0, 3}, 1200}});
  const ComparisonReport degenerate = paired_mean_test(constant_gap);
  CHECK_FALSE(degenerate.pass);
  CHECK(std::isinf(degenerate.statistic));
  CHECK(to_json(degenerate)["statistic"].is_null());
  CHECK(to_json(degenerate)["decision"] == "fail");

  const JointCounts tiny = synthetic_counts(4, q(1, 2), {{{0, 1, 1, 0, 3}, 10}});
  CHECK_THROWS_AS(paired_mean_test(tiny), std::invalid_argument);
}

TEST_CASE("two-sample chi-square") {
  Histogram base;
  for (std::uint64_t k = 0; k < 6; ++k) {
    base.counts[k] = 4000 - 600 * k;
    base.total += base.counts[k];
  }
  const ComparisonReport same = two_sample_chi_square(base, base);
  CHECK(same.pass);
  CHECK(same.statistic == 0.0);
  CHECK(*same.dof == 5);

  // sparse tail cells merge away
  Histogram sparse = base;
  sparse.counts[40] = 1;
  sparse.total += 1;
  const ComparisonReport merged = two_sample_chi_square(sparse, sparse);
  CHECK(merged.pass);
  CHECK(*merged.dof == 5);  // the count-1 cell joined a neighbor

  Histogram shifted;
  for (const auto& [k, c] : base.counts) shifted.counts[k + 2] = c;
  shifted.total = base.total;
  CHECK_FALSE(two_sample_chi_square(base, shifted).pass);

  Histogram tiny_a, tiny_b;
  tiny_a.counts[0] = 3;
  tiny_a.counts[1] = 3;
  tiny_a.total = 6;
  tiny_b = tiny_a;
  CHECK_THROWS_AS(two_sample_chi_square(tiny_a, tiny_b), std::invalid_argument);
}

TEST_CASE("geometric goodness of fit") {
  Rng rng(909);
  Histogram h14, h23;
  for (int i = 0; i < 200000; ++i) {
    ++h14.counts[static_cast<std::uint64_t>(sample_outdegree(q(1, 4), rng))];
    ++h14.total;
    ++h23.counts[static_cast<std::uint64_t>(sample_outdegree(q(2, 3), rng))];
    ++h23.total;
  }
  CHECK(geometric_gof(h14, q(1, 4)).pass);
  CHECK(geometric_gof(h23, q(2, 3)).pass);
  // wrong parameter: decisively rejected
  CHECK_FALSE(geometric_gof(h23, q(1, 2)).pass);

  CHECK_THROWS_AS(geometric_gof(h14, q(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(geometric_gof(h14, q(1, 2), 0), std::invalid_argument);
  CHECK_THROWS_AS(geometric_gof(Histogram{}, q(1, 2)), std::invalid_argument);
}

TEST_CASE("total variation distance") {
  Histogram a, b;
  a.counts = {{0, 10}, {1, 30}};
  a.total = 40;
  CHECK(tv_distance(a, a) == 0);

  b.counts = {{5, 7}};
  b.total = 7;
  CHECK(tv_distance(a, b) == 1);

  Histogram c, d;
  c.counts = {{0, 1}, {1, 1}};
  c.total = 2;
  d.counts = {{0, 1}};
  d.total = 1;
  CHECK(tv_distance(c, d) == q(1, 2));

  CHECK_THROWS_AS(tv_distance(Histogram{}, a), std::invalid_argument);

  QuadCounts qa{{{0, 1, 1, 3}, 5}};
  QuadCounts qb{{{0, 1, 1, 3}, 9}};
  CHECK(tv_distance_quad(qa, qb) == 0);

  const ComparisonReport tv = tv_report("fb-tv-distance", q(1, 100), q(1, 50), 10, 20);
  CHECK(tv.pass);
  CHECK(*tv.exact_value == "1/100");
  CHECK_FALSE(tv_report("fb-tv-distance", q(1, 30), q(1, 50), 10, 20).pass);
}

TEST_CASE("merge is a monoid on matching parameters") {
  const JointCounts a = run_monte_carlo(params(4, 1, 2), 400, 7);
  const JointCounts b = run_monte_carlo(params(4, 1, 2), 300, 8);
  const JointCounts c = run_monte_carlo(params(4, 1, 2), 200, 9);

  JointCounts empty;
  empty.n = 4;
  empty.p = q(1, 2);
  empty.seed = a.seed;
  CHECK(merge_counts(a, empty) == a);

  CHECK(merge_counts(a, b) == merge_counts(b, a));
  CHECK(merge_counts(merge_counts(a, b), c) == merge_counts(a, merge_counts(b, c)));

  // different master seeds: merged result no longer names one
  CHECK_FALSE(merge_counts(a, b).seed.has_value());

  const JointCounts other = run_monte_carlo(params(5, 1, 2), 100, 7);
  CHECK_THROWS_AS(merge_counts(a, other), std::invalid_argument);
}

TEST_CASE("monte carlo runs are deterministic and schedule-independent") {
  const JointCounts serial = run_monte_carlo(params(6, 1, 2), 2000, 9, 1);
  CHECK(serial == run_monte_carlo(params(6, 1, 2), 2000, 9, 1));
  CHECK(serial == run_monte_carlo(params(6, 1, 2), 2000, 9, 4));

  // split runs glued by first_index match the single run exactly
  const JointCounts first_half = run_monte_carlo(params(6, 1, 2), 1000, 9, 1, 0);
  const JointCounts second_half = run_monte_carlo(params(6, 1, 2), 1000, 9, 1, 1000);
  CHECK(merge_counts(first_half, second_half) == serial);

  std::vector<ArcCounts> trace;
  const JointCounts traced = run_monte_carlo(params(6, 1, 2), 500, 9, 3, 0, &trace);
  CHECK(traced.total_samples == 500);
  REQUIRE(trace.size() == 500);
  std::map<std::array<std::uint64_t, 5>, std::uint64_t> recount;
  for (const ArcCounts& c : trace) ++recount[{c.L, c.F, c.B, c.C, c.T}];
  CHECK(recount == traced.counts);
}

TEST_CASE("single-vertex model: every arc is a loop") {
  const JointCounts j = run_monte_carlo(params(1, 1, 2), 50000, 17);
  for (const auto& [key, count] : j.counts) {
    CHECK(key[1] == 0);
    CHECK(key[2] == 0);
    CHECK(key[3] == 0);
    CHECK(key[4] == 0);
  }
  CHECK(marginal(j, ArcCoord::F).counts.at(0) == 50000);

  // L equals the outdegree of the only vertex: geometric(p)
  CHECK(geometric_gof(marginal(j, ArcCoord::L), q(1, 2)).pass);

  // with no F, B, C the two quadruple projections coincide exactly
  CHECK(project_quad(j, false) == project_quad(j, true));
}

TEST_CASE("empirical P(T=1) at n=2 matches the enumeration oracle") {
  // Enumerate all outcomes with both outdegrees <= 8: outcome probability
  // (1-p)p^{d1} (1-p)p^{d2} 2^{-(d1+d2)} for each head assignment.
  const Rational p = q(1, 2);
  Rational enumerated = 0;
  Rational covered = 0;
  for (int d1 = 0; d1 <= 8; ++d1) {
    for (int d2 = 0; d2 <= 8; ++d2) {
      Rational profile_weight = (1 - p) * (1 - p);
      for (int i = 0; i < d1 + d2; ++i) profile_weight *= p;
      const long assignments = 1L << (d1 + d2);
      const Rational outcome_weight = profile_weight / Rational(assignments);
      for (long mask = 0; mask < assignments; ++mask) {
        Digraph g;
        g.n = 2;
        g.heads.resize(2);
        for (int i = 0; i < d1; ++i) g.heads[0].push_back((mask >> i) & 1);
        for (int i = 0; i < d2; ++i) g.heads[1].push_back((mask >> (d1 + i)) & 1);
        covered += outcome_weight;
        if (dfs_classify(g).counts.T == 1) enumerated += outcome_weight;
      }
    }
  }
  // truncation: some outdegree exceeds 8 with probability 1 - (1-p^9)^2
  const Rational truncated = 1 - covered;
  CHECK(truncated < q(1, 250));

  // analytic value: P(at least one arc 1->2) = sum (1-p)p^d (1/2)^d = 2/3 of
  // the complement -> P = 1/3
  CHECK(abs(enumerated - q(1, 3)) <= truncated);

  const JointCounts j = run_monte_carlo(params(2, 1, 2), 100000, 23);
  Rational hit = 0;
  for (const auto& [key, count] : j.counts) {
    if (key[4] == 1) hit += Rational(static_cast<unsigned long>(count));
  }
  const Rational frequency = hit / Rational(static_cast<unsigned long>(j.total_samples));
  const double slack = to_double(truncated) + 4.0 * std::sqrt(0.25 / 100000.0);
  CHECK(std::fabs(to_double(frequency - enumerated)) < slack);
}

TEST_CASE("quadruple projections") {
  const JointCounts j = run_monte_carlo(params(3, 1, 2), 20000, 31);
  const QuadCounts plain = project_quad(j, false);
  const QuadCounts swapped = project_quad(j, true);
  std::uint64_t total_plain = 0, total_swapped = 0;
  for (const auto& [key, count] : plain) total_plain += count;
  for (const auto& [key, count] : swapped) total_swapped += count;
  CHECK(total_plain == j.total_samples);
  CHECK(total_swapped == j.total_samples);

  const JointCounts other = run_monte_carlo(params(3, 1, 2), 20000, 32);
  const ComparisonReport same_model =
      quad_chi_square(plain, project_quad(other, true));
  CHECK(same_model.pass);

  // displacing F in one batch destroys the distributional match
  JointCounts tampered = other;
  tampered.counts.clear();
  for (const auto& [key, count] : other.counts) {
    tampered.counts[{key[0], key[1] + 2, key[2], key[3], key[4]}] = count;
  }
  CHECK_FALSE(quad_chi_square(plain, project_quad(tampered, true)).pass);
}

TEST_CASE("counts round-trip through CSV and sidecar") {
  const JointCounts j = run_monte_carlo(params(5, 1, 3), 4000, 77);
  const std::string csv = counts_to_csv(j);
  const std::string meta = counts_meta_json(j);
  CHECK(csv.rfind("L,F,B,C,T,count\n", 0) == 0);
  const JointCounts back = counts_from_csv(csv, meta);
  CHECK(back == j);

  CHECK_THROWS_AS(counts_from_csv("bogus\n", meta), std::invalid_argument);
  CHECK_THROWS_AS(counts_from_csv("L,F,B,C,T,count\n1,2\n", meta), std::invalid_argument);
  const std::string dup = "L,F,B,C,T,count\n0,0,0,0,0,2\n0,0,0,0,0,3\n";
  CHECK_THROWS_AS(counts_from_csv(dup, meta), std::invalid_argument);
  // totals must match the sidecar
  CHECK_THROWS_AS(counts_from_csv("L,F,B,C,T,count\n0,0,0,0,0,2\n", meta),
                  std::invalid_argument);

  const auto dir = std::filesystem::path("stats_artifacts");
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "roundtrip.csv").string();
  save_counts(j, path);
  CHECK(load_counts(path) == j);

  const std::string line = trace_line(7, 3, params(5, 1, 3), ArcCounts{1, 0, 2, 0, 4});
  const auto parsed = nlohmann::json::parse(line);
  CHECK(parsed["seed"] == 7);
  CHECK(parsed["sample_index"] == 3);
  CHECK(parsed["p"] == "1/3");
  CHECK(parsed["counts"]["T"] == 4);
}
