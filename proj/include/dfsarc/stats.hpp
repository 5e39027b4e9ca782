#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dfsarc/joint_counts.hpp"
#include "dfsarc/rational.hpp"

namespace dfsarc {

// Upper regularized incomplete gamma Q(a, x) = Γ(a,x)/Γ(a), a > 0, x >= 0.
// Power series below x < a+1, modified Lentz continued fraction above;
// iterated to 1e-15 relative change (comfortably past the 1e-10 target),
// ResourceError if either expansion fails to converge.
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution: Q(dof/2, statistic/2).
double chi_square_pvalue(double statistic, int dof);

// decision (pass) is a pure function of statistic, dof and significance.
// statistic can be infinite in degenerate adversarial cases; JSON renders
// non-finite statistics as null with the detail string explaining why.
struct ComparisonReport {
  std::string test;
  double statistic = 0.0;
  std::optional<int> dof;
  std::optional<double> p_value;
  std::optional<std::string> exact_value;  // TV distance as an exact rational
  double significance = 0.0;
  bool pass = false;
  std::vector<std::uint64_t> sample_sizes;
  std::string detail;
};

nlohmann::ordered_json to_json(const ComparisonReport& report);

// z-test of mean(F - B) = 0 using the per-sample differences implied by the
// joint counts; the within-sample pairing is what makes the variance small.
// f_shift displaces every F count first (sensitivity control). sd == 0 with
// zero mean is reported as an exact-equality pass; sd == 0 with nonzero mean
// fails with an infinite statistic.
ComparisonReport paired_mean_test(const JointCounts& j, std::int64_t f_shift = 0,
                                  double z_threshold = 3.5);

// Homogeneity chi-square between two independently sampled histograms.
// Cells ascending over the union support; any cell whose smaller expected
// count drops below min_cell is merged into its neighbor toward the tail
// until all cells qualify. Throws std::invalid_argument if fewer than two
// cells survive. Rejects when p-value < alpha (pass = not rejected).
ComparisonReport two_sample_chi_square(const Histogram& h1, const Histogram& h2,
                                       std::uint64_t min_cell = 5, double alpha = 0.001);

// Goodness of fit of observed draws against P(k) = (1-p)p^k with exact
// rational expected counts on cells 0..max_cell plus the geometric tail,
// then the same deficient-cell merging as above.
ComparisonReport geometric_gof(const Histogram& h, const Rational& p, int max_cell = 12,
                               std::uint64_t min_cell = 5, double alpha = 0.001);

// Half the L1 distance between empirical frequencies, exact.
Rational tv_distance(const Histogram& h1, const Histogram& h2);

// Quadruple variant, computed over the same merged cell partition as
// quad_chi_square (descending pooled count, deficient tail pooled into one
// cell). Over the raw sparse support the plug-in estimate is dominated by
// its own bias -- roughly sum_c sqrt(p_c / (pi N)), ~0.06 for thousands of
// rare profiles at N = 1e5 -- which would swamp the distances under test.
Rational tv_distance_quad(const QuadCounts& a, const QuadCounts& b,
                          std::uint64_t min_cell = 5);

// Wraps an exact TV value as a report with decision tv < threshold.
ComparisonReport tv_report(const std::string& test, const Rational& tv,
                           const Rational& threshold, std::uint64_t total_a,
                           std::uint64_t total_b);

// Chi-square over flattened quadruple cells. The joint support is sparse, so
// cells are ranked by descending pooled count and the deficient tail is
// pooled into one cell.
ComparisonReport quad_chi_square(const QuadCounts& a, const QuadCounts& b,
                                 std::uint64_t min_cell = 5, double alpha = 0.001);

}  // namespace dfsarc
