#include "dfsarc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dfsarc/errors.hpp"

namespace dfsarc {

namespace {

constexpr int kMaxGammaIterations = 10000;
constexpr double kGammaRelativeTarget = 1e-15;

double clamp_probability(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma shape must be positive");
  if (!(x >= 0.0)) throw std::invalid_argument("gamma argument must be non-negative");
  if (x == 0.0) return 1.0;

  if (x < a + 1.0) {
    // P(a,x) = x^a e^{-x} / Gamma(a) * sum_{k>=0} x^k / (a(a+1)...(a+k)).
    double term = 1.0 / a;
    double sum = term;
    double denom = a;
    for (int i = 0; i < kMaxGammaIterations; ++i) {
      denom += 1.0;
      term *= x / denom;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * kGammaRelativeTarget) {
        const double p = sum * std::exp(a * std::log(x) - x - std::lgamma(a));
        return clamp_probability(1.0 - p);
      }
    }
    throw ResourceError("incomplete gamma series did not converge");
  }

  // Q(a,x) = x^a e^{-x} / Gamma(a) * CF, evaluated by the modified Lentz
  // method: CF = 1/(x+1-a -) 1(1-a)/(x+3-a -) 2(2-a)/(x+5-a -) ...
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxGammaIterations; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kGammaRelativeTarget) {
      return clamp_probability(std::exp(a * std::log(x) - x - std::lgamma(a)) * h);
    }
  }
  throw ResourceError("incomplete gamma continued fraction did not converge");
}

double chi_square_pvalue(double statistic, int dof) {
  if (dof < 1) throw std::invalid_argument("chi-square needs at least one degree of freedom");
  if (!(statistic >= 0.0)) throw std::invalid_argument("chi-square statistic must be >= 0");
  return regularized_gamma_q(dof / 2.0, statistic / 2.0);
}

nlohmann::ordered_json to_json(const ComparisonReport& report) {
  nlohmann::ordered_json out;
  out["test"] = report.test;
  if (std::isfinite(report.statistic)) out["statistic"] = report.statistic;
  else out["statistic"] = nullptr;
  if (report.dof) out["dof"] = *report.dof; else out["dof"] = nullptr;
  if (report.p_value) out["p_value"] = *report.p_value; else out["p_value"] = nullptr;
  if (report.exact_value) out["exact_value"] = *report.exact_value;
  else out["exact_value"] = nullptr;
  out["significance"] = report.significance;
  out["decision"] = report.pass ? "pass" : "fail";
  out["sample_sizes"] = report.sample_sizes;
  out["detail"] = report.detail;
  return out;
}

ComparisonReport paired_mean_test(const JointCounts& j, std::int64_t f_shift,
                                  double z_threshold) {
  if (j.total_samples < 1000) {
    throw std::invalid_argument("paired mean test needs at least 1000 samples");
  }

  // All moments in exact integers; floating point enters only in the final z.
  mpz_class sum_d = 0;
  mpz_class sum_d2 = 0;
  for (const auto& [key, count] : j.counts) {
    const mpz_class d = mpz_class(key[1]) + f_shift - mpz_class(key[2]);
    const mpz_class weighted = mpz_class(count) * d;
    sum_d += weighted;
    sum_d2 += weighted * d;
  }
  const mpz_class n(j.total_samples);
  const mpz_class variance_numerator = n * sum_d2 - sum_d * sum_d;

  ComparisonReport report;
  report.test = "paired-mean-z";
  report.significance = z_threshold;
  report.sample_sizes = {j.total_samples};

  if (variance_numerator == 0) {
    // Every sample has the same difference: exact comparison, no noise.
    if (sum_d == 0) {
      report.statistic = 0.0;
      report.p_value = 1.0;
      report.pass = true;
      report.detail = "sd = 0 and every paired difference is zero: exact equality";
    } else {
      report.statistic = std::numeric_limits<double>::infinity();
      report.p_value = 0.0;
      report.pass = false;
      report.detail = "sd = 0 with a constant nonzero difference";
    }
    return report;
  }

  const double z = sum_d.get_d() /
                   std::sqrt(variance_numerator.get_d() /
                             static_cast<double>(j.total_samples - 1));
  report.statistic = z;
  report.p_value = std::erfc(std::fabs(z) / std::sqrt(2.0));
  report.pass = std::fabs(z) <= z_threshold;
  report.detail = f_shift == 0 ? "mean(F - B) z-test"
                               : "mean(F + " + std::to_string(f_shift) + " - B) z-test";
  return report;
}

namespace {

// A merged two-sample cell: observed counts from each batch.
struct Cell {
  std::uint64_t o1 = 0;
  std::uint64_t o2 = 0;
};

// Expected count of this cell in the smaller batch, compared exactly:
// min(N1,N2) * pooled / (N1+N2) < min_cell.
bool deficient(const Cell& cell, std::uint64_t n1, std::uint64_t n2, std::uint64_t min_cell) {
  const unsigned __int128 pooled = cell.o1 + cell.o2;
  const unsigned __int128 smaller = std::min(n1, n2);
  return smaller * pooled < static_cast<unsigned __int128>(min_cell) * (n1 + n2);
}

ComparisonReport finish_two_sample(const std::string& test, const std::vector<Cell>& cells,
                                   std::uint64_t n1, std::uint64_t n2, double alpha) {
  const double total = static_cast<double>(n1) + static_cast<double>(n2);
  double statistic = 0.0;
  for (const Cell& cell : cells) {
    const double pooled = static_cast<double>(cell.o1 + cell.o2);
    const double e1 = static_cast<double>(n1) * pooled / total;
    const double e2 = static_cast<double>(n2) * pooled / total;
    const double d1 = static_cast<double>(cell.o1) - e1;
    const double d2 = static_cast<double>(cell.o2) - e2;
    statistic += d1 * d1 / e1 + d2 * d2 / e2;
  }
  const int dof = static_cast<int>(cells.size()) - 1;
  ComparisonReport report;
  report.test = test;
  report.statistic = statistic;
  report.dof = dof;
  report.p_value = chi_square_pvalue(statistic, dof);
  report.significance = alpha;
  report.pass = *report.p_value >= alpha;
  report.sample_sizes = {n1, n2};
  report.detail = std::to_string(cells.size()) + " cells after merging";
  return report;
}

}  // namespace

ComparisonReport two_sample_chi_square(const Histogram& h1, const Histogram& h2,
                                       std::uint64_t min_cell, double alpha) {
  if (h1.total == 0 || h2.total == 0) {
    throw std::invalid_argument("two-sample chi-square needs non-empty histograms");
  }

  std::map<std::uint64_t, Cell> by_value;
  for (const auto& [value, count] : h1.counts) by_value[value].o1 = count;
  for (const auto& [value, count] : h2.counts) by_value[value].o2 = count;
  std::vector<Cell> cells;
  cells.reserve(by_value.size());
  for (const auto& [value, cell] : by_value) cells.push_back(cell);

  // Merge any deficient cell into its neighbor toward the tail (leftward for
  // the last cell) until every expected count clears min_cell.
  bool merged = true;
  while (merged && cells.size() > 1) {
    merged = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!deficient(cells[i], h1.total, h2.total, min_cell)) continue;
      const std::size_t target = i + 1 < cells.size() ? i + 1 : i - 1;
      cells[target].o1 += cells[i].o1;
      cells[target].o2 += cells[i].o2;
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(i));
      merged = true;
      break;
    }
  }
  if (cells.size() < 2) {
    throw std::invalid_argument("fewer than 2 cells remain after merging");
  }
  return finish_two_sample("two-sample-chi-square", cells, h1.total, h2.total, alpha);
}

ComparisonReport geometric_gof(const Histogram& h, const Rational& p, int max_cell,
                               std::uint64_t min_cell, double alpha) {
  if (h.total == 0) throw std::invalid_argument("goodness of fit needs observations");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("geometric parameter must be in (0,1)");
  if (max_cell < 1) throw std::invalid_argument("need at least cells 0..1 plus tail");

  // Exact expected counts: N(1-p)p^k for k = 0..max_cell, N p^{max_cell+1}
  // for the tail.
  struct GofCell {
    Rational expected;
    std::uint64_t observed = 0;
  };
  std::vector<GofCell> cells;
  const Rational total(static_cast<unsigned long>(h.total));
  Rational power = 1;
  for (int k = 0; k <= max_cell; ++k) {
    GofCell cell;
    cell.expected = total * (1 - p) * power;
    auto found = h.counts.find(static_cast<std::uint64_t>(k));
    if (found != h.counts.end()) cell.observed = found->second;
    cells.push_back(std::move(cell));
    power *= p;
  }
  GofCell tail;
  tail.expected = total * power;
  for (const auto& [value, count] : h.counts) {
    if (value > static_cast<std::uint64_t>(max_cell)) tail.observed += count;
  }
  cells.push_back(std::move(tail));

  const Rational floor(static_cast<unsigned long>(min_cell));
  bool merged = true;
  while (merged && cells.size() > 1) {
    merged = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].expected >= floor) continue;
      const std::size_t target = i + 1 < cells.size() ? i + 1 : i - 1;
      cells[target].expected += cells[i].expected;
      cells[target].observed += cells[i].observed;
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(i));
      merged = true;
      break;
    }
  }
  if (cells.size() < 2) {
    throw std::invalid_argument("fewer than 2 cells remain after merging");
  }

  double statistic = 0.0;
  for (const GofCell& cell : cells) {
    const double e = to_double(cell.expected);
    const double d = static_cast<double>(cell.observed) - e;
    statistic += d * d / e;
  }
  const int dof = static_cast<int>(cells.size()) - 1;
  ComparisonReport report;
  report.test = "geometric-gof-chi-square";
  report.statistic = statistic;
  report.dof = dof;
  report.p_value = chi_square_pvalue(statistic, dof);
  report.significance = alpha;
  report.pass = *report.p_value >= alpha;
  report.sample_sizes = {h.total};
  report.detail = std::to_string(cells.size()) + " cells after merging";
  return report;
}

namespace {

template <class Key>
Rational tv_between(const std::map<Key, std::uint64_t>& a, std::uint64_t total_a,
                    const std::map<Key, std::uint64_t>& b, std::uint64_t total_b) {
  if (total_a == 0 || total_b == 0) {
    throw std::invalid_argument("TV distance needs non-empty distributions");
  }
  const Rational na(static_cast<unsigned long>(total_a));
  const Rational nb(static_cast<unsigned long>(total_b));
  Rational sum = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    Rational fa = 0, fb = 0;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      fa = Rational(static_cast<unsigned long>(ia->second)) / na;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      fb = Rational(static_cast<unsigned long>(ib->second)) / nb;
      ++ib;
    } else {
      fa = Rational(static_cast<unsigned long>(ia->second)) / na;
      fb = Rational(static_cast<unsigned long>(ib->second)) / nb;
      ++ia;
      ++ib;
    }
    sum += abs(fa - fb);
  }
  return sum / 2;
}

}  // namespace

Rational tv_distance(const Histogram& h1, const Histogram& h2) {
  return tv_between(h1.counts, h1.total, h2.counts, h2.total);
}

namespace {

// Shared cell partition for the quadruple comparison. The joint support is
// sparse (thousands of rare profiles), so both reported quantities use the
// same merged cells: rank by pooled count descending (key order breaks ties,
// keeping the split deterministic) and pool the deficient tail into one cell.
std::vector<Cell> pooled_quad_cells(const QuadCounts& a, const QuadCounts& b,
                                    std::uint64_t total_a, std::uint64_t total_b,
                                    std::uint64_t min_cell) {
  struct QuadCell {
    QuadKey key{};
    Cell counts;
  };
  std::map<QuadKey, Cell> by_key;
  for (const auto& [key, count] : a) by_key[key].o1 = count;
  for (const auto& [key, count] : b) by_key[key].o2 = count;
  std::vector<QuadCell> ranked;
  ranked.reserve(by_key.size());
  for (const auto& [key, counts] : by_key) ranked.push_back({key, counts});
  std::stable_sort(ranked.begin(), ranked.end(), [](const QuadCell& lhs, const QuadCell& rhs) {
    const auto pl = lhs.counts.o1 + lhs.counts.o2;
    const auto pr = rhs.counts.o1 + rhs.counts.o2;
    if (pl != pr) return pl > pr;
    return lhs.key < rhs.key;
  });

  std::vector<Cell> cells;
  Cell tail;
  bool pooling = false;
  for (const QuadCell& cell : ranked) {
    if (!pooling && deficient(cell.counts, total_a, total_b, min_cell)) pooling = true;
    if (pooling) {
      tail.o1 += cell.counts.o1;
      tail.o2 += cell.counts.o2;
    } else {
      cells.push_back(cell.counts);
    }
  }
  if (pooling) {
    if (!deficient(tail, total_a, total_b, min_cell) || cells.empty()) {
      cells.push_back(tail);
    } else {
      // Deficient leftover tail: fold it into the last qualifying cell.
      cells.back().o1 += tail.o1;
      cells.back().o2 += tail.o2;
    }
  }
  return cells;
}

}  // namespace

Rational tv_distance_quad(const QuadCounts& a, const QuadCounts& b, std::uint64_t min_cell) {
  std::uint64_t total_a = 0, total_b = 0;
  for (const auto& [key, count] : a) total_a += count;
  for (const auto& [key, count] : b) total_b += count;
  if (total_a == 0 || total_b == 0) {
    throw std::invalid_argument("TV distance needs non-empty distributions");
  }
  const Rational na(static_cast<unsigned long>(total_a));
  const Rational nb(static_cast<unsigned long>(total_b));
  Rational sum = 0;
  for (const Cell& cell : pooled_quad_cells(a, b, total_a, total_b, min_cell)) {
    sum += abs(Rational(static_cast<unsigned long>(cell.o1)) / na -
               Rational(static_cast<unsigned long>(cell.o2)) / nb);
  }
  return sum / 2;
}

ComparisonReport tv_report(const std::string& test, const Rational& tv,
                           const Rational& threshold, std::uint64_t total_a,
                           std::uint64_t total_b) {
  ComparisonReport report;
  report.test = test;
  report.statistic = to_double(tv);
  report.exact_value = to_string(tv);
  report.significance = to_double(threshold);
  report.pass = tv < threshold;
  report.sample_sizes = {total_a, total_b};
  report.detail = "decision: exact TV < " + to_string(threshold);
  return report;
}

ComparisonReport quad_chi_square(const QuadCounts& a, const QuadCounts& b,
                                 std::uint64_t min_cell, double alpha) {
  std::uint64_t total_a = 0, total_b = 0;
  for (const auto& [key, count] : a) total_a += count;
  for (const auto& [key, count] : b) total_b += count;
  if (total_a == 0 || total_b == 0) {
    throw std::invalid_argument("quad chi-square needs non-empty distributions");
  }

  const std::vector<Cell> cells = pooled_quad_cells(a, b, total_a, total_b, min_cell);
  if (cells.size() < 2) {
    throw std::invalid_argument("fewer than 2 cells remain after merging");
  }
  ComparisonReport report = finish_two_sample("quad-chi-square", cells, total_a, total_b, alpha);
  return report;
}

}  // namespace dfsarc
