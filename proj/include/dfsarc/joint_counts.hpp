#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dfsarc/dfs.hpp"
#include "dfsarc/digraph.hpp"

namespace dfsarc {

// Empirical joint law of (L,F,B,C,T) over sampled digraphs. seed is the
// master seed of the run when there is a single well-defined one; merging
// runs with different seeds clears it.
struct JointCounts {
  int n = 1;
  Rational p;
  std::uint64_t total_samples = 0;
  std::optional<std::uint64_t> seed;
  std::map<std::array<std::uint64_t, 5>, std::uint64_t> counts;

  bool operator==(const JointCounts&) const = default;
};

struct Histogram {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total = 0;

  bool operator==(const Histogram&) const = default;
};

enum class ArcCoord { L = 0, F = 1, B = 2, C = 3, T = 4 };

std::optional<ArcCoord> arc_coord_from_letter(char letter);

// Sample i (globally indexed first_index + i) draws its digraph from the RNG
// stream of that index, so a run may be split across calls or threads and
// merged back losslessly: the stream discipline, not the schedule, fixes the
// result. trace_out, when given, receives per-sample counts in index order.
JointCounts run_monte_carlo(const ModelParams& params, std::uint64_t samples,
                            std::uint64_t seed, int threads = 1,
                            std::uint64_t first_index = 0,
                            std::vector<ArcCounts>* trace_out = nullptr);

Histogram marginal(const JointCounts& j, ArcCoord coordinate);

using QuadKey = std::array<std::uint64_t, 4>;
using QuadCounts = std::map<QuadKey, std::uint64_t>;

// swapped=false -> (L,F,B+C,T); swapped=true -> (L,B,F+C,T).
QuadCounts project_quad(const JointCounts& j, bool swapped);

// Pointwise sum; throws std::invalid_argument when (n, p) differ.
JointCounts merge_counts(const JointCounts& a, const JointCounts& b);

// CSV with header L,F,B,C,T,count, rows in ascending key order. The sidecar
// JSON {n, p, samples, seed, version} travels next to the CSV file as
// <path>.meta.json.
std::string counts_to_csv(const JointCounts& j);
std::string counts_meta_json(const JointCounts& j);
JointCounts counts_from_csv(const std::string& csv, const std::string& meta_json);

void save_counts(const JointCounts& j, const std::string& csv_path);
JointCounts load_counts(const std::string& csv_path);

// One JSON line of the optional per-sample trace.
std::string trace_line(std::uint64_t seed, std::uint64_t sample_index,
                       const ModelParams& params, const ArcCounts& counts);

}  // namespace dfsarc
