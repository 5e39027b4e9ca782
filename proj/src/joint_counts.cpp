#include "dfsarc/joint_counts.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "dfsarc/rng.hpp"

namespace dfsarc {

namespace {

constexpr int kCountsFormatVersion = 1;

std::array<std::uint64_t, 5> key_of(const ArcCounts& c) {
  return {c.L, c.F, c.B, c.C, c.T};
}

void tally_range(const ModelParams& params, std::uint64_t seed, std::uint64_t first_index,
                 std::uint64_t begin, std::uint64_t end, JointCounts& local,
                 std::vector<ArcCounts>* trace_out) {
  for (std::uint64_t i = begin; i < end; ++i) {
    Rng rng = Rng::stream(seed, first_index + i);
    const Digraph g = gen_digraph(params, rng);
    const DfsResult result = dfs_classify(g);
    ++local.counts[key_of(result.counts)];
    ++local.total_samples;
    if (trace_out) (*trace_out)[i] = result.counts;
  }
}

}  // namespace

std::optional<ArcCoord> arc_coord_from_letter(char letter) {
  switch (letter) {
    case 'L': return ArcCoord::L;
    case 'F': return ArcCoord::F;
    case 'B': return ArcCoord::B;
    case 'C': return ArcCoord::C;
    case 'T': return ArcCoord::T;
    default: return std::nullopt;
  }
}

JointCounts run_monte_carlo(const ModelParams& params, std::uint64_t samples,
                            std::uint64_t seed, int threads, std::uint64_t first_index,
                            std::vector<ArcCounts>* trace_out) {
  params.validate();
  if (samples < 1) throw std::invalid_argument("sample count must be at least 1");
  if (trace_out) trace_out->assign(samples, ArcCounts{});

  auto workers = static_cast<std::uint64_t>(threads < 1 ? 1 : threads);
  if (workers > samples) workers = samples;

  std::vector<JointCounts> partial(workers);
  for (auto& part : partial) {
    part.n = params.n;
    part.p = params.p;
  }

  if (workers == 1) {
    tally_range(params, seed, first_index, 0, samples, partial[0], trace_out);
  } else {
    // Contiguous index ranges per worker; any exception is rethrown after
    // all threads join.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    const std::uint64_t chunk = samples / workers;
    const std::uint64_t remainder = samples % workers;
    std::uint64_t begin = 0;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t end = begin + chunk + (w < remainder ? 1 : 0);
      pool.emplace_back([&, w, begin, end] {
        try {
          tally_range(params, seed, first_index, begin, end, partial[w], trace_out);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
      begin = end;
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  JointCounts total = std::move(partial[0]);
  for (std::uint64_t w = 1; w < workers; ++w) total = merge_counts(total, partial[w]);
  total.seed = seed;
  return total;
}

Histogram marginal(const JointCounts& j, ArcCoord coordinate) {
  Histogram h;
  const auto index = static_cast<std::size_t>(coordinate);
  for (const auto& [key, count] : j.counts) {
    h.counts[key[index]] += count;
    h.total += count;
  }
  return h;
}

QuadCounts project_quad(const JointCounts& j, bool swapped) {
  QuadCounts out;
  for (const auto& [key, count] : j.counts) {
    const auto [L, F, B, C, T] = std::tuple(key[0], key[1], key[2], key[3], key[4]);
    const QuadKey quad = swapped ? QuadKey{L, B, F + C, T} : QuadKey{L, F, B + C, T};
    out[quad] += count;
  }
  return out;
}

JointCounts merge_counts(const JointCounts& a, const JointCounts& b) {
  if (a.n != b.n || a.p != b.p) {
    throw std::invalid_argument("cannot merge joint counts with different (n, p)");
  }
  JointCounts out = a;
  out.total_samples += b.total_samples;
  if (out.seed != b.seed) out.seed.reset();
  for (const auto& [key, count] : b.counts) out.counts[key] += count;
  return out;
}

std::string counts_to_csv(const JointCounts& j) {
  std::ostringstream out;
  out << "L,F,B,C,T,count\n";
  for (const auto& [key, count] : j.counts) {
    out << key[0] << ',' << key[1] << ',' << key[2] << ',' << key[3] << ',' << key[4] << ','
        << count << '\n';
  }
  return out.str();
}

std::string counts_meta_json(const JointCounts& j) {
  nlohmann::ordered_json meta;
  meta["n"] = j.n;
  meta["p"] = to_string(j.p);
  meta["samples"] = j.total_samples;
  if (j.seed) meta["seed"] = *j.seed; else meta["seed"] = nullptr;
  meta["version"] = kCountsFormatVersion;
  return meta.dump();
}

namespace {

std::uint64_t parse_u64_field(const std::string& field, const std::string& line) {
  std::uint64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("bad count field '" + field + "' in CSV row: " + line);
  }
  return value;
}

}  // namespace

JointCounts counts_from_csv(const std::string& csv, const std::string& meta_json) {
  JointCounts j;

  nlohmann::json meta = nlohmann::json::parse(meta_json);
  j.n = meta.at("n").get<int>();
  auto p = parse_rational(meta.at("p").get<std::string>());
  if (!p) throw std::invalid_argument("bad p in counts metadata");
  j.p = *p;
  const auto samples = meta.at("samples").get<std::uint64_t>();
  if (meta.contains("seed") && !meta.at("seed").is_null()) {
    j.seed = meta.at("seed").get<std::uint64_t>();
  }
  const auto version = meta.at("version").get<int>();
  if (version != kCountsFormatVersion) {
    throw std::invalid_argument("unsupported counts format version " +
                                std::to_string(version));
  }

  std::istringstream lines(csv);
  std::string line;
  if (!std::getline(lines, line) || (line != "L,F,B,C,T,count" && line != "L,F,B,C,T,count\r")) {
    throw std::invalid_argument("counts CSV must start with header L,F,B,C,T,count");
  }
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<std::uint64_t, 6> fields{};
    std::size_t start = 0;
    for (int f = 0; f < 6; ++f) {
      const std::size_t comma = line.find(',', start);
      const bool last_field = f == 5;
      if (last_field != (comma == std::string::npos)) {
        throw std::invalid_argument("expected 6 comma-separated fields in CSV row: " + line);
      }
      fields[static_cast<std::size_t>(f)] =
          parse_u64_field(line.substr(start, comma == std::string::npos ? comma : comma - start),
                          line);
      start = comma + 1;
    }
    const std::array<std::uint64_t, 5> key = {fields[0], fields[1], fields[2], fields[3],
                                              fields[4]};
    if (j.counts.count(key)) {
      throw std::invalid_argument("duplicate profile row in CSV: " + line);
    }
    j.counts[key] = fields[5];
    j.total_samples += fields[5];
  }
  if (j.total_samples != samples) {
    throw std::invalid_argument("counts CSV total does not match metadata sample count");
  }
  return j;
}

void save_counts(const JointCounts& j, const std::string& csv_path) {
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open " + csv_path + " for writing");
  csv << counts_to_csv(j);
  if (!csv.flush()) throw std::runtime_error("failed writing " + csv_path);

  const std::string meta_path = csv_path + ".meta.json";
  std::ofstream meta(meta_path, std::ios::binary);
  if (!meta) throw std::runtime_error("cannot open " + meta_path + " for writing");
  meta << counts_meta_json(j) << '\n';
  if (!meta.flush()) throw std::runtime_error("failed writing " + meta_path);
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

JointCounts load_counts(const std::string& csv_path) {
  return counts_from_csv(read_file(csv_path), read_file(csv_path + ".meta.json"));
}

std::string trace_line(std::uint64_t seed, std::uint64_t sample_index,
                       const ModelParams& params, const ArcCounts& counts) {
  nlohmann::ordered_json line;
  line["seed"] = seed;
  line["sample_index"] = sample_index;
  line["n"] = params.n;
  line["p"] = to_string(params.p);
  line["counts"] = {{"L", counts.L}, {"F", counts.F}, {"B", counts.B}, {"C", counts.C},
                    {"T", counts.T}};
  return line.dump();
}

}  // namespace dfsarc
