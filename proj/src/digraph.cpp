#include "dfsarc/digraph.hpp"

#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dfsarc/errors.hpp"

namespace dfsarc {

namespace {
constexpr int kOutdegreeCap = 1 << 16;
}

void ModelParams::validate() const {
  if (n < 1) throw std::invalid_argument("vertex count must be at least 1");
  if (!(p > 0 && p < 1)) {
    throw std::invalid_argument("geometric parameter must satisfy 0 < p < 1, got " +
                                to_string(p));
  }
}

std::size_t Digraph::arc_count() const {
  std::size_t total = 0;
  for (const auto& list : heads) total += list.size();
  return total;
}

int sample_outdegree(const Rational& p, Rng& rng) {
  int k = 0;
  while (rng.bernoulli(p)) {
    if (++k >= kOutdegreeCap) {
      throw SamplerCapError("outdegree draw exceeded " + std::to_string(kOutdegreeCap) +
                            " trials");
    }
  }
  return k;
}

Digraph gen_digraph(const ModelParams& params, Rng& rng) {
  params.validate();
  Digraph g;
  g.n = params.n;
  g.heads.resize(static_cast<std::size_t>(params.n));
  const auto bound = static_cast<std::uint64_t>(params.n);
  for (auto& list : g.heads) {
    const int degree = sample_outdegree(params.p, rng);
    list.reserve(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) {
      list.push_back(static_cast<int>(rng.uniform_below(bound)));
    }
  }
  return g;
}

namespace {

int parse_vertex_label(const std::string& token, const std::string& line) {
  int value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value < 1) {
    throw std::invalid_argument("bad vertex label '" + token + "' in line: " + line);
  }
  return value;
}

}  // namespace

Digraph parse_digraph(const std::string& text) {
  // Collect 1-based (vertex, heads) rows first; the vertex count is only
  // known once every label and head has been seen.
  std::vector<std::pair<int, std::vector<int>>> rows;
  int max_label = 0;

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("missing ':' in digraph line: " + line);
    }
    std::istringstream label_part(line.substr(0, colon));
    std::string label_token;
    if (!(label_part >> label_token)) {
      throw std::invalid_argument("missing vertex label in line: " + line);
    }
    std::string trailing;
    if (label_part >> trailing) {
      throw std::invalid_argument("multiple tokens before ':' in line: " + line);
    }
    const int vertex = parse_vertex_label(label_token, line);
    max_label = std::max(max_label, vertex);

    std::vector<int> heads;
    std::istringstream head_part(line.substr(colon + 1));
    std::string head_token;
    while (head_part >> head_token) {
      const int head = parse_vertex_label(head_token, line);
      max_label = std::max(max_label, head);
      heads.push_back(head);
    }
    rows.emplace_back(vertex, std::move(heads));
  }
  if (rows.empty()) throw std::invalid_argument("digraph text has no vertex lines");

  Digraph g;
  g.n = max_label;
  g.heads.resize(static_cast<std::size_t>(max_label));
  std::vector<bool> seen(static_cast<std::size_t>(max_label), false);
  for (auto& [vertex, heads] : rows) {
    const auto idx = static_cast<std::size_t>(vertex - 1);
    if (seen[idx]) {
      throw std::invalid_argument("duplicate line for vertex " + std::to_string(vertex));
    }
    seen[idx] = true;
    g.heads[idx].reserve(heads.size());
    for (int head : heads) g.heads[idx].push_back(head - 1);
  }
  return g;
}

std::string format_digraph(const Digraph& g) {
  std::ostringstream out;
  for (int v = 0; v < g.n; ++v) {
    out << (v + 1) << ':';
    for (int head : g.heads[static_cast<std::size_t>(v)]) out << ' ' << (head + 1);
    out << '\n';
  }
  return out.str();
}

}  // namespace dfsarc
