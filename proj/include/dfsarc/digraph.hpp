#pragma once

#include <string>
#include <vector>

#include "dfsarc/rational.hpp"
#include "dfsarc/rng.hpp"

namespace dfsarc {

// Random multidigraph model: each vertex emits Geometric(p) arcs
// (P(k) = (1-p)p^k, so mode 0 and mean p/(1-p)), each head uniform on the
// vertex set. Self-arcs and duplicate arcs are part of the model.
struct ModelParams {
  int n = 1;
  Rational p;

  // Throws std::invalid_argument unless n >= 1 and 0 < p < 1.
  void validate() const;
};

// Vertices are 0-based internally; the text fixture format is 1-based.
// heads[v] keeps the arcs of v in generation order, which the DFS relies on.
struct Digraph {
  int n = 0;
  std::vector<std::vector<int>> heads;

  std::size_t arc_count() const;
  bool operator==(const Digraph&) const = default;
};

// Counts leading Bernoulli(p) successes, giving P(k) = (1-p)p^k exactly.
// Throws SamplerCapError beyond 2^16 trials (probability < p^65536).
int sample_outdegree(const Rational& p, Rng& rng);

// Samples outdegrees vertex by vertex in index order, then the heads of each
// vertex in arc order, so a digraph is a pure function of (params, rng state).
Digraph gen_digraph(const ModelParams& params, Rng& rng);

// Fixture format: one line per vertex, "v: h1 h2 h3" with 1-based labels.
// Vertices without a line are taken as arcless; n is the largest label or
// head mentioned. Throws std::invalid_argument on malformed input.
Digraph parse_digraph(const std::string& text);
std::string format_digraph(const Digraph& g);

}  // namespace dfsarc
