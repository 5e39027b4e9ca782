#pragma once

#include <cstdint>
#include <vector>

#include "dfsarc/digraph.hpp"

namespace dfsarc {

enum class ArcClass : std::uint8_t { Tree, Loop, Forward, Back, Cross };

const char* arc_class_name(ArcClass c);

// Discovery/finish indices share one clock running 1..2n, so every vertex
// interval [disc, finish] is nested in or disjoint from every other.
// parent[v] is -1 exactly for the roots.
struct DfsForest {
  std::vector<int> parent;
  std::vector<int> disc;
  std::vector<int> finish;
  std::vector<int> roots;
};

struct ArcCounts {
  std::uint64_t L = 0, F = 0, B = 0, C = 0, T = 0;

  std::uint64_t total() const { return L + F + B + C + T; }
  bool operator==(const ArcCounts&) const = default;
};

// classes mirrors Digraph::heads shape: classes[v][i] is the class of the
// i-th arc out of v.
struct DfsResult {
  DfsForest forest;
  ArcCounts counts;
  std::vector<std::vector<ArcClass>> classes;
};

// Depth-first search with the fixed conventions: each new tree starts at the
// smallest unvisited vertex, arcs are examined in stored order, and a tree
// arc is entered immediately. An arc v->u is classified when examined:
// u == v -> Loop; u unvisited -> Tree; u active -> Back; u finished and
// disc(u) > disc(v) -> Forward; otherwise Cross. Iterative (explicit stack),
// so deep forests cannot overflow the call stack.
DfsResult dfs_classify(const Digraph& g);

// Independent reclassification from the forest alone: a tree arc is the
// first arc v->u in v's list with parent[u] == v; the rest follow from
// interval nesting (Forward: [disc(u),finish(u)] inside v's interval;
// Back: v's interval inside u's; Cross: disjoint intervals; Loop: u == v).
std::vector<std::vector<ArcClass>> classify_offline(const Digraph& g, const DfsForest& forest);

}  // namespace dfsarc
