#include "dfsarc/dfs.hpp"

#include <stdexcept>

namespace dfsarc {

const char* arc_class_name(ArcClass c) {
  switch (c) {
    case ArcClass::Tree: return "tree";
    case ArcClass::Loop: return "loop";
    case ArcClass::Forward: return "forward";
    case ArcClass::Back: return "back";
    case ArcClass::Cross: return "cross";
  }
  throw std::logic_error("unknown arc class");
}

DfsResult dfs_classify(const Digraph& g) {
  const auto n = static_cast<std::size_t>(g.n);
  DfsResult result;
  result.forest.parent.assign(n, -1);
  result.forest.disc.assign(n, 0);
  result.forest.finish.assign(n, 0);
  result.classes.resize(n);
  for (std::size_t v = 0; v < n; ++v) result.classes[v].resize(g.heads[v].size());

  auto& forest = result.forest;
  auto& counts = result.counts;
  int clock = 0;

  struct Frame {
    int vertex;
    std::size_t next_arc;
  };
  std::vector<Frame> stack;

  for (int root = 0; root < g.n; ++root) {
    if (forest.disc[static_cast<std::size_t>(root)] != 0) continue;
    forest.roots.push_back(root);
    forest.disc[static_cast<std::size_t>(root)] = ++clock;
    stack.push_back({root, 0});

    while (!stack.empty()) {
      Frame& frame = stack.back();
      const int v = frame.vertex;
      const auto vi = static_cast<std::size_t>(v);
      if (frame.next_arc == g.heads[vi].size()) {
        forest.finish[vi] = ++clock;
        stack.pop_back();
        continue;
      }
      const std::size_t arc = frame.next_arc++;
      const int u = g.heads[vi][arc];
      const auto ui = static_cast<std::size_t>(u);

      ArcClass cls;
      if (u == v) {
        cls = ArcClass::Loop;
        ++counts.L;
      } else if (forest.disc[ui] == 0) {
        cls = ArcClass::Tree;
        ++counts.T;
        forest.parent[ui] = v;
        forest.disc[ui] = ++clock;
        // frame may dangle after this push; the loop re-fetches the top.
        stack.push_back({u, 0});
      } else if (forest.finish[ui] == 0) {
        cls = ArcClass::Back;
        ++counts.B;
      } else if (forest.disc[ui] > forest.disc[vi]) {
        cls = ArcClass::Forward;
        ++counts.F;
      } else {
        cls = ArcClass::Cross;
        ++counts.C;
      }
      result.classes[vi][arc] = cls;
    }
  }
  return result;
}

std::vector<std::vector<ArcClass>> classify_offline(const Digraph& g, const DfsForest& forest) {
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<std::vector<ArcClass>> classes(n);
  // first_arc_to[u] inside one vertex's list marks the only candidate tree
  // arc to u; reset between vertices via the stamp to stay O(arcs).
  std::vector<std::size_t> first_arc_to(n, 0);
  std::vector<int> stamp(n, -1);

  for (std::size_t v = 0; v < n; ++v) {
    const auto& heads = g.heads[v];
    classes[v].resize(heads.size());
    for (std::size_t i = 0; i < heads.size(); ++i) {
      const auto u = static_cast<std::size_t>(heads[i]);
      if (stamp[u] != static_cast<int>(v)) {
        stamp[u] = static_cast<int>(v);
        first_arc_to[u] = i;
      }
    }
    for (std::size_t i = 0; i < heads.size(); ++i) {
      const int u = heads[i];
      const auto ui = static_cast<std::size_t>(u);
      if (u == static_cast<int>(v)) {
        classes[v][i] = ArcClass::Loop;
      } else if (forest.parent[ui] == static_cast<int>(v) && first_arc_to[ui] == i) {
        classes[v][i] = ArcClass::Tree;
      } else if (forest.disc[v] < forest.disc[ui] && forest.finish[ui] < forest.finish[v]) {
        classes[v][i] = ArcClass::Forward;
      } else if (forest.disc[ui] < forest.disc[v] && forest.finish[v] < forest.finish[ui]) {
        classes[v][i] = ArcClass::Back;
      } else {
        classes[v][i] = ArcClass::Cross;
      }
    }
  }
  return classes;
}

}  // namespace dfsarc
