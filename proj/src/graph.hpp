#pragma once

#include <vector>

namespace coopsynt::detail {

using Adjacency = std::vector<std::vector<int>>;

struct SccResult {
  std::vector<int> comp;          // -1 for nodes outside the mask
  std::vector<bool> nontrivial;   // per component: has a cycle
  int count = 0;
};

// Tarjan, iterative. Nodes with alive[v] == false are ignored.
SccResult strongly_connected(const Adjacency& succ, const std::vector<bool>* alive = nullptr);

std::vector<bool> reachable(const Adjacency& succ, const std::vector<int>& from,
                            const std::vector<bool>* alive = nullptr);

// Shortest path from `from` to any node with target[v], staying inside alive.
// Returns node sequence including both ends, empty if unreachable.
std::vector<int> shortest_path(const Adjacency& succ, int from, const std::vector<bool>& target,
                               const std::vector<bool>* alive = nullptr);

}  // namespace coopsynt::detail
