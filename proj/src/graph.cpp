#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <utility>

namespace coopsynt::detail {

SccResult strongly_connected(const Adjacency& succ, const std::vector<bool>* alive) {
  const int n = static_cast<int>(succ.size());
  auto live = [&](int v) { return alive == nullptr || (*alive)[v]; };
  SccResult res;
  res.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (!live(root) || index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < succ[v].size()) {
        int w = succ[v][pos++];
        if (!live(w)) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] != index[done]) continue;
      int id = res.count++;
      int size = 0;
      bool self_loop = false;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        res.comp[w] = id;
        ++size;
      } while (w != done);
      for (int x : succ[done])
        if (x == done) self_loop = true;
      res.nontrivial.push_back(size > 1 || self_loop);
    }
  }
  return res;
}

std::vector<bool> reachable(const Adjacency& succ, const std::vector<int>& from,
                            const std::vector<bool>* alive) {
  std::vector<bool> seen(succ.size(), false);
  std::vector<int> work;
  for (int v : from) {
    if (alive != nullptr && !(*alive)[v]) continue;
    if (!seen[v]) {
      seen[v] = true;
      work.push_back(v);
    }
  }
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (int w : succ[v]) {
      if (seen[w] || (alive != nullptr && !(*alive)[w])) continue;
      seen[w] = true;
      work.push_back(w);
    }
  }
  return seen;
}

std::vector<int> shortest_path(const Adjacency& succ, int from, const std::vector<bool>& target,
                               const std::vector<bool>* alive) {
  std::vector<int> parent(succ.size(), -2);
  std::deque<int> queue{from};
  parent[from] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (target[v]) {
      std::vector<int> path;
      for (int x = v; x != -1; x = parent[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int w : succ[v]) {
      if (parent[w] != -2 || (alive != nullptr && !(*alive)[w])) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  return {};
}

}  // namespace coopsynt::detail
