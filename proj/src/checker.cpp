#include "coopsynt/checker.hpp"

#include <algorithm>
#include <deque>

#include "graph.hpp"

namespace coopsynt {

BobbleTree full_tree(const Mealy& m) {
  m.validate();
  BobbleTree t{m, std::vector<std::vector<bool>>(m.num_states(), std::vector<bool>(m.alphabet.num_inputs(), true))};
  return t;
}

BobbleTree bobble_tree(const Mealy& m, const std::vector<int>& split_inputs) {
  m.validate();
  const int ni = m.alphabet.num_inputs();
  for (int i : split_inputs)
    if (i < 0 || i >= ni) throw Error("bobble tree: invalid input letter " + std::to_string(i));
  if (split_inputs.empty()) return full_tree(m);
  const int k = static_cast<int>(split_inputs.size());
  BobbleTree t;
  Mealy& u = t.machine;
  u.name = m.name;
  u.alphabet = m.alphabet;
  std::vector<int> path{m.initial};
  for (int i : split_inputs) path.push_back(m.step(path.back(), i));
  for (int j = 0; j < k; ++j) {
    u.state_names.push_back("split" + std::to_string(j));
    u.output_of.push_back(m.output_of[path[j]]);
    if (m.annotated()) u.level_of.push_back(m.level_of[path[j]]);
    std::vector<bool> allow(ni, false);
    allow[split_inputs[j]] = true;
    t.allowed.push_back(std::move(allow));
    for (int i = 0; i < ni; ++i) {
      if (i == split_inputs[j]) {
        u.next.push_back(j + 1 < k ? j + 1 : k + path[k]);
      } else {
        u.next.push_back(k + m.step(path[j], i));
      }
    }
  }
  for (int s = 0; s < m.num_states(); ++s) {
    u.state_names.push_back(m.state_names[s]);
    u.output_of.push_back(m.output_of[s]);
    if (m.annotated()) u.level_of.push_back(m.level_of[s]);
    t.allowed.emplace_back(ni, true);
    for (int i = 0; i < ni; ++i) u.next.push_back(k + m.step(s, i));
  }
  u.initial = 0;
  return t;
}

namespace {

struct ProductGraph {
  std::vector<std::pair<int, int>> node;  // (machine state, automaton state)
  detail::Adjacency succ;
  std::vector<std::vector<int>> letter;  // parallel to succ
  int initial = 0;

  int size() const { return static_cast<int>(node.size()); }
};

ProductGraph build_product(const BobbleTree& t, const Dra& w) {
  const Mealy& m = t.machine;
  if (!(m.alphabet == w.alphabet)) throw Error("checker: alphabet mismatch between machine and '" + w.name + "'");
  ProductGraph g;
  std::map<std::pair<int, int>, int> index;
  std::deque<int> work;
  auto intern = [&](int s, int q) {
    auto [it, fresh] = index.emplace(std::make_pair(s, q), g.size());
    if (fresh) {
      g.node.emplace_back(s, q);
      g.succ.emplace_back();
      g.letter.emplace_back();
      work.push_back(it->second);
    }
    return it->second;
  };
  g.initial = intern(m.initial, w.initial);
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    auto [s, q] = g.node[v];
    for (int i = 0; i < m.alphabet.num_inputs(); ++i) {
      if (!t.allowed[s][i]) continue;
      int l = m.alphabet.letter(i, m.output_of[s]);
      int target = intern(m.step(s, i), w.succ(q, l));
      g.succ[v].push_back(target);
      g.letter[v].push_back(l);
    }
  }
  return g;
}

Word letters_along(const ProductGraph& g, const std::vector<int>& path) {
  Word out;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto& s = g.succ[path[k]];
    auto it = std::find(s.begin(), s.end(), path[k + 1]);
    out.push_back(g.letter[path[k]][it - s.begin()]);
  }
  return out;
}

// Closed walk from v through every node of `inside` (v included).
std::vector<int> tour(const ProductGraph& g, int v, const std::vector<bool>& inside) {
  std::vector<int> walk{v};
  std::vector<bool> seen(g.size(), false);
  seen[v] = true;
  auto extend = [&](const std::vector<bool>& target) {
    int cur = walk.back();
    std::vector<int> best;
    for (int w : g.succ[cur]) {
      if (!inside[w]) continue;
      auto p = target[w] ? std::vector<int>{w} : detail::shortest_path(g.succ, w, target, &inside);
      if (!p.empty() && (best.empty() || p.size() < best.size())) best = std::move(p);
    }
    walk.insert(walk.end(), best.begin(), best.end());
    for (int x : best) seen[x] = true;
  };
  for (int x = 0; x < g.size(); ++x) {
    if (!inside[x] || seen[x]) continue;
    std::vector<bool> target(g.size(), false);
    target[x] = true;
    extend(target);
  }
  std::vector<bool> home(g.size(), false);
  home[v] = true;
  extend(home);
  return walk;
}

Lasso lasso_through(const ProductGraph& g, int v, const std::vector<bool>& inside) {
  std::vector<bool> target(g.size(), false);
  target[v] = true;
  auto stem = detail::shortest_path(g.succ, g.initial, target);
  auto loop = tour(g, v, inside);
  return {letters_along(g, stem), letters_along(g, loop)};
}

// Nodes lying on a cycle inside (not F_k) that meets G_k, for some pair k.
// Also returns, per node, the pair and SCC mask used.
struct GoodCycles {
  std::vector<bool> good;
  int witness = -1;
  std::vector<bool> witness_scc;
};

GoodCycles good_cycles(const ProductGraph& g, const Dra& w) {
  GoodCycles out;
  out.good.assign(g.size(), false);
  for (const auto& p : w.pairs) {
    std::vector<bool> alive(g.size());
    for (int v = 0; v < g.size(); ++v) alive[v] = !p.fin_set[g.node[v].second];
    auto scc = detail::strongly_connected(g.succ, &alive);
    std::vector<bool> hits(scc.count, false);
    for (int v = 0; v < g.size(); ++v)
      if (alive[v] && scc.nontrivial[scc.comp[v]] && p.inf_set[g.node[v].second]) hits[scc.comp[v]] = true;
    for (int v = 0; v < g.size(); ++v) {
      if (!alive[v] || !hits[scc.comp[v]]) continue;
      out.good[v] = true;
      if (out.witness < 0 && p.inf_set[g.node[v].second]) {
        out.witness = v;
        out.witness_scc.assign(g.size(), false);
        for (int x = 0; x < g.size(); ++x) out.witness_scc[x] = alive[x] && scc.comp[x] == scc.comp[v];
      }
    }
  }
  return out;
}

// A strongly connected node set whose inf set violates every pair.
std::vector<bool> rejecting_scc(const ProductGraph& g, const Dra& w, const std::vector<bool>& within) {
  auto scc = detail::strongly_connected(g.succ, &within);
  for (int c = 0; c < scc.count; ++c) {
    if (!scc.nontrivial[c]) continue;
    std::vector<bool> comp(g.size(), false);
    for (int v = 0; v < g.size(); ++v) comp[v] = within[v] && scc.comp[v] == c;
    std::vector<bool> drop(g.size(), false);
    bool any_drop = false;
    for (const auto& p : w.pairs) {
      bool meets_f = false, meets_g = false;
      for (int v = 0; v < g.size(); ++v)
        if (comp[v]) {
          meets_f = meets_f || p.fin_set[g.node[v].second];
          meets_g = meets_g || p.inf_set[g.node[v].second];
        }
      if (meets_f || !meets_g) continue;
      for (int v = 0; v < g.size(); ++v)
        if (comp[v] && p.inf_set[g.node[v].second]) {
          drop[v] = true;
          any_drop = true;
        }
    }
    if (!any_drop) return comp;
    for (int v = 0; v < g.size(); ++v) comp[v] = comp[v] && !drop[v];
    auto inner = rejecting_scc(g, w, comp);
    if (!inner.empty()) return inner;
  }
  return {};
}

}  // namespace

CheckResult check_exists(const BobbleTree& t, const Dra& w) {
  auto g = build_product(t, w);
  auto good = good_cycles(g, w);
  CheckResult r;
  r.satisfied = good.witness >= 0;
  if (r.satisfied) r.witness = lasso_through(g, good.witness, good.witness_scc);
  return r;
}

CheckResult check_universal(const BobbleTree& t, const Dra& w) {
  auto g = build_product(t, w);
  auto bad = rejecting_scc(g, w, std::vector<bool>(g.size(), true));
  CheckResult r;
  r.satisfied = bad.empty();
  if (!r.satisfied) {
    int v = static_cast<int>(std::find(bad.begin(), bad.end(), true) - bad.begin());
    r.witness = lasso_through(g, v, bad);
  }
  return r;
}

CheckResult check_globally_exists(const BobbleTree& t, const Dra& w) {
  auto g = build_product(t, w);
  auto good = good_cycles(g, w);
  detail::Adjacency pred(g.size());
  for (int v = 0; v < g.size(); ++v)
    for (int x : g.succ[v]) pred[x].push_back(v);
  std::vector<int> seeds;
  for (int v = 0; v < g.size(); ++v)
    if (good.good[v]) seeds.push_back(v);
  auto hopeful = detail::reachable(pred, seeds);
  CheckResult r;
  auto lost = std::find(hopeful.begin(), hopeful.end(), false);
  r.satisfied = lost == hopeful.end();
  if (r.satisfied) {
    r.witness = lasso_through(g, good.witness, good.witness_scc);
  } else {
    // Any continuation from a hopeless node is rejected; follow first edges.
    int v = static_cast<int>(lost - hopeful.begin());
    std::vector<int> order(g.size(), -1);
    std::vector<int> walk;
    int cur = v;
    while (order[cur] < 0) {
      order[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      cur = g.succ[cur][0];
    }
    std::vector<bool> target(g.size(), false);
    target[v] = true;
    auto stem = detail::shortest_path(g.succ, g.initial, target);
    std::vector<int> to_loop(walk.begin(), walk.begin() + order[cur] + 1);
    std::vector<int> loop(walk.begin() + order[cur], walk.end());
    loop.push_back(cur);
    Lasso l{letters_along(g, stem), letters_along(g, loop)};
    auto mid = letters_along(g, to_loop);
    l.prefix.insert(l.prefix.end(), mid.begin(), mid.end());
    r.witness = std::move(l);
  }
  return r;
}

CheckResult check_universal(const Mealy& m, const Dra& w) { return check_universal(full_tree(m), w); }
CheckResult check_exists(const Mealy& m, const Dra& w) { return check_exists(full_tree(m), w); }
CheckResult check_globally_exists(const Mealy& m, const Dra& w) { return check_globally_exists(full_tree(m), w); }

LevelChecker::LevelChecker(BobbleTree tree, const BaseAutomata& base) : tree_(std::move(tree)), base_(base) {}

const CheckResult& LevelChecker::check(const Conjunct& c) {
  auto it = cache_.find(c.bit());
  if (it != cache_.end()) return it->second;
  auto b = base_.find(c.base);
  if (b == base_.end()) throw Error("checker: no automaton for " + to_string(c.base));
  CheckResult r = c.modality == Modality::Plain ? check_universal(tree_, b->second)
                  : c.modality == Modality::E   ? check_exists(tree_, b->second)
                                                : check_globally_exists(tree_, b->second);
  return cache_.emplace(c.bit(), std::move(r)).first->second;
}

bool LevelChecker::satisfies(const LevelSpec& level) {
  for (const auto& c : level.conjuncts())
    if (!check(c).satisfied) return false;
  return true;
}

std::vector<ConjunctVerdict> LevelChecker::explain(const LevelSpec& level) {
  std::vector<ConjunctVerdict> out;
  for (const auto& c : level.conjuncts()) out.push_back({c, check(c)});
  return out;
}

bool check_level(const Mealy& m, const LevelSpec& level, const BaseAutomata& base) {
  LevelChecker c(full_tree(m), base);
  return c.satisfies(level);
}

std::vector<int> maximal_satisfied(LevelChecker& checker, const Lattice& lat) {
  std::vector<bool> sat(lat.size());
  for (int i = 0; i < lat.size(); ++i) sat[i] = checker.satisfies(lat.levels[i]);
  std::vector<int> out;
  for (int i = 0; i < lat.size(); ++i) {
    if (!sat[i]) continue;
    bool dominated = false;
    for (int j = 0; j < lat.size() && !dominated; ++j)
      dominated = j != i && sat[j] && lat.leq(i, j) && !lat.leq(j, i);
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::vector<int> classify(const Mealy& m, const Lattice& lat, const BaseAutomata& base) {
  LevelChecker c(full_tree(m), base);
  return maximal_satisfied(c, lat);
}

std::vector<int> bobble_level(const Mealy& m, const std::vector<int>& split_inputs, const Lattice& lat,
                              const BaseAutomata& base) {
  LevelChecker c(bobble_tree(m, split_inputs), base);
  return maximal_satisfied(c, lat);
}

}  // namespace coopsynt
