#include "coopsynt/games.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <sstream>

#include "graph.hpp"

namespace coopsynt {

void RabinGame::validate() const {
  const int n = num_vertices();
  if (static_cast<int>(succ.size()) != n) throw Error("game: successor table size mismatch");
  for (int v = 0; v < n; ++v) {
    if (owner[v] != 0 && owner[v] != 1) throw Error("game: bad owner");
    if (succ[v].empty()) throw Error("game: vertex " + std::to_string(v) + " has no successor");
    for (int w : succ[v])
      if (w < 0 || w >= n) throw Error("game: edge out of range");
  }
  for (const auto& p : pairs)
    if (static_cast<int>(p.fin_set.size()) != n || static_cast<int>(p.inf_set.size()) != n)
      throw Error("game: pair size mismatch");
}

void ParityGame::validate() const {
  const int n = num_vertices();
  if (static_cast<int>(succ.size()) != n || static_cast<int>(priority.size()) != n)
    throw Error("parity game: table size mismatch");
  for (int v = 0; v < n; ++v) {
    if (owner[v] != 0 && owner[v] != 1) throw Error("parity game: bad owner");
    if (priority[v] < 0) throw Error("parity game: negative priority");
    if (succ[v].empty()) throw Error("parity game: vertex " + std::to_string(v) + " has no successor");
    for (int w : succ[v])
      if (w < 0 || w >= n) throw Error("parity game: edge out of range");
  }
}

MembershipGame membership_game(const TreeAutomaton& t) {
  MembershipGame mg;
  auto& g = mg.game;
  const int nq = t.num_states();
  const int ni = t.alphabet.num_inputs(), no = t.alphabet.num_outputs();
  auto add = [&](int owner, int q, int o, int m) {
    g.owner.push_back(owner);
    g.succ.emplace_back();
    mg.tree_state.push_back(q);
    mg.output.push_back(o);
    mg.move.push_back(m);
    return g.num_vertices() - 1;
  };
  for (int q = 0; q < nq; ++q) mg.vertex_of.push_back(add(0, q, -1, -1));
  for (int q = 0; q < nq; ++q) {
    std::map<TransFn, int> seen;
    for (int o = 0; o < no; ++o) {
      const auto& ms = t.delta[q].empty() ? std::vector<TransFn>{} : t.moves(q, o);
      for (int m = 0; m < static_cast<int>(ms.size()); ++m) {
        if (seen.count(ms[m])) continue;
        int p = add(1, -1, o, m);
        seen.emplace(ms[m], p);
        for (int i = 0; i < ni; ++i) g.succ[p].push_back(mg.vertex_of[ms[m][i]]);
        g.succ[mg.vertex_of[q]].push_back(p);
      }
    }
  }
  for (int q = 0; q < nq; ++q) {
    int v = mg.vertex_of[q];
    if (!g.succ[v].empty()) continue;
    if (mg.lose_sink < 0) {
      mg.lose_sink = add(1, -1, -1, -1);
      g.succ[mg.lose_sink].push_back(mg.lose_sink);
    }
    g.succ[v].push_back(mg.lose_sink);
  }
  const int n = g.num_vertices();
  for (const auto& p : t.pairs) {
    RabinPair gp{StateMask(n, false), StateMask(n, false)};
    for (int q = 0; q < nq; ++q) {
      gp.fin_set[mg.vertex_of[q]] = p.fin_set[q];
      gp.inf_set[mg.vertex_of[q]] = p.inf_set[q];
    }
    g.pairs.push_back(std::move(gp));
  }
  return mg;
}

ParityGame iar_to_parity(const RabinGame& g, const std::vector<int>& starts) {
  g.validate();
  const int n = g.num_vertices();
  auto scc = detail::strongly_connected(g.succ);
  std::vector<std::vector<int>> fresh(scc.count);
  {
    std::vector<std::vector<bool>> meets(scc.count, std::vector<bool>(g.pairs.size(), false));
    for (int v = 0; v < n; ++v)
      for (std::size_t k = 0; k < g.pairs.size(); ++k)
        if (g.pairs[k].inf_set[v]) meets[scc.comp[v]][k] = true;
    for (int c = 0; c < scc.count; ++c) {
      if (!scc.nontrivial[c]) continue;
      for (std::size_t k = 0; k < g.pairs.size(); ++k)
        if (meets[c][k]) fresh[c].push_back(static_cast<int>(k));
    }
  }

  ParityGame p;
  std::map<std::pair<int, std::vector<int>>, int> index;
  std::deque<int> work;
  auto intern = [&](int v, const std::vector<int>& r) {
    auto key = std::make_pair(v, r);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int x = p.num_vertices();
    index.emplace(std::move(key), x);
    p.owner.push_back(g.owner[v]);
    p.succ.emplace_back();
    p.origin.push_back(v);
    p.record.push_back(r);
    int prio = 1;
    for (std::size_t pos = 0; pos < r.size(); ++pos) {
      const auto& pr = g.pairs[r[pos]];
      int here = pr.fin_set[v] ? 2 * static_cast<int>(pos) + 3 : pr.inf_set[v] ? 2 * static_cast<int>(pos) + 2 : 0;
      prio = std::max(prio, here);
    }
    p.priority.push_back(prio);
    work.push_back(x);
    return x;
  };
  if (starts.empty()) {
    for (int v = 0; v < n; ++v) intern(v, fresh[scc.comp[v]]);
  } else {
    for (int v : starts) intern(v, fresh[scc.comp[v]]);
  }
  while (!work.empty()) {
    int x = work.front();
    work.pop_front();
    const int v = p.origin[x];
    std::vector<int> moved;
    std::vector<int> rest;
    for (int k : p.record[x]) (g.pairs[k].fin_set[v] ? moved : rest).push_back(k);
    moved.insert(moved.end(), rest.begin(), rest.end());
    std::vector<int> targets;
    for (int w : g.succ[v])
      targets.push_back(scc.comp[w] == scc.comp[v] ? intern(w, moved) : intern(w, fresh[scc.comp[w]]));
    p.succ[x] = std::move(targets);
  }
  return p;
}

namespace {

class Zielonka {
 public:
  explicit Zielonka(const ParityGame& p) : p_(p), n_(p.num_vertices()), pred_(n_), strategy_(n_, -1) {
    for (int v = 0; v < n_; ++v)
      for (int w : p.succ[v]) pred_[w].push_back(v);
  }

  WinningCertificate run() {
    std::vector<bool> all(n_, true);
    auto w0 = solve(all);
    WinningCertificate c;
    c.region = w0;
    c.strategy.assign(n_, -1);
    for (int v = 0; v < n_; ++v)
      if ((p_.owner[v] == 0) == w0[v]) c.strategy[v] = strategy_[v];
    return c;
  }

 private:
  // Attractor of `player` to `target` within `alive`; records attractor moves.
  std::vector<bool> attractor(const std::vector<bool>& alive, const std::vector<bool>& target, int player) {
    std::vector<bool> in(n_, false);
    std::vector<int> count(n_, 0);
    std::deque<int> q;
    for (int v = 0; v < n_; ++v) {
      if (!alive[v]) continue;
      if (target[v]) {
        in[v] = true;
        q.push_back(v);
      } else {
        for (int w : p_.succ[v])
          if (alive[w]) ++count[v];
      }
    }
    while (!q.empty()) {
      int w = q.front();
      q.pop_front();
      for (int v : pred_[w]) {
        if (!alive[v] || in[v]) continue;
        if (p_.owner[v] == player) {
          in[v] = true;
          strategy_[v] = w;
          q.push_back(v);
        } else if (--count[v] == 0) {
          in[v] = true;
          q.push_back(v);
        }
      }
    }
    return in;
  }

  // Returns the player-0 region of the subgame `alive`.
  std::vector<bool> solve(const std::vector<bool>& alive) {
    int d = -1;
    for (int v = 0; v < n_; ++v)
      if (alive[v]) d = std::max(d, p_.priority[v]);
    if (d < 0) return std::vector<bool>(n_, false);
    const int i = d % 2;
    std::vector<bool> top(n_, false);
    for (int v = 0; v < n_; ++v) top[v] = alive[v] && p_.priority[v] == d;
    auto a = attractor(alive, top, i);
    std::vector<bool> sub(n_);
    for (int v = 0; v < n_; ++v) sub[v] = alive[v] && !a[v];
    auto w0 = solve(sub);
    bool opponent_wins_somewhere = false;
    for (int v = 0; v < n_ && !opponent_wins_somewhere; ++v)
      opponent_wins_somewhere = sub[v] && (w0[v] != (i == 0));
    if (!opponent_wins_somewhere) {
      for (int v = 0; v < n_; ++v) {
        if (!top[v] || p_.owner[v] != i) continue;
        for (int w : p_.succ[v])
          if (alive[w]) {
            strategy_[v] = w;
            break;
          }
      }
      std::vector<bool> res(n_, false);
      for (int v = 0; v < n_; ++v) res[v] = alive[v] && i == 0;
      return res;
    }
    std::vector<bool> lost(n_, false);
    for (int v = 0; v < n_; ++v) lost[v] = sub[v] && (w0[v] != (i == 0));
    auto b = attractor(alive, lost, 1 - i);
    std::vector<bool> rest(n_);
    for (int v = 0; v < n_; ++v) rest[v] = alive[v] && !b[v];
    auto w0b = solve(rest);
    std::vector<bool> res(n_, false);
    for (int v = 0; v < n_; ++v) {
      if (!alive[v]) continue;
      res[v] = b[v] ? (i == 1) : w0b[v];
    }
    return res;
  }

  const ParityGame& p_;
  int n_;
  std::vector<std::vector<int>> pred_;
  std::vector<int> strategy_;
};

}  // namespace

WinningCertificate solve_parity(const ParityGame& p) {
  p.validate();
  return Zielonka(p).run();
}

SolvedTree solve_tree(const TreeAutomaton& t) {
  SolvedTree s;
  s.game = membership_game(t);
  std::vector<int> starts(s.game.vertex_of.begin(), s.game.vertex_of.end());
  s.parity = iar_to_parity(s.game.game, starts);
  // Starts are interned first, in order.
  for (int q = 0; q < t.num_states(); ++q) s.start.push_back(q);
  auto t0 = std::chrono::steady_clock::now();
  s.cert = solve_parity(s.parity);
  s.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

std::vector<bool> nonempty_states(const TreeAutomaton& t) {
  auto s = solve_tree(t);
  std::vector<bool> w(t.num_states());
  for (int q = 0; q < t.num_states(); ++q) w[q] = s.cert.region[s.start[q]];
  return w;
}

ExtractedStrategy extract_strategy(const TreeAutomaton& t, const SolvedTree& solved) {
  const int root = solved.start[t.initial];
  if (!solved.cert.region[root]) throw Unrealizable("specification is unrealizable from the initial state");
  const auto& p = solved.parity;
  const auto& mg = solved.game;
  const int ni = t.alphabet.num_inputs();
  std::map<int, int> id;
  std::vector<int> order;
  auto visit = [&](int x) {
    auto [it, fresh] = id.emplace(x, static_cast<int>(order.size()));
    if (fresh) order.push_back(x);
    return it->second;
  };
  visit(root);
  ExtractedStrategy out;
  Mealy& m = out.machine;
  m.name = "strategy";
  m.alphabet = t.alphabet;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int x = order[k];
    const int y = solved.cert.strategy[x];
    if (y < 0) throw Error("strategy: missing choice at a winning vertex");
    const int gy = p.origin[y];
    m.state_names.push_back("m" + std::to_string(k));
    m.output_of.push_back(mg.output[gy]);
    out.tree_state.push_back(mg.tree_state[p.origin[x]]);
    for (int i = 0; i < ni; ++i) m.next.push_back(visit(p.succ[y][i]));
  }
  m.initial = 0;
  m.validate();
  return out;
}

ExtractedStrategy extract_strategy(const TreeAutomaton& t) { return extract_strategy(t, solve_tree(t)); }

GameStats stats_of(const SolvedTree& s) {
  GameStats st;
  st.rabin_vertices = s.game.game.num_vertices();
  st.parity_vertices = s.parity.num_vertices();
  for (const auto& r : s.parity.record) st.max_record = std::max(st.max_record, static_cast<int>(r.size()));
  st.solve_ms = s.solve_ms;
  return st;
}

std::string game_dot(const ParityGame& p, const WinningCertificate* cert) {
  std::ostringstream out;
  out << "digraph parity_game {\n";
  for (int v = 0; v < p.num_vertices(); ++v) {
    out << "  v" << v << " [shape=" << (p.owner[v] == 0 ? "box" : "diamond") << ", label=\"" << v << ":"
        << p.priority[v] << "\"";
    if (cert != nullptr) out << ", style=filled, fillcolor=" << (cert->region[v] ? "palegreen" : "lightpink");
    out << "];\n";
  }
  for (int v = 0; v < p.num_vertices(); ++v)
    for (int w : p.succ[v]) {
      out << "  v" << v << " -> v" << w;
      if (cert != nullptr && cert->strategy[v] == w) out << " [penwidth=2]";
      out << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace coopsynt
