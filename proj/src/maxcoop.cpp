#include "coopsynt/maxcoop.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "json.hpp"

namespace coopsynt {

bool LevelIndexedAutomata::in_w(int level, const Unpacked& u) const {
  int q = canonical_state(level, u);
  return q >= 0 && nonempty[level][q];
}

int LevelIndexedAutomata::canonical_state(int level, const Unpacked& u) const {
  const auto& t = automata[level];
  return t.find(canonical_key(t, u));
}

std::vector<Unpacked> joint_universe(const BaseAutomata& base, const std::vector<BaseProp>& tracked) {
  std::vector<const Dra*> dras;
  for (BaseProp b : tracked) dras.push_back(&base.at(b));
  if (dras.empty()) return {};
  const int nl = dras[0]->alphabet.num_letters();
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> work;
  std::vector<int> init;
  for (const Dra* d : dras) init.push_back(d->initial);
  seen.insert(init);
  work.push_back(init);
  while (!work.empty()) {
    auto cur = work.front();
    work.pop_front();
    for (int l = 0; l < nl; ++l) {
      std::vector<int> next(cur.size());
      for (std::size_t k = 0; k < cur.size(); ++k) next[k] = dras[k]->succ(cur[k], l);
      if (seen.insert(next).second) work.push_back(next);
    }
  }
  std::vector<Unpacked> out;
  for (const auto& tuple : seen) {
    Unpacked u;
    for (std::size_t k = 0; k < tuple.size(); ++k) u.emplace_back(tracked[k], tuple[k]);
    std::sort(u.begin(), u.end());
    out.push_back(std::move(u));
  }
  return out;
}

namespace {

// E conjuncts implied by GE ones are fine; only levels that need an E
// factor of their own are dropped.
bool has_exists_conjunct(const LevelSpec& l) {
  for (const auto& c : l.generators())
    if (c.modality == Modality::E) return true;
  return false;
}

}  // namespace

LevelIndexedAutomata assemble(const Lattice& lat, const BaseAutomata& base, AcceptanceMode mode) {
  LevelIndexedAutomata ix;
  ix.lattice.ruleset = lat.ruleset;
  for (const auto& l : lat.levels)
    if (!has_exists_conjunct(l) && !l.is_true()) ix.lattice.levels.push_back(l);
  ix.base = base;
  ix.universe = joint_universe(base, tracked_bases(lat.ruleset));
  for (const auto& level : ix.lattice.levels) {
    LevelAutomatonOptions opts;
    opts.track_all = true;
    opts.mode = mode;
    opts.seeds = ix.universe;
    auto t = build_level_automaton(level, base, opts);
    auto solved = solve_tree(t);
    std::vector<bool> w(t.num_states());
    for (int q = 0; q < t.num_states(); ++q) w[q] = solved.cert.region[solved.start[q]];
    ix.stats.push_back(stats_of(solved));
    ix.automata.push_back(std::move(t));
    ix.nonempty.push_back(std::move(w));
  }
  return ix;
}

MaxCoopAutomaton build_max_coop(const LevelIndexedAutomata& ix) {
  const auto& lat = ix.lattice;
  const int nlev = lat.size();
  MaxCoopAutomaton out;
  for (int j = 0; j < nlev; ++j)
    if (ix.nonempty[j][ix.automata[j].initial]) {
      out.initial_level = j;
      break;
    }
  if (out.initial_level < 0) throw NoRealizableLevel("no cooperation level is realizable");

  // Strictly stronger levels, most preferred first.
  std::vector<std::vector<int>> above(nlev);
  for (int j = 0; j < nlev; ++j)
    for (int k = 0; k < nlev; ++k)
      if (k != j && lat.leq(j, k) && !lat.leq(k, j)) above[j].push_back(k);

  TreeAutomaton& t = out.automaton;
  t.alphabet = ix.automata[0].alphabet;
  std::deque<int> work;
  auto intern = [&](int level, int q) {
    int before = t.num_states();
    int idx = t.add_state({level, q}, ix.automata[level].info[q]);
    if (idx == before) {
      out.level_of.push_back(level);
      out.local.push_back(q);
      work.push_back(idx);
    }
    return idx;
  };
  auto route = [&](int level, int q) {
    const auto u = unpack(ix.automata[level], q);
    for (int k : above[level]) {
      int r = ix.canonical_state(k, u);
      if (r < 0) throw Error("max-coop: unpack set missing from level " + to_string(lat.levels[k]));
      if (ix.nonempty[k][r]) return intern(k, r);
    }
    return intern(level, q);
  };
  t.initial = intern(out.initial_level, ix.automata[out.initial_level].initial);
  const int no = t.alphabet.num_outputs();
  while (!work.empty()) {
    int x = work.front();
    work.pop_front();
    const int j = out.level_of[x];
    const auto& src = ix.automata[j];
    std::vector<std::vector<TransFn>> row(no);
    for (int o = 0; o < no; ++o)
      for (const auto& f : src.moves(out.local[x], o)) {
        TransFn g(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) g[i] = route(j, f[i]);
        row[o].push_back(std::move(g));
      }
    t.delta[x] = std::move(row);
  }
  const int n = t.num_states();
  for (int j = 0; j < nlev; ++j)
    for (const auto& p : ix.automata[j].pairs) {
      RabinPair cp{StateMask(n, false), StateMask(n, false)};
      bool used = false;
      for (int x = 0; x < n; ++x) {
        if (out.level_of[x] != j) continue;
        used = true;
        cp.fin_set[x] = p.fin_set[out.local[x]];
        cp.inf_set[x] = p.inf_set[out.local[x]];
      }
      if (used) t.pairs.push_back(std::move(cp));
    }
  return out;
}

SynthesisResult synthesize_max_coop(const Dra& a, const Dra& g, const SynthesisOptions& opts) {
  SynthesisResult r;
  auto base = make_bases(a, g, opts.ruleset, opts.overrides);
  auto lat = enumerate_levels(opts.ruleset, false);
  if (opts.preference) lat = with_preference(lat, *opts.preference);
  r.ix = assemble(lat, base, opts.mode);
  r.coop = build_max_coop(r.ix);
  auto solved = solve_tree(r.coop.automaton);
  r.final_stats = stats_of(solved);
  auto ex = extract_strategy(r.coop.automaton, solved);
  r.machine = std::move(ex.machine);
  r.machine.name = "maxcoop";
  for (int s = 0; s < r.machine.num_states(); ++s) {
    int level = r.coop.level_of[ex.tree_state[s]];
    r.machine_level.push_back(level);
    r.machine.level_of.push_back(to_string(r.ix.lattice.levels[level]));
  }
  const int ni = r.machine.alphabet.num_inputs();
  for (int s = 0; s < r.machine.num_states(); ++s)
    for (int i = 0; i < ni; ++i) {
      int n = r.machine.step(s, i);
      if (r.machine_level[n] != r.machine_level[s]) r.switches.push_back({s, n, i});
    }
  return r;
}

std::string synthesis_report(const SynthesisResult& r, bool with_stats) {
  using nlohmann::ordered_json;
  const auto& ix = r.ix;
  ordered_json j;
  j["ruleset"] = to_string(ix.lattice.ruleset);
  j["initial_level"] = to_string(ix.lattice.levels[r.coop.initial_level]);
  ordered_json levels = ordered_json::array();
  for (int k = 0; k < ix.lattice.size(); ++k) {
    ordered_json e;
    e["level"] = to_string(ix.lattice.levels[k]);
    e["gray"] = is_graylevel(ix.lattice.levels[k]);
    e["realizable"] = static_cast<bool>(ix.nonempty[k][ix.automata[k].initial]);
    e["states"] = ix.automata[k].num_states();
    e["w_size"] = std::count(ix.nonempty[k].begin(), ix.nonempty[k].end(), true);
    if (with_stats) {
      e["game_vertices"] = ix.stats[k].rabin_vertices;
      e["parity_vertices"] = ix.stats[k].parity_vertices;
      e["max_record"] = ix.stats[k].max_record;
      e["solve_ms"] = ix.stats[k].solve_ms;
    }
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  ordered_json machine;
  machine["states"] = r.machine.num_states();
  machine["combined_automaton_states"] = r.coop.automaton.num_states();
  j["machine"] = std::move(machine);
  ordered_json sw = ordered_json::array();
  for (const auto& e : r.switches) {
    ordered_json x;
    x["from"] = r.machine.state_names[e.from];
    x["to"] = r.machine.state_names[e.to];
    x["input"] = r.machine.alphabet.inputs[e.input];
    x["from_level"] = r.machine.level_of[e.from];
    x["to_level"] = r.machine.level_of[e.to];
    sw.push_back(std::move(x));
  }
  j["switches"] = std::move(sw);
  if (with_stats) {
    ordered_json s;
    s["game_vertices"] = r.final_stats.rabin_vertices;
    s["parity_vertices"] = r.final_stats.parity_vertices;
    s["max_record"] = r.final_stats.max_record;
    s["solve_ms"] = r.final_stats.solve_ms;
    j["final_game"] = std::move(s);
  }
  return j.dump(2) + "\n";
}

}  // namespace coopsynt
