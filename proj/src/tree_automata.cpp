#include "coopsynt/tree_automata.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace coopsynt {

int TreeAutomaton::find(const std::vector<int>& k) const {
  auto it = key_index.find(k);
  return it == key_index.end() ? -1 : it->second;
}

int TreeAutomaton::num_accepting_factors() const {
  return static_cast<int>(std::count_if(factors.begin(), factors.end(), [](const TreeFactor& f) { return f.accepting; }));
}

int TreeAutomaton::add_state(std::vector<int> k, TreeStateInfo i) {
  int idx = num_states();
  auto [it, fresh] = key_index.emplace(k, idx);
  if (!fresh) return it->second;
  key.push_back(std::move(k));
  info.push_back(std::move(i));
  delta.emplace_back();
  return idx;
}

Unpacked unpack(const TreeAutomaton& t, int state) {
  Unpacked out;
  const auto& inf = t.info[state];
  for (std::size_t k = 0; k < t.factors.size(); ++k) out.emplace_back(t.factors[k].origin, inf.word[k]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

TreeAutomaton lift_skeleton(const Dra& w, BaseProp origin, Modality mod, int copies) {
  TreeAutomaton t;
  t.alphabet = w.alphabet;
  t.factors.push_back({origin, mod, true});
  for (int c = 0; c < copies; ++c)
    for (int q = 0; q < w.num_states(); ++q)
      t.add_state({c * w.num_states() + q}, {{q}, {static_cast<std::uint8_t>(c == 0)}, {}});
  t.initial = w.initial;
  return t;
}

}  // namespace

TreeAutomaton lift_universal(const Dra& w, BaseProp origin) {
  TreeAutomaton t = lift_skeleton(w, origin, Modality::Plain, 1);
  const int ni = w.alphabet.num_inputs(), no = w.alphabet.num_outputs();
  for (int q = 0; q < w.num_states(); ++q) {
    t.delta[q].resize(no);
    for (int o = 0; o < no; ++o) {
      TransFn f(ni);
      for (int i = 0; i < ni; ++i) f[i] = w.succ(q, i, o);
      t.delta[q][o].push_back(std::move(f));
    }
  }
  t.pairs = w.pairs;
  return t;
}

TreeAutomaton lift_tracking(const Dra& w, BaseProp origin) {
  TreeAutomaton t = lift_universal(w, origin);
  t.factors[0].accepting = false;
  t.pairs = {{StateMask(t.num_states(), false), StateMask(t.num_states(), true)}};
  return t;
}

TreeAutomaton lift_exists(const Dra& w, BaseProp origin) {
  if (w.top < 0) throw Error("lift_exists: automaton '" + w.name + "' has no top state");
  TreeAutomaton t = lift_skeleton(w, origin, Modality::E, 1);
  const int ni = w.alphabet.num_inputs(), no = w.alphabet.num_outputs();
  for (int q = 0; q < w.num_states(); ++q) {
    t.delta[q].resize(no);
    for (int o = 0; o < no; ++o)
      for (int chosen = 0; chosen < ni; ++chosen) {
        TransFn f(ni, w.top);
        f[chosen] = w.succ(q, chosen, o);
        t.delta[q][o].push_back(std::move(f));
      }
  }
  t.pairs = w.pairs;
  return t;
}

TreeAutomaton lift_globally_exists(const Dra& w, BaseProp origin) {
  const int n = w.num_states();
  TreeAutomaton t = lift_skeleton(w, origin, Modality::GE, 2);
  const int ni = w.alphabet.num_inputs(), no = w.alphabet.num_outputs();
  for (int c = 0; c < 2; ++c)
    for (int q = 0; q < n; ++q) {
      auto& row = t.delta[c * n + q];
      row.resize(no);
      for (int o = 0; o < no; ++o)
        for (int chosen = 0; chosen < ni; ++chosen) {
          TransFn f(ni);
          for (int i = 0; i < ni; ++i) f[i] = w.succ(q, i, o) + (i == chosen ? 0 : n);
          row[o].push_back(std::move(f));
        }
    }
  for (const auto& p : w.pairs) {
    RabinPair lp{StateMask(2 * n, false), StateMask(2 * n, false)};
    for (int q = 0; q < n; ++q) {
      lp.fin_set[q] = p.fin_set[q];
      lp.inf_set[q] = p.inf_set[q];
    }
    t.pairs.push_back(std::move(lp));
  }
  RabinPair off{StateMask(2 * n, false), StateMask(2 * n, false)};
  for (int q = 0; q < n; ++q) off.inf_set[n + q] = true;
  t.pairs.push_back(std::move(off));
  return t;
}

void merge_equal_fin_pairs(TreeAutomaton& t) {
  std::vector<RabinPair> merged;
  for (const auto& p : t.pairs) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const RabinPair& m) { return m.fin_set == p.fin_set; });
    if (it == merged.end()) {
      merged.push_back(p);
      continue;
    }
    for (std::size_t s = 0; s < p.inf_set.size(); ++s)
      if (p.inf_set[s]) it->inf_set[s] = true;
  }
  t.pairs = std::move(merged);
}

namespace {

bool is_acceptance_factor(const TreeAutomaton& f) {
  return std::any_of(f.factors.begin(), f.factors.end(), [](const TreeFactor& x) { return x.accepting; });
}

// Shared machinery of both product variants.
class ProductBuilder {
 public:
  ProductBuilder(const std::vector<TreeAutomaton>& factors, AcceptanceMode mode)
      : fs_(factors), mode_(mode) {
    if (fs_.empty()) throw Error("product: empty factor list");
    for (const auto& f : fs_) {
      if (!(f.alphabet == fs_[0].alphabet)) throw Error("product: alphabet mismatch");
    }
    for (int k = 0; k < static_cast<int>(fs_.size()); ++k)
      if (is_acceptance_factor(fs_[k])) acc_.push_back(k);
    // Tuples of pair indices over the acceptance factors.
    tuples_.push_back({});
    for (int k : acc_) {
      std::vector<std::vector<int>> next;
      for (const auto& t : tuples_)
        for (int p = 0; p < static_cast<int>(fs_[k].pairs.size()); ++p) {
          auto u = t;
          u.push_back(p);
          next.push_back(std::move(u));
        }
      tuples_ = std::move(next);
    }
    counters_ = (mode_ == AcceptanceMode::Latched && acc_.size() > 1) ? static_cast<int>(tuples_.size()) : 0;
    out_.alphabet = fs_[0].alphabet;
    for (const auto& f : fs_) out_.factors.insert(out_.factors.end(), f.factors.begin(), f.factors.end());
  }

  int intern(const std::vector<int>& k) {
    int before = out_.num_states();
    TreeStateInfo inf;
    for (std::size_t j = 0; j < fs_.size(); ++j) {
      const auto& fi = fs_[j].info[k[j]];
      inf.word.insert(inf.word.end(), fi.word.begin(), fi.word.end());
      inf.flag.insert(inf.flag.end(), fi.flag.begin(), fi.flag.end());
      inf.latch.insert(inf.latch.end(), fi.latch.begin(), fi.latch.end());
    }
    for (int c = 0; c < counters_; ++c) inf.latch.push_back(static_cast<std::uint8_t>(k[fs_.size() + c]));
    int idx = out_.add_state(k, std::move(inf));
    if (idx == before) pending_.push_back(idx);
    return idx;
  }

  std::vector<int> seed_key(const std::vector<int>& comps) const {
    std::vector<int> k = comps;
    k.resize(fs_.size() + counters_, 0);
    return k;
  }

  std::vector<int> initial_key() const {
    std::vector<int> comps;
    for (const auto& f : fs_) comps.push_back(f.initial);
    return seed_key(comps);
  }

  // Every component tuple and counter vector.
  void intern_all() {
    std::vector<int> k(fs_.size() + counters_, 0);
    const int m = static_cast<int>(acc_.size());
    while (true) {
      intern(k);
      std::size_t pos = k.size();
      while (true) {
        if (pos == 0) return;
        --pos;
        int limit = pos < fs_.size() ? fs_[pos].num_states() : m;
        if (++k[pos] < limit) break;
        k[pos] = 0;
      }
    }
  }

  void expand_pending() {
    while (!pending_.empty()) {
      int q = pending_.front();
      pending_.pop_front();
      expand(q);
    }
  }

  TreeAutomaton finish(int initial) {
    out_.initial = initial;
    build_pairs();
    return std::move(out_);
  }

 private:
  void expand(int q) {
    const std::vector<int> k = out_.key[q];
    const int ni = out_.alphabet.num_inputs(), no = out_.alphabet.num_outputs();
    const std::size_t n = fs_.size();
    std::vector<int> next_counters(counters_);
    for (int c = 0; c < counters_; ++c) next_counters[c] = advance(c, k);
    std::vector<std::vector<TransFn>> row(no);
    for (int o = 0; o < no; ++o) {
      std::vector<const std::vector<TransFn>*> lists(n);
      bool empty = false;
      for (std::size_t j = 0; j < n; ++j) {
        lists[j] = &fs_[j].moves(k[j], o);
        empty = empty || lists[j]->empty();
      }
      if (empty) continue;
      std::vector<std::size_t> choice(n, 0);
      while (true) {
        TransFn f(ni);
        for (int i = 0; i < ni; ++i) {
          std::vector<int> succ(n + counters_);
          for (std::size_t j = 0; j < n; ++j) succ[j] = (*lists[j])[choice[j]][i];
          for (int c = 0; c < counters_; ++c) succ[n + c] = next_counters[c];
          f[i] = intern(succ);
        }
        row[o].push_back(std::move(f));
        std::size_t pos = n;
        while (pos > 0) {
          --pos;
          if (++choice[pos] < lists[pos]->size()) break;
          choice[pos] = 0;
          if (pos == 0) goto done;
        }
      }
    done:;
    }
    out_.delta[q] = std::move(row);
  }

  int advance(int counter, const std::vector<int>& k) const {
    const auto& tuple = tuples_[counter];
    int c = k[fs_.size() + counter];
    int fac = acc_[c];
    bool hit = fs_[fac].pairs[tuple[c]].inf_set[k[fac]];
    return hit ? (c + 1) % static_cast<int>(acc_.size()) : c;
  }

  void build_pairs() {
    const int n = out_.num_states();
    if (acc_.empty()) {
      out_.pairs = {{StateMask(n, false), StateMask(n, true)}};
      return;
    }
    for (std::size_t t = 0; t < tuples_.size(); ++t) {
      const auto& tuple = tuples_[t];
      RabinPair p{StateMask(n, false), StateMask(n, false)};
      for (int q = 0; q < n; ++q) {
        const auto& k = out_.key[q];
        if (mode_ == AcceptanceMode::Literal) {
          bool all_f = true, all_g = true;
          for (std::size_t j = 0; j < acc_.size(); ++j) {
            const auto& fp = fs_[acc_[j]].pairs[tuple[j]];
            all_f = all_f && fp.fin_set[k[acc_[j]]];
            all_g = all_g && fp.inf_set[k[acc_[j]]];
          }
          // Non-acceptance factors contribute their full state space.
          p.fin_set[q] = all_f;
          p.inf_set[q] = all_g;
        } else {
          bool any_f = false;
          for (std::size_t j = 0; j < acc_.size(); ++j)
            any_f = any_f || fs_[acc_[j]].pairs[tuple[j]].fin_set[k[acc_[j]]];
          int c = counters_ > 0 ? k[fs_.size() + t] : 0;
          p.fin_set[q] = any_f;
          p.inf_set[q] = c == 0 && fs_[acc_[0]].pairs[tuple[0]].inf_set[k[acc_[0]]];
        }
      }
      out_.pairs.push_back(std::move(p));
    }
  }

  const std::vector<TreeAutomaton>& fs_;
  AcceptanceMode mode_;
  std::vector<int> acc_;
  std::vector<std::vector<int>> tuples_;
  int counters_ = 0;
  TreeAutomaton out_;
  std::deque<int> pending_;
};

}  // namespace

TreeAutomaton product(const std::vector<TreeAutomaton>& factors, AcceptanceMode mode) {
  ProductBuilder b(factors, mode);
  b.intern_all();
  int init = b.intern(b.initial_key());
  b.expand_pending();
  return b.finish(init);
}

TreeAutomaton product_reachable(const std::vector<TreeAutomaton>& factors, AcceptanceMode mode,
                                const std::vector<std::vector<int>>& seeds) {
  ProductBuilder b(factors, mode);
  int init = b.intern(b.initial_key());
  for (const auto& s : seeds) {
    if (s.size() != factors.size()) throw Error("product: seed has wrong arity");
    b.intern(b.seed_key(s));
  }
  b.expand_pending();
  return b.finish(init);
}

std::vector<BaseProp> tracked_bases(RuleSet rs) {
  std::set<BaseProp> s;
  for (const auto& c : conjunct_alphabet(rs)) s.insert(c.base);
  return {s.begin(), s.end()};
}

BaseAutomata make_bases(const Dra& a, const Dra& g, RuleSet rs, const BaseAutomata& overrides) {
  BaseAutomata out = overrides;
  out.emplace(BaseProp::A, a);
  out.emplace(BaseProp::G, g);
  for (BaseProp b : tracked_bases(rs)) {
    if (out.count(b)) continue;
    switch (b) {
      case BaseProp::Implies: out.emplace(b, derive_combination(a, g, Combination::Implies)); break;
      case BaseProp::And: out.emplace(b, derive_combination(a, g, Combination::And)); break;
      case BaseProp::Or: out.emplace(b, derive_combination(a, g, Combination::Or)); break;
      default: break;
    }
  }
  for (const auto& [prop, aut] : out)
    if (!(aut.alphabet == a.alphabet)) throw Error("base automaton for " + to_string(prop) + ": alphabet mismatch");
  return out;
}

namespace {

const Dra& base_for(const BaseAutomata& base, BaseProp p) {
  auto it = base.find(p);
  if (it == base.end()) throw Error("missing base automaton for " + to_string(p));
  return it->second;
}

}  // namespace

TreeAutomaton build_level_automaton(const LevelSpec& level, const BaseAutomata& base,
                                    const LevelAutomatonOptions& opts) {
  std::vector<TreeAutomaton> factors;
  std::set<BaseProp> followed;
  for (const auto& c : level.generators()) {
    const Dra& w = base_for(base, c.base);
    TreeAutomaton f = c.modality == Modality::Plain ? lift_universal(w, c.base)
                      : c.modality == Modality::E   ? lift_exists(w, c.base)
                                                    : lift_globally_exists(w, c.base);
    merge_equal_fin_pairs(f);
    factors.push_back(std::move(f));
    if (c.modality != Modality::E) followed.insert(c.base);
  }
  if (opts.track_all) {
    for (BaseProp b : tracked_bases(level.ruleset()))
      if (!followed.count(b)) factors.push_back(lift_tracking(base_for(base, b), b));
  } else if (factors.empty()) {
    factors.push_back(lift_tracking(base_for(base, BaseProp::A), BaseProp::A));
  }
  std::vector<std::vector<int>> seeds;
  for (const auto& u : opts.seeds) {
    std::vector<int> comps;
    for (const auto& f : factors) {
      auto it = std::find_if(u.begin(), u.end(), [&](const auto& e) { return e.first == f.factors[0].origin; });
      if (it == u.end()) throw Error("seed does not cover base " + to_string(f.factors[0].origin));
      comps.push_back(it->second);
    }
    seeds.push_back(std::move(comps));
  }
  return product_reachable(factors, opts.mode, seeds);
}

TreeAutomaton build_level_automaton(const LevelSpec& level, const BaseAutomata& base, bool track_all) {
  LevelAutomatonOptions opts;
  opts.track_all = track_all;
  return build_level_automaton(level, base, opts);
}

std::vector<int> canonical_key(const TreeAutomaton& t, const Unpacked& u) {
  std::vector<int> k;
  for (const auto& f : t.factors) {
    auto it = std::find_if(u.begin(), u.end(), [&](const auto& e) { return e.first == f.origin; });
    if (it == u.end()) throw Error("unpack set does not cover base " + to_string(f.origin));
    k.push_back(it->second);
  }
  k.resize(k.size() + t.info[t.initial].latch.size(), 0);
  return k;
}

std::string tree_dot(const TreeAutomaton& t, const std::map<BaseProp, const Dra*>& names) {
  std::ostringstream out;
  out << "digraph tree_automaton {\n  node [shape=box];\n";
  for (int q = 0; q < t.num_states(); ++q) {
    out << "  t" << q << " [label=\"";
    const auto& inf = t.info[q];
    for (std::size_t k = 0; k < t.factors.size(); ++k) {
      if (k) out << " ";
      auto it = names.find(t.factors[k].origin);
      out << to_string(t.factors[k].origin) << ":";
      if (it != names.end() && it->second != nullptr) {
        out << it->second->state_names[inf.word[k]];
      } else {
        out << inf.word[k];
      }
      if (t.factors[k].modality == Modality::GE) out << (inf.flag[k] ? "/T" : "/F");
    }
    if (!inf.latch.empty()) {
      out << " latch:";
      for (auto c : inf.latch) out << static_cast<int>(c);
    }
    out << "\"";
    if (q == t.initial) out << ", peripheries=2";
    out << "];\n";
  }
  for (int q = 0; q < t.num_states(); ++q) {
    std::set<int> targets;
    for (const auto& row : t.delta[q])
      for (const auto& f : row) targets.insert(f.begin(), f.end());
    for (int r : targets) out << "  t" << q << " -> t" << r << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace coopsynt
