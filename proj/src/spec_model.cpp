#include "coopsynt/spec_model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "graph.hpp"
#include "text_lines.hpp"

namespace coopsynt {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      detail_(msg),
      line_(line),
      column_(column) {}

namespace {

int index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

}  // namespace

int Alphabet::input_index(const std::string& name) const { return index_of(inputs, name); }
int Alphabet::output_index(const std::string& name) const { return index_of(outputs, name); }

std::string Alphabet::letter_name(int letter) const {
  return "(" + inputs[input_of(letter)] + "," + outputs[output_of(letter)] + ")";
}

void Alphabet::validate() const {
  if (inputs.empty() || outputs.empty()) throw Error("alphabet: inputs and outputs must be non-empty");
  std::set<std::string> seen;
  for (const auto& n : inputs)
    if (!seen.insert(n).second) throw Error("alphabet: duplicate letter '" + n + "'");
  for (const auto& n : outputs)
    if (!seen.insert(n).second) throw Error("alphabet: duplicate letter '" + n + "'");
}

int Dra::state_index(const std::string& name) const { return index_of(state_names, name); }

bool Dra::is_buchi() const {
  return pairs.size() == 1 &&
         std::none_of(pairs[0].fin_set.begin(), pairs[0].fin_set.end(), [](bool b) { return b; });
}

void Dra::validate() const {
  alphabet.validate();
  const int n = num_states();
  if (n == 0) throw Error("automaton '" + name + "' has no states");
  if (delta.size() != static_cast<std::size_t>(n) * alphabet.num_letters())
    throw Error("automaton '" + name + "': transition table is not total");
  for (int t : delta)
    if (t < 0 || t >= n) throw Error("automaton '" + name + "': transition to unknown state");
  if (initial < 0 || initial >= n) throw Error("automaton '" + name + "': bad initial state");
  for (const auto& p : pairs)
    if (p.fin_set.size() != static_cast<std::size_t>(n) || p.inf_set.size() != static_cast<std::size_t>(n))
      throw Error("automaton '" + name + "': pair refers to unknown states");
  if (top < 0 || top >= n) throw Error("automaton '" + name + "': no top state");
  for (int l = 0; l < alphabet.num_letters(); ++l)
    if (succ(top, l) != top) throw Error("automaton '" + name + "': top is not a sink");
  bool covered = std::any_of(pairs.begin(), pairs.end(),
                             [&](const RabinPair& p) { return !p.fin_set[top] && p.inf_set[top]; });
  if (!covered) throw Error("automaton '" + name + "': top is not accepting");
}

bool is_top_candidate(const Dra& aut, int s) {
  for (int l = 0; l < aut.alphabet.num_letters(); ++l)
    if (aut.succ(s, l) != s) return false;
  return std::any_of(aut.pairs.begin(), aut.pairs.end(),
                     [&](const RabinPair& p) { return !p.fin_set[s] && p.inf_set[s]; });
}

int find_top(const Dra& aut) {
  for (int s = 0; s < aut.num_states(); ++s)
    if (is_top_candidate(aut, s)) return s;
  return -1;
}

int ensure_top(Dra& aut) {
  int named = aut.state_index("top");
  if (named >= 0 && is_top_candidate(aut, named)) {
    aut.top = named;
    return named;
  }
  std::string name = "top";
  for (int k = 1; aut.state_index(name) >= 0; ++k) name = "top_" + std::to_string(k);
  int t = aut.num_states();
  aut.state_names.push_back(name);
  for (int l = 0; l < aut.alphabet.num_letters(); ++l) aut.delta.push_back(t);
  for (auto& p : aut.pairs) {
    p.fin_set.push_back(false);
    p.inf_set.push_back(false);
  }
  if (aut.pairs.empty()) {
    aut.pairs.push_back({StateMask(t + 1, false), StateMask(t + 1, false)});
  }
  aut.pairs[0].inf_set[t] = true;
  aut.top = t;
  return t;
}

namespace {

using detail::Line;
using detail::Token;

[[noreturn]] void fail(const Token& tok, const std::string& msg) { throw ParseError(msg, tok.line, tok.column); }

std::vector<std::string> names_after(const Line& line, std::size_t from, std::size_t to) {
  std::vector<std::string> out;
  for (std::size_t k = from; k < to; ++k) out.push_back(line.tokens[k].text);
  return out;
}

struct Header {
  std::string kind;
  std::string name;
  Alphabet alphabet;
  std::vector<std::string> states;
  std::string initial;
  bool have_inputs = false, have_outputs = false, have_states = false;
  int states_line = 0;
};

// Handles the lines shared by both formats; returns false for other keywords.
bool parse_header_line(const Line& line, Header& h) {
  const auto& key = line.tokens[0];
  if (key.text == h.kind) {
    if (line.tokens.size() > 2) fail(line.tokens[2], "unexpected token");
    if (line.tokens.size() == 2) h.name = line.tokens[1].text;
    return true;
  }
  if (key.text == "inputs:" || key.text == "outputs:") {
    if (line.tokens.size() < 2) fail(key, "empty letter list");
    auto names = names_after(line, 1, line.tokens.size());
    if (key.text == "inputs:") {
      h.alphabet.inputs = names;
      h.have_inputs = true;
    } else {
      h.alphabet.outputs = names;
      h.have_outputs = true;
    }
    return true;
  }
  if (key.text == "states:") {
    std::size_t k = 1;
    while (k < line.tokens.size() && line.tokens[k].text != "initial") ++k;
    if (k == 1) fail(key, "empty state list");
    if (k + 2 != line.tokens.size()) fail(key, "expected 'initial <state>' at end of states line");
    h.states = names_after(line, 1, k);
    std::set<std::string> seen;
    for (std::size_t j = 1; j < k; ++j)
      if (!seen.insert(line.tokens[j].text).second) fail(line.tokens[j], "duplicate state name");
    h.initial = line.tokens[k + 1].text;
    if (!seen.count(h.initial)) fail(line.tokens[k + 1], "unknown initial state '" + h.initial + "'");
    h.have_states = true;
    h.states_line = line.number;
    return true;
  }
  return false;
}

void require_header(const Header& h, const Token& at) {
  if (!h.have_inputs || !h.have_outputs || !h.have_states)
    fail(at, "inputs, outputs and states must be declared first");
}

int lookup(const std::vector<std::string>& names, const Token& tok, const char* what) {
  int k = index_of(names, tok.text);
  if (k < 0) fail(tok, std::string("unknown ") + what + " '" + tok.text + "'");
  return k;
}

int lookup_or_any(const std::vector<std::string>& names, const Token& tok, const char* what) {
  return tok.text == "*" ? -1 : lookup(names, tok, what);
}

void check_alphabet(const Alphabet& a, int line) {
  try {
    a.validate();
  } catch (const Error& e) {
    throw ParseError(e.what(), line, 1);
  }
}

}  // namespace

Dra parse_dra(const std::string& text) {
  Header h;
  h.kind = "dra";
  struct Rule {
    int from, in, out, to;
  };
  std::vector<Rule> rules;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> pair_lists;
  int last_line = 1;
  for (const Line& line : detail::tokenize(text)) {
    last_line = line.number;
    if (parse_header_line(line, h)) continue;
    const auto& key = line.tokens[0];
    require_header(h, key);
    if (key.text == "trans:") {
      if (line.tokens.size() != 6 || line.tokens[4].text != "->")
        fail(key, "expected 'trans: <state> <input|*> <output|*> -> <state>'");
      rules.push_back({lookup(h.states, line.tokens[1], "state"),
                       lookup_or_any(h.alphabet.inputs, line.tokens[2], "input"),
                       lookup_or_any(h.alphabet.outputs, line.tokens[3], "output"),
                       lookup(h.states, line.tokens[5], "state")});
    } else if (key.text == "pair:") {
      std::vector<int> sets[2];
      std::size_t k = 1;
      for (int which = 0; which < 2; ++which) {
        if (k >= line.tokens.size() || line.tokens[k].text != "{") fail(key, "expected '{'");
        ++k;
        while (k < line.tokens.size() && line.tokens[k].text != "}")
          sets[which].push_back(lookup(h.states, line.tokens[k++], "state"));
        if (k >= line.tokens.size()) fail(key, "expected '}'");
        ++k;
      }
      if (k != line.tokens.size()) fail(line.tokens[k], "unexpected token");
      pair_lists.emplace_back(sets[0], sets[1]);
    } else {
      fail(key, "unknown keyword '" + key.text + "'");
    }
  }
  if (!h.have_inputs || !h.have_outputs || !h.have_states)
    throw ParseError("incomplete automaton: inputs, outputs and states are required", last_line, 1);
  check_alphabet(h.alphabet, h.states_line);

  Dra aut;
  aut.name = h.name;
  aut.alphabet = h.alphabet;
  aut.state_names = h.states;
  aut.initial = index_of(h.states, h.initial);
  const int n = aut.num_states();
  const int ni = aut.alphabet.num_inputs(), no = aut.alphabet.num_outputs();
  aut.delta.assign(static_cast<std::size_t>(n) * ni * no, -1);
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < ni; ++i)
      for (int o = 0; o < no; ++o) {
        for (const auto& r : rules) {
          if (r.from == s && (r.in < 0 || r.in == i) && (r.out < 0 || r.out == o)) {
            aut.delta[static_cast<std::size_t>(s) * ni * no + aut.alphabet.letter(i, o)] = r.to;
            break;
          }
        }
        if (aut.delta[static_cast<std::size_t>(s) * ni * no + aut.alphabet.letter(i, o)] < 0)
          throw ParseError("missing transition for state '" + aut.state_names[s] + "' on letter (" +
                               aut.alphabet.inputs[i] + "," + aut.alphabet.outputs[o] + ")",
                           last_line, 1);
      }
  for (const auto& [fs, gs] : pair_lists) {
    RabinPair p{StateMask(n, false), StateMask(n, false)};
    for (int s : fs) p.fin_set[s] = true;
    for (int s : gs) p.inf_set[s] = true;
    aut.pairs.push_back(std::move(p));
  }
  ensure_top(aut);
  aut.validate();
  return aut;
}

std::string render_dra(const Dra& aut) {
  std::ostringstream out;
  out << "dra " << (aut.name.empty() ? "unnamed" : aut.name) << "\n";
  out << "inputs:";
  for (const auto& n : aut.alphabet.inputs) out << " " << n;
  out << "\noutputs:";
  for (const auto& n : aut.alphabet.outputs) out << " " << n;
  out << "\nstates:";
  for (const auto& n : aut.state_names) out << " " << n;
  out << " initial " << aut.state_names[aut.initial] << "\n";
  const int nl = aut.alphabet.num_letters();
  for (int s = 0; s < aut.num_states(); ++s) {
    bool uniform = true;
    for (int l = 1; l < nl && uniform; ++l) uniform = aut.succ(s, l) == aut.succ(s, 0);
    if (uniform) {
      out << "trans: " << aut.state_names[s] << " * * -> " << aut.state_names[aut.succ(s, 0)] << "\n";
      continue;
    }
    for (int l = 0; l < nl; ++l)
      out << "trans: " << aut.state_names[s] << " " << aut.alphabet.inputs[aut.alphabet.input_of(l)] << " "
          << aut.alphabet.outputs[aut.alphabet.output_of(l)] << " -> " << aut.state_names[aut.succ(s, l)]
          << "\n";
  }
  for (const auto& p : aut.pairs) {
    out << "pair: {";
    for (int s = 0; s < aut.num_states(); ++s)
      if (p.fin_set[s]) out << " " << aut.state_names[s];
    out << " } {";
    for (int s = 0; s < aut.num_states(); ++s)
      if (p.inf_set[s]) out << " " << aut.state_names[s];
    out << " }\n";
  }
  return out.str();
}

bool rabin_accepts(const std::vector<RabinPair>& pairs, const std::vector<int>& inf_states) {
  for (const auto& p : pairs) {
    bool hits_fin = false, hits_inf = false;
    for (int s : inf_states) {
      hits_fin = hits_fin || p.fin_set[s];
      hits_inf = hits_inf || p.inf_set[s];
    }
    if (!hits_fin && hits_inf) return true;
  }
  return false;
}

RunOutcome run_lasso(const Dra& aut, const Word& prefix, const Word& cycle) {
  if (cycle.empty()) throw Error("lasso cycle must be non-empty");
  const int nl = aut.alphabet.num_letters();
  auto check = [&](int l) {
    if (l < 0 || l >= nl) throw Error("lasso letter out of range");
  };
  int s = aut.initial;
  for (int l : prefix) {
    check(l);
    s = aut.succ(s, l);
  }
  for (int l : cycle) check(l);
  const int len = static_cast<int>(cycle.size());
  std::map<std::pair<int, int>, int> first_seen;
  std::vector<int> trace;
  int pos = 0;
  while (true) {
    auto [it, fresh] = first_seen.emplace(std::make_pair(s, pos), static_cast<int>(trace.size()));
    if (!fresh) break;
    trace.push_back(s);
    s = aut.succ(s, cycle[pos]);
    pos = (pos + 1) % len;
  }
  std::set<int> inf(trace.begin() + first_seen[{s, pos}], trace.end());
  RunOutcome out;
  out.visited_infinitely.assign(inf.begin(), inf.end());
  out.accepting = rabin_accepts(aut.pairs, out.visited_infinitely);
  return out;
}

bool accepts_lasso(const Dra& aut, const Word& prefix, const Word& cycle) {
  return run_lasso(aut, prefix, cycle).accepting;
}

namespace {

// Explores tuples of component states from seeds; `step` maps a tuple and a
// letter to the successor tuple.
template <typename Step>
std::vector<std::vector<int>> explore(const std::vector<std::vector<int>>& seeds, int num_letters,
                                      Step step, std::vector<int>& delta) {
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> tuples;
  auto intern = [&](const std::vector<int>& t) {
    auto [it, fresh] = index.emplace(t, static_cast<int>(tuples.size()));
    if (fresh) tuples.push_back(t);
    return it->second;
  };
  for (const auto& s : seeds) intern(s);
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    for (int l = 0; l < num_letters; ++l) {
      auto t = step(tuples[k], l);
      int idx = intern(t);
      delta.push_back(idx);
    }
  }
  return tuples;
}

std::string tuple_name(const Dra& a, const Dra& g, const std::vector<int>& t) {
  std::string s = "<" + a.state_names[t[0]] + "," + g.state_names[t[1]];
  if (t.size() > 2) s += "," + std::to_string(t[2]);
  return s + ">";
}

}  // namespace

Dra derive_combination(const Dra& a, const Dra& g, Combination kind) {
  if (!(a.alphabet == g.alphabet)) throw Error("derive_combination: alphabet mismatch");
  if (kind != Combination::Or && (!a.is_buchi() || !g.is_buchi()))
    throw Error("derive_combination: conjunction and implication need single-pair inputs with empty F; "
                "supply the combined automaton explicitly");
  const int nl = a.alphabet.num_letters();
  Dra out;
  out.alphabet = a.alphabet;
  std::vector<std::vector<int>> tuples;
  if (kind == Combination::And) {
    out.name = a.name + "_and_" + g.name;
    const auto& ga = a.pairs[0].inf_set;
    const auto& gg = g.pairs[0].inf_set;
    const std::vector<int> top{a.top, g.top, 0};
    tuples = explore({{a.initial, g.initial, 0}, top}, nl,
                     [&](const std::vector<int>& t, int l) {
                       int sa = a.succ(t[0], l), sg = g.succ(t[1], l);
                       if (sa == a.top && sg == g.top) return top;
                       int c = t[2] == 0 ? (ga[t[0]] ? 1 : 0) : (gg[t[1]] ? 0 : 1);
                       return std::vector<int>{sa, sg, c};
                     },
                     out.delta);
    RabinPair p{StateMask(tuples.size(), false), StateMask(tuples.size(), false)};
    for (std::size_t k = 0; k < tuples.size(); ++k) p.inf_set[k] = tuples[k][2] == 0 && ga[tuples[k][0]];
    out.pairs.push_back(std::move(p));
  } else {
    out.name = a.name + (kind == Combination::Or ? "_or_" : "_implies_") + g.name;
    tuples = explore({{a.initial, g.initial}, {a.top, g.top}}, nl,
                     [&](const std::vector<int>& t, int l) {
                       return std::vector<int>{a.succ(t[0], l), g.succ(t[1], l)};
                     },
                     out.delta);
    const std::size_t n = tuples.size();
    auto lift = [&](const StateMask& m, int comp) {
      StateMask r(n, false);
      for (std::size_t k = 0; k < n; ++k) r[k] = m[tuples[k][comp]];
      return r;
    };
    if (kind == Combination::Or) {
      for (const auto& p : a.pairs) out.pairs.push_back({lift(p.fin_set, 0), lift(p.inf_set, 0)});
      for (const auto& p : g.pairs) out.pairs.push_back({lift(p.fin_set, 1), lift(p.inf_set, 1)});
    } else {
      out.pairs.push_back({lift(a.pairs[0].inf_set, 0), StateMask(n, true)});
      out.pairs.push_back({StateMask(n, false), lift(g.pairs[0].inf_set, 1)});
    }
  }
  for (const auto& t : tuples) out.state_names.push_back(tuple_name(a, g, t));
  out.initial = 0;
  // The all-top tuple is always the second seed unless it equals the initial one.
  out.top = tuples.size() > 1 && tuples[1][0] == a.top && tuples[1][1] == g.top ? 1 : 0;
  out.state_names[out.top] = "top";
  out.validate();
  return out;
}

bool nonempty_from(const Dra& aut, int state) {
  const int n = aut.num_states();
  detail::Adjacency succ(n);
  for (int s = 0; s < n; ++s) {
    for (int l = 0; l < aut.alphabet.num_letters(); ++l) succ[s].push_back(aut.succ(s, l));
    std::sort(succ[s].begin(), succ[s].end());
    succ[s].erase(std::unique(succ[s].begin(), succ[s].end()), succ[s].end());
  }
  auto reach = detail::reachable(succ, {state});
  for (const auto& p : aut.pairs) {
    std::vector<bool> alive(n);
    for (int s = 0; s < n; ++s) alive[s] = reach[s] && !p.fin_set[s];
    auto scc = detail::strongly_connected(succ, &alive);
    for (int s = 0; s < n; ++s)
      if (alive[s] && p.inf_set[s] && scc.nontrivial[scc.comp[s]]) return true;
  }
  return false;
}

void Mealy::validate() const {
  alphabet.validate();
  const int n = num_states();
  if (n == 0) throw Error("machine '" + name + "' has no states");
  if (initial < 0 || initial >= n) throw Error("machine '" + name + "': bad initial state");
  if (output_of.size() != static_cast<std::size_t>(n)) throw Error("machine '" + name + "': missing outputs");
  for (int o : output_of)
    if (o < 0 || o >= alphabet.num_outputs()) throw Error("machine '" + name + "': bad output");
  if (next.size() != static_cast<std::size_t>(n) * alphabet.num_inputs())
    throw Error("machine '" + name + "': next function is not total");
  for (int t : next)
    if (t < 0 || t >= n) throw Error("machine '" + name + "': successor out of range");
  if (!level_of.empty() && level_of.size() != static_cast<std::size_t>(n))
    throw Error("machine '" + name + "': level annotation must cover every state");
}

Mealy normalize(const Mealy& m) {
  const int n = m.num_states(), ni = m.alphabet.num_inputs();
  detail::Adjacency succ(n);
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < ni; ++i) succ[s].push_back(m.step(s, i));
  auto reach = detail::reachable(succ, {m.initial});
  std::vector<int> remap(n, -1);
  Mealy out;
  out.name = m.name;
  out.alphabet = m.alphabet;
  for (int s = 0; s < n; ++s) {
    if (!reach[s]) continue;
    remap[s] = out.num_states();
    out.state_names.push_back(m.state_names[s]);
    out.output_of.push_back(m.output_of[s]);
    if (m.annotated()) out.level_of.push_back(m.level_of[s]);
  }
  for (int s = 0; s < n; ++s) {
    if (!reach[s]) continue;
    for (int i = 0; i < ni; ++i) out.next.push_back(remap[m.step(s, i)]);
  }
  out.initial = remap[m.initial];
  return out;
}

Mealy parse_mealy(const std::string& text) {
  Header h;
  h.kind = "mealy";
  struct Rule {
    int from, in, to;
  };
  std::vector<Rule> rules;
  std::map<int, int> emits;
  std::map<int, std::string> levels;
  int last_line = 1;
  for (const Line& line : detail::tokenize(text)) {
    last_line = line.number;
    if (parse_header_line(line, h)) continue;
    const auto& key = line.tokens[0];
    require_header(h, key);
    if (key.text == "emit:") {
      if (line.tokens.size() != 3) fail(key, "expected 'emit: <state> <output>'");
      int s = lookup(h.states, line.tokens[1], "state");
      if (emits.count(s)) fail(line.tokens[1], "duplicate emit for state");
      emits[s] = lookup(h.alphabet.outputs, line.tokens[2], "output");
    } else if (key.text == "next:") {
      if (line.tokens.size() != 5 || line.tokens[3].text != "->")
        fail(key, "expected 'next: <state> <input|*> -> <state>'");
      rules.push_back({lookup(h.states, line.tokens[1], "state"),
                       lookup_or_any(h.alphabet.inputs, line.tokens[2], "input"),
                       lookup(h.states, line.tokens[4], "state")});
    } else if (key.text == "level:") {
      if (line.tokens.size() < 3) fail(key, "expected 'level: <state> <level>'");
      int s = lookup(h.states, line.tokens[1], "state");
      std::string rest = line.raw.substr(static_cast<std::size_t>(line.tokens[2].column - 1));
      rest.erase(rest.find_last_not_of(" \t") + 1);
      levels[s] = rest;
    } else {
      fail(key, "unknown keyword '" + key.text + "'");
    }
  }
  if (!h.have_inputs || !h.have_outputs || !h.have_states)
    throw ParseError("incomplete machine: inputs, outputs and states are required", last_line, 1);
  check_alphabet(h.alphabet, h.states_line);
  Mealy m;
  m.name = h.name;
  m.alphabet = h.alphabet;
  m.state_names = h.states;
  m.initial = index_of(h.states, h.initial);
  const int n = m.num_states(), ni = m.alphabet.num_inputs();
  for (int s = 0; s < n; ++s) {
    if (!emits.count(s)) throw ParseError("no emit for state '" + h.states[s] + "'", last_line, 1);
    m.output_of.push_back(emits[s]);
    for (int i = 0; i < ni; ++i) {
      int target = -1;
      for (const auto& r : rules)
        if (r.from == s && (r.in < 0 || r.in == i)) {
          target = r.to;
          break;
        }
      if (target < 0)
        throw ParseError("missing next for state '" + h.states[s] + "' on input " + m.alphabet.inputs[i],
                         last_line, 1);
      m.next.push_back(target);
    }
  }
  if (!levels.empty()) {
    for (int s = 0; s < n; ++s) {
      if (!levels.count(s)) throw ParseError("no level for state '" + h.states[s] + "'", last_line, 1);
      m.level_of.push_back(levels[s]);
    }
  }
  m.validate();
  return m;
}

std::string render_mealy(const Mealy& m) {
  std::ostringstream out;
  out << "mealy " << (m.name.empty() ? "unnamed" : m.name) << "\n";
  out << "inputs:";
  for (const auto& n : m.alphabet.inputs) out << " " << n;
  out << "\noutputs:";
  for (const auto& n : m.alphabet.outputs) out << " " << n;
  out << "\nstates:";
  for (const auto& n : m.state_names) out << " " << n;
  out << " initial " << m.state_names[m.initial] << "\n";
  const int ni = m.alphabet.num_inputs();
  for (int s = 0; s < m.num_states(); ++s) {
    out << "emit: " << m.state_names[s] << " " << m.alphabet.outputs[m.output_of[s]] << "\n";
    bool uniform = true;
    for (int i = 1; i < ni && uniform; ++i) uniform = m.step(s, i) == m.step(s, 0);
    if (uniform) {
      out << "next: " << m.state_names[s] << " * -> " << m.state_names[m.step(s, 0)] << "\n";
    } else {
      for (int i = 0; i < ni; ++i)
        out << "next: " << m.state_names[s] << " " << m.alphabet.inputs[i] << " -> "
            << m.state_names[m.step(s, i)] << "\n";
    }
    if (m.annotated()) out << "level: " << m.state_names[s] << " " << m.level_of[s] << "\n";
  }
  return out.str();
}

Mealy constant_machine(const Alphabet& alphabet, int output, const std::string& name) {
  Mealy m;
  m.name = name;
  m.alphabet = alphabet;
  m.state_names = {"m0"};
  m.output_of = {output};
  m.next.assign(alphabet.num_inputs(), 0);
  m.validate();
  return m;
}

}  // namespace coopsynt
