#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coopsynt/hierarchy.hpp"
#include "coopsynt/spec_model.hpp"

namespace coopsynt {

enum class AcceptanceMode { Literal, Latched };

/// Which base automaton a factor follows and how it was lifted.
struct TreeFactor {
  BaseProp origin = BaseProp::A;
  Modality modality = Modality::Plain;
  bool accepting = true;  // false for factors that only track state
};

struct TreeStateInfo {
  std::vector<int> word;                 // per factor: word-automaton state
  std::vector<std::uint8_t> flag;        // per factor: 1 on the chosen path (always 1 if unflagged)
  std::vector<std::uint8_t> latch;       // round-robin counters, empty when unused
};

using TransFn = std::vector<int>;  // input index -> successor state

/// Non-deterministic Rabin tree automaton with explicit states.
struct TreeAutomaton {
  Alphabet alphabet;
  std::vector<TreeFactor> factors;
  std::vector<TreeStateInfo> info;
  std::vector<std::vector<int>> key;  // component tuple (factor states then latch)
  std::vector<std::vector<std::vector<TransFn>>> delta;  // [state][output]
  int initial = 0;
  std::vector<RabinPair> pairs;

  int num_states() const { return static_cast<int>(info.size()); }
  const std::vector<TransFn>& moves(int state, int output) const { return delta[state][output]; }
  std::map<std::vector<int>, int> key_index;

  int find(const std::vector<int>& k) const;  // -1 if absent
  int num_accepting_factors() const;
  /// Appends a state; returns its index.
  int add_state(std::vector<int> k, TreeStateInfo i);
};

/// Word-automaton states underlying a tree state, one per (origin, state).
using Unpacked = std::vector<std::pair<BaseProp, int>>;

Unpacked unpack(const TreeAutomaton& t, int state);

TreeAutomaton lift_universal(const Dra& w, BaseProp origin = BaseProp::A);
TreeAutomaton lift_exists(const Dra& w, BaseProp origin = BaseProp::A);
TreeAutomaton lift_globally_exists(const Dra& w, BaseProp origin = BaseProp::A);
/// Universal lift with trivial acceptance; only tracks the word state.
TreeAutomaton lift_tracking(const Dra& w, BaseProp origin);

/// Merges pairs with identical F sets. Language-preserving.
void merge_equal_fin_pairs(TreeAutomaton& t);

/// Full product over all component tuples.
TreeAutomaton product(const std::vector<TreeAutomaton>& factors,
                      AcceptanceMode mode = AcceptanceMode::Latched);
/// Product restricted to states reachable from the initial tuple and from
/// the given component tuples (one state index per factor, latch reset).
TreeAutomaton product_reachable(const std::vector<TreeAutomaton>& factors, AcceptanceMode mode,
                                const std::vector<std::vector<int>>& seeds = {});

using BaseAutomata = std::map<BaseProp, Dra>;

/// Base automata for a rule set: A and G plus the derived A->G, A*G and, for
/// extended rule sets, A+G. Entries already present in `overrides` win.
BaseAutomata make_bases(const Dra& a, const Dra& g, RuleSet rs, const BaseAutomata& overrides = {});

/// Base properties that occur in the conjunct alphabet of a rule set.
std::vector<BaseProp> tracked_bases(RuleSet rs);

struct LevelAutomatonOptions {
  bool track_all = true;
  AcceptanceMode mode = AcceptanceMode::Latched;
  /// Additional start points, given as unpack sets; each becomes the state
  /// with all flags set and latch reset.
  std::vector<Unpacked> seeds;
};

TreeAutomaton build_level_automaton(const LevelSpec& level, const BaseAutomata& base,
                                    const LevelAutomatonOptions& opts = {});
TreeAutomaton build_level_automaton(const LevelSpec& level, const BaseAutomata& base, bool track_all);

/// Component tuple of the canonical state for an unpack set.
std::vector<int> canonical_key(const TreeAutomaton& t, const Unpacked& u);

std::string tree_dot(const TreeAutomaton& t, const std::map<BaseProp, const Dra*>& names = {});

}  // namespace coopsynt
