#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coopsynt/games.hpp"
#include "coopsynt/hierarchy.hpp"
#include "coopsynt/spec_model.hpp"
#include "coopsynt/tree_automata.hpp"

namespace coopsynt {

/// Raised when not even the weakest level is realizable.
struct NoRealizableLevel : Unrealizable {
  using Unrealizable::Unrealizable;
};

struct LevelIndexedAutomata {
  Lattice lattice;  // levels with E conjuncts removed, in preference order
  BaseAutomata base;
  std::vector<Unpacked> universe;  // reachable joint base-state tuples
  std::vector<TreeAutomaton> automata;
  std::vector<std::vector<bool>> nonempty;  // W per level
  std::vector<GameStats> stats;

  bool in_w(int level, const Unpacked& u) const;
  /// Canonical state of `level` for u, or -1.
  int canonical_state(int level, const Unpacked& u) const;
};

/// Every joint state tuple reachable by the tracked base automata.
std::vector<Unpacked> joint_universe(const BaseAutomata& base, const std::vector<BaseProp>& tracked);

LevelIndexedAutomata assemble(const Lattice& lat, const BaseAutomata& base,
                              AcceptanceMode mode = AcceptanceMode::Latched);

struct MaxCoopAutomaton {
  TreeAutomaton automaton;
  std::vector<int> level_of;   // combined state -> lattice index
  std::vector<int> local;      // combined state -> state in its level automaton
  int initial_level = -1;
};

/// Rerouted union of all level automata, restricted to what the initial
/// state reaches.
MaxCoopAutomaton build_max_coop(const LevelIndexedAutomata& ix);

struct SwitchEdge {
  int from = 0, to = 0;  // machine states
  int input = 0;
};

struct SynthesisResult {
  LevelIndexedAutomata ix;
  MaxCoopAutomaton coop;
  Mealy machine;  // annotated with level_of
  std::vector<int> machine_level;  // lattice index per machine state
  std::vector<SwitchEdge> switches;
  GameStats final_stats;
};

struct SynthesisOptions {
  RuleSet ruleset = RuleSet::Base;
  AcceptanceMode mode = AcceptanceMode::Latched;
  std::optional<std::vector<LevelSpec>> preference;
  BaseAutomata overrides;  // user-supplied combination automata
};

SynthesisResult synthesize_max_coop(const Dra& a, const Dra& g, const SynthesisOptions& opts = {});

/// JSON report: per-level realizability and W sizes, initial level, switch edges.
std::string synthesis_report(const SynthesisResult& r, bool with_stats = false);

}  // namespace coopsynt
