#pragma once

#include <string>
#include <vector>

#include "coopsynt/spec_model.hpp"
#include "coopsynt/tree_automata.hpp"

namespace coopsynt {

/// Player 0 is the automaton (even) player, player 1 the pathfinder (odd).
struct RabinGame {
  std::vector<int> owner;
  std::vector<std::vector<int>> succ;
  std::vector<RabinPair> pairs;  // over vertices

  int num_vertices() const { return static_cast<int>(owner.size()); }
  void validate() const;
};

struct ParityGame {
  std::vector<int> owner;
  std::vector<std::vector<int>> succ;
  std::vector<int> priority;  // max-parity: even maximum wins for player 0
  std::vector<int> origin;    // Rabin vertex, empty for hand-made games
  std::vector<std::vector<int>> record;  // index appearance record per vertex

  int num_vertices() const { return static_cast<int>(owner.size()); }
  void validate() const;
};

struct WinningCertificate {
  std::vector<bool> region;  // won by player 0
  std::vector<int> strategy;  // chosen successor for won player-0 vertices and won player-1 vertices, -1 else
};

/// Emptiness game of a tree automaton (no machine attached).
struct MembershipGame {
  RabinGame game;
  std::vector<int> tree_state;  // per vertex: tree state for choice vertices, -1 otherwise
  std::vector<int> output;      // per pathfinder vertex: chosen output
  std::vector<int> move;        // per pathfinder vertex: index into delta[q][o]
  std::vector<int> vertex_of;   // tree state -> choice vertex
  int lose_sink = -1;
};

MembershipGame membership_game(const TreeAutomaton& t);

/// Index-appearance-record product. Records are kept per SCC of the Rabin
/// game and only over pairs whose G set meets that SCC; the record resets
/// when a play moves to a different SCC.
ParityGame iar_to_parity(const RabinGame& g, const std::vector<int>& starts = {});

/// Zielonka's recursive algorithm.
WinningCertificate solve_parity(const ParityGame& p);

/// Tree states with non-empty language.
std::vector<bool> nonempty_states(const TreeAutomaton& t);

struct SolvedTree {
  MembershipGame game;
  ParityGame parity;
  WinningCertificate cert;
  std::vector<int> start;  // tree state -> parity vertex of its fresh record
  double solve_ms = 0;
};

SolvedTree solve_tree(const TreeAutomaton& t);

/// Finite-memory strategy from the tree automaton's initial state.
/// Throws Unrealizable when the initial state is losing.
struct Unrealizable : Error {
  using Error::Error;
};

struct ExtractedStrategy {
  Mealy machine;
  std::vector<int> tree_state;  // per machine state
};

ExtractedStrategy extract_strategy(const TreeAutomaton& t, const SolvedTree& solved);
ExtractedStrategy extract_strategy(const TreeAutomaton& t);

struct GameStats {
  int rabin_vertices = 0;
  int parity_vertices = 0;
  int max_record = 0;
  double solve_ms = 0;
};

GameStats stats_of(const SolvedTree& s);

std::string game_dot(const ParityGame& p, const WinningCertificate* cert = nullptr);

}  // namespace coopsynt
