#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coopsynt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  /// Message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

/// Finite input and output letter sets. A letter of the word automata is a
/// pair (input, output), encoded as input * |outputs| + output.
struct Alphabet {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  int num_inputs() const { return static_cast<int>(inputs.size()); }
  int num_outputs() const { return static_cast<int>(outputs.size()); }
  int num_letters() const { return num_inputs() * num_outputs(); }
  int letter(int in, int out) const { return in * num_outputs() + out; }
  int input_of(int letter) const { return letter / num_outputs(); }
  int output_of(int letter) const { return letter % num_outputs(); }
  int input_index(const std::string& name) const;   // -1 when unknown
  int output_index(const std::string& name) const;  // -1 when unknown
  std::string letter_name(int letter) const;

  void validate() const;
  bool operator==(const Alphabet&) const = default;
};

using StateMask = std::vector<bool>;

/// One Rabin pair: accepting iff inf meets `inf_set` and avoids `fin_set`.
struct RabinPair {
  StateMask fin_set;
  StateMask inf_set;
};

/// Deterministic Rabin word automaton over Alphabet letters.
struct Dra {
  std::string name;
  Alphabet alphabet;
  std::vector<std::string> state_names;
  std::vector<int> delta;  // state * num_letters + letter
  int initial = 0;
  std::vector<RabinPair> pairs;
  int top = -1;

  int num_states() const { return static_cast<int>(state_names.size()); }
  int succ(int state, int letter) const {
    return delta[static_cast<std::size_t>(state) * alphabet.num_letters() + letter];
  }
  int succ(int state, int in, int out) const { return succ(state, alphabet.letter(in, out)); }
  int state_index(const std::string& name) const;  // -1 when unknown
  bool is_buchi() const;                           // one pair with empty F

  /// Throws Error if any structural invariant fails.
  void validate() const;
};

/// Sink state that lies in G and outside F of some pair.
bool is_top_candidate(const Dra& aut, int state);
/// First top candidate, -1 if none.
int find_top(const Dra& aut);
/// Designates the state named "top" when it qualifies, otherwise appends a
/// fresh top sink. Returns the top index.
int ensure_top(Dra& aut);

Dra parse_dra(const std::string& text);
std::string render_dra(const Dra& aut);

struct RunOutcome {
  std::vector<int> visited_infinitely;
  bool accepting = false;
};

using Word = std::vector<int>;  // letters

RunOutcome run_lasso(const Dra& aut, const Word& prefix, const Word& cycle);
bool accepts_lasso(const Dra& aut, const Word& prefix, const Word& cycle);
bool rabin_accepts(const std::vector<RabinPair>& pairs, const std::vector<int>& inf_states);

enum class Combination { Implies, And, Or };

Dra derive_combination(const Dra& a, const Dra& g, Combination kind);

bool nonempty_from(const Dra& aut, int state);

/// Finite-state implementation: emits output_of[s], then reads an input.
struct Mealy {
  std::string name;
  Alphabet alphabet;
  std::vector<std::string> state_names;
  int initial = 0;
  std::vector<int> output_of;
  std::vector<int> next;  // state * num_inputs + input
  std::vector<std::string> level_of;  // empty for plain machines

  int num_states() const { return static_cast<int>(state_names.size()); }
  int step(int state, int in) const {
    return next[static_cast<std::size_t>(state) * alphabet.num_inputs() + in];
  }
  bool annotated() const { return !level_of.empty(); }
  void validate() const;
};

/// Drops unreachable states, preserving order of the rest.
Mealy normalize(const Mealy& m);

Mealy parse_mealy(const std::string& text);
std::string render_mealy(const Mealy& m);

/// Machine with a single state that always emits `output`.
Mealy constant_machine(const Alphabet& alphabet, int output, const std::string& name = "const");

}  // namespace coopsynt
