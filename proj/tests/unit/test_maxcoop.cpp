#include <functional>

#include "coopsynt/checker.hpp"
#include "coopsynt/maxcoop.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "lasso_oracle.hpp"

using namespace coopsynt;

namespace {

struct Fixture {
  Dra a, g;
  SynthesisResult r;
};

const Fixture& fixture(const std::string& dir) {
  static std::map<std::string, Fixture> cache;
  auto it = cache.find(dir);
  if (it == cache.end()) {
    Fixture f{fixtures::load_dra(dir + "/A.dra"), fixtures::load_dra(dir + "/G.dra"), {}};
    f.r = synthesize_max_coop(f.a, f.g);
    it = cache.emplace(dir, std::move(f)).first;
  }
  return it->second;
}

// Calls f(inputs, machine states visited) for every input sequence of the given length.
void for_each_run(const Mealy& m, int depth,
                  const std::function<void(const std::vector<int>&, const std::vector<int>&)>& f) {
  std::vector<int> inputs, states{m.initial};
  std::function<void()> rec = [&] {
    if (static_cast<int>(inputs.size()) == depth) {
      f(inputs, states);
      return;
    }
    for (int i = 0; i < m.alphabet.num_inputs(); ++i) {
      inputs.push_back(i);
      states.push_back(m.step(states.back(), i));
      rec();
      inputs.pop_back();
      states.pop_back();
    }
  };
  rec();
}

// Expected level after each step: the first strictly stronger level whose
// automaton has a nonempty state for the current joint base-state tuple.
std::vector<int> oracle_levels(const SynthesisResult& r, const std::vector<int>& inputs) {
  const auto& ix = r.ix;
  const auto& m = r.machine;
  auto tracked = tracked_bases(ix.lattice.ruleset);
  std::map<BaseProp, int> state;
  for (BaseProp b : tracked) state[b] = ix.base.at(b).initial;
  int level = r.coop.initial_level;
  int s = m.initial;
  std::vector<int> out{level};
  for (int i : inputs) {
    int letter = m.alphabet.letter(i, m.output_of[s]);
    Unpacked u;
    for (auto& [b, q] : state) {
      q = ix.base.at(b).succ(q, letter);
      u.emplace_back(b, q);
    }
    s = m.step(s, i);
    for (int k = 0; k < ix.lattice.size(); ++k) {
      if (k == level || !ix.lattice.leq(level, k) || ix.lattice.leq(k, level)) continue;
      if (ix.in_w(k, u)) {
        level = k;
        break;
      }
    }
    out.push_back(level);
  }
  return out;
}

void check_runs(const SynthesisResult& r, int depth, int max_switches) {
  const auto& lat = r.ix.lattice;
  for_each_run(r.machine, depth, [&](const std::vector<int>& inputs, const std::vector<int>& states) {
    auto want = oracle_levels(r, inputs);
    int switches = 0;
    for (std::size_t k = 0; k < states.size(); ++k) {
      CHECK(r.machine_level[states[k]] == want[k]);
      if (k == 0) continue;
      int prev = r.machine_level[states[k - 1]], cur = r.machine_level[states[k]];
      CHECK(lat.leq(prev, cur));
      if (prev != cur) ++switches;
    }
    CHECK(switches <= max_switches);
  });
}

}  // namespace

TEST_CASE("assemble builds one automaton per level") {
  const auto& f = fixture("example17");
  CHECK(f.r.ix.lattice.size() == 14);
  CHECK(f.r.ix.automata.size() == 14);
  CHECK(f.r.ix.nonempty.size() == 14);
  CHECK(to_string(f.r.ix.lattice.levels[0]) == "A*G");
  CHECK(f.r.ix.nonempty[0][f.r.ix.automata[0].initial]);
  for (int j = 0; j < 14; ++j) CHECK(f.r.ix.universe.size() > 0);
}

TEST_CASE("example synthesis stays at the top level and satisfies A and G") {
  const auto& f = fixture("example17");
  CHECK(to_string(f.r.ix.lattice.levels[f.r.coop.initial_level]) == "A*G");
  for (int x = 0; x < f.r.coop.automaton.num_states(); ++x) CHECK(f.r.coop.level_of[x] == 0);
  for (const auto& l : f.r.machine.level_of) CHECK(l == "A*G");
  CHECK(f.r.switches.empty());
  oracle::for_each_lasso(f.a.alphabet.num_inputs(), 4, 4, [&](const Word& p, const Word& c) {
    auto [wp, wc] = oracle::machine_word(f.r.machine, p, c);
    CHECK(accepts_lasso(f.a, wp, wc));
    CHECK(accepts_lasso(f.g, wp, wc));
  });
}

TEST_CASE("trigger/ack synthesis switches once after an acked trigger") {
  const auto& f = fixture("trigger_ack");
  const auto& r = f.r;
  CHECK(to_string(r.ix.lattice.levels[r.coop.initial_level]) == "G");
  CHECK_FALSE(r.ix.lattice.levels[r.coop.initial_level].contains({Modality::GE, BaseProp::A}));
  REQUIRE(r.switches.size() == 1);
  CHECK(r.machine.level_of[r.switches[0].to] == "A*G");
  CHECK(r.machine.alphabet.inputs[r.switches[0].input] == "ack");
  const int ack = r.machine.alphabet.input_index("ack");
  for_each_run(r.machine, 6, [&](const std::vector<int>& inputs, const std::vector<int>& states) {
    int switches = 0;
    for (std::size_t k = 1; k < states.size(); ++k)
      switches += r.machine_level[states[k]] != r.machine_level[states[k - 1]];
    CHECK(switches == (inputs[0] == ack ? 1 : 0));
  });
}

TEST_CASE("levels along runs are monotone and locally optimal") {
  check_runs(fixture("example17").r, 8, 13);
  check_runs(fixture("trigger_ack").r, 8, 13);
}

TEST_CASE("bobble trees satisfy the annotated level") {
  for (std::string dir : {"example17", "trigger_ack"}) {
    const auto& f = fixture(dir);
    const auto& r = f.r;
    for (int depth = 0; depth <= 4; ++depth)
      for_each_run(r.machine, depth, [&](const std::vector<int>& inputs, const std::vector<int>& states) {
        LevelChecker c(bobble_tree(r.machine, inputs), r.ix.base);
        CAPTURE(dir);
        CHECK(c.satisfies(r.ix.lattice.levels[r.machine_level[states.back()]]));
      });
  }
}

TEST_CASE("unsatisfiable guarantee starts at the bottom level") {
  const auto& f = fixture("unsat_g");
  const auto& r = f.r;
  CHECK(to_string(r.ix.lattice.levels[r.coop.initial_level]) == "GE(A->G)");
  CHECK_FALSE(is_graylevel(r.ix.lattice.levels[r.coop.initial_level]));
  // Only a violated assumption lifts the level, and then to A->G.
  const int b = r.machine.alphabet.input_index("b");
  for_each_run(r.machine, 5, [&](const std::vector<int>& inputs, const std::vector<int>& states) {
    bool violated = false;
    for (std::size_t k = 0; k < states.size(); ++k) {
      CHECK(r.machine.level_of[states[k]] == (violated ? "A->G" : "GE(A->G)"));
      if (k < inputs.size()) violated = violated || inputs[k] == b;
    }
  });
}

TEST_CASE("unsatisfiable assumption empties every level containing A") {
  auto a = fixtures::example_a();
  a.pairs.clear();
  for (int s = 0; s < a.num_states(); ++s)
    if (s != a.top) a.delta[static_cast<std::size_t>(s) * a.alphabet.num_letters()] = s;
  a.pairs = {{StateMask(a.num_states(), false), StateMask(a.num_states(), false)}};
  a.pairs[0].inf_set[a.top] = true;
  auto g = fixtures::example_g();
  auto base = make_bases(a, g, RuleSet::Base);
  auto ix = assemble(enumerate_levels(RuleSet::Base), base);
  for (int j = 0; j < ix.lattice.size(); ++j) {
    if (!ix.lattice.levels[j].contains({Modality::Plain, BaseProp::A})) continue;
    CAPTURE(to_string(ix.lattice.levels[j]));
    CHECK_FALSE(ix.nonempty[j][ix.automata[j].initial]);
  }
}

TEST_CASE("existential conjuncts are left out of the max-coop lattice") {
  auto a = fixtures::load_dra("trigger_ack/A.dra");
  auto g = fixtures::load_dra("trigger_ack/G.dra");
  SynthesisOptions opts;
  opts.ruleset = RuleSet::FullE;
  auto r = synthesize_max_coop(a, g, opts);
  CHECK(r.ix.lattice.size() < enumerate_levels(RuleSet::FullE).size());
  for (const auto& l : r.ix.lattice.levels)
    for (const auto& c : l.generators()) CHECK(c.modality != Modality::E);
  CHECK(r.machine.level_of[0] == "G");
}

TEST_CASE("synthesis report") {
  const auto& f = fixture("trigger_ack");
  auto j = synthesis_report(f.r);
  CHECK(j.find("\"initial_level\": \"G\"") != std::string::npos);
  CHECK(j.find("\"to_level\": \"A*G\"") != std::string::npos);
  CHECK(j.find("solve_ms") == std::string::npos);
  CHECK(synthesis_report(f.r, true).find("solve_ms") != std::string::npos);
}

TEST_CASE("unrealizable specification raises an error") {
  auto a = fixtures::load_dra("unrealizable/A.dra");
  auto g = fixtures::load_dra("unrealizable/G.dra");
  CHECK_THROWS_AS(synthesize_max_coop(a, g), NoRealizableLevel);
}
