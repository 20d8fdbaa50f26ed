#include <random>
#include <set>

#include "coopsynt/tree_automata.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "lasso_oracle.hpp"
#include "random_models.hpp"

using namespace coopsynt;

namespace {

// Follows the first move of every state along a word; only meaningful when
// each (state, output) has exactly one move.
std::set<int> tree_inf_set(const TreeAutomaton& t, const Word& prefix, const Word& cycle) {
  auto step = [&](int s, int l) {
    return t.moves(s, t.alphabet.output_of(l)).at(0).at(t.alphabet.input_of(l));
  };
  int s = t.initial;
  for (int l : prefix) s = step(s, l);
  const int n = t.num_states();
  for (int r = 0; r < n; ++r)
    for (int l : cycle) s = step(s, l);
  std::set<int> inf;
  for (int r = 0; r < n; ++r)
    for (int l : cycle) {
      inf.insert(s);
      s = step(s, l);
    }
  return inf;
}

bool tree_word_accepts(const TreeAutomaton& t, const Word& prefix, const Word& cycle) {
  auto inf = tree_inf_set(t, prefix, cycle);
  return rabin_accepts(t.pairs, {inf.begin(), inf.end()});
}

std::size_t total_moves(const TreeAutomaton& t, int state) {
  std::size_t n = 0;
  for (const auto& row : t.delta[state]) n += row.size();
  return n;
}

}  // namespace

TEST_CASE("lifts have the expected state and move counts") {
  auto a = fixtures::example_a();
  const int ni = a.alphabet.num_inputs(), no = a.alphabet.num_outputs();
  auto u = lift_universal(a);
  auto e = lift_exists(a);
  auto ge = lift_globally_exists(a);
  CHECK(u.num_states() == a.num_states());
  CHECK(e.num_states() == a.num_states());
  CHECK(ge.num_states() == 2 * a.num_states());
  CHECK(ge.pairs.size() == a.pairs.size() + 1);
  for (int q = 0; q < a.num_states(); ++q) {
    CHECK(total_moves(u, q) == static_cast<std::size_t>(no));
    CHECK(total_moves(e, q) == static_cast<std::size_t>(no * ni));
  }
  for (int q = 0; q < ge.num_states(); ++q) CHECK(total_moves(ge, q) == static_cast<std::size_t>(no * ni));
  // Unchosen branches of an existential move go to the top state.
  for (int o = 0; o < no; ++o)
    for (int c = 0; c < ni; ++c)
      for (int i = 0; i < ni; ++i)
        if (i != c) CHECK(e.moves(a.initial, o)[c][i] == a.top);
}

TEST_CASE("globally-exists lift clears the flag off the chosen branch") {
  auto a = fixtures::example_a();
  auto ge = lift_globally_exists(a);
  const int n = a.num_states();
  for (int q = 0; q < ge.num_states(); ++q) {
    CHECK(ge.info[q].word[0] == q % n);
    CHECK(ge.info[q].flag[0] == (q < n ? 1 : 0));
    for (int o = 0; o < a.alphabet.num_outputs(); ++o) {
      const auto& ms = ge.moves(q, o);
      for (std::size_t c = 0; c < ms.size(); ++c)
        for (std::size_t i = 0; i < ms[c].size(); ++i) CHECK((ms[c][i] < n) == (c == i));
    }
  }
  // Off-path states are accepted by the added pair.
  const auto& off = ge.pairs.back();
  for (int q = 0; q < ge.num_states(); ++q) CHECK(off.inf_set[q] == (q >= n));
}

TEST_CASE("full product sizes") {
  auto a = fixtures::example_a();
  auto g = fixtures::example_g();
  auto ua = lift_universal(a, BaseProp::A);
  auto ug = lift_universal(g, BaseProp::G);
  auto lit = product({ua, ug}, AcceptanceMode::Literal);
  CHECK(lit.num_states() == a.num_states() * g.num_states());
  CHECK(lit.pairs.size() == a.pairs.size() * g.pairs.size());
  auto lat = product({ua, ug}, AcceptanceMode::Latched);
  const int tuples = static_cast<int>(a.pairs.size() * g.pairs.size());
  int latch_values = 1;
  for (int t = 0; t < tuples; ++t) latch_values *= 2;
  CHECK(lat.num_states() == a.num_states() * g.num_states() * latch_values);
  CHECK(lat.info[lat.initial].latch.size() == static_cast<std::size_t>(tuples));

  auto e = lift_exists(a, BaseProp::A);
  auto mixed = product({e, ug}, AcceptanceMode::Literal);
  const int ni = a.alphabet.num_inputs();
  for (int q = 0; q < mixed.num_states(); ++q)
    for (int o = 0; o < a.alphabet.num_outputs(); ++o) CHECK(mixed.moves(q, o).size() == static_cast<std::size_t>(ni));
}

TEST_CASE("unpack collects word states per origin") {
  auto a = fixtures::example_a();
  auto g = fixtures::example_g();
  auto p = product({lift_universal(a, BaseProp::A), lift_globally_exists(g, BaseProp::G)}, AcceptanceMode::Literal);
  for (int q = 0; q < p.num_states(); ++q) {
    auto u = unpack(p, q);
    REQUIRE(u.size() == 2);
    CHECK(u[0].first == BaseProp::A);
    CHECK(u[1].first == BaseProp::G);
    CHECK(u[0].second == p.key[q][0]);
    CHECK(u[1].second == p.key[q][1] % g.num_states());
    auto k = canonical_key(p, u);
    CHECK(p.find(k) >= 0);
    CHECK(p.info[p.find(k)].flag[1] == 1);
  }
}

TEST_CASE("latched product of Buchi factors accepts exactly the conjunction") {
  std::mt19937 rng(17);
  auto alpha = oracle::small_alphabet(2, 1);
  int compared = 0;
  for (int round = 0; round < 40; ++round) {
    auto d1 = oracle::random_dra(rng, alpha, 3, 1 + round % 2, true, "x");
    auto d2 = oracle::random_dra(rng, alpha, 3, 1, true, "y");
    auto d3 = oracle::random_dra(rng, alpha, 2, 1, true, "z");
    std::vector<TreeAutomaton> fs{lift_universal(d1, BaseProp::A), lift_universal(d2, BaseProp::G),
                                  lift_universal(d3, BaseProp::And)};
    auto lat = product_reachable(fs, AcceptanceMode::Latched);
    auto lit = product_reachable(fs, AcceptanceMode::Literal);
    oracle::for_each_lasso(alpha.num_letters(), 2, 4, [&](const Word& p, const Word& c) {
      bool want = oracle::naive_accepts(d1, p, c) && oracle::naive_accepts(d2, p, c) && oracle::naive_accepts(d3, p, c);
      CHECK(tree_word_accepts(lat, p, c) == want);
      // The literal product only sees simultaneous visits.
      if (tree_word_accepts(lit, p, c)) CHECK(want);
      ++compared;
    });
  }
  CHECK(compared > 1000);
}

TEST_CASE("tracking factors do not change acceptance") {
  std::mt19937 rng(5);
  auto alpha = oracle::small_alphabet(2, 2);
  for (int round = 0; round < 20; ++round) {
    auto d1 = oracle::random_dra(rng, alpha, 3, 2, false, "x");
    auto d2 = oracle::random_dra(rng, alpha, 4, 1, false, "y");
    auto t = product_reachable({lift_universal(d1, BaseProp::A), lift_tracking(d2, BaseProp::G)},
                               AcceptanceMode::Latched);
    oracle::for_each_lasso(alpha.num_letters(), 1, 3, [&](const Word& p, const Word& c) {
      CHECK(tree_word_accepts(t, p, c) == oracle::naive_accepts(d1, p, c));
    });
  }
}

TEST_CASE("pair merging keeps the word language") {
  std::mt19937 rng(9);
  auto alpha = oracle::small_alphabet(1, 2);
  for (int round = 0; round < 20; ++round) {
    auto d = oracle::random_dra(rng, alpha, 4, 3, true, "x");
    auto t = lift_universal(d);
    merge_equal_fin_pairs(t);
    CHECK(t.pairs.size() == 1);
    oracle::for_each_lasso(alpha.num_letters(), 2, 3, [&](const Word& p, const Word& c) {
      CHECK(tree_word_accepts(t, p, c) == oracle::naive_accepts(d, p, c));
    });
  }
}

TEST_CASE("single-input alphabets make all lifts agree with the word automaton") {
  std::mt19937 rng(3);
  auto alpha = oracle::small_alphabet(1, 2);
  for (int round = 0; round < 15; ++round) {
    auto d = oracle::random_dra(rng, alpha, 3, 2, false, "x");
    for (auto t : {lift_universal(d), lift_exists(d), lift_globally_exists(d)}) {
      oracle::for_each_lasso(alpha.num_letters(), 2, 3, [&](const Word& p, const Word& c) {
        CHECK(tree_word_accepts(t, p, c) == oracle::naive_accepts(d, p, c));
      });
    }
  }
}

TEST_CASE("level automata use one acceptance factor per generator") {
  auto a = fixtures::example_a();
  auto g = fixtures::example_g();
  auto base = make_bases(a, g, RuleSet::Base);
  CHECK(base.size() == tracked_bases(RuleSet::Base).size());
  auto lattice = enumerate_levels(RuleSet::Base, false);
  for (const auto& level : lattice.levels) {
    auto gens = level.generators();
    LevelAutomatonOptions lean;
    lean.track_all = false;
    auto t = build_level_automaton(level, base, lean);
    CHECK(t.num_accepting_factors() == static_cast<int>(gens.size()));
    auto full = build_level_automaton(level, base);
    CHECK(full.num_accepting_factors() == static_cast<int>(gens.size()));
    // Every tracked base is visible in the unpack set.
    auto u = unpack(full, full.initial);
    std::set<BaseProp> seen;
    for (const auto& [b, q] : u) seen.insert(b);
    for (BaseProp b : tracked_bases(RuleSet::Base)) CHECK(seen.count(b) == 1);
  }
}

TEST_CASE("seeds become reachable canonical states") {
  auto a = fixtures::example_a();
  auto g = fixtures::example_g();
  auto base = make_bases(a, g, RuleSet::Base);
  auto level = parse_level("G & GE(A)", RuleSet::Base);
  auto plain = build_level_automaton(level, base);
  LevelAutomatonOptions opts;
  Unpacked seed;
  for (BaseProp b : tracked_bases(RuleSet::Base)) seed.emplace_back(b, base.at(b).top);
  std::sort(seed.begin(), seed.end());
  opts.seeds.push_back(seed);
  auto seeded = build_level_automaton(level, base, opts);
  CHECK(seeded.num_states() >= plain.num_states());
  CHECK(seeded.find(canonical_key(seeded, seed)) >= 0);
  CHECK(plain.initial == seeded.initial);
}

TEST_CASE("tree automaton DOT output") {
  auto a = fixtures::example_a();
  auto t = lift_globally_exists(a);
  auto dot = tree_dot(t, {{BaseProp::A, &a}});
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("A:q0/T") != std::string::npos);
  CHECK(dot.find("peripheries=2") != std::string::npos);
}
