#include <doctest.h>

#include <chrono>
#include <map>
#include <set>

#include "coopsynt/hierarchy.hpp"
#include "coopsynt/spec_model.hpp"
#include "fixtures.hpp"
#include "hierarchy_oracle.hpp"

using namespace coopsynt;

namespace {

oracle::Names names_of(const LevelSpec& l) {
  oracle::Names out;
  for (const auto& c : l.conjuncts()) out.insert(to_string(c));
  return out;
}

struct Setup {
  RuleSet rs;
  std::vector<std::string> alpha;
  std::vector<oracle::TextRule> rules;
  std::size_t expected;
};

std::vector<Setup> setups() {
  return {{RuleSet::Base, oracle::base_alphabet(), oracle::base_text_rules(), 14},
          {RuleSet::OrExtended, oracle::or_alphabet(), oracle::or_text_rules(), 23},
          {RuleSet::FullE, oracle::full_e_alphabet(), oracle::full_e_text_rules(), 77}};
}

}  // namespace

TEST_CASE("closure examples") {
  auto g = reduction_closure({{Modality::Plain, BaseProp::G}}, RuleSet::Base);
  std::set<std::string> got;
  for (const auto& c : g) got.insert(to_string(c));
  CHECK(got == std::set<std::string>{"G", "A->G", "GE(G)", "GE(A->G)"});
  CHECK(parse_level("A->G & A", RuleSet::Base) == parse_level("A & G", RuleSet::Base));
  CHECK(reduction_closure({}, RuleSet::Base).empty());
  CHECK_THROWS_AS(reduction_closure({{Modality::E, BaseProp::A}}, RuleSet::Base), Error);
  CHECK_THROWS_AS(parse_level("A+G", RuleSet::Base), Error);
}

TEST_CASE("closure agrees with the transcribed rules") {
  for (const auto& s : setups()) {
    for (unsigned sub = 0; sub < (1U << s.alpha.size()); sub += (s.alpha.size() > 10 ? 7 : 1)) {
      oracle::Names in;
      std::string text;
      for (std::size_t k = 0; k < s.alpha.size(); ++k)
        if ((sub >> k) & 1U) {
          in.insert(s.alpha[k]);
          text += (text.empty() ? "" : " & ") + s.alpha[k];
        }
      if (text.empty()) continue;
      REQUIRE(names_of(parse_level(text, s.rs)) == oracle::text_closure(in, s.rules));
    }
  }
}

TEST_CASE("closure is idempotent, extensive and monotone") {
  const auto& alpha = conjunct_alphabet(RuleSet::Base);
  const unsigned n = 1U << alpha.size();
  auto mask_of = [&](unsigned sub) {
    ConjunctMask m = 0;
    for (std::size_t k = 0; k < alpha.size(); ++k)
      if ((sub >> k) & 1U) m |= ConjunctMask{1} << alpha[k].bit();
    return m;
  };
  for (unsigned x = 0; x < n; ++x) {
    ConjunctMask cx = closure_mask(mask_of(x), RuleSet::Base);
    REQUIRE(closure_mask(cx, RuleSet::Base) == cx);
    REQUIRE((mask_of(x) & ~cx) == 0);
    for (unsigned y = 0; y < n; ++y) {
      if ((x & ~y) != 0) continue;
      REQUIRE((cx & ~closure_mask(mask_of(y), RuleSet::Base)) == 0);
    }
  }
}

TEST_CASE("level counts") {
  for (const auto& s : setups()) {
    auto start = std::chrono::steady_clock::now();
    Lattice lat = enumerate_levels(s.rs);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(lat.levels.size() == s.expected);
    CHECK(oracle::text_levels(s.alpha, s.rules).size() == s.expected);
    CHECK(secs < 1.0);
  }
  CHECK(enumerate_levels(RuleSet::Base, true).size() == 15);
}

TEST_CASE("hasse diagram matches the transcribed oracle") {
  for (const auto& s : setups()) {
    Lattice lat = enumerate_levels(s.rs);
    std::set<std::pair<oracle::Names, oracle::Names>> got;
    for (auto [hi, lo] : hasse_edges(lat)) got.emplace(names_of(lat.levels[hi]), names_of(lat.levels[lo]));
    CHECK(got == oracle::text_hasse(oracle::text_levels(s.alpha, s.rules)));
  }
}

TEST_CASE("base hasse diagram matches the golden edge list") {
  Lattice lat = enumerate_levels(RuleSet::Base);
  std::set<std::pair<int, int>> golden;
  for (const auto& line : fixtures::golden_lines("base_hasse_edges.txt")) {
    auto arrow = line.find(" -> ");
    REQUIRE(arrow != std::string::npos);
    int hi = lat.index_of(parse_level(line.substr(0, arrow), RuleSet::Base));
    int lo = lat.index_of(parse_level(line.substr(arrow + 4), RuleSet::Base));
    REQUIRE(hi >= 0);
    REQUIRE(lo >= 0);
    golden.emplace(hi, lo);
  }
  auto edges = hasse_edges(lat);
  CHECK(edges.size() == 19);
  CHECK(std::set<std::pair<int, int>>(edges.begin(), edges.end()) == golden);
  CHECK(golden.count({lat.index_of(parse_level("A*G", RuleSet::Base)),
                      lat.index_of(parse_level("G & GE(A)", RuleSet::Base))}));
}

TEST_CASE("no hasse edge skips an intermediate level") {
  for (auto rs : {RuleSet::Base, RuleSet::OrExtended, RuleSet::FullE}) {
    Lattice lat = enumerate_levels(rs);
    for (auto [hi, lo] : hasse_edges(lat))
      for (int mid = 0; mid < lat.size(); ++mid)
        if (mid != hi && mid != lo) REQUIRE_FALSE((lat.leq(mid, hi) && lat.leq(lo, mid)));
  }
}

TEST_CASE("gray levels") {
  Lattice lat = enumerate_levels(RuleSet::Base);
  std::set<int> gray, golden;
  for (int k = 0; k < lat.size(); ++k)
    if (is_graylevel(lat.levels[k])) gray.insert(k);
  for (const auto& line : fixtures::golden_lines("base_gray_levels.txt"))
    golden.insert(lat.index_of(parse_level(line, RuleSet::Base)));
  CHECK(gray.size() == 6);
  CHECK(gray == golden);
  CHECK(is_graylevel(parse_level("G", RuleSet::Base)));
  CHECK_FALSE(is_graylevel(parse_level("GE(A->G)", RuleSet::Base)));
}

TEST_CASE("preference is a linear extension with gray levels first") {
  for (auto rs : {RuleSet::Base, RuleSet::OrExtended, RuleSet::FullE}) {
    Lattice lat = enumerate_levels(rs);
    for (int i = 0; i < lat.size(); ++i)
      for (int j = 0; j < lat.size(); ++j)
        if (i != j && lat.leq(j, i)) REQUIRE(i < j);
  }
  Lattice lat = enumerate_levels(RuleSet::Base);
  CHECK(to_string(lat.levels[0]) == "A*G");
  for (int k = 0; k < 6; ++k) CHECK(is_graylevel(lat.levels[k]));
  CHECK(to_string(lat.levels.back()) == "GE(A->G)");
}

TEST_CASE("preference override") {
  Lattice lat = enumerate_levels(RuleSet::Base);
  auto order = lat.levels;
  int swapped = -1;
  for (int k = 0; k + 1 < lat.size() && swapped < 0; ++k)
    if (!lat.leq(k + 1, k)) swapped = k;
  REQUIRE(swapped >= 0);
  std::swap(order[swapped], order[swapped + 1]);
  Lattice other = with_preference(lat, order);
  CHECK(other.levels[swapped] == lat.levels[swapped + 1]);
  auto bad = lat.levels;
  std::swap(bad[0], bad[1]);
  CHECK_THROWS_AS(with_preference(lat, bad), Error);
  bad = lat.levels;
  bad.pop_back();
  CHECK_THROWS_AS(with_preference(lat, bad), Error);
}

TEST_CASE("level strings") {
  for (auto rs : {RuleSet::Base, RuleSet::OrExtended, RuleSet::FullE}) {
    Lattice lat = enumerate_levels(rs);
    for (const auto& l : lat.levels) REQUIRE(parse_level(to_string(l), rs) == l);
  }
  CHECK(to_string(parse_level("GE(A->G) & GE(A)", RuleSet::Base)) == "GE(A) & GE(A->G)");
  CHECK(to_string(parse_level(" A->G&GE( A ) ", RuleSet::Base)) == "A->G & GE(A)");
  CHECK(to_string(parse_level("GE(A*G) & GE(A)", RuleSet::Base)) == "GE(A*G)");
  CHECK(to_string(parse_level("true", RuleSet::Base)) == "true");
  CHECK(to_string(parse_level("E(A) & E(G)", RuleSet::FullE)) == "E(A) & E(G)");
  CHECK_THROWS_AS(parse_level("GE(X)", RuleSet::Base), Error);
  CHECK_THROWS_AS(parse_level("", RuleSet::Base), Error);
  CHECK_THROWS_AS(parse_level("A &", RuleSet::Base), Error);
}

TEST_CASE("dot export") {
  Lattice lat = enumerate_levels(RuleSet::Base);
  std::string dot = hasse_dot(lat);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("fillcolor=lightgray") != std::string::npos);
  CHECK(dot == hasse_dot(enumerate_levels(RuleSet::Base)));
}
