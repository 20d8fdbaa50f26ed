#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coopsynt/hierarchy.hpp"
#include "coopsynt/spec_model.hpp"
#include "coopsynt/tree_automata.hpp"

namespace coopsynt {

struct Lasso {
  Word prefix;
  Word cycle;
};

struct CheckResult {
  bool satisfied = false;
  /// Accepting lasso for satisfied existential checks, violating lasso for
  /// failed universal checks.
  std::optional<Lasso> witness;
};

/// Machine whose pre-split states only follow the split word. An empty
/// split word gives the full computation tree.
struct BobbleTree {
  Mealy machine;
  std::vector<std::vector<bool>> allowed;  // [state][input]
};

BobbleTree full_tree(const Mealy& m);
BobbleTree bobble_tree(const Mealy& m, const std::vector<int>& split_inputs);

CheckResult check_universal(const BobbleTree& t, const Dra& w);
CheckResult check_exists(const BobbleTree& t, const Dra& w);
CheckResult check_globally_exists(const BobbleTree& t, const Dra& w);

CheckResult check_universal(const Mealy& m, const Dra& w);
CheckResult check_exists(const Mealy& m, const Dra& w);
CheckResult check_globally_exists(const Mealy& m, const Dra& w);

struct ConjunctVerdict {
  Conjunct conjunct;
  CheckResult result;
};

/// Caches per-conjunct verdicts for one tree.
class LevelChecker {
 public:
  LevelChecker(BobbleTree tree, const BaseAutomata& base);

  const CheckResult& check(const Conjunct& c);
  bool satisfies(const LevelSpec& level);
  std::vector<ConjunctVerdict> explain(const LevelSpec& level);

 private:
  BobbleTree tree_;
  const BaseAutomata& base_;
  std::map<int, CheckResult> cache_;
};

bool check_level(const Mealy& m, const LevelSpec& level, const BaseAutomata& base);

/// Maximal satisfied levels, in lattice order.
std::vector<int> classify(const Mealy& m, const Lattice& lat, const BaseAutomata& base);
std::vector<int> bobble_level(const Mealy& m, const std::vector<int>& split_inputs, const Lattice& lat,
                              const BaseAutomata& base);
std::vector<int> maximal_satisfied(LevelChecker& checker, const Lattice& lat);

}  // namespace coopsynt
