#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace coopsynt {

enum class BaseProp : std::uint8_t { A, G, Implies, And, Or };
enum class Modality : std::uint8_t { Plain, E, GE };
enum class RuleSet : std::uint8_t { Base, OrExtended, FullE };

constexpr int kNumBaseProps = 5;

struct Conjunct {
  Modality modality = Modality::Plain;
  BaseProp base = BaseProp::A;

  auto operator<=>(const Conjunct&) const = default;
  int bit() const { return static_cast<int>(modality) * kNumBaseProps + static_cast<int>(base); }
  static Conjunct from_bit(int b) {
    return {static_cast<Modality>(b / kNumBaseProps), static_cast<BaseProp>(b % kNumBaseProps)};
  }
};

using ConjunctMask = std::uint32_t;

std::string to_string(BaseProp p);  // A, G, A->G, A*G, A+G
std::string to_string(const Conjunct& c);
std::string to_string(RuleSet r);  // base, or, full-e
RuleSet parse_ruleset(const std::string& s);

struct Rule {
  std::vector<Conjunct> premises;
  Conjunct conclusion;
};

/// The conjunct alphabet D of a rule set, in canonical order.
const std::vector<Conjunct>& conjunct_alphabet(RuleSet rs);
const std::vector<Rule>& reduction_rules(RuleSet rs);
ConjunctMask alphabet_mask(RuleSet rs);

/// Least fixpoint of the implication rules. Throws Error on conjuncts outside
/// the rule set's alphabet.
std::vector<Conjunct> reduction_closure(const std::vector<Conjunct>& conjuncts, RuleSet rs);
ConjunctMask closure_mask(ConjunctMask m, RuleSet rs);

/// A cooperation level in closed canonical form.
class LevelSpec {
 public:
  LevelSpec() = default;
  LevelSpec(ConjunctMask closed, RuleSet rs) : mask_(closure_mask(closed, rs)), ruleset_(rs) {}

  ConjunctMask mask() const { return mask_; }
  RuleSet ruleset() const { return ruleset_; }
  bool contains(const Conjunct& c) const { return (mask_ >> c.bit()) & 1U; }
  bool is_true() const { return mask_ == 0; }
  int size() const;
  std::vector<Conjunct> conjuncts() const;
  /// Minimal generating subset: weakest conjuncts are dropped first.
  std::vector<Conjunct> generators() const;
  /// `other` is implied by this level (this is at least as strict).
  bool implies(const LevelSpec& other) const { return (other.mask_ & ~mask_) == 0; }

  bool operator==(const LevelSpec& o) const { return mask_ == o.mask_; }

 private:
  ConjunctMask mask_ = 0;
  RuleSet ruleset_ = RuleSet::Base;
};

std::string to_string(const LevelSpec& l);
LevelSpec parse_level(const std::string& text, RuleSet rs);
bool is_graylevel(const LevelSpec& l);

/// Levels in preference order (index 0 is most preferred).
struct Lattice {
  RuleSet ruleset = RuleSet::Base;
  std::vector<LevelSpec> levels;

  int size() const { return static_cast<int>(levels.size()); }
  /// levels[i] <=_H levels[j]: j is at least as strict as i.
  bool leq(int i, int j) const { return levels[j].implies(levels[i]); }
  int index_of(const LevelSpec& l) const;  // -1 if absent
};

/// Default preference: gray levels first, then larger closure, then
/// lexicographic on the canonical conjunct order.
bool preferred_before(const LevelSpec& x, const LevelSpec& y);

Lattice enumerate_levels(RuleSet rs, bool include_true = false);

/// Reorders the lattice. Throws Error unless `order` is a permutation of the
/// levels that extends the implication order.
Lattice with_preference(const Lattice& lat, const std::vector<LevelSpec>& order);

/// Covering pairs (stricter, weaker) as lattice indices, ordered by
/// preference of the stricter then the weaker element.
std::vector<std::pair<int, int>> hasse_edges(const Lattice& lat);

std::string hasse_dot(const Lattice& lat);

}  // namespace coopsynt
