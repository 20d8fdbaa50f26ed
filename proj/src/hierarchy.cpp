#include "coopsynt/hierarchy.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "coopsynt/spec_model.hpp"

namespace coopsynt {

namespace {

constexpr Conjunct P(BaseProp b) { return {Modality::Plain, b}; }
constexpr Conjunct E(BaseProp b) { return {Modality::E, b}; }
constexpr Conjunct GE(BaseProp b) { return {Modality::GE, b}; }

constexpr BaseProp kA = BaseProp::A;
constexpr BaseProp kG = BaseProp::G;
constexpr BaseProp kImp = BaseProp::Implies;
constexpr BaseProp kAnd = BaseProp::And;
constexpr BaseProp kOr = BaseProp::Or;

ConjunctMask mask_of(const std::vector<Conjunct>& cs) {
  ConjunctMask m = 0;
  for (const auto& c : cs) m |= ConjunctMask{1} << c.bit();
  return m;
}

std::vector<Conjunct> sorted(std::vector<Conjunct> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Rule> base_rules() {
  return {
      {{P(kA)}, GE(kA)},
      {{P(kG)}, GE(kG)},
      {{P(kImp)}, GE(kImp)},
      {{P(kG)}, P(kImp)},
      {{GE(kAnd)}, GE(kA)},
      {{GE(kAnd)}, GE(kG)},
      {{GE(kG)}, GE(kImp)},
      {{P(kImp), P(kA)}, P(kG)},
      {{P(kImp), GE(kA)}, GE(kAnd)},
      {{P(kA), GE(kG)}, GE(kAnd)},
      {{GE(kImp), P(kA)}, GE(kG)},
  };
}

std::vector<Rule> or_rules() {
  auto r = base_rules();
  std::vector<Rule> extra{
      {{P(kOr)}, GE(kOr)},
      {{P(kG)}, P(kOr)},
      {{P(kA)}, P(kOr)},
      {{GE(kG)}, GE(kOr)},
      {{GE(kA)}, GE(kOr)},
      {{P(kImp), P(kOr)}, P(kG)},
      {{P(kImp), GE(kOr)}, GE(kG)},
  };
  r.insert(r.end(), extra.begin(), extra.end());
  return r;
}

std::vector<Rule> full_e_rules() {
  auto r = or_rules();
  std::vector<Rule> extra{
      {{GE(kA)}, E(kA)},
      {{GE(kG)}, E(kG)},
      {{GE(kAnd)}, E(kAnd)},
      {{GE(kImp)}, E(kImp)},
      {{GE(kOr)}, E(kOr)},
      {{E(kG)}, E(kImp)},
      {{E(kAnd)}, E(kA)},
      {{E(kAnd)}, E(kG)},
      {{P(kImp), E(kA)}, E(kAnd)},
      {{P(kA), E(kG)}, E(kAnd)},
      {{E(kImp), P(kA)}, E(kG)},
      {{E(kG)}, E(kOr)},
      {{E(kA)}, E(kOr)},
      {{P(kImp), E(kOr)}, E(kG)},
  };
  r.insert(r.end(), extra.begin(), extra.end());
  return r;
}

struct CompiledRule {
  ConjunctMask premises;
  ConjunctMask conclusion;
};

const std::vector<CompiledRule>& compiled(RuleSet rs) {
  static const auto make = [](const std::vector<Rule>& rules) {
    std::vector<CompiledRule> out;
    for (const auto& r : rules) out.push_back({mask_of(r.premises), mask_of({r.conclusion})});
    return out;
  };
  static const std::vector<CompiledRule> base = make(reduction_rules(RuleSet::Base));
  static const std::vector<CompiledRule> ors = make(reduction_rules(RuleSet::OrExtended));
  static const std::vector<CompiledRule> full = make(reduction_rules(RuleSet::FullE));
  switch (rs) {
    case RuleSet::Base: return base;
    case RuleSet::OrExtended: return ors;
    case RuleSet::FullE: return full;
  }
  return base;
}

// Order in which generators() tries to drop conjuncts: modal ones first,
// and within a modality the composite properties first.
int drop_rank(const Conjunct& c) {
  int mod = c.modality == Modality::GE ? 0 : c.modality == Modality::E ? 1 : 2;
  int base = 0;
  switch (c.base) {
    case BaseProp::And: base = 0; break;
    case BaseProp::Or: base = 1; break;
    case BaseProp::Implies: base = 2; break;
    case BaseProp::G: base = 3; break;
    case BaseProp::A: base = 4; break;
  }
  return mod * kNumBaseProps + base;
}

std::vector<Conjunct> conjuncts_of(ConjunctMask m) {
  std::vector<Conjunct> out;
  for (int b = 0; b < 32; ++b)
    if ((m >> b) & 1U) out.push_back(Conjunct::from_bit(b));
  return sorted(out);
}

std::string trim(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ' && ch != '\t' && ch != '\r' && ch != '\n') out += ch;
  return out;
}

}  // namespace

std::string to_string(BaseProp p) {
  switch (p) {
    case BaseProp::A: return "A";
    case BaseProp::G: return "G";
    case BaseProp::Implies: return "A->G";
    case BaseProp::And: return "A*G";
    case BaseProp::Or: return "A+G";
  }
  return "?";
}

std::string to_string(const Conjunct& c) {
  switch (c.modality) {
    case Modality::Plain: return to_string(c.base);
    case Modality::E: return "E(" + to_string(c.base) + ")";
    case Modality::GE: return "GE(" + to_string(c.base) + ")";
  }
  return "?";
}

std::string to_string(RuleSet r) {
  switch (r) {
    case RuleSet::Base: return "base";
    case RuleSet::OrExtended: return "or";
    case RuleSet::FullE: return "full-e";
  }
  return "?";
}

RuleSet parse_ruleset(const std::string& s) {
  if (s == "base") return RuleSet::Base;
  if (s == "or") return RuleSet::OrExtended;
  if (s == "full-e") return RuleSet::FullE;
  throw Error("unknown rule set '" + s + "' (expected base, or, full-e)");
}

const std::vector<Conjunct>& conjunct_alphabet(RuleSet rs) {
  static const std::vector<Conjunct> base =
      sorted({P(kImp), P(kG), P(kA), GE(kAnd), GE(kG), GE(kA), GE(kImp)});
  static const std::vector<Conjunct> ors = [] {
    auto v = base;
    v.push_back(P(kOr));
    v.push_back(GE(kOr));
    return sorted(v);
  }();
  static const std::vector<Conjunct> full = [] {
    auto v = ors;
    for (auto b : {kG, kA, kAnd, kImp, kOr}) v.push_back(E(b));
    return sorted(v);
  }();
  switch (rs) {
    case RuleSet::Base: return base;
    case RuleSet::OrExtended: return ors;
    case RuleSet::FullE: return full;
  }
  return base;
}

const std::vector<Rule>& reduction_rules(RuleSet rs) {
  static const std::vector<Rule> base = base_rules();
  static const std::vector<Rule> ors = or_rules();
  static const std::vector<Rule> full = full_e_rules();
  switch (rs) {
    case RuleSet::Base: return base;
    case RuleSet::OrExtended: return ors;
    case RuleSet::FullE: return full;
  }
  return base;
}

ConjunctMask alphabet_mask(RuleSet rs) { return mask_of(conjunct_alphabet(rs)); }

ConjunctMask closure_mask(ConjunctMask m, RuleSet rs) {
  if ((m & ~alphabet_mask(rs)) != 0) {
    for (int b = 0; b < 32; ++b)
      if (((m & ~alphabet_mask(rs)) >> b) & 1U)
        throw Error("conjunct " + to_string(Conjunct::from_bit(b)) + " is not part of the " + to_string(rs) +
                    " rule set");
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : compiled(rs)) {
      if ((r.premises & ~m) == 0 && (r.conclusion & ~m) != 0) {
        m |= r.conclusion;
        changed = true;
      }
    }
  }
  return m;
}

std::vector<Conjunct> reduction_closure(const std::vector<Conjunct>& conjuncts, RuleSet rs) {
  return LevelSpec(mask_of(conjuncts), rs).conjuncts();
}

int LevelSpec::size() const { return std::popcount(mask_); }

std::vector<Conjunct> LevelSpec::conjuncts() const { return conjuncts_of(mask_); }

std::vector<Conjunct> LevelSpec::generators() const {
  auto order = conjuncts();
  std::stable_sort(order.begin(), order.end(),
                   [](const Conjunct& x, const Conjunct& y) { return drop_rank(x) < drop_rank(y); });
  ConjunctMask gen = mask_;
  for (const auto& c : order) {
    ConjunctMask without = gen & ~(ConjunctMask{1} << c.bit());
    if (closure_mask(without, ruleset_) == mask_) gen = without;
  }
  return conjuncts_of(gen);
}

std::string to_string(const LevelSpec& l) {
  if (l.is_true()) return "true";
  auto gens = l.generators();
  const Conjunct a = P(kA), g = P(kG);
  bool both = std::count(gens.begin(), gens.end(), a) && std::count(gens.begin(), gens.end(), g);
  std::vector<std::string> parts;
  for (const auto& c : gens) {
    if (both && c == g) continue;
    parts.push_back(both && c == a ? "A*G" : to_string(c));
  }
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? " & " : "") + parts[k];
  return out;
}

LevelSpec parse_level(const std::string& text, RuleSet rs) {
  std::string s = trim(text);
  if (s.empty()) throw Error("empty level specification");
  if (s == "true") return LevelSpec(0, rs);
  ConjunctMask m = 0;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t amp = s.find('&', start);
    std::string part = s.substr(start, amp == std::string::npos ? std::string::npos : amp - start);
    start = amp == std::string::npos ? s.size() + 1 : amp + 1;
    Modality mod = Modality::Plain;
    std::string atom = part;
    if (part.rfind("GE(", 0) == 0 && part.back() == ')') {
      mod = Modality::GE;
      atom = part.substr(3, part.size() - 4);
    } else if (part.rfind("E(", 0) == 0 && part.back() == ')') {
      mod = Modality::E;
      atom = part.substr(2, part.size() - 3);
    }
    BaseProp base;
    if (atom == "A") base = kA;
    else if (atom == "G") base = kG;
    else if (atom == "A->G") base = kImp;
    else if (atom == "A*G") base = kAnd;
    else if (atom == "A+G") base = kOr;
    else throw Error("cannot parse level conjunct '" + part + "'");
    if (mod == Modality::Plain && base == kAnd) {
      m |= mask_of({P(kA), P(kG)});
    } else {
      m |= mask_of({Conjunct{mod, base}});
    }
  }
  return LevelSpec(m, rs);
}

bool is_graylevel(const LevelSpec& l) { return l.contains(P(kImp)); }

int Lattice::index_of(const LevelSpec& l) const {
  for (int k = 0; k < size(); ++k)
    if (levels[k] == l) return k;
  return -1;
}

bool preferred_before(const LevelSpec& x, const LevelSpec& y) {
  if (is_graylevel(x) != is_graylevel(y)) return is_graylevel(x);
  if (x.size() != y.size()) return x.size() > y.size();
  auto cx = x.conjuncts(), cy = y.conjuncts();
  return std::lexicographical_compare(cx.begin(), cx.end(), cy.begin(), cy.end());
}

Lattice enumerate_levels(RuleSet rs, bool include_true) {
  const auto& alpha = conjunct_alphabet(rs);
  std::set<ConjunctMask> closed;
  const std::uint32_t subsets = std::uint32_t{1} << alpha.size();
  for (std::uint32_t sub = 0; sub < subsets; ++sub) {
    ConjunctMask m = 0;
    for (std::size_t k = 0; k < alpha.size(); ++k)
      if ((sub >> k) & 1U) m |= ConjunctMask{1} << alpha[k].bit();
    closed.insert(closure_mask(m, rs));
  }
  Lattice lat;
  lat.ruleset = rs;
  for (ConjunctMask m : closed)
    if (m != 0 || include_true) lat.levels.emplace_back(m, rs);
  std::sort(lat.levels.begin(), lat.levels.end(), preferred_before);
  return lat;
}

Lattice with_preference(const Lattice& lat, const std::vector<LevelSpec>& order) {
  if (order.size() != lat.levels.size()) throw Error("preference must list every level exactly once");
  Lattice out;
  out.ruleset = lat.ruleset;
  for (const auto& l : order) {
    if (lat.index_of(l) < 0) throw Error("preference lists unknown level " + to_string(l));
    if (out.index_of(l) >= 0) throw Error("preference lists level " + to_string(l) + " twice");
    out.levels.push_back(l);
  }
  for (int i = 0; i < out.size(); ++i)
    for (int j = i + 1; j < out.size(); ++j)
      if (out.levels[j].implies(out.levels[i]))
        throw Error("preference puts " + to_string(out.levels[i]) + " before the stricter " +
                    to_string(out.levels[j]));
  return out;
}

std::vector<std::pair<int, int>> hasse_edges(const Lattice& lat) {
  const int n = lat.size();
  auto strictly = [&](int hi, int lo) { return hi != lo && lat.leq(lo, hi); };
  std::vector<std::pair<int, int>> edges;
  for (int hi = 0; hi < n; ++hi)
    for (int lo = 0; lo < n; ++lo) {
      if (!strictly(hi, lo)) continue;
      bool covered = true;
      for (int mid = 0; mid < n && covered; ++mid)
        if (strictly(hi, mid) && strictly(mid, lo)) covered = false;
      if (covered) edges.emplace_back(hi, lo);
    }
  return edges;
}

std::string hasse_dot(const Lattice& lat) {
  std::ostringstream out;
  out << "digraph hierarchy {\n  rankdir=TB;\n  node [shape=box];\n";
  for (int k = 0; k < lat.size(); ++k) {
    out << "  l" << k << " [label=\"" << to_string(lat.levels[k]) << "\"";
    if (is_graylevel(lat.levels[k])) out << ", style=filled, fillcolor=lightgray";
    out << "];\n";
  }
  for (auto [hi, lo] : hasse_edges(lat)) out << "  l" << hi << " -> l" << lo << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace coopsynt
