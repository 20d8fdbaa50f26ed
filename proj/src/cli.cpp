#include "coopsynt/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "coopsynt/checker.hpp"
#include "coopsynt/maxcoop.hpp"
#include "json.hpp"

namespace coopsynt {

namespace {

using nlohmann::ordered_json;

struct Style {
  bool on = false;
  std::string gray(const std::string& s) const { return on ? "\033[90m" + s + "\033[0m" : s; }
  std::string bold(const std::string& s) const { return on ? "\033[1m" + s + "\033[0m" : s; }
  std::string good(const std::string& s) const { return on ? "\033[32m" + s + "\033[0m" : s; }
  std::string bad(const std::string& s) const { return on ? "\033[31m" + s + "\033[0m" : s; }
};

struct UsageError : Error {
  using Error::Error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

// Reports parse errors as file:line:column.
template <typename F>
auto with_file(const std::string& path, F&& parse) {
  try {
    return parse(read_text(path));
  } catch (const ParseError& e) {
    throw Error(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.detail());
  }
}

Dra load_dra(const std::string& path) {
  return with_file(path, [](const std::string& t) { return parse_dra(t); });
}
Mealy load_mealy(const std::string& path) {
  return with_file(path, [](const std::string& t) { return parse_mealy(t); });
}

std::vector<LevelSpec> load_preference(const std::string& path, RuleSet rs) {
  std::vector<LevelSpec> out;
  std::istringstream in(read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_level(line, rs));
  }
  return out;
}

Lattice make_lattice(RuleSet rs, bool include_true, const std::string& pref_path) {
  auto lat = enumerate_levels(rs, include_true);
  if (!pref_path.empty()) lat = with_preference(lat, load_preference(pref_path, rs));
  return lat;
}

std::vector<int> parse_inputs(const Alphabet& alpha, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) continue;
    int i = alpha.input_index(tok);
    if (i < 0) throw UsageError("unknown input letter '" + tok + "'");
    out.push_back(i);
  }
  return out;
}

ordered_json lasso_json(const Alphabet& alpha, const Lasso& l) {
  auto letters = [&](const Word& w) {
    ordered_json a = ordered_json::array();
    for (int x : w) a.push_back(alpha.letter_name(x));
    return a;
  };
  ordered_json j;
  j["prefix"] = letters(l.prefix);
  j["cycle"] = letters(l.cycle);
  return j;
}

struct Common {
  std::string ruleset = "base";
  std::string preference;
  RuleSet rs() const { return parse_ruleset(ruleset); }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--set", c.ruleset, "Rule set: base, or, full-e")
      ->check(CLI::IsMember({"base", "or", "full-e"}));
}

BaseAutomata load_bases(const std::string& a_path, const std::string& g_path, RuleSet rs) {
  return make_bases(load_dra(a_path), load_dra(g_path), rs);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const char* env = std::getenv("COOPSYNT_COLOR");
  Style style;
  style.on = (env == nullptr || std::string(env) != "0") && &out == &std::cout && isatty(STDOUT_FILENO);

  CLI::App app{"Maximally cooperative synthesis over assume-guarantee cooperation levels", "coopsynt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "coopsynt 0.1.0");

  // hierarchy
  Common hc;
  bool count = false, include_true = false;
  std::string hdot;
  auto* hier = app.add_subcommand("hierarchy", "List cooperation levels in preference order");
  add_common(hier, hc);
  hier->add_flag("--count", count, "Print only the number of levels");
  hier->add_flag("--include-true", include_true, "Include the empty level 'true'");
  hier->add_option("--preference", hc.preference, "File with one level per line, most preferred first");
  hier->add_option("--dot", hdot, "Write the Hasse diagram as DOT ('-' for stdout)");

  // synthesize
  Common sc;
  std::string a_path, g_path, machine_out, report_out, mode = "latched", sdot, implies_path, and_path, or_path;
  bool stats = false;
  auto* synth = app.add_subcommand("synthesize", "Synthesize a maximally cooperative Mealy machine");
  add_common(synth, sc);
  synth->add_option("assumption", a_path, "Assumption automaton (.dra)")->required();
  synth->add_option("guarantee", g_path, "Guarantee automaton (.dra)")->required();
  synth->add_option("-o,--output", machine_out, "Annotated machine output ('-' for stdout)");
  synth->add_option("--report", report_out, "JSON report output ('-' for stdout)");
  synth->add_option("--mode", mode, "Acceptance product: latched or literal")
      ->check(CLI::IsMember({"latched", "literal"}));
  synth->add_option("--preference", sc.preference, "File with one level per line, most preferred first");
  synth->add_option("--implies", implies_path, "Automaton to use for A->G");
  synth->add_option("--and", and_path, "Automaton to use for A*G");
  synth->add_option("--or", or_path, "Automaton to use for A+G");
  synth->add_flag("--stats", stats, "Add game sizes and solve times to the report");
  synth->add_option("--dot", sdot, "Write the combined tree automaton as DOT");

  // check
  Common cc;
  std::string m_path, ca_path, cg_path, level_text, split_text;
  auto* check = app.add_subcommand("check", "Check a machine against a cooperation level");
  add_common(check, cc);
  check->add_option("machine", m_path, "Machine (.mealy)")->required();
  check->add_option("assumption", ca_path, "Assumption automaton (.dra)")->required();
  check->add_option("guarantee", cg_path, "Guarantee automaton (.dra)")->required();
  check->add_option("--level", level_text, "Level, e.g. \"A->G & GE(A)\"")->required();
  check->add_option("--split", split_text, "Comma-separated inputs leading to the split node");

  // classify
  Common kc;
  std::string km_path, ka_path, kg_path, ksplit;
  bool k_true = false;
  auto* classify_cmd = app.add_subcommand("classify", "Print the maximal levels a machine satisfies");
  add_common(classify_cmd, kc);
  classify_cmd->add_option("machine", km_path, "Machine (.mealy)")->required();
  classify_cmd->add_option("assumption", ka_path, "Assumption automaton (.dra)")->required();
  classify_cmd->add_option("guarantee", kg_path, "Guarantee automaton (.dra)")->required();
  classify_cmd->add_option("--split", ksplit, "Comma-separated inputs leading to the split node");
  classify_cmd->add_flag("--include-true", k_true, "Report 'true' when no level holds");

  // simulate
  std::string sm_path, inputs_text;
  int random_steps = -1;
  unsigned seed = 1;
  auto* sim = app.add_subcommand("simulate", "Run a machine on an input sequence");
  sim->add_option("machine", sm_path, "Machine (.mealy)")->required();
  auto* inputs_opt = sim->add_option("--inputs", inputs_text, "Comma-separated input letters");
  auto* random_opt = sim->add_option("--random", random_steps, "Draw this many inputs uniformly")
                         ->check(CLI::NonNegativeNumber);
  sim->add_option("--seed", seed, "Seed for --random");
  inputs_opt->excludes(random_opt);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*hier) {
      auto lat = make_lattice(hc.rs(), include_true, hc.preference);
      if (count) {
        out << lat.size() << "\n";
      } else {
        for (int i = 0; i < lat.size(); ++i) {
          std::string name = to_string(lat.levels[i]);
          out << (i + 1) << "\t" << (is_graylevel(lat.levels[i]) ? style.bold(name) + "\t(gray)" : name) << "\n";
        }
      }
      if (!hdot.empty()) write_text(hdot, hasse_dot(lat), out);
      return kExitOk;
    }

    if (*synth) {
      SynthesisOptions opts;
      opts.ruleset = sc.rs();
      opts.mode = mode == "literal" ? AcceptanceMode::Literal : AcceptanceMode::Latched;
      if (!sc.preference.empty()) opts.preference = load_preference(sc.preference, opts.ruleset);
      if (!implies_path.empty()) opts.overrides.emplace(BaseProp::Implies, load_dra(implies_path));
      if (!and_path.empty()) opts.overrides.emplace(BaseProp::And, load_dra(and_path));
      if (!or_path.empty()) opts.overrides.emplace(BaseProp::Or, load_dra(or_path));
      auto r = synthesize_max_coop(load_dra(a_path), load_dra(g_path), opts);
      write_text(machine_out, render_mealy(r.machine), out);
      if (!report_out.empty()) write_text(report_out, synthesis_report(r, stats), out);
      if (!sdot.empty()) write_text(sdot, tree_dot(r.coop.automaton), out);
      err << "initial level: " << style.good(to_string(r.ix.lattice.levels[r.coop.initial_level])) << ", "
          << r.machine.num_states() << " states, " << r.switches.size() << " level switch"
          << (r.switches.size() == 1 ? "" : "es") << "\n";
      return kExitOk;
    }

    if (*check) {
      auto m = load_mealy(m_path);
      auto base = load_bases(ca_path, cg_path, cc.rs());
      auto level = parse_level(level_text, cc.rs());
      auto split = parse_inputs(m.alphabet, split_text);
      LevelChecker checker(bobble_tree(m, split), base);
      ordered_json j;
      j["level"] = to_string(level);
      j["satisfied"] = checker.satisfies(level);
      ordered_json parts = ordered_json::array();
      for (const auto& v : checker.explain(level)) {
        ordered_json p;
        p["conjunct"] = to_string(v.conjunct);
        p["satisfied"] = v.result.satisfied;
        bool show = v.result.witness && (v.conjunct.modality == Modality::Plain ? !v.result.satisfied
                                                                                 : v.result.satisfied);
        if (show) p["witness_lasso"] = lasso_json(m.alphabet, *v.result.witness);
        parts.push_back(std::move(p));
      }
      j["conjuncts"] = std::move(parts);
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*classify_cmd) {
      auto m = load_mealy(km_path);
      auto base = load_bases(ka_path, kg_path, kc.rs());
      auto lat = enumerate_levels(kc.rs(), k_true);
      auto split = parse_inputs(m.alphabet, ksplit);
      auto got = bobble_level(m, split, lat, base);
      ordered_json j;
      j["machine"] = m.name;
      ordered_json levels = ordered_json::array();
      for (int i : got) levels.push_back(to_string(lat.levels[i]));
      j["maximal"] = std::move(levels);
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*sim) {
      auto m = load_mealy(sm_path);
      std::vector<int> inputs;
      if (random_steps >= 0) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> pick(0, m.alphabet.num_inputs() - 1);
        for (int k = 0; k < random_steps; ++k) inputs.push_back(pick(rng));
      } else {
        inputs = parse_inputs(m.alphabet, inputs_text);
      }
      auto level = [&](int s) { return m.annotated() ? m.level_of[s] : std::string("-"); };
      int s = m.initial;
      out << "start state=" << m.state_names[s] << " level=" << level(s) << "\n";
      int switches = 0;
      for (std::size_t k = 0; k < inputs.size(); ++k) {
        const int i = inputs[k];
        out << "step " << (k + 1) << " out=" << m.alphabet.outputs[m.output_of[s]]
            << " in=" << m.alphabet.inputs[i] << " level=" << level(s) << "\n";
        int next = m.step(s, i);
        if (level(next) != level(s)) {
          ++switches;
          out << style.bold("switch") << " after step " << (k + 1) << ": " << level(s) << " -> " << level(next)
              << "\n";
        }
        s = next;
      }
      if (!inputs.empty()) out << "switches: " << switches << "\n";
      return kExitOk;
    }
  } catch (const Unrealizable& e) {
    err << style.bad("unrealizable") << ": " << e.what() << "\n";
    return kExitUnrealizable;
  } catch (const std::exception& e) {
    err << style.bad("error") << ": " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace coopsynt
