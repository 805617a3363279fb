#pragma once

#include <CLI11.hpp>
#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "judgment/evidence.hpp"
#include "judgment/formula.hpp"
#include "judgment/implication.hpp"
#include "judgment/info.hpp"
#include "judgment/scenarios.hpp"
#include "judgment/serialization.hpp"
#include "judgment/session.hpp"

namespace judgment::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;
inline constexpr const char* kSessionEnv = "JUDGMENT_CALC_SESSION";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "a&~b" style label of a world.
inline std::string world_label(const WorldSpace& space, WorldIndex w) {
  std::string out;
  for (std::size_t i = 0; i < space.atom_count(); ++i) {
    if (!out.empty()) out += "&";
    out += (space.holds(w, i) ? "" : "~") + space.atoms()[i];
  }
  return out;
}

inline void print_circumstance(const Circumstance& c, std::ostream& out) {
  out << "atoms: ";
  for (std::size_t i = 0; i < c.space()->atom_count(); ++i) out << (i ? ", " : "") << c.space()->atoms()[i];
  out << "\n";
  for (std::size_t k = 0; k < c.tiers().size(); ++k) {
    out << "tier " << k << ":";
    for (const auto& [w, weight] : c.tiers()[k].weights())
      out << "  " << world_label(*c.space(), w) << "=" << to_display_string(weight);
    out << "\n";
  }
}

/// Prints "P(x): old -> new" for every atom whose probability moved.
inline void print_atom_changes(const Circumstance& before, const Circumstance& after, std::ostream& out) {
  bool any = false;
  for (const auto& name : after.space()->atoms()) {
    const Rational was = prob(before, Proposition::atom(before.space(), name));
    const Rational now = prob(after, Proposition::atom(after.space(), name));
    if (was != now) {
      out << "P(" << name << "): " << to_display_string(was) << " -> " << to_display_string(now) << "\n";
      any = true;
    }
  }
  if (!any) out << "no atom probability changed\n";
}

/// "w=num/den,w=num/den" with decimal world indices; weights are normalized.
inline WeightMap parse_tier_spec(const std::string& spec, const WorldSpace& space) {
  WeightMap weights;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("tier entry '" + item + "' is not world=weight");
    const std::string key = item.substr(0, eq);
    auto world = parse_rational(key);
    if (!world || world->get_den() != 1 || sgn(*world) < 0)
      throw UsageError("tier entry '" + item + "' needs a decimal world index");
    const unsigned long index = world->get_num().get_ui();
    if (index >= space.world_count())
      fail(ErrorKind::UnknownWorld, "world " + key + " is outside the space");
    auto weight = parse_rational(item.substr(eq + 1));
    if (!weight) fail(ErrorKind::CorruptRationals, "'" + item.substr(eq + 1) + "' is not a rational");
    weights[static_cast<WorldIndex>(index)] += *weight;
  }
  return weights;
}

inline std::vector<Tier> tiers_from_specs(const std::vector<std::string>& specs, const WorldSpace& space) {
  std::vector<Tier> tiers;
  for (const auto& spec : specs) {
    auto tier = Tier::normalized(parse_tier_spec(spec, space));
    if (!tier) fail(ErrorKind::InvalidTier, "tier '" + spec + "' has no positive weight");
    tiers.push_back(std::move(*tier));
  }
  return tiers;
}

// ---------------------------------------------------------------------------
// Interactive loop

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Splits on whitespace; double quotes group words.
inline std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  bool has = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
      has = true;
    } else if (!quoted && std::isspace(static_cast<unsigned char>(ch))) {
      if (has) out.push_back(cur);
      cur.clear();
      has = false;
    } else {
      cur += ch;
      has = true;
    }
  }
  if (quoted) throw UsageError("unterminated quote");
  if (has) out.push_back(cur);
  return out;
}

/// Position of the first "->" outside parentheses.
inline std::size_t top_level_arrow(std::string_view text) {
  int depth = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth == 0 && text[i] == '-' && text[i + 1] == '>') return i;
  }
  return std::string_view::npos;
}

}  // namespace detail

inline constexpr const char* kReplHelp =
    "commands:\n"
    "  judge <formula>                       give a proposition\n"
    "  prob <formula>                        exact probability\n"
    "  info <formula>                        information in bits\n"
    "  evidence <f1> -> <f2>                 e(f1 -> f2); parenthesize inner ->\n"
    "  imply <a> <b> --mode <m>              apply an implication judgment\n"
    "  counterfactual <a> <b>                make a sufficient for b when P(a) = 0\n"
    "  let <name> = <formula>                bind a name\n"
    "  show | history | undo | save [path] | help | quit\n";

/// Runs line commands until EOF or quit. Errors on one line are reported and
/// the loop continues.
inline int repl(Session& session, const std::string& path, std::istream& in, std::ostream& out, bool prompt) {
  std::string line;
  for (;;) {
    if (prompt) out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    const std::string text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto space_at = text.find_first_of(" \t");
    const std::string command = text.substr(0, space_at);
    const std::string rest = space_at == std::string::npos ? "" : detail::trim(text.substr(space_at));
    try {
      const Circumstance before = session.current();
      if (command == "quit" || command == "exit") {
        break;
      } else if (command == "help") {
        out << kReplHelp;
      } else if (command == "judge") {
        session.apply(JudgeStep{rest});
        print_atom_changes(before, session.current(), out);
      } else if (command == "prob") {
        out << "P(" << rest << ") = " << to_display_string(prob(session.current(), session.parse(rest))) << "\n";
      } else if (command == "info") {
        out << "i(" << rest << ") = " << info(session.current(), session.parse(rest)) << "\n";
      } else if (command == "evidence") {
        const auto arrow = detail::top_level_arrow(rest);
        if (arrow == std::string::npos) throw UsageError("usage: evidence <f1> -> <f2>");
        const std::string lhs = detail::trim(rest.substr(0, arrow));
        const std::string rhs = detail::trim(rest.substr(arrow + 2));
        out << "e(" << lhs << " -> " << rhs
            << ") = " << evidence(session.current(), session.parse(lhs), session.parse(rhs)) << "\n";
      } else if (command == "imply") {
        auto tokens = detail::tokenize(rest);
        if (tokens.size() != 4 || tokens[2] != "--mode") throw UsageError("usage: imply <a> <b> --mode <m>");
        auto mode = parse_mode(tokens[3]);
        if (!mode) throw UsageError("unknown mode '" + tokens[3] + "'");
        session.apply(ImplyStep{tokens[0], tokens[1], *mode});
        print_atom_changes(before, session.current(), out);
        out << "P(" << tokens[1] << "|" << tokens[0] << ") = "
            << to_display_string(
                   cond_prob(session.current(), session.parse(tokens[1]), session.parse(tokens[0])))
            << "\n";
      } else if (command == "counterfactual") {
        auto tokens = detail::tokenize(rest);
        if (tokens.size() != 2) throw UsageError("usage: counterfactual <a> <b>");
        const Rational old_cond = cond_prob(before, session.parse(tokens[1]), session.parse(tokens[0]));
        session.apply(CounterfactualStep{tokens[0], tokens[1]});
        print_atom_changes(before, session.current(), out);
        out << "P(" << tokens[1] << "|" << tokens[0] << "): " << to_display_string(old_cond) << " -> "
            << to_display_string(
                   cond_prob(session.current(), session.parse(tokens[1]), session.parse(tokens[0])))
            << "\n";
      } else if (command == "let") {
        const auto eq = rest.find('=');
        if (eq == std::string::npos) throw UsageError("usage: let <name> = <formula>");
        const std::string name = detail::trim(rest.substr(0, eq));
        session.bind(name, detail::trim(rest.substr(eq + 1)));
        out << name << " bound\n";
      } else if (command == "undo") {
        session.undo();
        print_atom_changes(before, session.current(), out);
      } else if (command == "history") {
        if (session.history().empty()) out << "(no judgments)\n";
        for (std::size_t i = 0; i < session.history().size(); ++i)
          out << i + 1 << ". " << describe(session.history()[i]) << "\n";
      } else if (command == "show") {
        print_circumstance(session.current(), out);
      } else if (command == "save") {
        const std::string target = rest.empty() ? path : rest;
        if (target.empty()) throw UsageError("usage: save <path>");
        save_session(session, target);
        out << "saved " << target << "\n";
      } else {
        throw UsageError("unknown command '" + command + "' (try help)");
      }
    } catch (const Error& e) {
      out << "error: " << e.name() << ": " << e.what() << "\n";
    } catch (const UsageError& e) {
      out << "usage error: " << e.what() << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// Batch subcommands

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err,
               bool interactive = false) {
  CLI::App app{"judgment-calc: belief revision over finite propositional worlds"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::vector<std::string> args;
  auto positional = [&](CLI::App* sub, const char* what) {
    sub->add_option("args", args, what);
    return sub;
  };

  std::string atoms_csv;
  std::vector<std::string> tier_specs;
  bool uniform = false;
  auto* cmd_new = positional(app.add_subcommand("new", "create a session"), "[session]");
  cmd_new->add_option("--atoms", atoms_csv, "comma-separated atom names")->required();
  cmd_new->add_flag("--uniform", uniform, "uniform single tier (default)");
  cmd_new->add_option("--tier", tier_specs, "tier as world=weight,... (repeat for deeper tiers)")
      ->allow_extra_args(false);

  auto* cmd_set = positional(app.add_subcommand("set-weights", "replace the tiers"), "[session]");
  cmd_set->add_option("--tier", tier_specs, "tier as world=weight,... (repeat for deeper tiers)")
      ->required()
      ->allow_extra_args(false);

  auto* cmd_prob = positional(app.add_subcommand("prob", "P(f)"), "[session] <f>");
  auto* cmd_cond = positional(app.add_subcommand("cond-prob", "P(b|a)"), "[session] <b> <a>");
  auto* cmd_info = positional(app.add_subcommand("info", "i(f)"), "[session] <f>");
  auto* cmd_common = positional(app.add_subcommand("common-info", "i(a;b)"), "[session] <a> <b>");
  auto* cmd_evidence = positional(app.add_subcommand("evidence", "e(b -> a)"), "[session] <b> <a>");
  auto* cmd_mutual = positional(app.add_subcommand("mutual-evidence", "e_m(a;b)"), "[session] <a> <b>");
  auto* cmd_judge = positional(app.add_subcommand("judge", "give a proposition"), "[session] <f>");

  std::string mode_text = "sufficient";
  bool apply_flag = false;
  bool construct_flag = false;
  double info_t = 0.0;
  auto* cmd_imply = positional(app.add_subcommand("imply", "judge that a implies b"), "[session] <a> <b>");
  cmd_imply->add_option("--mode", mode_text, "material|sufficient|necessary|conservative")
      ->check(CLI::IsMember({"material", "sufficient", "necessary", "conservative"}));
  auto* apply_opt = cmd_imply->add_flag("--apply", apply_flag, "apply to the session");
  auto* construct_opt = cmd_imply->add_flag("--construct-t", construct_flag, "build an explicit T");
  auto* info_opt = cmd_imply->add_option("--info-t", info_t, "i(T) in bits for --construct-t");
  apply_opt->excludes(construct_opt);
  info_opt->needs(construct_opt);

  auto* cmd_cf = positional(app.add_subcommand("counterfactual", "make a sufficient for b when P(a) = 0"),
                            "[session] <a> <b>");
  auto* cmd_decompose = positional(app.add_subcommand("decompose", "independent C, D, E for correlated a, b"),
                                   "[session] <a> <b>");
  auto* cmd_indep = positional(app.add_subcommand("indep-consequence", "independent consequence of a, b"),
                               "[session] <a> <b>");

  std::string scenario_kind;
  std::string config_path;
  bool json_flag = false;
  auto* cmd_scenario = app.add_subcommand("scenario", "run the coin or raven scenario");
  cmd_scenario->add_option("kind", scenario_kind, "coin|raven")->required()->check(CLI::IsMember({"coin", "raven"}));
  cmd_scenario->add_option("--config", config_path, "JSON config file");
  cmd_scenario->add_flag("--json", json_flag, "print the report as JSON");

  auto* cmd_repl = positional(app.add_subcommand("repl", "interactive loop"), "[session]");
  auto* cmd_history = positional(app.add_subcommand("history", "list judgments"), "[session]");
  auto* cmd_undo = positional(app.add_subcommand("undo", "drop the last judgment"), "[session]");
  auto* cmd_show = positional(app.add_subcommand("show", "print the tiers"), "[session]");
  auto* cmd_bind = positional(app.add_subcommand("bind", "name a formula"), "[session] <name> <f>");

  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  // Splits positionals into (session path, operands).
  auto operands = [&](std::size_t count) {
    std::string path;
    std::vector<std::string> rest;
    if (args.size() == count + 1) {
      path = args.front();
      rest.assign(args.begin() + 1, args.end());
    } else if (args.size() == count) {
      const char* env = std::getenv(kSessionEnv);
      if (!env || !*env)
        throw UsageError("missing session path (or set " + std::string(kSessionEnv) + ")");
      path = env;
      rest = args;
    } else {
      throw UsageError("expected " + std::to_string(count) + " operand(s) after the session path, got " +
                       std::to_string(args.size()));
    }
    return std::pair{path, rest};
  };

  try {
    if (cmd_new->parsed()) {
      auto [path, rest] = operands(0);
      std::vector<std::string> atoms;
      std::stringstream ss(atoms_csv);
      for (std::string a; std::getline(ss, a, ',');) atoms.push_back(detail::trim(a));
      SpacePtr space = build_space(atoms);
      if (uniform && !tier_specs.empty()) throw UsageError("--uniform and --tier are exclusive");
      Circumstance c = tier_specs.empty() ? Circumstance::uniform(space)
                                          : Circumstance(space, tiers_from_specs(tier_specs, *space));
      save_session(Session(c), path);
      out << "created " << path << ": " << space->atom_count() << " atoms, " << space->world_count()
          << " worlds, " << c.tiers().size() << " tier(s)\n";
      return kOk;
    }
    if (cmd_scenario->parsed()) {
      Json config = Json::object();
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) fail(ErrorKind::FileNotFound, "cannot read config " + config_path);
        try {
          config = Json::parse(f);
        } catch (const Json::parse_error& e) {
          fail(ErrorKind::ConfigInvalid, config_path + " is not valid JSON: " + e.what());
        }
      }
      const ScenarioReport report = scenario_kind == "coin" ? run_coin(coin_config_from_json(config))
                                                            : run_raven(raven_config_from_json(config));
      if (json_flag)
        out << to_json(report).dump(2) << "\n";
      else
        out << to_text(report);
      return kOk;
    }

    // Everything else works on an existing session.
    auto with_session = [&](std::size_t count) {
      auto [path, rest] = operands(count);
      return std::tuple{path, load_session(path), rest};
    };

    if (cmd_prob->parsed()) {
      auto [path, s, f] = with_session(1);
      out << to_display_string(prob(s.current(), s.parse(f[0]))) << "\n";
    } else if (cmd_cond->parsed()) {
      auto [path, s, f] = with_session(2);
      out << to_display_string(cond_prob(s.current(), s.parse(f[0]), s.parse(f[1]))) << "\n";
    } else if (cmd_info->parsed()) {
      auto [path, s, f] = with_session(1);
      out << info(s.current(), s.parse(f[0])) << "\n";
    } else if (cmd_common->parsed()) {
      auto [path, s, f] = with_session(2);
      out << common_info(s.current(), s.parse(f[0]), s.parse(f[1])) << "\n";
    } else if (cmd_evidence->parsed()) {
      auto [path, s, f] = with_session(2);
      out << evidence(s.current(), s.parse(f[0]), s.parse(f[1])) << "\n";
    } else if (cmd_mutual->parsed()) {
      auto [path, s, f] = with_session(2);
      out << mutual_evidence(s.current(), s.parse(f[0]), s.parse(f[1])) << "\n";
    } else if (cmd_judge->parsed()) {
      auto [path, s, f] = with_session(1);
      const Circumstance before = s.current();
      s.apply(JudgeStep{f[0]});
      save_session(s, path);
      print_atom_changes(before, s.current(), out);
    } else if (cmd_imply->parsed()) {
      auto [path, s, f] = with_session(2);
      const ImplicationMode mode = *parse_mode(mode_text);
      const Circumstance& c = s.current();
      const Proposition a = s.parse(f[0]);
      const Proposition b = s.parse(f[1]);
      if (apply_flag) {
        const Circumstance before = c;
        s.apply(ImplyStep{f[0], f[1], mode});
        save_session(s, path);
        const Circumstance& after = s.current();
        out << "P(" << f[0] << "): " << to_display_string(prob(before, a)) << " -> "
            << to_display_string(prob(after, a)) << "\n";
        out << "P(" << f[1] << "): " << to_display_string(prob(before, b)) << " -> "
            << to_display_string(prob(after, b)) << "\n";
        out << "P(" << f[1] << "|" << f[0] << "): " << to_display_string(cond_prob(before, b, a)) << " -> "
            << to_display_string(cond_prob(after, b, a)) << "\n";
      } else if (construct_flag) {
        if (info_opt->count() == 0) throw UsageError("--construct-t needs --info-t <bits>");
        const ConstructedT built = construct_T(c, a, b, mode, ExtendedReal(info_t));
        const Circumstance& e = built.circumstance;
        out << "P(T) = " << to_display_string(built.prob_t) << "\n";
        out << "i(T) = " << surprisal(built.prob_t) << "\n";
        out << "P(a|T) = " << to_display_string(cond_prob(e, built.a, built.t)) << "\n";
        out << "P(b|T) = " << to_display_string(cond_prob(e, built.b, built.t)) << "\n";
        if (built.prob_t < 1) {
          out << "P(a&b|~T) = " << to_display_string(cond_prob(e, built.a & built.b, ~built.t)) << "\n";
          out << "P(~a&~b|~T) = " << to_display_string(cond_prob(e, ~built.a & ~built.b, ~built.t)) << "\n";
        }
      } else {
        const CellTransport m = transport_for(c, a, b, mode);
        out << "m(a&b) = " << to_display_string(m.ab) << "\n";
        out << "m(a&~b) = " << to_display_string(m.a_not_b) << "\n";
        out << "m(~a&b) = " << to_display_string(m.not_a_b) << "\n";
        out << "m(~a&~b) = " << to_display_string(m.not_a_not_b) << "\n";
        out << "min i(T) = " << min_info_T(c, a, b, mode) << "\n";
      }
    } else if (cmd_cf->parsed()) {
      auto [path, s, f] = with_session(2);
      const Circumstance before = s.current();
      const Proposition a = s.parse(f[0]);
      const Proposition b = s.parse(f[1]);
      s.apply(CounterfactualStep{f[0], f[1]});
      save_session(s, path);
      print_atom_changes(before, s.current(), out);
      out << "P(" << f[1] << "|" << f[0] << "): " << to_display_string(cond_prob(before, b, a)) << " -> "
          << to_display_string(cond_prob(s.current(), b, a)) << "\n";
    } else if (cmd_decompose->parsed()) {
      auto [path, s, f] = with_session(2);
      const CommonDecomposition d = decompose_common(s.current(), s.parse(f[0]), s.parse(f[1]));
      const Circumstance& e = d.circumstance;
      out << "P(C) = " << to_display_string(prob(e, d.c)) << "\n";
      out << "P(D) = " << to_display_string(prob(e, d.d)) << "\n";
      out << "P(E) = " << to_display_string(prob(e, d.e)) << "\n";
      out << "i(D) = " << info(e, d.d) << "\n";
      out << "i(a;b) = " << common_info(s.current(), s.parse(f[0]), s.parse(f[1])) << "\n";
    } else if (cmd_indep->parsed()) {
      auto [path, s, f] = with_session(2);
      const IndependentConsequence r = independent_consequence(s.current(), s.parse(f[0]), s.parse(f[1]));
      const Circumstance& e = r.circumstance;
      out << "P(C) = " << to_display_string(prob(e, r.consequence)) << "\n";
      out << "i(C) = " << info(e, r.consequence) << "\n";
      out << "i(a;b) = " << common_info(s.current(), s.parse(f[0]), s.parse(f[1])) << "\n";
      out << "P(a&b|C) = " << to_display_string(cond_prob(e, r.a & r.b, r.consequence)) << "\n";
    } else if (cmd_set->parsed()) {
      auto [path, s, f] = with_session(0);
      const Circumstance before = s.current();
      s.apply(SetWeightsStep{tiers_from_specs(tier_specs, *before.space())});
      save_session(s, path);
      print_atom_changes(before, s.current(), out);
    } else if (cmd_repl->parsed()) {
      auto [path, s, f] = with_session(0);
      return repl(s, path, in, out, interactive);
    } else if (cmd_history->parsed()) {
      auto [path, s, f] = with_session(0);
      if (s.history().empty()) out << "(no judgments)\n";
      for (std::size_t i = 0; i < s.history().size(); ++i) out << i + 1 << ". " << describe(s.history()[i]) << "\n";
    } else if (cmd_undo->parsed()) {
      auto [path, s, f] = with_session(0);
      const Circumstance before = s.current();
      s.undo();
      save_session(s, path);
      print_atom_changes(before, s.current(), out);
    } else if (cmd_show->parsed()) {
      auto [path, s, f] = with_session(0);
      print_circumstance(s.current(), out);
    } else if (cmd_bind->parsed()) {
      auto [path, s, f] = with_session(2);
      s.bind(f[0], f[1]);
      save_session(s, path);
      out << f[0] << " bound\n";
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace judgment::cli
