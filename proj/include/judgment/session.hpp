#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "judgment/formula.hpp"
#include "judgment/implication.hpp"
#include "judgment/serialization.hpp"

namespace judgment {

inline constexpr std::string_view kSessionVersion = "judgment-calculus/1";

struct JudgeStep {
  std::string formula;
};
struct ImplyStep {
  std::string antecedent;
  std::string consequent;
  ImplicationMode mode;
};
struct CounterfactualStep {
  std::string antecedent;
  std::string consequent;
};
struct SetWeightsStep {
  std::vector<Tier> tiers;
};

using HistoryEntry = std::variant<JudgeStep, ImplyStep, CounterfactualStep, SetWeightsStep>;

inline std::string describe(const HistoryEntry& entry) {
  struct {
    std::string operator()(const JudgeStep& s) const { return "judge " + s.formula; }
    std::string operator()(const ImplyStep& s) const {
      return "imply \"" + s.antecedent + "\" \"" + s.consequent + "\" --mode " + std::string(mode_name(s.mode));
    }
    std::string operator()(const CounterfactualStep& s) const {
      return "counterfactual \"" + s.antecedent + "\" \"" + s.consequent + "\"";
    }
    std::string operator()(const SetWeightsStep& s) const {
      return "set-weights (" + std::to_string(s.tiers.size()) + " tiers)";
    }
  } visitor;
  return std::visit(visitor, entry);
}

/// A circumstance plus how it was reached. The current circumstance is always
/// the replay of the history from the initial one.
class Session {
 public:
  explicit Session(Circumstance initial) : initial_(initial), current_(std::move(initial)) {}

  const Circumstance& initial() const { return initial_; }
  const Circumstance& current() const { return current_; }
  const std::vector<HistoryEntry>& history() const { return history_; }
  const std::map<std::string, std::string>& binding_formulas() const { return binding_formulas_; }

  Bindings bindings() const {
    Bindings out;
    for (const auto& [name, formula] : binding_formulas_)
      out.emplace(name, parse_formula(formula, current_.space(), &out));
    return out;
  }

  Proposition parse(std::string_view formula) const {
    const Bindings b = bindings();
    return parse_formula(formula, current_.space(), &b);
  }

  /// Names are fixed once bound so that replaying old history stays exact.
  void bind(const std::string& name, const std::string& formula) {
    if (!is_identifier(name) || is_reserved_word(name))
      fail(ErrorKind::InvalidAtomName, "'" + name + "' is not a valid name");
    if (current_.space()->index_of(name)) fail(ErrorKind::DuplicateAtom, "'" + name + "' is an atom");
    if (binding_formulas_.contains(name)) fail(ErrorKind::DuplicateAtom, "'" + name + "' is already bound");
    (void)parse(formula);
    binding_formulas_.emplace(name, formula);
  }

  void apply(HistoryEntry entry) {
    current_ = step(current_, entry);
    history_.push_back(std::move(entry));
  }

  void undo() {
    if (history_.empty()) fail(ErrorKind::NothingToUndo, "history is empty");
    history_.pop_back();
    current_ = replay();
  }

  Circumstance replay() const {
    Circumstance c = initial_;
    for (const auto& entry : history_) c = step(c, entry);
    return c;
  }

  Circumstance step(const Circumstance& c, const HistoryEntry& entry) const {
    const Bindings b = bindings();
    auto parse_here = [&](const std::string& f) { return parse_formula(f, c.space(), &b); };
    struct Visitor {
      const Circumstance& c;
      decltype(parse_here)& parse;
      Circumstance operator()(const JudgeStep& s) const { return judge(c, parse(s.formula)); }
      Circumstance operator()(const ImplyStep& s) const {
        return apply_implication(c, parse(s.antecedent), parse(s.consequent), s.mode);
      }
      Circumstance operator()(const CounterfactualStep& s) const {
        return counterfactual_sufficient(c, parse(s.antecedent), parse(s.consequent));
      }
      Circumstance operator()(const SetWeightsStep& s) const { return Circumstance(c.space(), s.tiers); }
    };
    return std::visit(Visitor{c, parse_here}, entry);
  }

  // Loading restores all parts directly; see load_session.
  static Session restore(Circumstance initial, Circumstance current, std::map<std::string, std::string> bindings,
                         std::vector<HistoryEntry> history) {
    Session s(std::move(initial));
    s.current_ = std::move(current);
    s.binding_formulas_ = std::move(bindings);
    s.history_ = std::move(history);
    return s;
  }

 private:
  Circumstance initial_;
  Circumstance current_;
  std::map<std::string, std::string> binding_formulas_;
  std::vector<HistoryEntry> history_;
};

inline Json to_json(const HistoryEntry& entry) {
  struct {
    Json operator()(const JudgeStep& s) const { return {{"op", "judge"}, {"formula", s.formula}}; }
    Json operator()(const ImplyStep& s) const {
      return {{"op", "imply"}, {"antecedent", s.antecedent}, {"consequent", s.consequent},
              {"mode", std::string(mode_name(s.mode))}};
    }
    Json operator()(const CounterfactualStep& s) const {
      return {{"op", "counterfactual"}, {"antecedent", s.antecedent}, {"consequent", s.consequent}};
    }
    Json operator()(const SetWeightsStep& s) const {
      Json tiers = Json::array();
      for (const auto& t : s.tiers) tiers.push_back(to_json(t));
      return {{"op", "set-weights"}, {"tiers", tiers}};
    }
  } visitor;
  return std::visit(visitor, entry);
}

inline HistoryEntry history_entry_from_json(const Json& j, const SpacePtr& space) {
  auto text = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string())
      fail(ErrorKind::CorruptSession, std::string("history entry lacks string field \"") + key + "\"");
    return j[key].get<std::string>();
  };
  const std::string op = text("op");
  if (op == "judge") return JudgeStep{text("formula")};
  if (op == "counterfactual") return CounterfactualStep{text("antecedent"), text("consequent")};
  if (op == "imply") {
    auto mode = parse_mode(text("mode"));
    if (!mode) fail(ErrorKind::CorruptSession, "unknown implication mode in history");
    return ImplyStep{text("antecedent"), text("consequent"), *mode};
  }
  if (op == "set-weights") {
    if (!j.contains("tiers")) fail(ErrorKind::CorruptSession, "set-weights entry lacks tiers");
    return SetWeightsStep{tiers_from_json(j["tiers"], space)};
  }
  fail(ErrorKind::CorruptSession, "unknown history operation '" + op + "'");
}

inline Json to_json(const Session& session) {
  Json history = Json::array();
  for (const auto& entry : session.history()) history.push_back(to_json(entry));
  return Json{{"version", std::string(kSessionVersion)},
              {"initial", to_json(session.initial())},
              {"current", to_json(session.current())},
              {"bindings", session.binding_formulas()},
              {"history", std::move(history)}};
}

inline Session session_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::CorruptSession, "session file must hold a JSON object");
  if (!j.contains("version") || !j["version"].is_string() || j["version"].get<std::string>() != kSessionVersion)
    fail(ErrorKind::FormatVersionMismatch,
         "expected version \"" + std::string(kSessionVersion) + "\", found " +
             (j.contains("version") ? j["version"].dump() : std::string("none")));
  if (!j.contains("initial") || !j.contains("current"))
    fail(ErrorKind::CorruptSession, "session needs \"initial\" and \"current\"");
  Circumstance initial = circumstance_from_json(j["initial"]);
  Circumstance current = circumstance_from_json(j["current"]);
  if (!same_space(initial.space(), current.space()))
    fail(ErrorKind::CorruptSession, "initial and current circumstances use different atoms");
  std::map<std::string, std::string> bindings;
  if (j.contains("bindings")) {
    if (!j["bindings"].is_object()) fail(ErrorKind::CorruptSession, "\"bindings\" must be an object");
    for (const auto& [name, formula] : j["bindings"].items()) {
      if (!formula.is_string()) fail(ErrorKind::CorruptSession, "binding '" + name + "' must be a formula string");
      bindings.emplace(name, formula.get<std::string>());
    }
  }
  std::vector<HistoryEntry> history;
  if (j.contains("history")) {
    if (!j["history"].is_array()) fail(ErrorKind::CorruptSession, "\"history\" must be an array");
    for (const auto& entry : j["history"]) history.push_back(history_entry_from_json(entry, initial.space()));
  }
  Session session = Session::restore(std::move(initial), std::move(current), std::move(bindings), std::move(history));
  if (!(session.replay() == session.current()))
    fail(ErrorKind::CorruptSession, "replaying the history does not reproduce the current circumstance");
  return session;
}

inline std::string session_text(const Session& session) { return to_json(session).dump(2) + "\n"; }

/// Writes under an exclusive advisory lock on the file itself.
inline void save_session(const Session& session, const std::filesystem::path& path) {
  const std::string text = session_text(session);
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT, 0644);
  if (fd < 0) fail(ErrorKind::FileNotFound, "cannot open " + path.string() + ": " + std::strerror(errno));
  struct Closer {
    int fd;
    ~Closer() {
      ::flock(fd, LOCK_UN);
      ::close(fd);
    }
  } closer{fd};
  if (::flock(fd, LOCK_EX) != 0)
    fail(ErrorKind::FileNotFound, "cannot lock " + path.string() + ": " + std::strerror(errno));
  if (::ftruncate(fd, 0) != 0)
    fail(ErrorKind::FileNotFound, "cannot truncate " + path.string() + ": " + std::strerror(errno));
  std::size_t written = 0;
  while (written < text.size()) {
    const ssize_t n = ::write(fd, text.data() + written, text.size() - written);
    if (n < 0) fail(ErrorKind::FileNotFound, "cannot write " + path.string() + ": " + std::strerror(errno));
    written += static_cast<std::size_t>(n);
  }
}

inline Session load_session(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FileNotFound, "cannot read session file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::CorruptSession, path.string() + " is not valid JSON: " + e.what());
  }
  return session_from_json(j);
}

}  // namespace judgment
