#pragma once

// Formula grammar, loosest binding first:
//   implication := disjunction [ "->" implication ]      (right-associative)
//   disjunction := conjunction { "|" conjunction }
//   conjunction := unary { "&" unary }
//   unary       := "~" unary | primary
//   primary     := atom | "true" | "false" | "(" implication ")"
//   atom        := [A-Za-z_][A-Za-z0-9_]*
// "a -> b" denotes the material conditional ~a | b.

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "judgment/prop_space.hpp"

namespace judgment {

/// Named propositions an identifier may resolve to when it is not an atom.
using Bindings = std::map<std::string, Proposition, std::less<>>;

namespace detail {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, SpacePtr space, const Bindings* bindings)
      : text_(text), space_(std::move(space)), bindings_(bindings) {}

  Proposition parse() {
    Proposition result = implication();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  Proposition implication() {
    Proposition lhs = disjunction();
    if (consume("->")) return ~lhs | implication();
    return lhs;
  }

  Proposition disjunction() {
    Proposition lhs = conjunction();
    while (consume("|")) lhs = lhs | conjunction();
    return lhs;
  }

  Proposition conjunction() {
    Proposition lhs = unary();
    while (consume("&")) lhs = lhs & unary();
    return lhs;
  }

  Proposition unary() {
    if (consume("~")) return ~unary();
    return primary();
  }

  Proposition primary() {
    skip_space();
    if (pos_ == text_.size()) error("unexpected end of formula");
    if (consume("(")) {
      Proposition inner = implication();
      if (!consume(")")) error("expected ')'");
      return inner;
    }
    const std::size_t start = pos_;
    if (!ident_start(text_[pos_])) error("expected an atom, 'true', 'false' or '('");
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "true") return Proposition::top(space_);
    if (name == "false") return Proposition::bottom(space_);
    if (space_->index_of(name)) return Proposition::atom(space_, name);
    if (bindings_) {
      if (auto it = bindings_->find(name); it != bindings_->end()) {
        require_same_space(it->second.space(), space_);
        return it->second;
      }
    }
    fail(ErrorKind::UnknownAtom,
         "unknown atom '" + std::string(name) + "' at position " + std::to_string(start));
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::SyntaxError, "at position " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  SpacePtr space_;
  const Bindings* bindings_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Proposition parse_formula(std::string_view text, const SpacePtr& space,
                                 const Bindings* bindings = nullptr) {
  return detail::FormulaParser(text, space, bindings).parse();
}

}  // namespace judgment
