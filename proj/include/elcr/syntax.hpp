#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "elcr/error.hpp"
#include "elcr/formula.hpp"

namespace elcr {

/// Syntax or stratification error. line and column are 1-based; the
/// span [column, end_column) covers the offending text on that line.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column, int end_column);
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }
  int end_column() const { return end_column_; }

 private:
  std::string message_;
  int line_;
  int column_;
  int end_column_;
};

/// Grammar, loosest binding first:
///   φ ::= φ "<->" φ | φ "->" φ | φ "|" φ | φ "&" φ | unary
///   unary ::= "!" unary | "[x]" unary | "<x>" unary | "[*]" unary | "<*>" unary
///           | "K{x}" term | "K{x}" unary | "<K{x}>" unary | atom
///   atom ::= "true" | "false" | ident "(" terms ")" | term "=" term | "(" φ ")"
/// "->" associates to the right, the other binary operators to the left.
/// Rejects formulas with a knowledge operator inside another one.
Formula parse(std::string_view text);

/// One formula per non-empty line; "#" starts a comment.
std::vector<Formula> parse_lines(std::string_view text);

/// Canonical, fully parenthesized text that parses back to the same tree.
std::string print(const Formula& f);

}  // namespace elcr
