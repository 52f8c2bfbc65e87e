#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "procm/syntax.hpp"

namespace procm {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Semantic };

  ParseError(Kind kind, int line, int column, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

/// Parses a program in the concrete process grammar. Bound variables are
/// alpha-renamed so that, inside main and inside every definition body,
/// all binders are pairwise distinct and distinct from the parameters.
/// Throws ParseError on syntax errors, unbound identifiers, arity
/// mismatches, channel misuse and free variables.
Program parse_program(std::string_view text);

/// Re-checks the static well-formedness rules on a program built in code
/// (encoders use this). Throws ParseError with line/column 0.
void validate_program(const Program& prog);

/// Applies the same alpha-renaming as the parser.
Program normalize_binders(const Program& prog);

}  // namespace procm
