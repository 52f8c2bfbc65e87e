#pragma once

// Line-oriented text formats for input scripts and function tables.
// Words are written as bare bits or quoted, with "" for the empty word;
// '#' starts a comment.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "procm/behavior.hpp"
#include "procm/word.hpp"

namespace procm {

class FormatError : public std::runtime_error {
 public:
  FormatError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

using Script = std::map<std::string, std::vector<Word>>;

/// Lines `channel <name>: <word> <word> ...`; repeated channels append.
Script parse_script(std::string_view text);
std::string format_script(const Script& s);

/// Lines `<word> -> <word>`; a repeated input is an error.
FunTable parse_funtable(std::string_view text);
std::string format_funtable(const FunTable& t);

/// One word token: bare bits or a quoted literal.
Word parse_word_token(std::string_view token, int line = 0);

/// Whitespace-separated tokens of a line with any '#' comment removed.
std::vector<std::string> split_tokens(std::string_view line);

/// Input lines with comments stripped, paired with 1-based line numbers;
/// blank lines are dropped.
std::vector<std::pair<int, std::string>> content_lines(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace procm
