#include "procm/formats.hpp"

#include <fstream>
#include <sstream>

namespace procm {

FormatError::FormatError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

Word parse_word_token(std::string_view token, int line) {
  std::string_view bits = token;
  if (bits.size() >= 2 && bits.front() == '"' && bits.back() == '"') bits = bits.substr(1, bits.size() - 2);
  if (!Word::valid_bits(bits)) throw FormatError(line, "not a binary word: " + std::string(token));
  return Word(std::string(bits));
}

std::vector<std::string> split_tokens(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  std::istringstream is{std::string(line)};
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::vector<std::pair<int, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream is{std::string(text)};
  int n = 0;
  for (std::string line; std::getline(is, line);) {
    ++n;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    out.emplace_back(n, line.substr(first, last - first + 1));
  }
  return out;
}

Script parse_script(std::string_view text) {
  Script s;
  for (const auto& [n, line] : content_lines(text)) {
    auto colon = line.find(':');
    auto head = split_tokens(line.substr(0, colon == std::string::npos ? line.size() : colon));
    if (colon == std::string::npos || head.size() != 2 || head[0] != "channel")
      throw FormatError(n, "expected 'channel <name>: <word> ...'");
    auto& words = s[head[1]];
    for (const auto& tok : split_tokens(line.substr(colon + 1))) words.push_back(parse_word_token(tok, n));
  }
  return s;
}

std::string format_script(const Script& s) {
  std::ostringstream os;
  for (const auto& [ch, words] : s) {
    os << "channel " << ch << ':';
    for (const auto& w : words) os << ' ' << w.quoted();
    os << '\n';
  }
  return os.str();
}

FunTable parse_funtable(std::string_view text) {
  FunTable t;
  for (const auto& [n, line] : content_lines(text)) {
    auto toks = split_tokens(line);
    if (toks.size() != 3 || toks[1] != "->") throw FormatError(n, "expected '<word> -> <word>'");
    Word x = parse_word_token(toks[0], n);
    if (!t.emplace(x, parse_word_token(toks[2], n)).second) throw FormatError(n, "input " + x.quoted() + " listed twice");
  }
  return t;
}

std::string format_funtable(const FunTable& t) {
  std::ostringstream os;
  for (const auto& [x, y] : t) os << x.quoted() << " -> " << y.quoted() << '\n';
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace procm
