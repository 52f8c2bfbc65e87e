#include <algorithm>

#include "procm/encoders.hpp"

namespace procm {

StrExprPtr lit(const Word& w) { return StrExpr::literal(w); }
StrExprPtr var(const std::string& name) { return StrExpr::variable(name); }

StrExprPtr prefixed(const Word& w, StrExprPtr e) {
  for (std::size_t k = w.size(); k-- > 0;) e = StrExpr::prepend(w.bits()[k], e);
  return e;
}

StrExprPtr tails(StrExprPtr e, std::size_t k) {
  while (k-- > 0) e = StrExpr::tail(e);
  return e;
}

namespace {

std::size_t width_for(std::size_t count) {
  std::size_t w = 1;
  while ((std::size_t{1} << w) < count) ++w;
  return w;
}

std::string binary(std::size_t value, std::size_t width) {
  std::string bits(width, '0');
  for (std::size_t k = 0; k < width; ++k)
    if (value >> k & 1) bits[width - 1 - k] = '1';
  return bits;
}

ProcessPtr build_trie(const StrExprPtr& key, const std::map<Word, ProcessPtr>& table, const ProcessPtr& fallback,
                      const std::string& prefix) {
  auto lo = table.lower_bound(Word(prefix));
  bool any_below = false, any_longer = false;
  for (auto it = lo; it != table.end() && Word(prefix).is_prefix_of(it->first); ++it) {
    any_below = true;
    if (it->first.size() > prefix.size()) any_longer = true;
  }
  if (!any_below) return fallback;
  StrExprPtr here_key = tails(key, prefix.size());
  auto exact = table.find(Word(prefix));
  ProcessPtr here = exact == table.end() ? fallback : exact->second;
  if (!any_longer) return Process::if_else(BoolExpr::is_empty(here_key), here, fallback);
  return Process::if_else(BoolExpr::is_empty(here_key), here,
                          Process::if_else(BoolExpr::is_zero(here_key), build_trie(key, table, fallback, prefix + "0"),
                                           build_trie(key, table, fallback, prefix + "1")));
}

}  // namespace

Word fixed_code(std::size_t index, std::size_t count) {
  if (index >= count) throw std::out_of_range("code index out of range");
  return Word(binary(index, width_for(count)));
}

Word palindrome_code(std::size_t index, std::size_t count) {
  std::string half = fixed_code(index, count).bits();
  return Word(half + std::string(half.rbegin(), half.rend()));
}

ProcessPtr dispatch(const StrExprPtr& key, const std::map<Word, ProcessPtr>& table, const ProcessPtr& fallback) {
  return build_trie(key, table, fallback, "");
}

ProcDef finite_dispatch(const std::string& name, const std::vector<std::string>& params,
                        const std::map<Word, ProcessPtr>& table, const ProcessPtr& fallback) {
  if (params.empty()) throw EncodeError("finite_dispatch needs the key as first parameter");
  return ProcDef{name, params, dispatch(var(params[0]), table, fallback)};
}

ProcessPtr internal_choice(const Word& key, const std::vector<ProcessPtr>& branches) {
  if (branches.empty()) return Process::nil();
  ProcessPtr sum = branches[0];
  for (std::size_t m = 1; m < branches.size(); ++m) {
    auto ch = ChannelRef::internal(lit(key));
    auto senders = Process::par(Process::send(ch, lit(Word("0")), Process::nil()),
                                Process::send(ch, lit(Word("1")), Process::nil()));
    std::string x = "cx" + std::to_string(m), y = "cy" + std::to_string(m);
    auto select = Process::recv(
        ch, x, Process::recv(ch, y, Process::if_else(BoolExpr::is_zero(var(y)), sum, branches[m])));
    sum = Process::par(senders, select);
  }
  return sum;
}

}  // namespace procm
