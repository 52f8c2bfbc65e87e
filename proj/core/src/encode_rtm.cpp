#include "encode_util.hpp"

namespace procm {

using namespace build;

RtmCodes rtm_codes(const RtmSpec& m) {
  RtmCodes c;
  for (std::size_t k = 0; k < m.states.size(); ++k) c.state[m.states[k]] = fixed_code(k, m.states.size());
  for (std::size_t k = 0; k < m.actions.size(); ++k) c.action[m.actions[k]] = palindrome_code(k, m.actions.size());
  std::vector<std::string> data{"_"};
  for (const auto& d : m.data)
    if (d != "_") data.push_back(d);
  for (std::size_t k = 0; k < data.size(); ++k) c.data[data[k]] = palindrome_code(k, data.size());
  return c;
}

Program encode_rtm(const RtmSpec& m) {
  m.validate();
  const RtmCodes codes = rtm_codes(m);
  Program p;
  p.outputs = {"o"};
  const Word stack_key("0");

  // One branch per transition: emit the action, pop the stack on the side
  // of the move, push the written symbol on the other side.
  auto branch = [&](const RtmTransition& t) {
    const Word& e = codes.data.at(t.write);
    Word cells = Word::repeat('1', e.size()).concat(Word("0"));
    const bool right = t.move == Move::R;
    const char* from = right ? "r" : "l";
    const char* from_cells = right ? "rc" : "lc";
    const char* to = right ? "l" : "r";
    const char* to_cells = right ? "lc" : "rc";
    StrExprPtr pushed = prefixed(e, var(to)), pushed_cells = prefixed(cells, var(to_cells));
    std::vector<StrExprPtr> args{lit(codes.state.at(t.to))};
    if (right) args.insert(args.end(), {pushed, pushed_cells, var("d2"), var("x2"), var("c2")});
    else args.insert(args.end(), {var("x2"), var("c2"), var("d2"), pushed, pushed_cells});
    ProcessPtr k = par(call("Pop", {var(from), var(from_cells), w("")}),
                       rcv(lit(stack_key), "d2", rcv(lit(stack_key), "x2", rcv(lit(stack_key), "c2", call("T", args)))));
    if (t.action) k = out("o", lit(codes.action.at(*t.action)), k);
    return k;
  };

  std::map<Word, std::map<Word, std::vector<ProcessPtr>>> grouped;
  for (const auto& t : m.transitions)
    grouped[codes.state.at(t.from)][codes.data.at(t.read)].push_back(branch(t));
  std::map<Word, ProcessPtr> by_state;
  for (const auto& [s, by_symbol] : grouped) {
    std::map<Word, ProcessPtr> table;
    for (const auto& [d, branches] : by_symbol) table[d] = internal_choice(Word(), branches);
    by_state[s] = dispatch(var("d"), table, stop());
  }
  define(p, "T", {"s", "l", "lc", "d", "r", "rc"}, dispatch(var("s"), by_state, stop()));

  auto emit = [&](StrExprPtr a, StrExprPtr b, StrExprPtr c) {
    return snd(lit(stack_key), std::move(a), snd(lit(stack_key), std::move(b), snd(lit(stack_key), std::move(c), stop())));
  };
  define(p, "Pop", {"x", "c", "a"},
         ite(nil(var("c")), emit(lit(codes.data.at("_")), w(""), w("")),
             ite(is0(var("c")), emit(var("a"), var("x"), tl(var("c"))),
                 ite(is0(var("x")), call("Pop", {tl(var("x")), tl(var("c")), p0(var("a"))}),
                     call("Pop", {tl(var("x")), tl(var("c")), p1(var("a"))})))));

  p.main = call("T", {lit(codes.state.at(m.initial)), w(""), w(""), lit(codes.data.at("_")), w(""), w("")});
  return finish(p);
}

}  // namespace procm
