#include "encode_util.hpp"

namespace procm {

using namespace build;

namespace {

std::map<std::string, Word> state_codes(const std::vector<std::string>& states) {
  std::map<std::string, Word> codes;
  for (std::size_t k = 0; k < states.size(); ++k) codes[states[k]] = fixed_code(k, states.size());
  return codes;
}

const char* dispatch_name(char b) { return b == '_' ? "Fe" : b == '0' ? "F0" : "F1"; }

// The move part of a transition reading b: calls `next` with the new state
// code, left stack and right tape. `extra` is appended to the arguments.
ProcessPtr tm_move(const std::string& next_def, const Word& q, char b, const TmAction& act,
                   const std::vector<StrExprPtr>& extra) {
  StrExprPtr rest = b == '_' ? var("r") : tl(var("r"));
  auto args = [&](StrExprPtr l, StrExprPtr r) {
    std::vector<StrExprPtr> a{lit(q), std::move(l), std::move(r)};
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  };
  if (act.move == Move::R) return call(next_def, args(StrExpr::prepend(act.write, var("l")), rest));
  StrExprPtr pushed = act.write == '_' ? rest : StrExpr::prepend(act.write, rest);
  return ite(nil(var("l")), stop(),
             ite(is0(var("l")), call(next_def, args(tl(var("l")), p0(pushed))),
                 call(next_def, args(tl(var("l")), p1(pushed)))));
}

bool deterministic(const AtmSpec& m, const std::string& s) {
  for (char b : {'_', '0', '1'}) {
    auto a0 = m.delta.find({s, b, 0}), a1 = m.delta.find({s, b, 1});
    if ((a0 == m.delta.end()) != (a1 == m.delta.end())) return false;
    if (a0 == m.delta.end()) continue;
    const TmAction &x = a0->second, &y = a1->second;
    if (x.next != y.next || x.write != y.write || x.move != y.move) return false;
  }
  return true;
}

}  // namespace

Program encode_tm(const TmSpec& m) {
  m.validate();
  auto codes = state_codes(m.states);
  Program p;
  p.inputs = {"i"};
  p.outputs = {"o"};
  for (char b : {'_', '0', '1'}) {
    std::map<Word, ProcessPtr> table;
    for (const auto& s : m.states) {
      if (m.halting.count(s)) {
        table[codes[s]] = out("o", var("r"));
        continue;
      }
      auto it = m.delta.find({s, b});
      if (it != m.delta.end()) table[codes[s]] = tm_move("T", codes.at(it->second.next), b, it->second, {});
    }
    p.defs[dispatch_name(b)] = finite_dispatch(dispatch_name(b), {"s", "l", "r"}, table);
  }
  std::vector<StrExprPtr> slr{var("s"), var("l"), var("r")};
  define(p, "T", {"s", "l", "r"},
         ite(nil(var("r")), call("Fe", slr), ite(is0(var("r")), call("F0", slr), call("F1", slr))));
  p.main = inp("i", "x", call("T", {lit(codes.at(m.initial)), w(""), var("x")}));
  return finish(p);
}

Program encode_atm(const AtmSpec& m) {
  m.validate();
  auto codes = state_codes(m.states);
  Program p;
  p.inputs = {"i"};
  p.outputs = {"o"};
  const std::vector<StrExprPtr> d{var("d")};
  for (int branch : {0, 1}) {
    for (char b : {'_', '0', '1'}) {
      std::map<Word, ProcessPtr> table;
      for (const auto& s : m.states) {
        Polarity pol = m.polarity.at(s);
        if (pol == Polarity::Accepting || pol == Polarity::Rejecting) {
          table[codes[s]] = snd(var("d"), w(pol == Polarity::Accepting ? "1" : "0"), stop());
          continue;
        }
        auto it = m.delta.find({s, b, branch});
        if (it != m.delta.end()) table[codes[s]] = tm_move("N", codes.at(it->second.next), b, it->second, d);
      }
      std::string name = std::string(dispatch_name(b)) + "b" + std::to_string(branch);
      p.defs[name] = finite_dispatch(name, {"s", "l", "r", "d"}, table);
    }
    std::string sfx = "b" + std::to_string(branch);
    std::vector<StrExprPtr> slrd{var("s"), var("l"), var("r"), var("d")};
    define(p, "T" + std::to_string(branch), {"s", "l", "r", "d"},
           ite(nil(var("r")), call("Fe" + sfx, slrd),
               ite(is0(var("r")), call("F0" + sfx, slrd), call("F1" + sfx, slrd))));
  }

  auto reply = [](const char* v) { return snd(var("d"), w(v), stop()); };
  ProcessPtr orp = ite(is0(var("y")), ite(is0(var("z")), reply("0"), reply("1")), reply("1"));
  ProcessPtr andp = ite(is0(var("y")), reply("0"), ite(is0(var("z")), reply("0"), reply("1")));
  std::map<Word, ProcessPtr> ops;
  for (const auto& s : m.states) ops[codes[s]] = m.polarity.at(s) == Polarity::Universal ? andp : orp;
  p.defs["Op"] = finite_dispatch("Op", {"s", "y", "z", "d"}, ops);

  auto child = [](const char* t, StrExprPtr key) {
    return call(t, {var("s"), var("l"), var("r"), std::move(key)});
  };
  ProcessPtr fork = par(par(child("T0", p0(var("d"))), child("T1", p1(var("d")))),
                        rcv(p0(var("d")), "y", rcv(p1(var("d")), "z", call("Op", {var("s"), var("y"), var("z"), var("d")}))));
  // Final states and states whose two branches coincide continue in place.
  std::map<Word, ProcessPtr> steps;
  for (const auto& s : m.states) steps[codes[s]] = deterministic(m, s) ? child("T0", var("d")) : fork;
  p.defs["N"] = finite_dispatch("N", {"s", "l", "r", "d"}, steps);
  p.main = inp("i", "x",
               par(call("N", {lit(codes.at(m.initial)), w(""), var("x"), w("")}), rcv(w(""), "y", out("o", var("y")))));
  return finish(p);
}

}  // namespace procm
