#include <functional>

#include "encode_util.hpp"

namespace procm {

using namespace build;

namespace {

// Memory cells, the allocator listening on key "1", and its comparators.
void memory_defs(Program& p) {
  define(p, "C", {"x", "v"},
         rcv(var("x"), "y",
             ite(nil(var("y")), call("C", {var("x"), var("v")}),
                 ite(is0(var("y")), snd(tl(var("y")), var("v"), call("C", {var("x"), var("v")})),
                     call("C", {var("x"), tl(var("y"))})))));
  define(p, "M", {"c"}, rcv(w("1"), "x", call("D", {var("x"), var("c"), var("c"), var("x")})));
  define(p, "D", {"m", "n", "c", "x"},
         ite(nil(var("m")), call("M", {var("c")}),
             ite(nil(var("n")), par(call("Mp", {p0(var("c")), var("x")}), call("M", {var("x")})),
                 call("D", {tl(var("m")), tl(var("n")), var("c"), var("x")}))));
  define(p, "Mp", {"m", "n"}, par(call("C", {var("m"), w("")}), call("E", {var("m"), var("n"), var("m"), var("n")})));
  auto grow = call("Mp", {p0(var("m")), var("n")});
  define(p, "E", {"a", "b", "m", "n"},
         ite(nil(var("a")), ite(nil(var("b")), stop(), grow),
             ite(nil(var("b")), grow, call("E", {tl(var("a")), tl(var("b")), var("m"), var("n")}))));
}

StrExprPtr address(std::size_t k) { return lit(Word::repeat('0', k + 1)); }

struct Component {
  StrExprPtr acc;
  Word reply;
  std::string out;
  std::function<ProcessPtr(std::size_t)> go;  // continue at a 1-based instruction
  ProcessPtr after_halt;
};

ProcessPtr ensure(StrExprPtr cell, ProcessPtr k) { return snd(w("1"), std::move(cell), std::move(k)); }

ProcessPtr read(const Component& c, StrExprPtr cell, const std::string& x, ProcessPtr k) {
  return snd(std::move(cell), lit(Word("0").concat(c.reply)), rcv(lit(c.reply), x, std::move(k)));
}

ProcessPtr write(StrExprPtr cell, StrExprPtr value, ProcessPtr k) {
  return snd(std::move(cell), p1(std::move(value)), std::move(k));
}

ProcessPtr halt(const Component& c) { return read(c, c.acc, "v", out(c.out, var("v"), c.after_halt)); }

ProcessPtr instruction(const Component& c, const RamInstr& ins, std::size_t j) {
  auto next = [&] { return c.go(j + 1); };
  StrExprPtr a = address(ins.arg);
  switch (ins.op) {
    case RamOp::Load: return ensure(a, read(c, a, "v", write(c.acc, var("v"), next())));
    case RamOp::LoadI:
      return ensure(a, read(c, a, "p", ensure(p0(var("p")), read(c, p0(var("p")), "v", write(c.acc, var("v"), next())))));
    case RamOp::Store: return read(c, c.acc, "v", ensure(a, write(a, var("v"), next())));
    case RamOp::StoreI:
      return read(c, c.acc, "v",
                  ensure(a, read(c, a, "p", ensure(p0(var("p")), write(p0(var("p")), var("v"), next())))));
    case RamOp::Inc: return read(c, c.acc, "v", write(c.acc, p0(var("v")), next()));
    case RamOp::Dec: return read(c, c.acc, "v", ite(nil(var("v")), next(), write(c.acc, tl(var("v")), next())));
    case RamOp::JZero: return read(c, c.acc, "v", ite(nil(var("v")), c.go(ins.arg), next()));
    case RamOp::Jump: return c.go(ins.arg);
    case RamOp::Halt: return halt(c);
  }
  return stop();
}

// Cells 0..max of the initialised addresses, and the allocator starting
// above them (or above `floor` cells that already exist).
ProcessPtr initial_memory(const std::vector<std::pair<std::size_t, Word>>& init, std::size_t floor) {
  std::map<std::size_t, Word> cells;
  for (const auto& [k, v] : init) {
    if (k < floor) throw EncodeError("init address " + std::to_string(k) + " overlaps an accumulator");
    cells[k] = v;
  }
  std::size_t top = floor;
  if (!cells.empty()) top = std::max(top, cells.rbegin()->first + 1);
  std::vector<ProcessPtr> parts{call("M", {lit(Word::repeat('0', top))})};
  for (std::size_t k = floor; k < top; ++k) {
    auto it = cells.find(k);
    parts.push_back(call("C", {address(k), lit(it == cells.end() ? Word() : it->second)}));
  }
  return par_all(parts);
}

}  // namespace

Program encode_ram(const RamProgram& prog) {
  prog.validate();
  Program p;
  p.inputs = {"i"};
  p.outputs = {"o"};
  memory_defs(p);
  const std::size_t n = prog.code.size();
  auto name = [](std::size_t j) { return "I" + std::to_string(j); };
  Component c{w(""), Word("10"), "o", [&](std::size_t t) { return call(name(t)); }, stop()};
  for (std::size_t j = 1; j <= n; ++j) define(p, name(j), {}, instruction(c, prog.code[j - 1], j));
  define(p, name(n + 1), {}, halt(c));
  p.main = par(inp("i", "x", par(call(name(1)), call("C", {w(""), var("x")}))), initial_memory(prog.init, 0));
  return finish(p);
}

Program encode_pram(const PramProgram& prog) {
  prog.validate();
  Program p;
  memory_defs(p);
  const std::size_t n = prog.components.size();
  auto ones = [](std::size_t k) { return Word::repeat('1', k); };
  auto tick = [&](std::size_t k) { return lit(Word("110").concat(ones(k))); };
  auto ack = [&](std::size_t k) { return lit(Word("1110").concat(ones(k))); };

  std::vector<ProcessPtr> parts;
  for (std::size_t k = 1; k <= n; ++k) {
    const RamProgram& rp = prog.components[k - 1];
    std::string in = "i" + std::to_string(k), out_ch = "o" + std::to_string(k);
    p.inputs.insert(in);
    p.outputs.insert(out_ch);
    auto name = [k](std::size_t j) { return "J" + std::to_string(k) + "_" + std::to_string(j); };
    std::string idle = "H" + std::to_string(k);
    Component c{address(k - 1), Word("10").concat(ones(k)), out_ch,
                [&, name](std::size_t t) { return snd(ack(k), w("1"), call(name(t))); },
                snd(ack(k), w(""), call(idle))};
    const std::size_t len = rp.code.size();
    for (std::size_t j = 1; j <= len; ++j) define(p, name(j), {}, rcv(tick(k), "z", instruction(c, rp.code[j - 1], j)));
    define(p, name(len + 1), {}, rcv(tick(k), "z", halt(c)));
    define(p, idle, {}, rcv(tick(k), "z", snd(ack(k), w(""), call(idle))));
    parts.push_back(inp(in, "x", par(call(name(1)), call("C", {address(k - 1), var("x")}))));
  }

  ProcessPtr verdict = stop();
  for (std::size_t k = n; k >= 1; --k)
    verdict = ite(nil(var("a" + std::to_string(k))), verdict, call("K"));
  ProcessPtr clock = verdict;
  for (std::size_t k = n; k >= 1; --k) clock = rcv(ack(k), "a" + std::to_string(k), clock);
  for (std::size_t k = n; k >= 1; --k) clock = snd(tick(k), w(""), clock);
  define(p, "K", {}, clock);

  parts.push_back(initial_memory(prog.init, n));
  parts.push_back(call("K"));
  p.main = par_all(parts);
  return finish(p);
}

}  // namespace procm
