#include "procm/machine_specs.hpp"

#include <algorithm>
#include <cctype>

#include "procm/formats.hpp"

namespace procm {

SpecError::SpecError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

struct Line {
  int n;
  std::string key;                  // text before ':' if present, else first token
  std::vector<std::string> tokens;  // remaining tokens
};

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  for (const auto& [n, raw] : content_lines(text)) {
    auto toks = split_tokens(raw);
    Line l{n, toks[0], {}};
    if (l.key.size() > 1 && l.key.back() == ':') {
      l.key.pop_back();
      l.tokens.assign(toks.begin() + 1, toks.end());
    } else if (toks.size() > 1 && toks[1] == ":") {
      l.tokens.assign(toks.begin() + 2, toks.end());
    } else {
      l.tokens.assign(toks.begin() + 1, toks.end());
    }
    out.push_back(std::move(l));
  }
  return out;
}

char tape_symbol(const std::string& tok, int line) {
  if (tok == "0" || tok == "1" || tok == "_") return tok[0];
  throw SpecError(line, "tape symbol must be 0, 1 or _: " + tok);
}

Move move_of(const std::string& tok, int line) {
  if (tok == "L") return Move::L;
  if (tok == "R") return Move::R;
  throw SpecError(line, "move must be L or R: " + tok);
}

std::size_t number(const std::string& tok, int line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw SpecError(line, "expected a natural number: " + tok);
  return std::stoul(tok);
}

void need(const Line& l, std::size_t count, const char* shape) {
  if (l.tokens.size() != count) throw SpecError(l.n, std::string("expected '") + shape + "'");
}

std::string single(const Line& l) {
  need(l, 1, "key: value");
  return l.tokens[0];
}

bool known(const std::vector<std::string>& v, const std::string& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

void check_states(const std::vector<std::string>& states, const std::string& initial) {
  if (states.empty()) throw SpecError(0, "no states declared");
  std::set<std::string> uniq(states.begin(), states.end());
  if (uniq.size() != states.size()) throw SpecError(0, "duplicate state name");
  if (!known(states, initial)) throw SpecError(0, "initial state '" + initial + "' is not declared");
}

// A blank can only be written back onto a blank before moving left, which
// leaves the tape unchanged.
void check_write(char read, const TmAction& act) {
  if (act.write == '0' || act.write == '1') return;
  if (act.write == '_' && read == '_' && act.move == Move::L) return;
  throw SpecError(0, "written symbol must be 0 or 1 (or _ over a blank when moving left)");
}

}  // namespace

void TmSpec::validate() const {
  check_states(states, initial);
  for (const auto& h : halting)
    if (!known(states, h)) throw SpecError(0, "halting state '" + h + "' is not declared");
  for (const auto& [key, act] : delta) {
    if (!known(states, key.first) || !known(states, act.next))
      throw SpecError(0, "transition mentions an undeclared state");
    if (halting.count(key.first)) throw SpecError(0, "halting state '" + key.first + "' has a transition");
    check_write(key.second, act);
  }
}

TmSpec parse_tm(std::string_view text) {
  TmSpec m;
  for (const auto& l : lines_of(text)) {
    if (l.key == "states") {
      m.states.insert(m.states.end(), l.tokens.begin(), l.tokens.end());
    } else if (l.key == "initial") {
      m.initial = single(l);
    } else if (l.key == "halting") {
      m.halting.insert(l.tokens.begin(), l.tokens.end());
    } else if (l.key == "trans") {
      need(l, 6, "trans: q a -> q' b L|R");
      if (l.tokens[2] != "->") throw SpecError(l.n, "expected '->'");
      auto key = std::make_pair(l.tokens[0], tape_symbol(l.tokens[1], l.n));
      TmAction act{l.tokens[3], tape_symbol(l.tokens[4], l.n), move_of(l.tokens[5], l.n)};
      if (!m.delta.emplace(key, act).second) throw SpecError(l.n, "second transition for the same state and symbol");
    } else {
      throw SpecError(l.n, "unknown line kind '" + l.key + "'");
    }
  }
  m.validate();
  return m;
}

void AtmSpec::validate() const {
  check_states(states, initial);
  for (const auto& s : states)
    if (!polarity.count(s)) throw SpecError(0, "state '" + s + "' has no polarity");
  for (const auto& [key, act] : delta) {
    const auto& s = std::get<0>(key);
    if (!known(states, s) || !known(states, act.next)) throw SpecError(0, "transition mentions an undeclared state");
    auto pol = polarity.at(s);
    if (pol == Polarity::Accepting || pol == Polarity::Rejecting)
      throw SpecError(0, "final state '" + s + "' has a transition");
    check_write(std::get<1>(key), act);
  }
}

AtmSpec parse_atm(std::string_view text) {
  AtmSpec m;
  for (const auto& l : lines_of(text)) {
    if (l.key == "states") {
      m.states.insert(m.states.end(), l.tokens.begin(), l.tokens.end());
    } else if (l.key == "initial") {
      m.initial = single(l);
    } else if (l.key == "polarity") {
      need(l, 2, "polarity: q E|U|A|R");
      const std::string& p = l.tokens[1];
      Polarity pol = p == "E"   ? Polarity::Existential
                     : p == "U" ? Polarity::Universal
                     : p == "A" ? Polarity::Accepting
                     : p == "R" ? Polarity::Rejecting
                                : throw SpecError(l.n, "polarity must be E, U, A or R");
      m.polarity[l.tokens[0]] = pol;
    } else if (l.key == "trans") {
      need(l, 8, "trans: q a branch i -> q' b L|R");
      if (l.tokens[2] != "branch" || l.tokens[4] != "->") throw SpecError(l.n, "expected 'branch i ->'");
      int branch = l.tokens[3] == "0" ? 0 : l.tokens[3] == "1" ? 1 : throw SpecError(l.n, "branch must be 0 or 1");
      auto key = std::make_tuple(l.tokens[0], tape_symbol(l.tokens[1], l.n), branch);
      TmAction act{l.tokens[5], tape_symbol(l.tokens[6], l.n), move_of(l.tokens[7], l.n)};
      if (!m.delta.emplace(key, act).second) throw SpecError(l.n, "second transition for the same state, symbol and branch");
    } else {
      throw SpecError(l.n, "unknown line kind '" + l.key + "'");
    }
  }
  m.validate();
  return m;
}

const char* to_string(RamOp op) {
  switch (op) {
    case RamOp::Load: return "LOAD";
    case RamOp::LoadI: return "LOADI";
    case RamOp::Store: return "STORE";
    case RamOp::StoreI: return "STOREI";
    case RamOp::Inc: return "INC";
    case RamOp::Dec: return "DEC";
    case RamOp::JZero: return "JZERO";
    case RamOp::Jump: return "JUMP";
    case RamOp::Halt: return "HALT";
  }
  return "?";
}

namespace {

bool has_arg(RamOp op) { return op != RamOp::Inc && op != RamOp::Dec && op != RamOp::Halt; }

void check_unary(const Word& w, int line) {
  if (w.bits().find('1') != std::string::npos) throw SpecError(line, "register values are unary words 0^n: " + w.quoted());
}

std::optional<RamInstr> ram_line(const Line& l) {
  std::string op = l.key;
  std::transform(op.begin(), op.end(), op.begin(), [](unsigned char c) { return std::toupper(c); });
  static const std::map<std::string, RamOp> ops{{"LOAD", RamOp::Load},   {"LOADI", RamOp::LoadI}, {"STORE", RamOp::Store},
                                                {"STOREI", RamOp::StoreI}, {"INC", RamOp::Inc},     {"DEC", RamOp::Dec},
                                                {"JZERO", RamOp::JZero}, {"JUMP", RamOp::Jump},   {"HALT", RamOp::Halt}};
  auto it = ops.find(op);
  if (it == ops.end()) return std::nullopt;
  RamInstr ins{it->second, 0};
  if (has_arg(ins.op)) {
    need(l, 1, "OP n");
    ins.arg = number(l.tokens[0], l.n);
  } else {
    need(l, 0, "OP");
  }
  return ins;
}

std::pair<std::size_t, Word> init_line(const Line& l) {
  need(l, 2, "init address word");
  Word w = parse_word_token(l.tokens[1], l.n);
  check_unary(w, l.n);
  return {number(l.tokens[0], l.n), w};
}

}  // namespace

void RamProgram::validate() const {
  for (std::size_t k = 0; k < code.size(); ++k) {
    const auto& ins = code[k];
    if ((ins.op == RamOp::JZero || ins.op == RamOp::Jump) && (ins.arg < 1 || ins.arg > code.size()))
      throw SpecError(0, "instruction " + std::to_string(k + 1) + ": jump target out of range");
  }
  for (const auto& [_, w] : init) check_unary(w, 0);
}

RamProgram parse_ram(std::string_view text) {
  RamProgram p;
  for (const auto& l : lines_of(text)) {
    if (l.key == "init") {
      p.init.push_back(init_line(l));
    } else if (auto ins = ram_line(l)) {
      p.code.push_back(*ins);
    } else {
      throw SpecError(l.n, "unknown instruction '" + l.key + "'");
    }
  }
  p.validate();
  return p;
}

void PramProgram::validate() const {
  if (components.empty()) throw SpecError(0, "a PRAM needs at least one component");
  for (const auto& c : components) {
    c.validate();
    if (!c.init.empty()) throw SpecError(0, "component programs cannot initialise memory; use shared init lines");
  }
}

PramProgram parse_pram(std::string_view text) {
  PramProgram p;
  for (const auto& l : lines_of(text)) {
    if (l.key == "component") {
      need(l, 0, "component");
      p.components.emplace_back();
    } else if (l.key == "init") {
      if (!p.components.empty()) throw SpecError(l.n, "init lines must precede the first component");
      p.init.push_back(init_line(l));
    } else if (auto ins = ram_line(l)) {
      if (p.components.empty()) throw SpecError(l.n, "instruction before the first 'component' line");
      p.components.back().code.push_back(*ins);
    } else {
      throw SpecError(l.n, "unknown instruction '" + l.key + "'");
    }
  }
  p.validate();
  return p;
}

void CircuitSpec::validate() const {
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const Gate& gate = gates[g];
    std::size_t arity = gate.kind == GateKind::Not ? 1 : 2;
    if (gate.inputs.size() != arity) throw SpecError(0, "gate " + std::to_string(g + 1) + " has wrong arity");
    for (std::size_t w : gate.inputs)
      if (w < 1 || w > inputs + g)
        throw SpecError(0, "gate " + std::to_string(g + 1) + " reads wire " + std::to_string(w) +
                               ", which is not an input or an earlier gate");
  }
  for (std::size_t w : outputs)
    if (w < 1 || w > wires()) throw SpecError(0, "output wire " + std::to_string(w) + " is not driven");
}

CircuitSpec parse_circuit(std::string_view text) {
  CircuitSpec c;
  for (const auto& l : lines_of(text)) {
    if (l.key == "inputs") {
      c.inputs = number(single(l), l.n);
    } else if (l.key == "gate") {
      if (l.tokens.empty()) throw SpecError(l.n, "expected 'gate AND|OR|NOT wire ...'");
      Gate g;
      const std::string& k = l.tokens[0];
      g.kind = k == "AND"   ? GateKind::And
               : k == "OR"  ? GateKind::Or
               : k == "NOT" ? GateKind::Not
                            : throw SpecError(l.n, "gate kind must be AND, OR or NOT");
      for (std::size_t i = 1; i < l.tokens.size(); ++i) g.inputs.push_back(number(l.tokens[i], l.n));
      c.gates.push_back(std::move(g));
    } else if (l.key == "output") {
      for (const auto& t : l.tokens) c.outputs.push_back(number(t, l.n));
    } else {
      throw SpecError(l.n, "unknown line kind '" + l.key + "'");
    }
  }
  c.validate();
  return c;
}

void RtmSpec::validate() const {
  check_states(states, initial);
  if (known(data, "_")) throw SpecError(0, "'_' is reserved for the blank");
  for (const auto& t : transitions) {
    if (!known(states, t.from) || !known(states, t.to)) throw SpecError(0, "transition mentions an undeclared state");
    if (t.action && !known(actions, *t.action)) throw SpecError(0, "undeclared action '" + *t.action + "'");
    for (const auto* sym : {&t.read, &t.write})
      if (*sym != "_" && !known(data, *sym)) throw SpecError(0, "undeclared data symbol '" + *sym + "'");
  }
}

RtmSpec parse_rtm(std::string_view text) {
  RtmSpec m;
  for (const auto& l : lines_of(text)) {
    if (l.key == "states") {
      m.states.insert(m.states.end(), l.tokens.begin(), l.tokens.end());
    } else if (l.key == "initial") {
      m.initial = single(l);
    } else if (l.key == "actions") {
      m.actions.insert(m.actions.end(), l.tokens.begin(), l.tokens.end());
    } else if (l.key == "data") {
      m.data.insert(m.data.end(), l.tokens.begin(), l.tokens.end());
    } else if (l.key == "trans") {
      need(l, 6, "trans: s a|tau read write L|R t");
      RtmTransition t;
      t.from = l.tokens[0];
      if (l.tokens[1] != "tau") t.action = l.tokens[1];
      t.read = l.tokens[2];
      t.write = l.tokens[3];
      t.move = move_of(l.tokens[4], l.n);
      t.to = l.tokens[5];
      m.transitions.push_back(std::move(t));
    } else {
      throw SpecError(l.n, "unknown line kind '" + l.key + "'");
    }
  }
  m.validate();
  return m;
}

}  // namespace procm
