#include "encode_util.hpp"

namespace procm {

using namespace build;

Program encode_circuit(const CircuitSpec& c) {
  c.validate();
  Program p;
  const std::size_t m = c.inputs;

  // One queue per consumer endpoint: every gate input slot, then every output.
  std::size_t endpoints = c.outputs.size();
  for (const auto& g : c.gates) endpoints += g.inputs.size();
  std::vector<std::vector<Word>> consumers(c.wires() + 1);
  std::size_t next_id = 0;
  auto attach = [&](std::size_t wire) {
    Word key = Word("1").concat(fixed_code(next_id++, std::max<std::size_t>(endpoints, 1)));
    consumers.at(wire).push_back(key);
    return key;
  };
  std::vector<std::vector<Word>> gate_keys;
  for (const auto& g : c.gates) {
    std::vector<Word> keys;
    for (std::size_t wire : g.inputs) keys.push_back(attach(wire));
    gate_keys.push_back(std::move(keys));
  }
  std::vector<Word> out_keys;
  for (std::size_t wire : c.outputs) out_keys.push_back(attach(wire));

  auto fan = [&](std::size_t wire, const char* bit) {
    ProcessPtr k = stop();
    const auto& cs = consumers[wire];
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) k = snd(lit(*it), w(bit), k);
    return k;
  };

  std::vector<ProcessPtr> parts;
  for (std::size_t k = 1; k <= m; ++k) {
    std::string ch = "i" + std::to_string(k);
    p.inputs.insert(ch);
    parts.push_back(inp(ch, "x", ite(is0(var("x")), fan(k, "0"), fan(k, "1"))));
  }

  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    const std::size_t wire = m + g + 1;
    const auto& keys = gate_keys[g];
    auto y = [](std::size_t k) { return var("y" + std::to_string(k)); };
    ProcessPtr body;
    if (gate.kind == GateKind::Not) {
      body = ite(is0(y(0)), fan(wire, "1"), fan(wire, "0"));
    } else if (gate.kind == GateKind::And) {
      body = fan(wire, "1");
      for (std::size_t k = keys.size(); k-- > 0;) body = ite(is0(y(k)), fan(wire, "0"), body);
    } else {
      body = fan(wire, "0");
      for (std::size_t k = keys.size(); k-- > 0;) body = ite(is0(y(k)), body, fan(wire, "1"));
    }
    for (std::size_t k = keys.size(); k-- > 0;) body = rcv(lit(keys[k]), "y" + std::to_string(k), body);
    parts.push_back(body);
  }

  for (std::size_t j = 0; j < c.outputs.size(); ++j) {
    std::string ch = "o" + std::to_string(j + 1);
    p.outputs.insert(ch);
    parts.push_back(rcv(lit(out_keys[j]), "v", out(ch, var("v"))));
  }
  p.main = par_all(parts);
  return finish(p);
}

}  // namespace procm
