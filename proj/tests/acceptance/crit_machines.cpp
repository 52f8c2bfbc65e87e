#include <sstream>

#include "common.hpp"
#include "oracles.hpp"
#include "procm/behavior.hpp"
#include "procm/causality.hpp"
#include "procm/encoders.hpp"
#include "procm/formats.hpp"

namespace acc {

using namespace procm;

namespace {

std::vector<std::string> all_words(std::size_t min_len, std::size_t max_len) {
  std::vector<std::string> out;
  for (std::size_t n = min_len; n <= max_len; ++n)
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
      std::string w;
      for (std::size_t k = 0; k < n; ++k) w += (bits >> k & 1) ? '1' : '0';
      out.push_back(w);
    }
  return out;
}

struct TmCase {
  std::string name;
  TmSpec spec;
  std::shared_ptr<const Program> prog;
};

std::vector<TmCase> tm_cases() {
  std::vector<TmCase> cases;
  for (std::string name : {"inc", "palindrome"}) {
    TmSpec m = parse_tm(read_file(fixture("machines/" + name + ".tm")));
    cases.push_back({name, m, share(encode_tm(m))});
  }
  return cases;
}

// Time cost of the single output event of a run.
std::uint64_t output_time(const Run& r) {
  CausalDag d = build_causal_dag(r);
  auto outs = d.output_events();
  return outs.size() == 1 ? time_cost(d, outs[0]) : 0;
}

}  // namespace

Outcome tm_fidelity() {
  std::size_t checked = 0;
  for (const auto& c : tm_cases()) {
    for (const auto& x : all_words(0, 8)) {
      Run r = execute(c.prog, {{"i", {Word(x)}}});
      auto want = oracle::run_tm(c.spec, x);
      auto outs = outputs(r);
      if (!want.output || outs.size() != 1 || outs[0].second.word.bits() != *want.output)
        return {false, c.name + " disagrees with the simulator on \"" + x + "\""};
      for (const auto& s : r.steps)
        if (!s.tag.empty()) return {false, c.name + " spawned a processor on \"" + x + "\""};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " runs agree with the simulator, all records tagged \"\""};
}

Outcome constant_slowdown() {
  // Frozen at length 1: max of t(output) / (steps + |x| + 1).
  const std::map<std::string, Ratio> frozen{{"inc", {259, 6}}, {"palindrome", {762, 5}}};
  std::ostringstream detail;
  std::size_t frozen_ok = 0;
  for (const auto& c : tm_cases()) {
    auto ratio = [&](const std::string& x) {
      Run r = execute(c.prog, {{"i", {Word(x)}}});
      auto steps = oracle::run_tm(c.spec, x).steps;
      return Ratio{output_time(r), steps + x.size() + 1};
    };
    Ratio measured;
    for (const auto& x : all_words(1, 1)) measured = std::max(measured, ratio(x));
    const Ratio bound = frozen.at(c.name);
    if (measured < bound || bound < measured) {
      detail << c.name << " constant at length 1 is " << measured.str() << ", frozen " << bound.str() << "; ";
      continue;
    }
    Ratio worst;
    for (const auto& x : all_words(1, 8)) {
      Ratio q = ratio(x);
      if (bound < q) return {false, c.name + " ratio " + q.str() + " on \"" + x + "\" exceeds " + bound.str()};
      worst = std::max(worst, q);
    }
    detail << c.name << " C=" << bound.str() << " (max over lengths 1..8 " << worst.str() << "); ";
    ++frozen_ok;
  }
  std::string text = detail.str();
  return {frozen_ok == frozen.size(), text.substr(0, text.size() - 2)};
}

Outcome atm_parallelism() {
  std::ostringstream detail;
  for (int depth = 1; depth <= 4; ++depth) {
    AtmSpec m = parse_atm(read_file(fixture("machines/andor" + std::to_string(depth) + ".atm")));
    auto prog = share(encode_atm(m));
    const std::size_t leaves = std::size_t{1} << depth;
    for (const auto& x : all_words(leaves, leaves)) {
      auto want = oracle::eval_atm(m, x);
      Run r = execute(prog, {{"i", {Word(x)}}});
      auto outs = outputs(r);
      if (!want || outs.size() != 1 || outs[0].second.word != Word(*want ? "1" : "0"))
        return {false, "depth " + std::to_string(depth) + " disagrees with the evaluator on \"" + x + "\""};
    }
    if (depth != 4) continue;

    Run r = execute(prog, {{"i", {Word(std::string(leaves, '1'))}}});
    CausalDag d = build_causal_dag(r);
    std::uint64_t total = 0;
    for (const auto& s : r.steps) total += s.weight;
    std::uint64_t t = time_cost(d, d.output_events().at(0));
    if (2 * t >= total) return {false, "t(output)=" + std::to_string(t) + " not below half of " + std::to_string(total)};

    // The first fork at tag p spawns (T0 | T1) at p0, whose branches run under p00 and p01.
    std::optional<std::string> pair;
    for (const auto& s : r.steps)
      if (s.op == Op::Spn && !s.tag.empty()) {
        pair = s.tag.bits() + "0";
        break;
      }
    if (!pair) return {false, "no fork found"};
    std::vector<std::size_t> left, right;
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
      const std::string& tag = r.steps[k].tag.bits();
      if (tag.rfind(*pair + "0", 0) == 0) left.push_back(k);
      if (tag.rfind(*pair + "1", 0) == 0) right.push_back(k);
    }
    if (left.empty() || right.empty()) return {false, "fork branches are empty"};
    for (auto a : left)
      for (auto b : right)
        if (d.leq(a, b) || d.leq(b, a)) return {false, "branch events " + std::to_string(a) + " and " + std::to_string(b) + " are ordered"};
    detail << "depths 1..4 match the evaluator; depth 4: t(output)=" << t << " < " << total << "/2, " << left.size()
           << "x" << right.size() << " branch events pairwise incomparable";
  }
  return {true, detail.str()};
}

Outcome ram_pram_circuit() {
  RamProgram add = parse_ram(read_file(fixture("machines/add.ram")));
  for (std::size_t b = 0; b <= 6; ++b) {
    RamProgram m = add;
    m.init = {{0, Word::repeat('0', b)}};
    auto prog = share(encode_ram(m));
    for (std::size_t a = 0; a <= 6; ++a) {
      auto want = oracle::run_ram(m, a);
      auto outs = outputs(execute(prog, {{"i", {Word::repeat('0', a)}}}));
      if (!want.acc || *want.acc != a + b || outs.size() != 1 || outs[0].second.word != Word::repeat('0', *want.acc))
        return {false, "RAM add " + std::to_string(a) + "+" + std::to_string(b) + " is wrong"};
    }
  }

  PramProgram echo = parse_pram(read_file(fixture("machines/echo2.pram")));
  auto pram = share(encode_pram(echo));
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b) {
      auto want = oracle::run_pram(echo, {a, b});
      Run r = execute(pram, {{"i1", {Word::repeat('0', a)}}, {"i2", {Word::repeat('0', b)}}});
      std::map<std::string, Word> got;
      for (const auto& [k, act] : outputs(r)) got[act.channel] = act.word;
      if (got.size() != 2 || !want[0] || !want[1] || got["o1"] != Word::repeat('0', *want[0]) ||
          got["o2"] != Word::repeat('0', *want[1]) || *want[0] != a || *want[1] != b)
        return {false, "PRAM echo of " + std::to_string(a) + "," + std::to_string(b) + " is wrong"};
    }

  CircuitSpec adder = parse_circuit(read_file(fixture("machines/adder2.circuit")));
  auto circ = share(encode_circuit(adder));
  for (unsigned v = 0; v < 16; ++v) {
    std::vector<bool> in;
    std::map<std::string, std::vector<Word>> script;
    for (unsigned k = 0; k < 4; ++k) {
      in.push_back(v >> k & 1);
      script["i" + std::to_string(k + 1)] = {Word(in.back() ? "1" : "0")};
    }
    unsigned a = in[0] + 2 * in[1], b = in[2] + 2 * in[3], sum = a + b;
    std::vector<bool> table{bool(sum & 1), bool(sum & 2), bool(sum & 4)};
    if (oracle::eval_circuit(adder, in) != table) return {false, "circuit oracle disagrees with the truth table"};
    std::map<std::string, Word> got;
    for (const auto& [k, act] : outputs(execute(circ, script))) got[act.channel] = act.word;
    for (unsigned j = 0; j < 3; ++j)
      if (got["o" + std::to_string(j + 1)] != Word(table[j] ? "1" : "0"))
        return {false, "adder wrong on " + std::to_string(a) + "+" + std::to_string(b)};
  }
  return {true, "RAM add on 49 operand pairs, PRAM echo on 16 input pairs, adder on 16 inputs"};
}

Outcome rtm_encoding() {
  RtmSpec m = parse_rtm(read_file(fixture("machines/counter.rtm")));
  if (m.states.size() != 3) return {false, "fixture is not a 3-state RTM"};
  ExploreOptions opts;
  opts.visible_depth = 4;
  opts.state_limit = 200'000;
  FiniteLts encoded = explore_lts(encode_rtm(m), {}, opts);
  FiniteLts direct = oracle::rtm_lts(m, 4);
  BisimVerdict v = weak_bisim(encoded, direct, false);
  std::string sizes = "encoded " + std::to_string(encoded.num_states()) + " states, direct " +
                      std::to_string(direct.num_states()) + " states";
  if (!v.equivalent()) return {false, std::string(to_string(v.outcome)) + ": " + v.reason + "; " + sizes};
  return {true, "weakly bisimilar up to 4 visible steps; " + sizes};
}

}  // namespace acc
