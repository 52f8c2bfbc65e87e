#include <random>

#include "common.hpp"
#include "oracles.hpp"
#include "procm/behavior.hpp"
#include "procm/encoders.hpp"
#include "procm/formats.hpp"
#include "procm/parser.hpp"

namespace acc {

using namespace procm;

Outcome functional_lemma() {
  const std::vector<Word> domain{Word(), Word("0"), Word("1"), Word("00"), Word("01"), Word("10"), Word("11")};
  auto table_of = [&](const std::vector<Word>& values) {
    FunTable t;
    for (std::size_t k = 0; k < domain.size(); ++k) t[domain[k]] = values[k];
    return t;
  };

  // Every table with values in {0, 1}: all ordered pairs.
  std::vector<FunTable> tables;
  std::vector<FiniteLts> ltss;
  for (unsigned bits = 0; bits < (1u << domain.size()); ++bits) {
    std::vector<Word> values;
    for (std::size_t k = 0; k < domain.size(); ++k) values.emplace_back(bits >> k & 1 ? "1" : "0");
    tables.push_back(table_of(values));
    ltss.push_back(functional_lts(tables.back()));
  }
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < tables.size(); ++a)
    for (std::size_t b = 0; b < tables.size(); ++b) {
      bool bisim = weak_bisim(ltss[a], ltss[b], true).equivalent();
      if (bisim != (tables[a] == tables[b]))
        return {false, "tables " + std::to_string(a) + " and " + std::to_string(b) + " break the equivalence"};
      ++pairs;
    }

  // Values in {"", 0, 1, 00}: random pairs, half of them differing in one entry.
  const std::vector<Word> values{Word(), Word("0"), Word("1"), Word("00")};
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 4000; ++round) {
    std::vector<Word> va, vb;
    for (std::size_t k = 0; k < domain.size(); ++k) va.push_back(values[rng() % values.size()]);
    vb = va;
    if (round % 2) {
      for (std::size_t k = 0; k < domain.size(); ++k) vb[k] = values[rng() % values.size()];
    } else if (round % 4 == 0) {
      vb[rng() % domain.size()] = values[rng() % values.size()];
    }
    FunTable ta = table_of(va), tb = table_of(vb);
    bool bisim = weak_bisim(functional_lts(ta), functional_lts(tb), true).equivalent();
    if (bisim != (ta == tb)) return {false, "random pair " + std::to_string(round) + " breaks the equivalence"};
    ++pairs;
  }

  FiniteLts loop, dead;
  loop.add_state();
  loop.add_transition(0, Action::tau(), 0);
  dead.add_state();
  if (!weak_bisim(loop, dead, false).equivalent()) return {false, "tau-loop and deadlock not weakly bisimilar"};
  if (weak_bisim(loop, dead, true).equivalent()) return {false, "tau-loop and deadlock divergence-sensitively bisimilar"};
  return {true, std::to_string(pairs) + " table pairs: bisimilar iff equal; tau-loop vs deadlock weak only"};
}

Outcome determinacy() {
  struct Fixture {
    std::string name;
    std::shared_ptr<const Program> prog;
    std::vector<std::map<std::string, std::vector<Word>>> scripts;
  };
  auto machine = [](const std::string& f) { return read_file(fixture("machines/" + f)); };
  std::vector<Fixture> fixtures{
      {"inc.tm", share(encode_tm(parse_tm(machine("inc.tm")))), {{{"i", {Word("0111")}}}, {{"i", {Word("")}}}}},
      {"palindrome.tm", share(encode_tm(parse_tm(machine("palindrome.tm")))),
       {{{"i", {Word("0110")}}}, {{"i", {Word("011")}}}}},
      {"andor2.atm", share(encode_atm(parse_atm(machine("andor2.atm")))),
       {{{"i", {Word("0110")}}}, {{"i", {Word("1000")}}}}},
      {"add.ram", share(encode_ram(parse_ram(machine("add.ram")))), {{{"i", {Word("000")}}}}},
      {"echo2.pram", share(encode_pram(parse_pram(machine("echo2.pram")))),
       {{{"i1", {Word("00")}}, {"i2", {Word("0")}}}}},
      {"adder2.circuit", share(encode_circuit(parse_circuit(machine("adder2.circuit")))),
       {{{"i1", {Word("1")}}, {"i2", {Word("0")}}, {"i3", {Word("1")}}, {"i4", {Word("1")}}}}},
      {"id.proc", share(parse_program(read_file(fixture("programs/id.proc")))), {{{"i", {Word("01")}}}}},
  };
  std::size_t runs = 0;
  for (const auto& f : fixtures)
    for (const auto& script : f.scripts) {
      std::map<std::string, std::vector<Word>> reference;
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Run r = execute(f.prog, script, Scheduler::random(seed));
        if (r.status.kind != RunStatus::Kind::Completed) return {false, f.name + " run did not complete"};
        std::map<std::string, std::vector<Word>> seen;
        for (const auto& [k, act] : outputs(r)) seen[act.channel].push_back(act.word);
        if (seen.empty()) return {false, f.name + " produced no output"};
        if (seed == 0) reference = seen;
        else if (seen != reference) return {false, f.name + " output differs under seed " + std::to_string(seed)};
        ++runs;
      }
    }
  return {true, std::to_string(fixtures.size()) + " functional fixtures, " + std::to_string(runs) +
                    " random schedules: identical outputs per channel"};
}

}  // namespace acc
