#include <benchmark/benchmark.h>

#include "procm/behavior.hpp"
#include "procm/causality.hpp"
#include "procm/encoders.hpp"
#include "procm/formats.hpp"
#include "procm/machine_specs.hpp"
#include "procm/parser.hpp"

using namespace procm;

namespace {

Run andor_run(int depth) {
  std::string text = read_file(std::string(PROCM_FIXTURES) + "/machines/andor" + std::to_string(depth) + ".atm");
  auto prog = std::make_shared<const Program>(encode_atm(parse_atm(text)));
  ScriptedInput in({{"i", {Word::repeat('1', std::size_t{1} << depth)}}});
  return run(prog, in);
}

void BM_CausalDag(benchmark::State& state) {
  Run r = andor_run(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CausalDag d = build_causal_dag(r);
    benchmark::DoNotOptimize(time_costs(d));
  }
  state.counters["events"] = static_cast<double>(r.steps.size());
}
BENCHMARK(BM_CausalDag)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ObservedSpace(benchmark::State& state) {
  Run r = andor_run(3);
  CausalDag d = build_causal_dag(r);
  std::size_t e = d.output_events().at(0);
  for (auto _ : state) benchmark::DoNotOptimize(space_cost(r, d, e, SpaceMode::Observed));
}
BENCHMARK(BM_ObservedSpace)->Unit(benchmark::kMillisecond);

void BM_ExactSpace(benchmark::State& state) {
  auto prog = std::make_shared<const Program>(parse_program("input i; output o; main := i?x.(o!x.0 | o!x.0)"));
  ScriptedInput in({{"i", {Word("0110")}}});
  Run r = run(prog, in);
  CausalDag d = build_causal_dag(r);
  std::size_t e = d.output_events().back();
  for (auto _ : state) benchmark::DoNotOptimize(space_cost(r, d, e, SpaceMode::Exact));
}
BENCHMARK(BM_ExactSpace);

FunTable table(std::size_t n) {
  FunTable t;
  for (std::size_t len = 0; t.size() < n; ++len)
    for (std::size_t b = 0; b < (std::size_t{1} << len) && t.size() < n; ++b) {
      std::string w;
      for (std::size_t k = 0; k < len; ++k) w += (b >> k & 1) ? '1' : '0';
      t[Word(w)] = Word(w);
    }
  return t;
}

void BM_WeakBisimTables(benchmark::State& state) {
  FunTable t = table(static_cast<std::size_t>(state.range(0)));
  FiniteLts a = functional_lts(t), b = functional_lts(t);
  for (auto _ : state) benchmark::DoNotOptimize(weak_bisim(a, b, true).outcome);
}
BENCHMARK(BM_WeakBisimTables)->RangeMultiplier(4)->Range(4, 256);

void BM_CheckFunctional(benchmark::State& state) {
  auto prog = parse_program("input i; output o; main := i?x.o!x.0");
  FunTable t = table(15);
  for (auto _ : state) benchmark::DoNotOptimize(check_functional(prog, t).outcome);
}
BENCHMARK(BM_CheckFunctional);

}  // namespace
