#include <benchmark/benchmark.h>

#include "procm/encoders.hpp"
#include "procm/formats.hpp"
#include "procm/machine.hpp"
#include "procm/machine_specs.hpp"

using namespace procm;

namespace {

std::shared_ptr<const Program> load(const std::string& kind, const std::string& file) {
  std::string text = read_file(std::string(PROCM_FIXTURES) + "/machines/" + file);
  if (kind == "tm") return std::make_shared<const Program>(encode_tm(parse_tm(text)));
  return std::make_shared<const Program>(encode_atm(parse_atm(text)));
}

void BM_RunIncrement(benchmark::State& state) {
  auto prog = load("tm", "inc.tm");
  Word x = Word::repeat('1', static_cast<std::size_t>(state.range(0)));
  std::size_t steps = 0;
  for (auto _ : state) {
    ScriptedInput in({{"i", {x}}});
    Run r = run(prog, in);
    steps += r.steps.size();
    benchmark::DoNotOptimize(r.final);
  }
  state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RunIncrement)->RangeMultiplier(4)->Range(1, 256);

void BM_RunAndOr(benchmark::State& state) {
  int depth = static_cast<int>(state.range(0));
  auto prog = load("atm", "andor" + std::to_string(depth) + ".atm");
  Word x = Word::repeat('1', std::size_t{1} << depth);
  for (auto _ : state) {
    ScriptedInput in({{"i", {x}}});
    benchmark::DoNotOptimize(run(prog, in).steps.size());
  }
}
BENCHMARK(BM_RunAndOr)->DenseRange(1, 4);

void BM_RunAndOrRandom(benchmark::State& state) {
  auto prog = load("atm", "andor3.atm");
  Word x = Word::repeat('1', 8);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ScriptedInput in({{"i", {x}}});
    benchmark::DoNotOptimize(run(prog, in, Scheduler::random(++seed)).steps.size());
  }
}
BENCHMARK(BM_RunAndOrRandom);

}  // namespace

BENCHMARK_MAIN();
