// Copyright 2026 The spinlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "spinlab/compiler.hpp"
#include "spinlab/experiment.hpp"
#include "spinlab/refocusing.hpp"
#include "spinlab/simulator.hpp"

namespace {

using namespace spinlab;

void BM_ParityUnitaryIdeal(benchmark::State& state) {
  const auto b = molecule_b();
  const auto p = compile_parity(b);
  for (auto _ : state) benchmark::DoNotOptimize(program_unitary(p, b, SimMode::Ideal));
}
BENCHMARK(BM_ParityUnitaryIdeal);

void BM_FanoutUnitaryFull(benchmark::State& state) {
  const auto c = molecule_c();
  const auto p = compile_fanout(c);
  for (auto _ : state) benchmark::DoNotOptimize(program_unitary(p, c, SimMode::Full));
}
BENCHMARK(BM_FanoutUnitaryFull);

void BM_ApplyThermal(benchmark::State& state) {
  const auto a = molecule_a();
  const auto p = compile_inversion_on_equality(a);
  const auto rho = thermal_state(a);
  for (auto _ : state) benchmark::DoNotOptimize(apply_program(rho, p, a, SimMode::Full));
}
BENCHMARK(BM_ApplyThermal);

void BM_SimplifyNaiveParity(benchmark::State& state) {
  const auto p = naive_parity_concatenation(molecule_b());
  for (auto _ : state) benchmark::DoNotOptimize(simplify(p));
}
BENCHMARK(BM_SimplifyNaiveParity);

void BM_Synthesize(benchmark::State& state) {
  const auto b = molecule_b();
  const std::map<SpinPair, DelayExpr> targets = {
      {SpinPair(1, 2), DelayExpr::coupling_fraction(1, 2, SpinPair(1, 2))},
      {SpinPair(2, 3), DelayExpr::coupling_fraction(1, 2, SpinPair(2, 3))},
  };
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(b, targets));
}
BENCHMARK(BM_Synthesize);

}  // namespace
BENCHMARK_MAIN();
