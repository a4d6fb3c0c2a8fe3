// Copyright 2026 The qmpa authors
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

// Microbenchmarks for the hot paths: generator assembly, peripheral
// spectral decomposition, dual-basis construction, and the structure
// equation solver, each swept over the Hilbert space dimension.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "qmpa/qmpa.hpp"

using namespace qmpa;

namespace {

DiscreteModel random_channel(int dim, int kraus_count, unsigned seed) {
  Rng rng = make_rng(seed);
  DiscreteModel m;
  m.dim = dim;
  m.kraus = random_kraus_channel(rng, dim, kraus_count);
  return m;
}

// A unitary channel with generic phases: every eigenvalue is peripheral, so
// the dual-basis and structure paths see the largest possible attractor.
DiscreteModel phase_unitary_channel(int dim) {
  Operator u = Operator::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    double theta = 0.37 + 1.13 * j + 0.11 * j * j;
    u(j, j) = Complex(std::cos(theta), std::sin(theta));
  }
  DiscreteModel m;
  m.dim = dim;
  m.kraus = {u};
  return m;
}

void BM_generator_build(benchmark::State& state) {
  Model m(random_channel(static_cast<int>(state.range(0)), 3, 42));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generator_schrodinger(m));
  }
}
BENCHMARK(BM_generator_build)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_decompose(benchmark::State& state) {
  Model m(random_channel(static_cast<int>(state.range(0)), 3, 43));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(m));
  }
}
BENCHMARK(BM_decompose)->Arg(2)->Arg(4)->Arg(8);

void BM_dual_basis(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  Model m(phase_unitary_channel(dim));
  AttractorDecomposition d = decompose(m);
  Operator sigma = Operator::Identity(dim, dim) / static_cast<double>(dim);
  MonotoneFunction k = MonotoneFunction::power(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dual_basis(d, k, sigma, sigma));
  }
}
BENCHMARK(BM_dual_basis)->Arg(2)->Arg(4)->Arg(6);

void BM_structure_space(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  DiscreteModel m = phase_unitary_channel(dim);
  Operator sigma = Operator::Identity(dim, dim) / static_cast<double>(dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qmch_structure_space(m, sigma, Complex(1, 0)));
  }
}
BENCHMARK(BM_structure_space)->Arg(2)->Arg(4)->Arg(8);

void BM_asymptotic_state(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  Model m(phase_unitary_channel(dim));
  AttractorDecomposition d = decompose(m);
  Operator sigma = Operator::Identity(dim, dim) / static_cast<double>(dim);
  DualBasis db = dual_basis(d, MonotoneFunction::power(0.5), sigma, sigma);
  AsymptoticPropagator prop(ModelKind::kDiscrete, dim, db);
  Rng rng = make_rng(7);
  Operator rho0 = random_state(rng, dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(prop.state(rho0, 100.0));
  }
}
BENCHMARK(BM_asymptotic_state)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
