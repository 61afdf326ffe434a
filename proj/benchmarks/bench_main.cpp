#include <benchmark/benchmark.h>

#include <memory>

#include "lieconst/geometry.hpp"
#include "lieconst/theorems.hpp"
#include "lieconst/verify.hpp"

using namespace lieconst;

namespace {

ManifoldSpec spec_for(int which, int band) {
  switch (which) {
    case 0: return ManifoldSpec::flat_torus(band);
    case 1: return ManifoldSpec::round_sphere(band);
    default: return ManifoldSpec::conformal_torus(band, {{TorusMode{1, 0, Parity::Cos}, 0.1}});
  }
}

void BM_BuildBasis(benchmark::State& state) {
  const ManifoldSpec spec = spec_for(int(state.range(0)), int(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(build_basis(spec));
}

void BM_AssembleTable(benchmark::State& state) {
  const auto basis = std::make_shared<const Basis>(build_basis(spec_for(int(state.range(0)), int(state.range(1)))));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_bracket_table(basis));
  state.counters["modes"] = double(basis->size());
}

void BM_CrossValidate(benchmark::State& state) {
  const Basis basis = build_basis(spec_for(int(state.range(0)), int(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(cross_validate(basis));
}

void BM_Jacobi(benchmark::State& state) {
  const auto basis = std::make_shared<const Basis>(build_basis(spec_for(int(state.range(0)), int(state.range(1)))));
  const BracketTable table = assemble_bracket_table(basis);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_closed_triples(table));
}

}  // namespace

// Arguments: manifold (0 torus, 1 sphere, 2 conformal torus), band.
BENCHMARK(BM_BuildBasis)->Args({0, 4})->Args({0, 16})->Args({1, 4})->Args({1, 8})->Args({2, 2})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleTable)->Args({0, 4})->Args({0, 8})->Args({1, 4})->Args({2, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossValidate)->Args({0, 2})->Args({0, 4})->Args({1, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Jacobi)->Args({0, 8})->Args({1, 3})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
