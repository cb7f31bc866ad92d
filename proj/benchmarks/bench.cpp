#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "fracwave/calculus.hpp"
#include "fracwave/fracderiv.hpp"
#include "fracwave/parse.hpp"
#include "fracwave/registry.hpp"
#include "fracwave/verify.hpp"

using namespace fracwave;

namespace {

const char* equation_of(std::int64_t i) {
  static const char* names[] = {"burgers", "coupled-burgers", "foam-drainage", "sawada-kotera"};
  return names[i];
}

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(symexpr::parse("-2*A*k*q/(r + sqrt(r^2 - 4*q)*tanh(1/2*sqrt(r^2 - 4*q)*(xi + xi0)))"));
  }
}
BENCHMARK(BM_Parse);

void BM_ExpandSquare(benchmark::State& state) {
  const auto e = symexpr::parse("(A0 + A1*E + A2*E^2)^3*(p*E^2 + r*E + q)^2");
  for (auto _ : state) benchmark::DoNotOptimize(symexpr::expand_normalize(e));
}
BENCHMARK(BM_ExpandSquare);

void BM_DeriveSystem(benchmark::State& state) {
  const auto& spec = registry::equation(equation_of(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(expansion::derive_system(spec));
  state.SetLabel(spec.name);
}
BENCHMARK(BM_DeriveSystem)->DenseRange(0, 3);

void BM_SolveAndVerify(benchmark::State& state) {
  const auto sys = expansion::derive_system(registry::equation(equation_of(state.range(0))));
  for (auto _ : state) {
    for (const auto& ps : expansion::solve_triangular(sys).param_sets) {
      benchmark::DoNotOptimize(expansion::verify_param_set(sys, ps));
    }
  }
  state.SetLabel(equation_of(state.range(0)));
}
BENCHMARK(BM_SolveAndVerify)->DenseRange(0, 2);

void BM_AuxResidual(benchmark::State& state) {
  const auto samples = verify::sample_points(-3.0, 3.0, 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify::aux_ode_residual(catalog::BranchId::T1a, {1.0, 1.0, 3.0, 0.25}, samples));
  }
}
BENCHMARK(BM_AuxResidual);

void BM_ReducedOdeResidual(benchmark::State& state) {
  const auto f = catalog::find_family("sawada-kotera", "T2tanh");
  const auto& spec = registry::equation("sawada-kotera");
  const auto samples = verify::sample_points(-3.0, 3.0, 60);
  const symexpr::NumericBindings b{{"k", 1}, {"p", -1}, {"q", 1}, {"xi0", 0}};
  for (auto _ : state) benchmark::DoNotOptimize(verify::reduced_ode_residual(spec, f, b, samples));
}
BENCHMARK(BM_ReducedOdeResidual);

void BM_ClassicalResidual(benchmark::State& state) {
  const auto f = catalog::find_family("burgers", "T2tanh");
  const symexpr::NumericBindings b{{"A", 1}, {"k", 1}, {"p", -1}, {"q", 1}, {"xi0", 0}};
  for (auto _ : state) benchmark::DoNotOptimize(verify::classical_pde_residual(f, b, verify::Grid{}));
}
BENCHMARK(BM_ClassicalResidual)->Unit(benchmark::kMillisecond);

void BM_MrlQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fracderiv::mrl_quadrature([](double s) { return std::sin(s); }, 0.5, 2.0));
  }
}
BENCHMARK(BM_MrlQuadrature);

void BM_FamilyAudit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify::family_audit(registry::equation_names()));
}
BENCHMARK(BM_FamilyAudit)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
BENCHMARK_MAIN();
