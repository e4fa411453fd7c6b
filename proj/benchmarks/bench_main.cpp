#include "biot3f/biot_solver.hpp"
#include "biot3f/mesh.hpp"
#include "biot3f/quadrature.hpp"

#include <benchmark/benchmark.h>

#include <memory>

namespace {

using namespace biot3f;

Spaces spaces_for(int n, ElementPair pair)
{
    return make_spaces(std::make_shared<const Mesh>(build_unit_square(n)), pair);
}

void BM_TriangleRule(benchmark::State& state)
{
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(triangle_rule(degree));
}
BENCHMARK(BM_TriangleRule)->Arg(2)->Arg(6)->Arg(8);

void BM_AssembleBlocks(benchmark::State& state)
{
    const Spaces s = spaces_for(static_cast<int>(state.range(0)), ElementPair::P2P1P1);
    const PhysicalParams params{1.0, 1e-2, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(assemble_block_system(s, params, 1e-3));
    state.SetLabel(std::to_string(s.u.dof_count() + s.q.dof_count() + s.p.dof_count()) + " dofs");
}
BENCHMARK(BM_AssembleBlocks)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Factorize(benchmark::State& state)
{
    const Spaces s = spaces_for(static_cast<int>(state.range(0)), ElementPair::P2P0P1);
    const PhysicalParams params{1.0, 1e-2, 1.0};
    for (auto _ : state) {
        StepOperator op(s, params, 1e-3);
        benchmark::DoNotOptimize(op.tau());
    }
}
BENCHMARK(BM_Factorize)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_StepSolve(benchmark::State& state)
{
    const ManufacturedCase mc = get_case("ex1");
    const Spaces s = spaces_for(static_cast<int>(state.range(0)), ElementPair::P2P1P1);
    const StepOperator op(s, mc.params, 1e-3);
    const FieldState x0 = zero_state(s);
    const StepInput input = make_step_input(mc, s, 1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(op.step(x0, input));
}
BENCHMARK(BM_StepSolve)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_LoadAssembly(benchmark::State& state)
{
    const ManufacturedCase mc = get_case("ex1");
    const Spaces s = spaces_for(static_cast<int>(state.range(0)), ElementPair::P2P1P1);
    for (auto _ : state) benchmark::DoNotOptimize(make_step_input(mc, s, 0.5));
}
BENCHMARK(BM_LoadAssembly)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
