#include <vector>

#include <benchmark/benchmark.h>

#include "korteweg/capillary.hpp"
#include "korteweg/hyperbolic.hpp"
#include "korteweg/operators.hpp"
#include "korteweg/simulation.hpp"
#include "korteweg/verify.hpp"

namespace {

using namespace korteweg;

void BM_ApplyTh(benchmark::State& st) {
  const auto c = entropy_case(static_cast<int>(st.range(0)), 1);
  const CapillaryOperator op(c.initial.rho, c.model.capillarity);
  const std::vector<double> v = interleave(c.initial.mu);
  std::vector<double> out(v.size());
  for (auto _ : st) {
    op.apply(v, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(c.initial.rho.grid().size()));
}
BENCHMARK(BM_ApplyTh)->Arg(64)->Arg(128)->Arg(256);

void BM_ExplicitStep(benchmark::State& st) {
  const auto c = entropy_case(static_cast<int>(st.range(0)), 0);
  const double dt = compute_dt(c.initial, c.model.flux, c.model.cfl, c.model.dt_max);
  for (auto _ : st) {
    State next = explicit_step(c.initial, c.model.flux, dt);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_ExplicitStep)->Arg(64)->Arg(128)->Arg(256);

void BM_ImplicitSolve(benchmark::State& st) {
  const auto c = entropy_case(static_cast<int>(st.range(0)), 0);
  auto model = c.model;
  model.solver.kind = st.range(1) == 0 ? SolverKind::Krylov : SolverKind::Direct;
  const double dt = compute_dt(c.initial, model.flux, model.cfl, model.dt_max);
  const ImplicitSystem sys{c.initial.rho, CapillaryOperator(c.initial.rho, model.capillarity), dt,
                           c.initial.mu, c.initial.mw, model.solver};
  for (auto _ : st) {
    ImplicitResult r = implicit_solve(sys);
    benchmark::DoNotOptimize(r.mu);
    st.counters["iters"] = r.iterations;
  }
}
BENCHMARK(BM_ImplicitSolve)->Args({32, 0})->Args({32, 1})->Args({64, 0})->Args({64, 1})->Args({128, 0});

void BM_Step(benchmark::State& st) {
  const auto c = entropy_case(static_cast<int>(st.range(0)), 0);
  for (auto _ : st) {
    StepOutcome o = step(c.initial, c.model);
    benchmark::DoNotOptimize(o);
  }
}
BENCHMARK(BM_Step)->Arg(64)->Arg(128);

void BM_FilmStep(benchmark::State& st) {
  const auto c = nusselt_case(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
  for (auto _ : st) {
    StepOutcome o = step(c.initial, c.model);
    benchmark::DoNotOptimize(o);
  }
}
BENCHMARK(BM_FilmStep)->Arg(64)->Arg(128);

}  // namespace
BENCHMARK_MAIN();
