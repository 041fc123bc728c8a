#include <benchmark/benchmark.h>

#include "chemotaxis/diagnostics.hpp"
#include "chemotaxis/scenarios.hpp"

using namespace chemotaxis;

namespace {

Scenario sized(const char* preset, std::int64_t n) { return with_n_cells(paper_preset(preset), static_cast<std::size_t>(n)); }

void BM_StepEpsPositive(benchmark::State& st) {
  const auto scn = sized("eps07_case1", st.range(0));
  State s = sample_initial(scn.initial, scn.cfg.grid);
  for (auto _ : st) {
    s = step_eps_positive(s, scn.cfg).first;
    benchmark::DoNotOptimize(s.u.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(scn.cfg.grid.n_nodes()));
}
BENCHMARK(BM_StepEpsPositive)->Arg(50)->Arg(200)->Arg(800);

void BM_StepEpsZero(benchmark::State& st) {
  const auto scn = sized("eps0_case1", st.range(0));
  State s = sample_initial(scn.initial, scn.cfg.grid);
  for (auto _ : st) {
    s = step_eps_zero(s, scn.cfg).first;
    benchmark::DoNotOptimize(s.u.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(scn.cfg.grid.n_nodes()));
}
BENCHMARK(BM_StepEpsZero)->Arg(50)->Arg(200)->Arg(800);

// Full run to t=0.05 (4000 steps at N=200) with the preset's sampling plan.
void BM_RunShortHorizon(benchmark::State& st) {
  const auto scn = with_t_end(paper_preset("eps07_case1"), 0.05);
  const State init = sample_initial(scn.initial, scn.cfg.grid);
  for (auto _ : st) {
    auto r = run(scn.cfg, init, scn.samples);
    benchmark::DoNotOptimize(r.steps_taken);
  }
}
BENCHMARK(BM_RunShortHorizon)->Unit(benchmark::kMillisecond);

void BM_Diagnose(benchmark::State& st) {
  const auto scn = sized("eps07_case1", st.range(0));
  const State s = sample_initial(scn.initial, scn.cfg.grid);
  for (auto _ : st) {
    auto rec = diagnose(s, scn.cfg, 0.1);
    benchmark::DoNotOptimize(rec.h2_u_tilde);
  }
}
BENCHMARK(BM_Diagnose)->Arg(200)->Arg(800);

void BM_RelativeEntropy(benchmark::State& st) {
  const auto scn = sized("eps07_case1", st.range(0));
  const State s = sample_initial(scn.initial, scn.cfg.grid);
  for (auto _ : st) benchmark::DoNotOptimize(relative_entropy(s.u, 0.3, scn.cfg.grid));
}
BENCHMARK(BM_RelativeEntropy)->Arg(200)->Arg(800);

void BM_ColeHopfRoundTrip(benchmark::State& st) {
  const auto scn = sized("eps07_case1", st.range(0));
  const State s = sample_initial(scn.initial, scn.cfg.grid);
  for (auto _ : st) {
    auto v = cole_hopf_forward(cole_hopf_inverse(s.v, 1.0, scn.cfg.grid), scn.cfg.grid);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_ColeHopfRoundTrip)->Arg(200)->Arg(800);

}  // namespace

BENCHMARK_MAIN();
