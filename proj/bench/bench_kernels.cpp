// Serial reference vs OpenMP batch kernels.

#include <benchmark/benchmark.h>

#include "inner/kernels.hpp"

using namespace inner;

namespace {

std::shared_ptr<const MapAtlas> four_atoms_with_tails() {
  InnerFunctionSpec s;
  s.zero_order = 1;
  s.zeros = {{0.5, 1.0, 1}, {0.8, 4.0, 2}};
  for (int i = 0; i < 4; ++i) {
    s.atoms.push_back({kPi / 2 * i, 1.0});
    TailFamily f;
    f.anchor_theta = kPi / 2 * i + kPi / 4;
    s.tails.push_back(f);
  }
  return build_atlas(s);
}

std::vector<double> grid(long n) {
  std::vector<double> v(n);
  for (long i = 0; i < n; ++i) v[i] = kTwoPi * (i + 0.5) / n;
  return v;
}

const auto& atlas() {
  static const auto at = four_atoms_with_tails();
  return at;
}

template <Exec E>
void BM_eval_phase(benchmark::State& st) {
  const auto pts = grid(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(eval_phase_batch(*atlas()->fn, pts, E));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <Exec E>
void BM_apply(benchmark::State& st) {
  const CircleMap y = realize(atlas(), rotation_generator(atlas()->group));
  const auto pts = grid(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(apply_batch(y, pts, E));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_eval_phase<Exec::Serial>)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_eval_phase<Exec::Parallel>)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_apply<Exec::Serial>)->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(BM_apply<Exec::Parallel>)->Arg(1 << 10)->Arg(1 << 12);

BENCHMARK_MAIN();
