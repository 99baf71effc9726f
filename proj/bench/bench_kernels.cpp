// Incidence counting: naive double loop vs serial buckets vs OpenMP buckets.
#include "forge/gf.hpp"
#include "forge/kernels.hpp"
#include "forge/plane.hpp"
#include "forge/reference.hpp"
#include "forge/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

struct Instance {
  std::shared_ptr<const forge::Field> f;
  forge::RawPoints pts;
  std::vector<forge::RawLine> lines;
};

Instance make(std::size_t n) {
  Instance in;
  in.f = forge::Field::make(251, 2);
  forge::Rng rng(42 + n);
  const std::uint64_t q = in.f->q();
  for (std::size_t i = 0; i < n; ++i) {
    in.pts.x.push_back(static_cast<std::uint32_t>(rng.below(q)));
    in.pts.y.push_back(static_cast<std::uint32_t>(rng.below(q)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto l = forge::Line::graph(in.f->element(static_cast<std::uint32_t>(rng.below(q))),
                                in.f->element(static_cast<std::uint32_t>(rng.below(q))));
    in.lines.push_back({l.a().value(), l.b().value(), l.c().value()});
  }
  return in;
}

void BM_naive(benchmark::State& st) {
  auto in = make(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(forge::reference::count_incidences_naive(*in.f, in.pts, in.lines));
}

void BM_serial(benchmark::State& st) {
  auto in = make(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(forge::reference::count_incidences_serial(*in.f, in.pts, in.lines));
}

void BM_omp(benchmark::State& st) {
  auto in = make(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(forge::kernels::count_incidences(*in.f, in.pts, in.lines));
}

}  // namespace

BENCHMARK(BM_naive)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_serial)->Arg(1000)->Arg(4000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_omp)->Arg(1000)->Arg(4000)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
