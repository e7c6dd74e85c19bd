#include <benchmark/benchmark.h>

#include <lvis/molasses.hpp>
#include <lvis/multilevel.hpp>
#include <lvis/rng.hpp>
#include <lvis/scattering.hpp>
#include <lvis/transport.hpp>

using namespace lvis;

namespace {

const PhysicalConstants kC{};

AtomState entering_atom() {
    AtomState s;
    s.position = {0.0, 0.0, -7.4e-3};
    s.velocity = {0.3, 0.0, 14.0};
    return s;
}

void BM_Philox(benchmark::State& state) {
    RngStream rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Philox);

void BM_ScatteringEvent(benchmark::State& state) {
    const auto m = make_molasses({{}, 7.5e-3, 3.0, -0.5 * kC.linewidth});
    AtomState s = entering_atom();
    s.position = {1e-3, 1e-3, 0.0};
    RngStream rng(2, 0);
    for (auto _ : state) {
        const double rate = total_scattering_rate(m.beams, s, kC);
        benchmark::DoNotOptimize(sample_wait_time(rate, rng));
        const auto beam = select_absorption_beam(m.beams, s, kC, rng);
        benchmark::DoNotOptimize(apply_scattering_event(s, m.beams[beam], rng, kC));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ScatteringEvent);

template <Engine E>
void BM_MolassesTransit(benchmark::State& state) {
    const auto m = make_molasses({{}, 7.5e-3, 3.0, -0.5 * kC.linewidth});
    std::uint64_t id = 0, events = 0;
    for (auto _ : state) {
        RngStream rng(3, id), internal(3, id, 1);
        ++id;
        const auto run = E == Engine::two_level
                             ? evolve_in_molasses(entering_atom(), m, kC, rng)
                             : evolve_in_molasses_six_level(entering_atom(), m, kC, rng, internal,
                                                            TransitionWeights::standard());
        events += run.events;
    }
    state.counters["events_per_atom"] = static_cast<double>(events) / static_cast<double>(state.iterations());
    state.counters["events_per_s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_MolassesTransit<Engine::two_level>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MolassesTransit<Engine::six_level>)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
