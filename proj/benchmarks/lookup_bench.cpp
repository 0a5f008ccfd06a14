#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lutdec/harness.hpp"

using namespace lutdec;

namespace {

// Address stream distributed like real decoding windows at p = 1e-2 so the
// compressed schemes see a realistic hit/miss mix.
std::vector<u32> sampled_addresses(const CodeLayout& layout, int m, std::size_t count) {
    BackendSet backends = make_backends(layout, m, BackendKind::FullLut);
    NoiseParams params{1e-2, 5, 9};
    std::vector<u32> addresses;
    for (u64 trial = 0; addresses.size() < count; ++trial) {
        TrialRecord record = sample_trial(layout, params, trial);
        std::vector<std::pair<u32, int>> z_trace, x_trace;
        decode_trial(layout, record.z_syndromes, record.x_syndromes,
                     record.final_data_measurement, backends.z, backends.x, &z_trace, &x_trace);
        for (auto& [a, t] : z_trace) addresses.push_back(a);
        for (auto& [a, t] : x_trace) addresses.push_back(a);
    }
    addresses.resize(count);
    return addresses;
}

void full_lut_lookup(benchmark::State& state) {
    CodeLayout layout = build_layout(3);
    BackendSet backends = make_backends(layout, 2, BackendKind::FullLut);
    std::vector<u32> addresses = sampled_addresses(layout, 2, 4096);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(backends.z.lookup(addresses[i]));
        i = (i + 1) & 4095;
    }
}
BENCHMARK(full_lut_lookup);

void frame_clut_lookup(benchmark::State& state) {
    CodeLayout layout = build_layout(3);
    BackendSet backends = make_backends(layout, 2, BackendKind::Clut);
    std::vector<u32> addresses = sampled_addresses(layout, 2, 4096);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(backends.z.lookup(addresses[i]));
        i = (i + 1) & 4095;
    }
}
BENCHMARK(frame_clut_lookup);

void rank_clut_lookup(benchmark::State& state) {
    CodeLayout layout = build_layout(3);
    BackendSet backends = make_backends(layout, 3, BackendKind::Clut);
    std::vector<u32> addresses = sampled_addresses(layout, 3, 4096);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(backends.z.lookup(addresses[i]));
        i = (i + 1) & 4095;
    }
}
BENCHMARK(rank_clut_lookup);

void decoder_step(benchmark::State& state) {
    CodeLayout layout = build_layout(int(state.range(0)));
    BackendSet backends = make_backends(layout, 2, BackendKind::FullLut);
    NoiseParams params{1e-2, 256, 11};
    TrialRecord record = sample_trial(layout, params, 0);
    DecoderState decoder(backends.z);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decoder.step(u32(record.z_syndromes[i])));
        if (++i == record.z_syndromes.size()) i = 0;
    }
}
BENCHMARK(decoder_step)->Arg(3)->Arg(4);

void trial_decode(benchmark::State& state) {
    CodeLayout layout = build_layout(int(state.range(0)));
    BackendSet backends = make_backends(layout, 2, BackendKind::FullLut);
    NoiseParams params{1e-2, 5, 13};
    std::vector<TrialRecord> records;
    for (u64 trial = 0; trial < 64; ++trial)
        records.push_back(sample_trial(layout, params, trial));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decode_trial(layout, records[i], backends.z, backends.x));
        i = (i + 1) & 63;
    }
}
BENCHMARK(trial_decode)->Arg(3)->Arg(4);

void trial_decode_clut(benchmark::State& state) {
    CodeLayout layout = build_layout(3);
    BackendSet backends = make_backends(layout, 2, BackendKind::Clut);
    NoiseParams params{1e-2, 5, 13};
    std::vector<TrialRecord> records;
    for (u64 trial = 0; trial < 64; ++trial)
        records.push_back(sample_trial(layout, params, trial));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decode_trial(layout, records[i], backends.z, backends.x));
        i = (i + 1) & 63;
    }
}
BENCHMARK(trial_decode_clut);

}  // namespace

BENCHMARK_MAIN();
