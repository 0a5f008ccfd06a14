#include "doctest.h"
#include "lutdec/noise.hpp"

#include <cmath>
#include <sstream>

using namespace lutdec;

TEST_CASE("p = 0 gives an all-quiet trial") {
    CodeLayout layout = build_layout(3);
    TrialRecord record = sample_trial(layout, NoiseParams{0.0, 5, 123}, 0);
    for (u64 s : record.z_syndromes) CHECK(s == 0);
    for (u64 s : record.x_syndromes) CHECK(s == 0);
    CHECK(record.final_data_measurement == 0);
    CHECK(record.truth_x_log == 0);
    CHECK(record.truth_z_log == 0);
}

TEST_CASE("fixed seed reproduces the trial exactly") {
    CodeLayout layout = build_layout(4);
    NoiseParams params{1e-2, 7, 42};
    TrialRecord a = sample_trial(layout, params, 17);
    TrialRecord b = sample_trial(layout, params, 17);
    CHECK(a.z_syndromes == b.z_syndromes);
    CHECK(a.x_syndromes == b.x_syndromes);
    CHECK(a.final_data_measurement == b.final_data_measurement);
    TrialRecord c = sample_trial(layout, params, 18);
    CHECK((a.z_syndromes != c.z_syndromes || a.x_syndromes != c.x_syndromes ||
           a.final_data_measurement != c.final_data_measurement));
}

TEST_CASE("a forced X error produces a persistent syndrome") {
    CodeLayout layout = build_layout(3);
    TrialHooks hooks;
    hooks.data_errors = hooks.meas_flips = hooks.final_flips = false;
    hooks.forced_data_errors = {{1, 4, true, false}};  // X on qubit 4 at cycle 1
    TrialRecord record = sample_trial(layout, NoiseParams{0.0, 4, 0}, 0, hooks);
    u64 expected = syndrome_of(layout, StabType::Z, bit(4));
    CHECK(record.z_syndromes[0] == 0);
    for (int t = 1; t < 4; ++t) CHECK(record.z_syndromes[t] == expected);
    for (u64 s : record.x_syndromes) CHECK(s == 0);
    CHECK(record.final_data_measurement == bit(4));
}

TEST_CASE("syndromes follow the injected frame when measurement flips are off") {
    CodeLayout layout = build_layout(4);
    TrialHooks hooks;
    hooks.meas_flips = false;
    hooks.final_flips = false;
    NoiseParams params{3e-2, 6, 9};
    for (u64 trial = 0; trial < 50; ++trial) {
        TrialRecord record = sample_trial(layout, params, trial, hooks);
        // reconstruct the cumulative X component from the final measurement
        CHECK(record.final_data_measurement == record.truth_x_log);
        CHECK(record.z_syndromes.back() ==
              syndrome_of(layout, StabType::Z, record.truth_x_log));
        CHECK(record.x_syndromes.back() ==
              syndrome_of(layout, StabType::X, record.truth_z_log));
    }
}

TEST_CASE("empirical error frequency matches p") {
    CodeLayout layout = build_layout(3);
    NoiseParams params{2e-2, 1, 5};
    TrialHooks hooks;
    hooks.meas_flips = false;
    hooks.final_flips = false;
    u64 samples = 0, hits = 0;
    for (u64 trial = 0; trial < 20000; ++trial) {
        TrialRecord record = sample_trial(layout, params, trial, hooks);
        samples += u64(layout.n_data);
        hits += u64(popcount(record.truth_x_log | record.truth_z_log));
    }
    double freq = double(hits) / double(samples);
    double se = std::sqrt(params.p * (1 - params.p) / double(samples));
    CHECK(std::abs(freq - params.p) < 5 * se);
}

TEST_CASE("error types are balanced across X, Y, Z") {
    CodeLayout layout = build_layout(3);
    NoiseParams params{3e-2, 1, 11};
    TrialHooks hooks;
    hooks.meas_flips = false;
    hooks.final_flips = false;
    u64 nx = 0, ny = 0, nz = 0;
    for (u64 trial = 0; trial < 30000; ++trial) {
        TrialRecord r = sample_trial(layout, params, trial, hooks);
        for (int q = 0; q < layout.n_data; ++q) {
            bool x = r.truth_x_log & bit(q), z = r.truth_z_log & bit(q);
            nx += x && !z;
            ny += x && z;
            nz += !x && z;
        }
    }
    u64 total = nx + ny + nz;
    double third = double(total) / 3.0;
    double se = std::sqrt(third * 2.0 / 3.0);
    CHECK(std::abs(double(nx) - third) < 5 * se);
    CHECK(std::abs(double(ny) - third) < 5 * se);
    CHECK(std::abs(double(nz) - third) < 5 * se);
}

TEST_CASE("effective edge probabilities") {
    EdgeProbs e = effective_edge_probabilities(NoiseParams{0.03, 1, 0});
    CHECK(e.space == doctest::Approx(0.02));
    CHECK(e.time == doctest::Approx(0.03));
    e = effective_edge_probabilities(NoiseParams{0.0, 1, 0});
    CHECK(e.space == 0.0);
    CHECK(e.time == 0.0);
    e = effective_edge_probabilities(NoiseParams{0.003, 1, 0});
    CHECK(e.space == doctest::Approx(0.002));
}

TEST_CASE("noise params validation") {
    CHECK_THROWS(NoiseParams{-0.1, 1, 0}.validate());
    CHECK_THROWS(NoiseParams{0.5, 1, 0}.validate());
    CHECK_THROWS(NoiseParams{0.1, 0, 0}.validate());
    NoiseParams{0.01, 1, 0}.validate();  // fine
}

TEST_CASE("trace records round-trip through the line format") {
    CodeLayout layout = build_layout(4);
    NoiseParams params{2e-2, 5, 3};
    std::stringstream ss;
    std::vector<TrialRecord> records;
    for (u64 trial = 0; trial < 20; ++trial) {
        records.push_back(sample_trial(layout, params, trial));
        write_trace_record(ss, trial, records.back());
    }
    TraceRecord in;
    for (u64 trial = 0; trial < 20; ++trial) {
        REQUIRE(read_trace_record(ss, in));
        CHECK(in.trial_index == trial);
        CHECK(in.z_syndromes == records[trial].z_syndromes);
        CHECK(in.x_syndromes == records[trial].x_syndromes);
        CHECK(in.final_data_measurement == records[trial].final_data_measurement);
    }
    CHECK(!read_trace_record(ss, in));
}
