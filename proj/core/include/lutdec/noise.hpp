#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "lutdec/layout.hpp"

namespace lutdec {

struct NoiseParams {
    double p = 0.0;  // per qubit per cycle, in [0, 0.5)
    int cycles = 1;
    u64 seed = 0;

    void validate() const;
};

struct EdgeProbs {
    double space = 0.0;  // detected-component rate: X or Y out of {X,Y,Z}
    double time = 0.0;   // measurement flip rate
};

EdgeProbs effective_edge_probabilities(const NoiseParams& params);

// Pauli-frame record of one phenomenological-noise trial.
struct TrialRecord {
    std::vector<u64> x_syndromes;  // per cycle, X stabilizer outcomes
    std::vector<u64> z_syndromes;  // per cycle, Z stabilizer outcomes
    std::vector<u64> x_meas_flip_history;
    std::vector<u64> z_meas_flip_history;
    u64 final_data_measurement = 0;  // Z basis
    u64 final_meas_flips = 0;
    u64 truth_x_log = 0;  // cumulative injected X components
    u64 truth_z_log = 0;
    int cycles = 0;
};

// Test hooks: force specific errors and/or disable stochastic channels.
struct TrialHooks {
    struct Forced {
        int cycle;  // applied at the start of this cycle
        int qubit;
        bool x = false;
        bool z = false;
    };
    std::vector<Forced> forced_data_errors;
    std::vector<std::pair<int, int>> forced_meas_flips_x;  // (cycle, stabilizer)
    std::vector<std::pair<int, int>> forced_meas_flips_z;
    std::pair<int, int> forced_final_flip{-1, -1};  // (enabled as qubit >= 0, qubit)
    bool data_errors = true;
    bool meas_flips = true;
    bool final_flips = true;
};

TrialRecord sample_trial(const CodeLayout& layout, const NoiseParams& params, u64 trial_index);
TrialRecord sample_trial(const CodeLayout& layout, const NoiseParams& params, u64 trial_index,
                         const TrialHooks& hooks);

// Line-delimited trace: one record per trial with hex-encoded syndrome rows,
// oldest first. Used by the harness's verification mode.
void write_trace_record(std::ostream& os, u64 trial_index, const TrialRecord& record);

struct TraceRecord {
    u64 trial_index = 0;
    std::vector<u64> z_syndromes;
    std::vector<u64> x_syndromes;
    u64 final_data_measurement = 0;
};

bool read_trace_record(std::istream& is, TraceRecord& out);

}  // namespace lutdec
