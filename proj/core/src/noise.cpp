#include "lutdec/noise.hpp"

#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lutdec {

void NoiseParams::validate() const {
    if (!(p >= 0.0 && p < 0.5)) throw std::invalid_argument("p must be in [0, 0.5)");
    if (cycles < 1) throw std::invalid_argument("cycles must be >= 1");
    if (p != 0.0 && (p < 1e-3 || p > 5e-2))
        std::cerr << "warning: p = " << p << " is outside the validated sweep range [1e-3, 5e-2]\n";
}

EdgeProbs effective_edge_probabilities(const NoiseParams& params) {
    if (!(params.p >= 0.0 && params.p < 0.5)) throw std::invalid_argument("p must be in [0, 0.5)");
    return EdgeProbs{2.0 * params.p / 3.0, params.p};
}

TrialRecord sample_trial(const CodeLayout& layout, const NoiseParams& params, u64 trial_index) {
    return sample_trial(layout, params, trial_index, TrialHooks{});
}

TrialRecord sample_trial(const CodeLayout& layout, const NoiseParams& params, u64 trial_index,
                         const TrialHooks& hooks) {
    if (!(params.p >= 0.0 && params.p < 0.5)) throw std::invalid_argument("p must be in [0, 0.5)");
    if (params.cycles < 1) throw std::invalid_argument("cycles must be >= 1");

    // Per-trial stream: mix (seed, trial_index), then a PRNG over the mix.
    std::mt19937_64 rng(splitmix64(params.seed ^ splitmix64(trial_index)));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double p = params.p;
    const int sx = layout.stab_count(StabType::X);
    const int sz = layout.stab_count(StabType::Z);

    TrialRecord rec;
    rec.cycles = params.cycles;
    u64 frame_x = 0;  // cumulative X component per data qubit
    u64 frame_z = 0;

    for (int t = 0; t < params.cycles; ++t) {
        if (hooks.data_errors && p > 0.0) {
            for (int q = 0; q < layout.n_data; ++q) {
                double u = uni(rng);
                if (u >= p) continue;
                // Single draw partitioned: X, Y, Z equally likely given an error.
                if (u < p / 3.0) {
                    frame_x ^= bit(q);
                } else if (u < 2.0 * p / 3.0) {
                    frame_x ^= bit(q);
                    frame_z ^= bit(q);
                } else {
                    frame_z ^= bit(q);
                }
            }
        }
        for (const auto& f : hooks.forced_data_errors) {
            if (f.cycle != t) continue;
            if (f.x) frame_x ^= bit(f.qubit);
            if (f.z) frame_z ^= bit(f.qubit);
        }

        u64 flips_x = 0, flips_z = 0;
        if (hooks.meas_flips && p > 0.0) {
            for (int s = 0; s < sx; ++s)
                if (uni(rng) < p) flips_x |= bit(s);
            for (int s = 0; s < sz; ++s)
                if (uni(rng) < p) flips_z |= bit(s);
        }
        for (const auto& [cyc, s] : hooks.forced_meas_flips_x)
            if (cyc == t) flips_x ^= bit(s);
        for (const auto& [cyc, s] : hooks.forced_meas_flips_z)
            if (cyc == t) flips_z ^= bit(s);

        rec.x_syndromes.push_back(syndrome_of(layout, StabType::X, frame_z) ^ flips_x);
        rec.z_syndromes.push_back(syndrome_of(layout, StabType::Z, frame_x) ^ flips_z);
        rec.x_meas_flip_history.push_back(flips_x);
        rec.z_meas_flip_history.push_back(flips_z);
    }

    u64 final_flips = 0;
    if (hooks.final_flips && p > 0.0) {
        for (int q = 0; q < layout.n_data; ++q)
            if (uni(rng) < p) final_flips |= bit(q);
    }
    if (hooks.forced_final_flip.first >= 0) final_flips ^= bit(hooks.forced_final_flip.second);

    rec.truth_x_log = frame_x;
    rec.truth_z_log = frame_z;
    rec.final_meas_flips = final_flips;
    rec.final_data_measurement = frame_x ^ final_flips;
    return rec;
}

void write_trace_record(std::ostream& os, u64 trial_index, const TrialRecord& record) {
    os << trial_index << ' ' << record.cycles << ' ';
    os << std::hex;
    for (int t = 0; t < record.cycles; ++t) os << record.z_syndromes[t] << (t + 1 < record.cycles ? ":" : "");
    os << ' ';
    for (int t = 0; t < record.cycles; ++t) os << record.x_syndromes[t] << (t + 1 < record.cycles ? ":" : "");
    os << ' ' << record.final_data_measurement << std::dec << '\n';
}

bool read_trace_record(std::istream& is, TraceRecord& out) {
    std::string line;
    do {
        if (!std::getline(is, line)) return false;
    } while (line.empty());
    std::istringstream ss(line);
    int cycles = 0;
    std::string zfield, xfield;
    u64 final_meas = 0;
    if (!(ss >> out.trial_index >> cycles >> zfield >> xfield >> std::hex >> final_meas))
        throw std::runtime_error("malformed trace record: " + line);
    auto parse_rows = [cycles](const std::string& field) {
        std::vector<u64> rows;
        std::istringstream fs(field);
        std::string tok;
        while (std::getline(fs, tok, ':')) rows.push_back(std::stoull(tok, nullptr, 16));
        if (int(rows.size()) != cycles) throw std::runtime_error("trace row count mismatch");
        return rows;
    };
    out.z_syndromes = parse_rows(zfield);
    out.x_syndromes = parse_rows(xfield);
    out.final_data_measurement = final_meas;
    return true;
}

}  // namespace lutdec
