#pragma once

#include <deque>
#include <memory>
#include <optional>

#include "lutdec/clut_fwd.hpp"
#include "lutdec/lut.hpp"

namespace lutdec {

enum class BackendKind : u8 { FullLut = 0, Clut = 1, Oracle = 2 };

// Immutable lookup backend shared read-only across trials. The oracle backend
// computes entries on demand from the matching graph; the table backends are
// precomputed. Clut lookups can miss.
class Backend {
  public:
    static Backend full_lut(std::shared_ptr<const Lut> lut);
    static Backend clut(std::shared_ptr<const FrameClut> clut);
    static Backend clut(std::shared_ptr<const RankClut> clut);
    static Backend oracle(DecoderConfig config, std::shared_ptr<const DecodingGraph> graph);

    std::optional<LutEntry> lookup(u32 address) const;
    const DecoderConfig& config() const { return config_; }
    BackendKind kind() const { return kind_; }

  private:
    Backend() = default;
    BackendKind kind_ = BackendKind::Oracle;
    DecoderConfig config_;
    std::shared_ptr<const Lut> lut_;
    std::shared_ptr<const FrameClut> frame_;
    std::shared_ptr<const RankClut> rank_;
    std::shared_ptr<const DecodingGraph> graph_;
};

u32 detect_events(u32 prev, u32 curr);

// Z syndrome constructed from a transversal Z-basis data measurement.
u32 final_syndrome_from_data(const CodeLayout& layout, u64 data_measurement);

// Reduction XOR of (data_measurement XOR x_error_log) over the logical Z
// support; 1 means the corrected logical outcome differs from |0_L>.
int logical_outcome(const CodeLayout& layout, u64 data_measurement, u64 x_error_log);

// One streaming decoder instance for a single trial and error type.
class DecoderState {
  public:
    DecoderState(const Backend& backend) : backend_(&backend) {}

    // Feed one cycle's syndrome: detection vs the previous syndrome, then a
    // window lookup once the FIFO holds m layers. Returns the correction
    // applied this step, or nothing during warm-up.
    std::optional<u64> step(u32 syndrome);

    // Feed a detection-event layer directly (zero padding for boundary
    // cycles bypasses the XOR with the previous syndrome).
    std::optional<u64> push_detection(u32 detection);

    // Final boundary handling: the Z decoder feeds the syndrome constructed
    // from the data measurement as a last round, the X decoder passes
    // nothing; then m-1 zero layers flush the window so every real layer
    // becomes oldest exactly once. Returns the accumulated error log.
    u64 finish(std::optional<u32> constructed_final_syndrome);

    u64 error_log() const { return error_log_; }
    u32 internal_state() const { return internal_state_; }
    int decoder_failures() const { return decoder_failures_; }
    bool failure_flag() const { return failure_flag_; }
    int corrections_applied() const { return corrections_applied_; }
    int cycles_consumed() const { return cycles_consumed_; }

    // Optional trace of every formed LUT address with the global index of
    // its oldest layer; used for access statistics and invariant checks.
    void set_address_trace(std::vector<std::pair<u32, int>>* trace) { address_trace_ = trace; }

  private:
    const Backend* backend_;
    std::deque<u32> fifo_;
    u32 internal_state_ = 0;
    u64 error_log_ = 0;
    u32 prev_syndrome_ = 0;
    int cycles_consumed_ = 0;
    int layers_pushed_ = 0;
    bool finished_ = false;
    bool failure_flag_ = false;
    int decoder_failures_ = 0;
    int corrections_applied_ = 0;
    std::vector<std::pair<u32, int>>* address_trace_ = nullptr;
};

struct TrialOutcome {
    bool logical_error = false;
    int decoder_failures = 0;
    int corrections_applied = 0;
    u64 x_error_log = 0;
    u64 z_error_log = 0;
};

// Decode one trial end to end: X and Z syndromes independently, Z-basis
// logical outcome from the final data measurement and the X error log.
TrialOutcome decode_trial(const CodeLayout& layout, const TrialRecord& record,
                          const Backend& z_backend, const Backend& x_backend);

TrialOutcome decode_trial(const CodeLayout& layout, std::span<const u64> z_syndromes,
                          std::span<const u64> x_syndromes, u64 final_data_measurement,
                          const Backend& z_backend, const Backend& x_backend,
                          std::vector<std::pair<u32, int>>* z_address_trace = nullptr,
                          std::vector<std::pair<u32, int>>* x_address_trace = nullptr);

}  // namespace lutdec
