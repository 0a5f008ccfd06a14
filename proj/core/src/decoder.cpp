#include "lutdec/decoder.hpp"

#include <stdexcept>

#include "lutdec/clut.hpp"

namespace lutdec {

Backend Backend::full_lut(std::shared_ptr<const Lut> lut) {
    Backend b;
    b.kind_ = BackendKind::FullLut;
    b.config_ = lut->config;
    b.lut_ = std::move(lut);
    return b;
}

Backend Backend::clut(std::shared_ptr<const FrameClut> clut) {
    Backend b;
    b.kind_ = BackendKind::Clut;
    b.config_ = clut->config;
    b.frame_ = std::move(clut);
    return b;
}

Backend Backend::clut(std::shared_ptr<const RankClut> clut) {
    Backend b;
    b.kind_ = BackendKind::Clut;
    b.config_ = clut->config;
    b.rank_ = std::move(clut);
    return b;
}

Backend Backend::oracle(DecoderConfig config, std::shared_ptr<const DecodingGraph> graph) {
    Backend b;
    b.kind_ = BackendKind::Oracle;
    b.config_ = config;
    b.graph_ = std::move(graph);
    return b;
}

std::optional<LutEntry> Backend::lookup(u32 address) const {
    switch (kind_) {
        case BackendKind::FullLut:
            return lut_->entry(address);
        case BackendKind::Clut:
            return frame_ ? frame_->lookup(address) : rank_->lookup(address);
        case BackendKind::Oracle:
            return entry_for_address(config_, *graph_, address);
    }
    return std::nullopt;
}

u32 detect_events(u32 prev, u32 curr) { return prev ^ curr; }

u32 final_syndrome_from_data(const CodeLayout& layout, u64 data_measurement) {
    return u32(syndrome_of(layout, StabType::Z, data_measurement));
}

int logical_outcome(const CodeLayout& layout, u64 data_measurement, u64 x_error_log) {
    u64 support = 0;
    for (int q : layout.logical_z_support) support |= bit(q);
    return parity((data_measurement ^ x_error_log) & support) ? 1 : 0;
}

std::optional<u64> DecoderState::step(u32 syndrome) {
    if (finished_) throw std::logic_error("step after finish");
    if (syndrome & ~u32(mask_low(backend_->config().syndrome_len)))
        throw std::invalid_argument("syndrome longer than stabilizer count");
    u32 detection = detect_events(prev_syndrome_, syndrome);
    prev_syndrome_ = syndrome;
    ++cycles_consumed_;
    return push_detection(detection);
}

std::optional<u64> DecoderState::push_detection(u32 detection) {
    const DecoderConfig& cfg = backend_->config();
    fifo_.push_back(detection);
    ++layers_pushed_;
    if (int(fifo_.size()) < cfg.m) return std::nullopt;

    // Oldest layer in the least significant block, modified by the most
    // recent internal state.
    u64 address = 0;
    for (int k = 0; k < cfg.m; ++k) address |= u64(fifo_[k]) << (k * cfg.syndrome_len);
    address ^= internal_state_;
    if (address_trace_) address_trace_->emplace_back(u32(address), layers_pushed_ - cfg.m);

    u64 correction = 0;
    if (auto entry = backend_->lookup(u32(address))) {
        correction = entry->correction;
        internal_state_ = u32(entry->state_delta);
    } else {
        // Documented CLUT-miss fallback: no correction, state cleared.
        failure_flag_ = true;
        ++decoder_failures_;
        internal_state_ = 0;
    }
    error_log_ ^= correction;
    if (correction) ++corrections_applied_;
    fifo_.pop_front();
    return correction;
}

u64 DecoderState::finish(std::optional<u32> constructed_final_syndrome) {
    if (finished_) throw std::logic_error("finish called twice");
    if (constructed_final_syndrome) step(*constructed_final_syndrome);
    for (int i = 0; i < backend_->config().m - 1; ++i) push_detection(0);
    finished_ = true;
    return error_log_;
}

TrialOutcome decode_trial(const CodeLayout& layout, const TrialRecord& record,
                          const Backend& z_backend, const Backend& x_backend) {
    return decode_trial(layout, record.z_syndromes, record.x_syndromes,
                        record.final_data_measurement, z_backend, x_backend);
}

TrialOutcome decode_trial(const CodeLayout& layout, std::span<const u64> z_syndromes,
                          std::span<const u64> x_syndromes, u64 final_data_measurement,
                          const Backend& z_backend, const Backend& x_backend,
                          std::vector<std::pair<u32, int>>* z_address_trace,
                          std::vector<std::pair<u32, int>>* x_address_trace) {
    DecoderState z_decoder(z_backend);
    DecoderState x_decoder(x_backend);
    z_decoder.set_address_trace(z_address_trace);
    x_decoder.set_address_trace(x_address_trace);

    for (u64 syndrome : z_syndromes) z_decoder.step(u32(syndrome));
    for (u64 syndrome : x_syndromes) x_decoder.step(u32(syndrome));

    u64 x_error_log = z_decoder.finish(final_syndrome_from_data(layout, final_data_measurement));
    u64 z_error_log = x_decoder.finish(std::nullopt);

    TrialOutcome outcome;
    outcome.x_error_log = x_error_log;
    outcome.z_error_log = z_error_log;
    outcome.logical_error = logical_outcome(layout, final_data_measurement, x_error_log) != 0;
    outcome.decoder_failures = z_decoder.decoder_failures() + x_decoder.decoder_failures();
    outcome.corrections_applied =
        z_decoder.corrections_applied() + x_decoder.corrections_applied();
    return outcome;
}

}  // namespace lutdec
