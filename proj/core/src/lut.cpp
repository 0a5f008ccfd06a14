#include "lutdec/lut.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "serial_util.hpp"

namespace lutdec {

DecoderConfig DecoderConfig::make(const CodeLayout& layout, int m, StabType type) {
    if (m < 1) throw std::invalid_argument("window size m must be >= 1");
    return DecoderConfig{layout.distance, m, type, layout.stab_count(type), layout.n_data};
}

std::optional<LutEntry> SparseLut::find(u32 address) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), address,
                               [](const auto& e, u32 a) { return e.first < a; });
    if (it == entries.end() || it->first != address) return std::nullopt;
    return LutEntry::unpack(config, it->second);
}

LutEntry entry_for_address(const DecoderConfig& config, const DecodingGraph& graph, u64 address) {
    if (config.address_bits() > 63 || address >= (u64{1} << config.address_bits()))
        throw std::out_of_range("address out of range for decoder configuration");
    std::vector<int> events;
    events.reserve(popcount(address));
    for (int layer = 0; layer < config.m; ++layer) {
        u64 slice = (address >> (layer * config.syndrome_len)) & mask_low(config.syndrome_len);
        while (slice) {
            int s = std::countr_zero(slice);
            events.push_back(graph.node(s, layer));
            slice &= slice - 1;
        }
    }
    MatchingResult match = min_weight_match(graph, events);
    Commit commit = commit_oldest_layer(graph, match);
    return LutEntry{commit.correction, commit.state_delta};
}

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Deterministic fan-out over contiguous index ranges.
template <typename Fn>
void parallel_ranges(u64 count, int threads, Fn&& fn) {
    threads = std::min<u64>(threads, std::max<u64>(count, 1));
    if (threads <= 1) {
        fn(u64{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    u64 chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        u64 begin = t * chunk;
        u64 end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

Lut build_full_lut(const DecoderConfig& config, const DecodingGraph& graph,
                   const BuildOptions& options) {
    if (config.address_bits() > options.address_bit_limit && !options.force_full)
        throw std::invalid_argument("address width " + std::to_string(config.address_bits()) +
                                    " exceeds the full-build limit; use the force-full override");
    if (config.address_bits() > 26)
        throw std::invalid_argument("full build over 2^26 addresses is not supported");

    Lut lut;
    lut.config = config;
    lut.entries.assign(u64{1} << config.address_bits(), 0);
    parallel_ranges(lut.entries.size(), resolve_threads(options.threads), [&](u64 begin, u64 end) {
        for (u64 address = begin; address < end; ++address)
            lut.entries[address] = entry_for_address(config, graph, address).packed(config);
    });
    return lut;
}

SparseLut build_weight_bounded_lut(const DecoderConfig& config, const DecodingGraph& graph,
                                   int weight_cutoff, const BuildOptions& options) {
    if (weight_cutoff < 0 || weight_cutoff > config.address_bits())
        throw std::invalid_argument("weight cutoff out of range");

    SparseLut lut;
    lut.config = config;
    lut.weight_cutoff = weight_cutoff;

    // Enumerate addresses of popcount <= W in ascending order.
    std::vector<u32> addresses;
    const int n = config.address_bits();
    for (u64 a = 0; a < (u64{1} << n); ++a)
        if (popcount(a) <= weight_cutoff) addresses.push_back(u32(a));

    lut.entries.resize(addresses.size());
    parallel_ranges(addresses.size(), resolve_threads(options.threads), [&](u64 begin, u64 end) {
        for (u64 i = begin; i < end; ++i)
            lut.entries[i] = {addresses[i],
                              entry_for_address(config, graph, addresses[i]).packed(config)};
    });
    return lut;
}

SizeReport size_report(int d, int m) {
    if (d < 3 || d > 5) throw std::invalid_argument("size report covers d in {3, 4, 5}");
    CodeLayout layout = build_layout(d);
    SizeReport report{d, m, {}, 0};
    for (StabType type : {StabType::Z, StabType::X}) {
        DecoderConfig cfg = DecoderConfig::make(layout, m, type);
        u64 bytes = (u64{1} << cfg.address_bits()) * u64(cfg.entry_bits()) / 8;
        report.rows.push_back({type, cfg.address_bits(), cfg.entry_bits(), bytes});
        report.total_bytes += bytes;
    }
    return report;
}

std::string format_size(u64 bytes) {
    static const char* units[] = {"B", "KB", "MB", "GB"};
    int k = 0;
    double v = double(bytes);
    while (v >= 1024.0 && k < 3) {
        v /= 1024.0;
        ++k;
    }
    std::ostringstream os;
    double rounded = std::round(v * 100.0) / 100.0;
    os << rounded << ' ' << units[k];
    return os.str();
}

void serialize(const Lut& lut, std::ostream& sink) {
    std::vector<u8> header;
    detail::write_header(header, lut.config, 0, 255, lut.entries.size());
    BitWriter bits;
    for (u64 packed : lut.entries) bits.put(packed, lut.config.entry_bits());
    detail::write_blob(sink, header, bits.bytes());
}

void serialize(const SparseLut& lut, std::ostream& sink) {
    std::vector<u8> header;
    detail::write_header(header, lut.config, detail::kFlagSparse, u8(lut.weight_cutoff),
                         lut.entries.size());
    std::vector<u8> payload;
    const int entry_bytes = (lut.config.entry_bits() + 7) / 8;
    for (const auto& [address, packed] : lut.entries) {
        detail::append_le(payload, address, 4);
        detail::append_le(payload, packed, entry_bytes);
    }
    detail::write_blob(sink, header, payload);
}

LutFile deserialize_lut(std::istream& source, const CodeLayout& layout) {
    detail::Header h = detail::read_header(source, layout);
    if (h.flags & detail::kFlagCompressed)
        throw std::runtime_error("file holds a compressed LUT; load it as a CLUT");

    const int entry_bits = h.config.entry_bits();
    bool sparse = h.flags & detail::kFlagSparse;
    u64 payload_bytes = sparse ? h.entry_count * (4 + (entry_bits + 7) / 8)
                               : (h.entry_count * u64(entry_bits) + 7) / 8;
    std::vector<u8> payload = detail::read_payload(source, payload_bytes);

    LutFile file;
    file.sparse = sparse;
    if (sparse) {
        file.sparse_lut.config = h.config;
        file.sparse_lut.weight_cutoff = h.weight_cutoff;
        std::size_t off = 0;
        const int entry_bytes = (entry_bits + 7) / 8;
        for (u64 i = 0; i < h.entry_count; ++i) {
            u32 address = u32(extract_bits(payload, off * 8, 32));
            off += 4;
            u64 packed = extract_bits(payload, off * 8, entry_bytes * 8);
            off += std::size_t(entry_bytes);
            file.sparse_lut.entries.emplace_back(address, packed);
        }
        if (!std::is_sorted(file.sparse_lut.entries.begin(), file.sparse_lut.entries.end()))
            throw std::runtime_error("sparse LUT records are not sorted by address");
    } else {
        if (h.entry_count != (u64{1} << h.config.address_bits()))
            throw std::runtime_error("dense LUT entry count does not match address width");
        file.dense.config = h.config;
        file.dense.entries.reserve(h.entry_count);
        for (u64 i = 0; i < h.entry_count; ++i)
            file.dense.entries.push_back(extract_bits(payload, i * u64(entry_bits), entry_bits));
    }
    return file;
}

}  // namespace lutdec
