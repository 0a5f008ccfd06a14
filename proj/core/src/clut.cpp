#include "lutdec/clut.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "serial_util.hpp"

namespace lutdec {

namespace {

constexpr std::array<u8, 5> kSegmentAUppers = {0x0, 0x1, 0x2, 0x4, 0x8};
constexpr std::array<u8, 6> kSegmentBUppers = {0x3, 0x5, 0x6, 0x9, 0xA, 0xC};
constexpr int kSegmentBDepth = 10;  // lower-nibble values 0..9

// 16-bit word layout: bits [0,2) compression mode, payload LSB first.
// Codes are sliced into a low 3-bit slice A and a high slice B.
//   mode 2: slice B all zero, slice A as 3-bit base + four 2-bit deltas
//   mode 1: slice B all zero, slice A raw (4 x 3 bits)
//   mode 0: slice B identical across the word; shared B then slice A raw
constexpr int kModeShared = 0;
constexpr int kModeRaw = 1;
constexpr int kModeBaseDelta = 2;

u16 pack_word(const std::array<int, 4>& codes, int code_width) {
    // Four 4-bit codes already fill the word; no room (or need) for a mode
    // field. Only narrower codes go through the mode-tagged packing below.
    if (code_width == 4) {
        u16 word = 0;
        for (int i = 0; i < 4; ++i) word |= u16(codes[i]) << (4 * i);
        return word;
    }
    std::array<int, 4> low{}, high{};
    for (int i = 0; i < 4; ++i) {
        low[i] = codes[i] & 7;
        high[i] = codes[i] >> 3;
    }
    bool high_zero = high[0] == 0 && high[1] == 0 && high[2] == 0 && high[3] == 0;
    bool high_equal = high[0] == high[1] && high[1] == high[2] && high[2] == high[3];

    if (high_zero) {
        int lo = *std::min_element(codes.begin(), codes.end());
        int hi = *std::max_element(codes.begin(), codes.end());
        if (hi - lo <= 3) {
            u16 word = kModeBaseDelta;
            word |= u16(lo) << 2;
            for (int i = 0; i < 4; ++i) word |= u16(codes[i] - lo) << (5 + 2 * i);
            return word;
        }
        u16 word = kModeRaw;
        for (int i = 0; i < 4; ++i) word |= u16(low[i]) << (2 + 3 * i);
        return word;
    }
    if (high_equal && 2 + (code_width - 3) + 12 <= 16) {
        u16 word = kModeShared;
        word |= u16(high[0]) << 2;
        int base = 2 + (code_width - 3);
        for (int i = 0; i < 4; ++i) word |= u16(low[i]) << (base + 3 * i);
        return word;
    }
    std::ostringstream os;
    os << "codes " << codes[0] << ',' << codes[1] << ',' << codes[2] << ',' << codes[3]
       << " fit no 16-bit compression mode (code width " << code_width << ")";
    throw std::runtime_error(os.str());
}

std::array<int, 4> unpack_word(u16 word, int code_width) {
    std::array<int, 4> codes{};
    if (code_width == 4) {
        for (int i = 0; i < 4; ++i) codes[i] = (word >> (4 * i)) & 0xF;
        return codes;
    }
    switch (word & 3) {
        case kModeBaseDelta: {
            int base = (word >> 2) & 7;
            for (int i = 0; i < 4; ++i) codes[i] = base + ((word >> (5 + 2 * i)) & 3);
            break;
        }
        case kModeRaw:
            for (int i = 0; i < 4; ++i) codes[i] = (word >> (2 + 3 * i)) & 7;
            break;
        case kModeShared: {
            int high = (word >> 2) & int(mask_low(code_width - 3));
            int base = 2 + (code_width - 3);
            for (int i = 0; i < 4; ++i) codes[i] = (high << 3) | ((word >> (base + 3 * i)) & 7);
            break;
        }
        default:
            throw std::runtime_error("reserved compression mode in CLUT word");
    }
    return codes;
}

int segment_a_index(u8 upper) {
    auto it = std::find(kSegmentAUppers.begin(), kSegmentAUppers.end(), upper);
    return it == kSegmentAUppers.end() ? -1 : int(it - kSegmentAUppers.begin());
}

int segment_b_index(u8 upper) {
    auto it = std::find(kSegmentBUppers.begin(), kSegmentBUppers.end(), upper);
    return it == kSegmentBUppers.end() ? -1 : int(it - kSegmentBUppers.begin());
}

}  // namespace

int FrameClut::entry_position(u32 address) const {
    u8 upper = u8(address >> 4);
    u8 lower = u8(address & 0xF);
    if (int idx = segment_a_index(upper); idx >= 0) return idx * 16 + lower;
    if (int idx = segment_b_index(upper); idx >= 0) {
        if (lower >= kSegmentBDepth) return -1;
        return int(kSegmentAUppers.size()) * 16 + idx * kSegmentBDepth + lower;
    }
    return -1;
}

std::optional<LutEntry> FrameClut::lookup(u32 address) const {
    if (address >= 256) throw std::out_of_range("address out of range for [d=3, m=2]");
    int pos = entry_position(address);
    if (pos < 0) return std::nullopt;
    auto codes = unpack_word(packed_words[pos / 4], code_width);
    LutEntry entry;
    entry.correction = encoding_table[codes[pos % 4]];
    entry.state_delta = state_nibbles[pos];
    return entry;
}

std::size_t FrameClut::payload_bytes() const {
    return packed_words.size() * 2 + (state_nibbles.size() + 1) / 2;
}

std::size_t FrameClut::encoding_table_bytes() const {
    return encoding_table.size() * 2;
}

FrameClut compress_frame(const Lut& lut) {
    const DecoderConfig& cfg = lut.config;
    if (cfg.d != 3 || cfg.m != 2 || cfg.address_bits() != 8)
        throw std::invalid_argument("frame scheme applies to the [d=3, m=2] configuration only");

    FrameClut clut;
    clut.config = cfg;

    // Pattern table by first occurrence in address order over stored entries.
    std::vector<int> code_of(512, -1);
    for (u32 address = 0; address < 256; ++address) {
        if (clut.entry_position(address) < 0) continue;
        u16 pattern = u16(lut.entry(address).correction);
        if (code_of[pattern] < 0) {
            code_of[pattern] = int(clut.encoding_table.size());
            clut.encoding_table.push_back(pattern);
        }
    }
    if (clut.encoding_table.size() > 64)
        std::cerr << "warning: " << clut.encoding_table.size()
                  << " distinct correction patterns; widening codes beyond 6 bits\n";
    clut.code_width = std::max(
        3, int(std::bit_width(std::max<u64>(clut.encoding_table.size(), 1) - 1)));

    // Stored-entry order: segment A frames then segment B frames.
    std::vector<u32> addresses;
    for (u8 upper : kSegmentAUppers)
        for (u8 lower = 0; lower < 16; ++lower) addresses.push_back(u32(upper) << 4 | lower);
    for (u8 upper : kSegmentBUppers)
        for (u8 lower = 0; lower < kSegmentBDepth; ++lower)
            addresses.push_back(u32(upper) << 4 | lower);

    for (std::size_t i = 0; i < addresses.size(); i += 4) {
        std::array<int, 4> codes{};
        for (int j = 0; j < 4; ++j)
            codes[j] = code_of[lut.entry(addresses[i + j]).correction];
        clut.packed_words.push_back(pack_word(codes, clut.code_width));
    }
    for (u32 address : addresses)
        clut.state_nibbles.push_back(u8(lut.entry(address).state_delta));
    return clut;
}

RankClut compress_rank(const SparseLut& entries) {
    RankClut clut;
    clut.config = entries.config;
    clut.weight_cutoff = entries.weight_cutoff;

    const int n = clut.config.address_bits();
    clut.weight_offsets.assign(std::size_t(clut.weight_cutoff) + 2, 0);
    for (int w = 0; w <= clut.weight_cutoff; ++w)
        clut.weight_offsets[w + 1] = clut.weight_offsets[w] + binomial(n, w);
    if (clut.weight_offsets.back() != entries.entries.size())
        throw std::invalid_argument("sparse LUT is not a complete weight-bounded build");

    // (weight, rank) order; rank order equals address order within a weight.
    auto sorted = entries.entries;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return std::make_pair(popcount(a.first), a.first) <
               std::make_pair(popcount(b.first), b.first);
    });
    BitWriter bits;
    for (const auto& [address, packed] : sorted) bits.put(packed, clut.config.entry_bits());
    clut.packed_entries = bits.bytes();
    return clut;
}

std::optional<LutEntry> RankClut::lookup(u32 address) const {
    int w = popcount(address);
    if (w > weight_cutoff) return std::nullopt;
    u64 index = weight_offsets[w] + rank_fixed_weight(address);
    u64 packed = extract_bits(packed_entries, index * u64(config.entry_bits()), config.entry_bits());
    return LutEntry::unpack(config, packed);
}

MemoryReport memory_report(const std::vector<MemoryReportRow>& rows) {
    MemoryReport report;
    report.rows = rows;
    for (const auto& row : rows) {
        report.full_total += row.full_bytes;
        report.clut_total += row.clut_bytes;
    }
    return report;
}

std::map<int, double> access_weight_histogram(const CodeLayout& layout, const NoiseParams& params,
                                              u64 trials, const Backend& z_backend,
                                              const Backend& x_backend) {
    std::map<int, double> histogram;
    u64 total = 0;
    std::vector<std::pair<u32, int>> z_trace, x_trace;
    for (u64 trial = 0; trial < trials; ++trial) {
        z_trace.clear();
        x_trace.clear();
        TrialRecord record = sample_trial(layout, params, trial);
        decode_trial(layout, record.z_syndromes, record.x_syndromes,
                     record.final_data_measurement, z_backend, x_backend, &z_trace, &x_trace);
        for (const auto& [address, layer] : z_trace) ++histogram[popcount(address)], ++total;
        for (const auto& [address, layer] : x_trace) ++histogram[popcount(address)], ++total;
    }
    for (auto& [weight, mass] : histogram) mass /= double(total);
    return histogram;
}

void serialize(const FrameClut& clut, std::ostream& sink) {
    std::vector<u8> header;
    detail::write_header(header, clut.config, detail::kFlagCompressed, u8(clut.weight_cutoff),
                         clut.entry_count());
    detail::append_le(header, u64(ClutScheme::Frame), 1);
    detail::append_le(header, u64(clut.weight_cutoff), 1);

    std::vector<u8> payload;
    detail::append_le(payload, clut.encoding_table.size(), 2);
    for (u16 pattern : clut.encoding_table) detail::append_le(payload, pattern, 2);
    detail::append_le(payload, clut.packed_words.size(), 2);
    for (u16 word : clut.packed_words) detail::append_le(payload, word, 2);
    for (std::size_t i = 0; i < clut.state_nibbles.size(); i += 2) {
        u8 byte = clut.state_nibbles[i];
        if (i + 1 < clut.state_nibbles.size()) byte |= u8(clut.state_nibbles[i + 1] << 4);
        payload.push_back(byte);
    }

    std::vector<u8> len;
    detail::append_le(len, payload.size(), 4);
    header.insert(header.end(), len.begin(), len.end());
    detail::write_blob(sink, header, payload);
}

void serialize(const RankClut& clut, std::ostream& sink) {
    std::vector<u8> header;
    detail::write_header(header, clut.config, detail::kFlagCompressed | detail::kFlagSparse,
                         u8(clut.weight_cutoff), clut.entry_count());
    detail::append_le(header, u64(ClutScheme::RankIndex), 1);
    detail::append_le(header, u64(clut.weight_cutoff), 1);
    detail::append_le(header, clut.packed_entries.size(), 4);
    detail::write_blob(sink, header, clut.packed_entries);
}

ClutFile deserialize_clut(std::istream& source, const CodeLayout& layout) {
    detail::Header h = detail::read_header(source, layout);
    if (!(h.flags & detail::kFlagCompressed))
        throw std::runtime_error("file holds an uncompressed LUT; load it as a LUT");
    ClutScheme scheme = ClutScheme(detail::read_le(source, 1));
    int cutoff = int(detail::read_le(source, 1));
    u64 payload_len = detail::read_le(source, 4);
    std::vector<u8> payload = detail::read_payload(source, payload_len);

    ClutFile file;
    file.scheme = scheme;
    if (scheme == ClutScheme::Frame) {
        FrameClut& clut = file.frame;
        clut.config = h.config;
        clut.weight_cutoff = cutoff;
        std::size_t off = 0;
        auto take = [&](int bytes) {
            u64 v = extract_bits(payload, off * 8, bytes * 8);
            off += std::size_t(bytes);
            return v;
        };
        u64 table_size = take(2);
        for (u64 i = 0; i < table_size; ++i) clut.encoding_table.push_back(u16(take(2)));
        clut.code_width = std::max(3, int(std::bit_width(std::max<u64>(table_size, 1) - 1)));
        u64 word_count = take(2);
        for (u64 i = 0; i < word_count; ++i) clut.packed_words.push_back(u16(take(2)));
        for (u64 i = 0; i < h.entry_count; ++i) {
            u8 byte = payload.at(off + i / 2);
            clut.state_nibbles.push_back(i % 2 ? u8(byte >> 4) : u8(byte & 0xF));
        }
        if (clut.entry_position(0) < 0 || word_count * 4 != h.entry_count)
            throw std::runtime_error("frame CLUT payload inconsistent with header");
    } else if (scheme == ClutScheme::RankIndex) {
        RankClut& clut = file.rank;
        clut.config = h.config;
        clut.weight_cutoff = cutoff;
        const int n = clut.config.address_bits();
        clut.weight_offsets.assign(std::size_t(cutoff) + 2, 0);
        for (int w = 0; w <= cutoff; ++w)
            clut.weight_offsets[w + 1] = clut.weight_offsets[w] + binomial(n, w);
        if (clut.weight_offsets.back() != h.entry_count)
            throw std::runtime_error("rank CLUT entry count inconsistent with cutoff");
        clut.packed_entries = std::move(payload);
    } else {
        throw std::runtime_error("unknown CLUT scheme id");
    }
    return file;
}

}  // namespace lutdec
