#pragma once

#include <iosfwd>
#include <map>
#include <optional>

#include "lutdec/decoder.hpp"
#include "lutdec/lut.hpp"

namespace lutdec {

enum class ClutScheme : u8 { Frame = 0, RankIndex = 1 };

// Segment/data-frame CLUT for the [d=3, m=2] configuration (8-bit address).
//
// The address is split into an upper nibble (newest layer) and a lower nibble
// (oldest layer). Upper nibbles of weight 0 or 1 map to a 16-entry data frame
// in segment A; weight-2 upper nibbles map to a 10-entry frame (lower values
// 0..9) in segment B; anything else is a miss. 5*16 + 6*10 = 140 entries.
// Corrections are re-encoded through a pattern table and packed four codes
// per 16-bit word with a 2-bit compression mode; state deltas stay as raw
// nibbles.
struct FrameClut {
    DecoderConfig config;
    int weight_cutoff = 3;
    int code_width = 6;
    std::vector<u16> encoding_table;  // code -> 9-bit correction pattern
    std::vector<u16> packed_words;    // 35 words, four codes each
    std::vector<u8> state_nibbles;    // one per stored entry

    std::optional<LutEntry> lookup(u32 address) const;
    // Stored-entry position for an address, or -1 on miss.
    int entry_position(u32 address) const;
    std::size_t entry_count() const { return state_nibbles.size(); }
    // Packed words plus state nibbles; the pattern table is part of the
    // decompression logic and reported separately.
    std::size_t payload_bytes() const;
    std::size_t encoding_table_bytes() const;
};

FrameClut compress_frame(const Lut& lut);

// General weight-bounded CLUT: entries for every address of popcount <= W,
// bit-packed in (weight, combinatorial rank) order. Lookup computes the rank
// directly from the address, so no stored index is needed and any address of
// higher weight is a miss.
struct RankClut {
    DecoderConfig config;
    int weight_cutoff = 0;
    std::vector<u64> weight_offsets;  // entry index of the first weight-w address
    std::vector<u8> packed_entries;   // entry_bits per entry

    std::optional<LutEntry> lookup(u32 address) const;
    u64 entry_count() const { return weight_offsets.back(); }
    std::size_t payload_bytes() const { return packed_entries.size(); }
};

RankClut compress_rank(const SparseLut& entries);

struct MemoryReportRow {
    StabType type;
    u64 full_bytes;
    u64 clut_bytes;
};

struct MemoryReport {
    std::vector<MemoryReportRow> rows;
    u64 full_total = 0;
    u64 clut_total = 0;
    double reduction() const { return double(full_total) / double(clut_total); }
};

MemoryReport memory_report(const std::vector<MemoryReportRow>& rows);

// Empirical distribution of popcount(address) over all window lookups, from
// Monte Carlo trials decoded with the given backends.
std::map<int, double> access_weight_histogram(const CodeLayout& layout, const NoiseParams& params,
                                              u64 trials, const Backend& z_backend,
                                              const Backend& x_backend);

// CLUT file format: shared LUT header with the compressed flag set, then
// scheme id u8, W u8, scheme payload, CRC32 of the scheme payload.
void serialize(const FrameClut& clut, std::ostream& sink);
void serialize(const RankClut& clut, std::ostream& sink);

struct ClutFile {
    ClutScheme scheme;
    FrameClut frame;
    RankClut rank;
};

ClutFile deserialize_clut(std::istream& source, const CodeLayout& layout);

}  // namespace lutdec
