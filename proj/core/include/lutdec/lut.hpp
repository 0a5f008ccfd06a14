#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lutdec/matching.hpp"

namespace lutdec {

struct DecoderConfig {
    int d = 0;
    int m = 0;
    StabType type = StabType::Z;
    int syndrome_len = 0;  // stabilizer count of this type
    int n_data = 0;

    int address_bits() const { return syndrome_len * m; }
    int entry_bits() const { return n_data + syndrome_len; }

    static DecoderConfig make(const CodeLayout& layout, int m, StabType type);
};

struct LutEntry {
    u64 correction = 0;   // n_data bits
    u64 state_delta = 0;  // syndrome_len bits

    u64 packed(const DecoderConfig& cfg) const {
        return correction | (state_delta << cfg.n_data);
    }
    static LutEntry unpack(const DecoderConfig& cfg, u64 packed) {
        return {packed & mask_low(cfg.n_data),
                (packed >> cfg.n_data) & mask_low(cfg.syndrome_len)};
    }
};

struct Lut {
    DecoderConfig config;
    std::vector<u64> entries;  // packed, index = address

    LutEntry entry(u64 address) const { return LutEntry::unpack(config, entries[address]); }
};

struct SparseLut {
    DecoderConfig config;
    int weight_cutoff = 0;
    std::vector<std::pair<u32, u64>> entries;  // (address, packed), sorted by address

    std::optional<LutEntry> find(u32 address) const;
};

// Decode an address into per-layer detection events (oldest layer in the
// least significant block, bit i = stabilizer i) and run the matching oracle.
LutEntry entry_for_address(const DecoderConfig& config, const DecodingGraph& graph, u64 address);

struct BuildOptions {
    int address_bit_limit = 16;  // guard against accidental 2^24 builds
    bool force_full = false;
    int threads = 0;  // 0: hardware concurrency
};

Lut build_full_lut(const DecoderConfig& config, const DecodingGraph& graph,
                   const BuildOptions& options = {});

SparseLut build_weight_bounded_lut(const DecoderConfig& config, const DecodingGraph& graph,
                                   int weight_cutoff, const BuildOptions& options = {});

struct SizeReportRow {
    StabType type;
    int address_bits;
    int entry_bits;
    u64 table_bytes;
};

struct SizeReport {
    int d;
    int m;
    std::vector<SizeReportRow> rows;
    u64 total_bytes;
};

SizeReport size_report(int d, int m);

// "416 B", "6.5 KB", "5.75 MB", ... with power-of-1024 units.
std::string format_size(u64 bytes);

// LUT file format, little-endian. Header: magic "LLPT", version u16,
// flags u16 (bit 0: sparse, bit 1: compressed), d u8, m u8, stab_type u8,
// weight_cutoff u8 (255 = full), address_bits u8, entry_bits u8,
// reserved u16, entry_count u64. Payload followed by CRC32 of the payload.
void serialize(const Lut& lut, std::ostream& sink);
void serialize(const SparseLut& lut, std::ostream& sink);

struct LutFile {
    bool sparse = false;
    Lut dense;
    SparseLut sparse_lut;
};

LutFile deserialize_lut(std::istream& source, const CodeLayout& layout);

}  // namespace lutdec
