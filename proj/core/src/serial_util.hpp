#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "lutdec/lut.hpp"

namespace lutdec::detail {

inline constexpr char kMagic[4] = {'L', 'L', 'P', 'T'};
inline constexpr u16 kVersion = 1;
inline constexpr u16 kFlagSparse = 1;
inline constexpr u16 kFlagCompressed = 2;

inline void append_le(std::vector<u8>& out, u64 value, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(u8(value >> (8 * i)));
}

inline u64 read_le(std::istream& in, int bytes) {
    u64 v = 0;
    for (int i = 0; i < bytes; ++i) {
        int c = in.get();
        if (c < 0) throw std::runtime_error("truncated LUT file");
        v |= u64(u8(c)) << (8 * i);
    }
    return v;
}

inline void write_header(std::vector<u8>& out, const DecoderConfig& cfg, u16 flags,
                         u8 weight_cutoff, u64 entry_count) {
    out.insert(out.end(), kMagic, kMagic + 4);
    append_le(out, kVersion, 2);
    append_le(out, flags, 2);
    append_le(out, u64(cfg.d), 1);
    append_le(out, u64(cfg.m), 1);
    append_le(out, u64(cfg.type == StabType::X ? 0 : 1), 1);
    append_le(out, weight_cutoff, 1);
    append_le(out, u64(cfg.address_bits()), 1);
    append_le(out, u64(cfg.entry_bits()), 1);
    append_le(out, 0, 2);
    append_le(out, entry_count, 8);
}

struct Header {
    u16 flags;
    DecoderConfig config;
    int weight_cutoff;
    u64 entry_count;
};

inline Header read_header(std::istream& source, const CodeLayout& layout) {
    char magic[4];
    source.read(magic, 4);
    if (!source || !std::equal(magic, magic + 4, kMagic))
        throw std::runtime_error("bad magic bytes; not a LUT file");
    if (read_le(source, 2) != kVersion) throw std::runtime_error("unsupported LUT file version");
    Header h{};
    h.flags = u16(read_le(source, 2));
    int d = int(read_le(source, 1));
    int m = int(read_le(source, 1));
    StabType type = read_le(source, 1) == 0 ? StabType::X : StabType::Z;
    h.weight_cutoff = int(read_le(source, 1));
    int address_bits = int(read_le(source, 1));
    int entry_bits = int(read_le(source, 1));
    read_le(source, 2);
    h.entry_count = read_le(source, 8);

    if (d != layout.distance) throw std::runtime_error("LUT distance does not match layout");
    h.config = DecoderConfig::make(layout, m, type);
    if (h.config.address_bits() != address_bits || h.config.entry_bits() != entry_bits)
        throw std::runtime_error("LUT header geometry does not match layout");
    return h;
}

inline void write_blob(std::ostream& sink, const std::vector<u8>& header,
                       const std::vector<u8>& payload) {
    sink.write(reinterpret_cast<const char*>(header.data()), std::streamsize(header.size()));
    sink.write(reinterpret_cast<const char*>(payload.data()), std::streamsize(payload.size()));
    std::vector<u8> crc;
    append_le(crc, crc32(payload), 4);
    sink.write(reinterpret_cast<const char*>(crc.data()), 4);
    if (!sink) throw std::runtime_error("write failure while serializing LUT");
}

inline std::vector<u8> read_payload(std::istream& source, u64 payload_bytes) {
    std::vector<u8> payload(payload_bytes);
    source.read(reinterpret_cast<char*>(payload.data()), std::streamsize(payload.size()));
    if (source.gcount() != std::streamsize(payload.size()))
        throw std::runtime_error("LUT file length inconsistent with header");
    u32 stored_crc = u32(read_le(source, 4));
    if (crc32(payload) != stored_crc) throw std::runtime_error("LUT payload checksum failure");
    return payload;
}

}  // namespace lutdec::detail
