#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <span>
#include <vector>

namespace lutdec {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline int popcount(u64 x) { return std::popcount(x); }

inline bool parity(u64 x) { return std::popcount(x) & 1; }

inline u64 bit(int i) { return u64{1} << i; }

inline u64 mask_low(int n) { return n >= 64 ? ~u64{0} : (u64{1} << n) - 1; }

// Lexicographic order over bit strings where bit 0 is the first character:
// the vector with a 0 at the lowest differing bit index is smaller.
inline bool lex_less(u64 a, u64 b) {
    u64 diff = a ^ b;
    if (diff == 0) return false;
    return (a & (diff & (~diff + 1))) == 0;
}

// SplitMix64 mixing step; used to derive per-trial RNG streams.
inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Binomial coefficients C(n, k) for n, k <= 64, saturating at u64 max.
u64 binomial(int n, int k);

// Rank of a weight-w bitstring among all weight-w bitstrings of the same
// length, in increasing integer order (combinatorial number system).
u64 rank_fixed_weight(u64 x);

u32 crc32(std::span<const u8> data);

// Append/extract bit fields from a packed little-endian bit stream.
class BitWriter {
  public:
    void put(u64 value, int nbits);
    const std::vector<u8>& bytes() const { return bytes_; }

  private:
    std::vector<u8> bytes_;
    std::size_t bitpos_ = 0;
};

class BitReader {
  public:
    explicit BitReader(std::span<const u8> bytes) : bytes_(bytes) {}
    u64 get(int nbits);
    bool exhausted() const;

  private:
    std::span<const u8> bytes_;
    std::size_t bitpos_ = 0;
};

u64 extract_bits(std::span<const u8> bytes, std::size_t bitpos, int nbits);

}  // namespace lutdec
