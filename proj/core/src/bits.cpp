#include "lutdec/bits.hpp"

#include <limits>
#include <stdexcept>

namespace lutdec {

namespace {

struct BinomTable {
    std::array<std::array<u64, 65>, 65> c{};
    BinomTable() {
        for (int n = 0; n <= 64; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                u64 a = c[n - 1][k - 1];
                u64 b = (k <= n - 1) ? c[n - 1][k] : 0;
                u64 s = a + b;
                if (s < a) s = std::numeric_limits<u64>::max();
                c[n][k] = s;
            }
        }
    }
};

const BinomTable g_binom;

}  // namespace

u64 binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n || n > 64) return 0;
    return g_binom.c[n][k];
}

u64 rank_fixed_weight(u64 x) {
    u64 rank = 0;
    int i = 1;
    while (x) {
        int p = std::countr_zero(x);
        rank += binomial(p, i);
        x &= x - 1;
        ++i;
    }
    return rank;
}

u32 crc32(std::span<const u8> data) {
    static const auto table = [] {
        std::array<u32, 256> t{};
        for (u32 i = 0; i < 256; ++i) {
            u32 c = i;
            for (int j = 0; j < 8; ++j)
                c = (c & 1) ? 0xedb88320u ^ (c >> 1) : (c >> 1);
            t[i] = c;
        }
        return t;
    }();
    u32 crc = 0xffffffffu;
    for (u8 b : data) crc = table[(crc ^ b) & 0xff] ^ (crc >> 8);
    return crc ^ 0xffffffffu;
}

void BitWriter::put(u64 value, int nbits) {
    if (nbits < 0 || nbits > 64) throw std::invalid_argument("bit field width");
    for (int i = 0; i < nbits; ++i) {
        std::size_t byte = (bitpos_ + i) >> 3;
        if (byte >= bytes_.size()) bytes_.push_back(0);
        if ((value >> i) & 1) bytes_[byte] |= u8(1u << ((bitpos_ + i) & 7));
    }
    bitpos_ += nbits;
}

u64 BitReader::get(int nbits) {
    u64 v = extract_bits(bytes_, bitpos_, nbits);
    bitpos_ += nbits;
    return v;
}

bool BitReader::exhausted() const { return bitpos_ >= bytes_.size() * 8; }

u64 extract_bits(std::span<const u8> bytes, std::size_t bitpos, int nbits) {
    if (nbits < 0 || nbits > 64) throw std::invalid_argument("bit field width");
    if (bitpos + nbits > bytes.size() * 8) throw std::out_of_range("bit stream truncated");
    u64 v = 0;
    for (int i = 0; i < nbits; ++i) {
        std::size_t pos = bitpos + i;
        if ((bytes[pos >> 3] >> (pos & 7)) & 1) v |= u64{1} << i;
    }
    return v;
}

}  // namespace lutdec
