#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmg {

// Bit strings, one bit per byte. Index 0 holds the first bit of the written
// string ("d1" etc.), which is also the least significant bit in the packed
// integer form used by the dense simulator.
using Bits = std::vector<std::uint8_t>;

inline Bits bits_from_string(const std::string& s) {
    Bits out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("bit string must contain only '0'/'1', got: " + s);
        }
        out.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return out;
}

inline std::string bits_to_string(const Bits& b) {
    std::string out(b.size(), '0');
    for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] = b[i] ? '1' : '0';
    }
    return out;
}

inline Bits bits_from_index(std::uint64_t value, int len) {
    Bits out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((value >> i) & 1u);
    }
    return out;
}

inline std::uint64_t index_from_bits(const Bits& b) {
    if (b.size() > 63) {
        throw std::invalid_argument("bit string too long to pack into 64 bits");
    }
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        value |= static_cast<std::uint64_t>(b[i] & 1u) << i;
    }
    return value;
}

inline int hamming_weight(const Bits& b) {
    int w = 0;
    for (std::uint8_t bit : b) {
        w += bit & 1u;
    }
    return w;
}

inline Bits bits_xor(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("bit string length mismatch in xor");
    }
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = static_cast<std::uint8_t>((a[i] ^ b[i]) & 1u);
    }
    return out;
}

inline Bits bits_complement(const Bits& a) {
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(1u - (a[i] & 1u));
    }
    return out;
}

}  // namespace pmg
