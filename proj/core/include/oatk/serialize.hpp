#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oatk/errors.hpp"

namespace oatk {

/// LEB128 unsigned varint, minimal-length (canonical) encoding.
inline void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(v) | 0x80);
        v >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(v));
}

/// Reads a canonical varint at pos, advancing it. Rejects truncated and
/// overlong encodings and values past 64 bits.
inline std::uint64_t get_varint(std::span<const std::uint8_t> in, std::size_t& pos) {
    std::uint64_t v = 0;
    for (unsigned shift = 0; shift < 64; shift += 7) {
        if (pos >= in.size()) throw ConfigError("varint: truncated input");
        const std::uint8_t byte = in[pos++];
        if (shift == 63 && (byte & 0x7e) != 0) throw ConfigError("varint: value exceeds 64 bits");
        v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
        if ((byte & 0x80) == 0) {
            if (byte == 0 && shift != 0) throw ConfigError("varint: overlong encoding");
            return v;
        }
    }
    throw ConfigError("varint: value exceeds 64 bits");
}

inline void put_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_u64_le(std::span<const std::uint8_t> in, std::size_t& pos) {
    if (pos + 8 > in.size()) throw ConfigError("u64: truncated input");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos++]) << (8 * i);
    return v;
}

} // namespace oatk
