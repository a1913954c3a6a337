#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>

namespace okse {

/// CRC-32 (IEEE 802.3, reflected, init/xorout 0xFFFFFFFF).
std::uint32_t crc32(const void* data, std::size_t size);

using Digest256 = std::array<std::uint8_t, 32>;

/// SHA-256 of a contiguous buffer.
Digest256 sha256(const void* data, std::size_t size);

std::string digest_to_hex(const Digest256& d);

}  // namespace okse
