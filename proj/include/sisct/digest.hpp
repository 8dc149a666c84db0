#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace sisct {

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

// Lowercase hex of sha256(data); used as the payload reference in transcripts.
std::string sha256_hex(std::span<const std::uint8_t> data);

}  // namespace sisct
