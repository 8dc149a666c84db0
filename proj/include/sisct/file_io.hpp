#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sisct {

// Whole-file helpers. Both throw FormatError on I/O failure.
std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace sisct
