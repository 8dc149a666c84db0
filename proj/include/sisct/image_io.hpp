#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace sisct {

// Parse/encode failure on external byte formats (PGM, share container, params).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 8-bit grayscale image, row-major.
struct GrayImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;  // size width*height

  std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  std::size_t pixel_count() const { return pixels.size(); }
  bool operator==(const GrayImage&) const = default;
};

enum class Scheme : std::uint8_t {
  Xor = 1,        // 4-bit shares, deterministic bit split
  Partition = 2,  // 8-bit shares, random nibble masking
};

const char* scheme_name(Scheme s);

// One participant's piece of a split image. Xor shares hold nibble values
// (bit_depth 4), Partition shares full bytes (bit_depth 8).
struct Share {
  Scheme scheme = Scheme::Xor;
  std::uint8_t index = 0;  // participant number, 1..3
  std::uint8_t bit_depth = 4;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, each < 2^bit_depth

  bool operator==(const Share&) const = default;
};

// Binary PGM (P5 only, maxval <= 255). Round-trip is the identity.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

// Share container, byte layout:
//   offset 0   magic "SIS1"
//   offset 4   version byte, 0x01
//   offset 5   scheme byte, 1 = Xor, 2 = Partition
//   offset 6   share index, 1..3
//   offset 7   bit depth, 4 or 8
//   offset 8   width,  u32 little-endian
//   offset 12  height, u32 little-endian
//   offset 16  pixel payload
// bit_depth 4 packs two pixels per byte, earlier pixel in the high nibble,
// final byte zero-padded when the pixel count is odd. bit_depth 8 is one
// byte per pixel. Round-trip is the identity.
std::vector<std::uint8_t> write_share(const Share& s);
Share read_share(std::span<const std::uint8_t> bytes);

// PGM rendering of a share for visual inspection (maxval 2^bit_depth - 1).
// Not a storage format; shares persist in the packed container above.
std::vector<std::uint8_t> write_share_pgm(const Share& s);

// Mean squared pixel error. Throws std::invalid_argument on dimension mismatch.
double mse(const GrayImage& a, const GrayImage& b);

}  // namespace sisct
