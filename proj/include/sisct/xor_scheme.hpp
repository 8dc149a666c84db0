#pragma once

#include "sisct/image_io.hpp"

namespace sisct {

// (2,3) XOR scheme. Each 8-bit pixel splits into two nibbles by bit parity,
// bit 0 being the least significant:
//   share 1 pixel: bits 0,2,4,6 of the secret, packed as nibble bits 0..3
//   share 2 pixel: bits 1,3,5,7 of the secret, packed as nibble bits 0..3
//   share 3 pixel: share1 XOR share2
// Deterministic, lossless, and NOT hiding: share 1 is literally the even
// bits of the secret and share 2 the odd bits, so each single share leaks
// half the image. The partition scheme is the hiding one.
struct XorShareTriple {
  Share sc1, sc2, sc3;
};

XorShareTriple xor_split(const GrayImage& img);

// Rebuild from any two of the three shares. The pair is identified by the
// index fields, not argument order: shares (1,2) interleave directly, a
// pair containing share 3 first XORs to recover the missing nibble plane.
GrayImage xor_reconstruct(const Share& a, const Share& b);

}  // namespace sisct
