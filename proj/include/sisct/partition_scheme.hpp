#pragma once

#include "sisct/image_io.hpp"
#include "sisct/random.hpp"

namespace sisct {

// (2,3) partition scheme. Per pixel s, draw a fresh random byte r, split
// both into nibbles (s1/r1 high, s2/r2 low), and pack each share pixel as
// high-nibble * 16 + low-nibble:
//   share 1: (s2^r2, r1)
//   share 2: (s1^r1, r2)
//   share 3: (s2^r1, s1^r2)
// The nibble assignment is the unique one under which the three pairwise
// reconstructions below invert it. For a fixed secret pixel, each share
// pixel is a bijection of r, so a single share is exactly uniform noise.
// A fresh r per pixel keeps pixels independent; reusing one r would leak
// XOR relations between pixels.
struct PartitionShareTriple {
  Share sc1, sc2, sc3;
};

PartitionShareTriple partition_split(const GrayImage& img, RandomSource& rng);

// Rebuild from any two shares, dispatching on index pair:
//   (1,2): s2 = sc1.hi ^ sc2.lo,  s1 = sc1.lo ^ sc2.hi
//   (1,3): s2 = sc1.lo ^ sc3.hi,  s1 = (sc1.hi ^ sc3.lo) ^ s2
//   (2,3): s1 = sc2.lo ^ sc3.lo,  s2 = (sc2.hi ^ sc3.hi) ^ s1
// Argument order does not matter.
GrayImage partition_reconstruct(const Share& a, const Share& b);

}  // namespace sisct
