#include "sisct/partition_scheme.hpp"

namespace sisct {

namespace {

std::uint8_t hi_nibble(std::uint8_t v) { return v >> 4; }
std::uint8_t lo_nibble(std::uint8_t v) { return v & 0x0F; }
std::uint8_t pack(std::uint8_t hi, std::uint8_t lo) {
  return static_cast<std::uint8_t>((hi << 4) | lo);
}

Share make_partition_share(std::uint8_t index, const GrayImage& img) {
  Share s;
  s.scheme = Scheme::Partition;
  s.index = index;
  s.bit_depth = 8;
  s.width = img.width;
  s.height = img.height;
  s.pixels.resize(img.pixels.size());
  return s;
}

void check_partition_pair(const Share& a, const Share& b) {
  for (const Share* s : {&a, &b}) {
    if (s->scheme != Scheme::Partition || s->bit_depth != 8)
      throw std::invalid_argument(
          "partition_reconstruct: share is not a partition share");
    if (s->index < 1 || s->index > 3)
      throw std::invalid_argument("partition_reconstruct: share index out of range");
    if (s->pixels.size() != static_cast<std::uint64_t>(s->width) * s->height)
      throw std::invalid_argument("partition_reconstruct: share pixel buffer mismatch");
  }
  if (a.index == b.index)
    throw std::invalid_argument("partition_reconstruct: same share index twice");
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument("partition_reconstruct: share dimensions differ");
}

}  // namespace

PartitionShareTriple partition_split(const GrayImage& img, RandomSource& rng) {
  if (img.width == 0 || img.height == 0 ||
      img.pixels.size() != static_cast<std::uint64_t>(img.width) * img.height)
    throw std::invalid_argument("partition_split: invalid image");

  PartitionShareTriple t{make_partition_share(1, img),
                         make_partition_share(2, img),
                         make_partition_share(3, img)};
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    std::uint8_t s = img.pixels[i];
    std::uint8_t r = rng.next_byte();
    std::uint8_t s1 = hi_nibble(s), s2 = lo_nibble(s);
    std::uint8_t r1 = hi_nibble(r), r2 = lo_nibble(r);
    t.sc1.pixels[i] = pack(s2 ^ r2, r1);
    t.sc2.pixels[i] = pack(s1 ^ r1, r2);
    t.sc3.pixels[i] = pack(s2 ^ r1, s1 ^ r2);
  }
  return t;
}

GrayImage partition_reconstruct(const Share& a, const Share& b) {
  check_partition_pair(a, b);
  const Share& lo = (a.index < b.index) ? a : b;
  const Share& hi = (a.index < b.index) ? b : a;

  GrayImage img;
  img.width = lo.width;
  img.height = lo.height;
  img.pixels.resize(lo.pixels.size());

  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    std::uint8_t x = lo.pixels[i];
    std::uint8_t y = hi.pixels[i];
    std::uint8_t s1, s2;
    if (lo.index == 1 && hi.index == 2) {
      s2 = hi_nibble(x) ^ lo_nibble(y);
      s1 = lo_nibble(x) ^ hi_nibble(y);
    } else if (lo.index == 1 && hi.index == 3) {
      s2 = lo_nibble(x) ^ hi_nibble(y);
      s1 = static_cast<std::uint8_t>(hi_nibble(x) ^ lo_nibble(y)) ^ s2;
    } else {  // (2,3)
      s1 = lo_nibble(x) ^ lo_nibble(y);
      s2 = static_cast<std::uint8_t>(hi_nibble(x) ^ hi_nibble(y)) ^ s1;
    }
    img.pixels[i] = pack(s1, s2);
  }
  return img;
}

}  // namespace sisct
