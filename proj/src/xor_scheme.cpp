#include "sisct/xor_scheme.hpp"

namespace sisct {

namespace {

std::uint8_t even_bits(std::uint8_t v) {
  std::uint8_t out = 0;
  for (int k = 0; k < 4; ++k) out |= static_cast<std::uint8_t>(((v >> (2 * k)) & 1) << k);
  return out;
}

std::uint8_t odd_bits(std::uint8_t v) {
  std::uint8_t out = 0;
  for (int k = 0; k < 4; ++k) out |= static_cast<std::uint8_t>(((v >> (2 * k + 1)) & 1) << k);
  return out;
}

// even nibble -> bits 0,2,4,6; odd nibble -> bits 1,3,5,7
std::uint8_t interleave(std::uint8_t even, std::uint8_t odd) {
  std::uint8_t out = 0;
  for (int k = 0; k < 4; ++k) {
    out |= static_cast<std::uint8_t>(((even >> k) & 1) << (2 * k));
    out |= static_cast<std::uint8_t>(((odd >> k) & 1) << (2 * k + 1));
  }
  return out;
}

Share make_xor_share(std::uint8_t index, const GrayImage& img) {
  Share s;
  s.scheme = Scheme::Xor;
  s.index = index;
  s.bit_depth = 4;
  s.width = img.width;
  s.height = img.height;
  s.pixels.resize(img.pixels.size());
  return s;
}

void check_xor_pair(const Share& a, const Share& b) {
  for (const Share* s : {&a, &b}) {
    if (s->scheme != Scheme::Xor || s->bit_depth != 4)
      throw std::invalid_argument("xor_reconstruct: share is not an xor share");
    if (s->index < 1 || s->index > 3)
      throw std::invalid_argument("xor_reconstruct: share index out of range");
    if (s->pixels.size() != static_cast<std::uint64_t>(s->width) * s->height)
      throw std::invalid_argument("xor_reconstruct: share pixel buffer mismatch");
  }
  if (a.index == b.index)
    throw std::invalid_argument("xor_reconstruct: same share index twice");
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument("xor_reconstruct: share dimensions differ");
}

}  // namespace

XorShareTriple xor_split(const GrayImage& img) {
  if (img.width == 0 || img.height == 0 ||
      img.pixels.size() != static_cast<std::uint64_t>(img.width) * img.height)
    throw std::invalid_argument("xor_split: invalid image");

  XorShareTriple t{make_xor_share(1, img), make_xor_share(2, img),
                   make_xor_share(3, img)};
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    std::uint8_t v = img.pixels[i];
    std::uint8_t e = even_bits(v);
    std::uint8_t o = odd_bits(v);
    t.sc1.pixels[i] = e;
    t.sc2.pixels[i] = o;
    t.sc3.pixels[i] = e ^ o;
  }
  return t;
}

GrayImage xor_reconstruct(const Share& a, const Share& b) {
  check_xor_pair(a, b);
  const Share& lo = (a.index < b.index) ? a : b;
  const Share& hi = (a.index < b.index) ? b : a;

  GrayImage img;
  img.width = lo.width;
  img.height = lo.height;
  img.pixels.resize(lo.pixels.size());

  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    std::uint8_t x = lo.pixels[i];
    std::uint8_t y = hi.pixels[i];
    std::uint8_t even, odd;
    if (lo.index == 1 && hi.index == 2) {
      even = x;
      odd = y;
    } else if (lo.index == 1 && hi.index == 3) {
      even = x;
      odd = x ^ y;  // sc1 ^ sc3 = sc2
    } else {  // (2,3)
      even = x ^ y;  // sc2 ^ sc3 = sc1
      odd = x;
    }
    img.pixels[i] = interleave(even, odd);
  }
  return img;
}

}  // namespace sisct
