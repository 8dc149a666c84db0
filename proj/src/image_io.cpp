#include "sisct/image_io.hpp"

#include <cctype>
#include <string>

namespace sisct {

namespace {

constexpr char kShareMagic[4] = {'S', 'I', 'S', '1'};
constexpr std::uint8_t kShareVersion = 0x01;
constexpr std::size_t kShareHeaderSize = 16;

bool is_pgm_space(int c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Cursor over the PGM header; '#' starts a comment running to end of line.
struct HeaderCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < bytes.size()) {
      if (is_pgm_space(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  std::uint64_t read_number(const char* what) {
    skip_space_and_comments();
    if (pos >= bytes.size() || !std::isdigit(bytes[pos]))
      throw FormatError(std::string("malformed PGM header: expected ") + what);
    std::uint64_t value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      value = value * 10 + (bytes[pos] - '0');
      if (value > 0xFFFFFFFFull)
        throw FormatError(std::string("malformed PGM header: ") + what + " out of range");
      ++pos;
    }
    return value;
  }
};

void check_image(const GrayImage& img) {
  if (img.width == 0 || img.height == 0)
    throw std::invalid_argument("image dimensions must be positive");
  if (img.pixels.size() !=
      static_cast<std::uint64_t>(img.width) * img.height)
    throw std::invalid_argument("image pixel buffer does not match dimensions");
}

void check_share(const Share& s) {
  if (s.scheme != Scheme::Xor && s.scheme != Scheme::Partition)
    throw std::invalid_argument("unknown share scheme");
  std::uint8_t want_depth = (s.scheme == Scheme::Xor) ? 4 : 8;
  if (s.bit_depth != want_depth)
    throw std::invalid_argument("share bit depth does not match scheme");
  if (s.index < 1 || s.index > 3)
    throw std::invalid_argument("share index must be 1..3");
  if (s.width == 0 || s.height == 0)
    throw std::invalid_argument("share dimensions must be positive");
  if (s.pixels.size() != static_cast<std::uint64_t>(s.width) * s.height)
    throw std::invalid_argument("share pixel buffer does not match dimensions");
  if (s.bit_depth == 4) {
    for (std::uint8_t v : s.pixels)
      if (v >= 16)
        throw std::invalid_argument("nibble value >= 16 under bit depth 4");
  }
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

std::uint32_t get_u32le(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) |
         (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

std::vector<std::uint8_t> pgm_header(std::uint32_t w, std::uint32_t h, unsigned maxval) {
  std::string hdr = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n" +
                    std::to_string(maxval) + "\n";
  return {hdr.begin(), hdr.end()};
}

}  // namespace

const char* scheme_name(Scheme s) {
  return s == Scheme::Xor ? "xor" : "partition";
}

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
    throw FormatError("not a binary PGM (P5) file");

  HeaderCursor cur{bytes, 2};
  std::uint64_t w = cur.read_number("width");
  std::uint64_t h = cur.read_number("height");
  std::uint64_t maxval = cur.read_number("maxval");
  if (w == 0 || h == 0)
    throw FormatError("malformed PGM header: zero dimension");
  if (maxval > 255)
    throw FormatError("PGM maxval exceeds 255");
  if (maxval == 0)
    throw FormatError("malformed PGM header: maxval must be positive");

  // Exactly one whitespace byte separates the header from the raster.
  if (cur.pos >= bytes.size() || !is_pgm_space(bytes[cur.pos]))
    throw FormatError("malformed PGM header: missing raster separator");
  ++cur.pos;

  std::uint64_t need = w * h;
  std::uint64_t have = bytes.size() - cur.pos;
  if (have < need) throw FormatError("truncated PGM pixel data");
  if (have > need) throw FormatError("trailing bytes after PGM pixel data");

  GrayImage img;
  img.width = static_cast<std::uint32_t>(w);
  img.height = static_cast<std::uint32_t>(h);
  img.pixels.assign(bytes.begin() + cur.pos, bytes.end());
  return img;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  check_image(img);
  std::vector<std::uint8_t> out = pgm_header(img.width, img.height, 255);
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

std::vector<std::uint8_t> write_share(const Share& s) {
  check_share(s);
  std::vector<std::uint8_t> out;
  std::uint64_t n = s.pixels.size();
  std::uint64_t payload = (s.bit_depth == 4) ? (n + 1) / 2 : n;
  out.reserve(kShareHeaderSize + payload);

  out.insert(out.end(), kShareMagic, kShareMagic + 4);
  out.push_back(kShareVersion);
  out.push_back(static_cast<std::uint8_t>(s.scheme));
  out.push_back(s.index);
  out.push_back(s.bit_depth);
  put_u32le(out, s.width);
  put_u32le(out, s.height);

  if (s.bit_depth == 4) {
    for (std::uint64_t i = 0; i < n; i += 2) {
      std::uint8_t hi = s.pixels[i];
      std::uint8_t lo = (i + 1 < n) ? s.pixels[i + 1] : 0;
      out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
  } else {
    out.insert(out.end(), s.pixels.begin(), s.pixels.end());
  }
  return out;
}

Share read_share(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kShareHeaderSize)
    throw FormatError("share container too short for header");
  if (!std::equal(kShareMagic, kShareMagic + 4, bytes.begin()))
    throw FormatError("bad share container magic");
  if (bytes[4] != kShareVersion)
    throw FormatError("unknown share container version");

  Share s;
  switch (bytes[5]) {
    case 1: s.scheme = Scheme::Xor; break;
    case 2: s.scheme = Scheme::Partition; break;
    default: throw FormatError("unknown share scheme byte");
  }
  s.index = bytes[6];
  if (s.index < 1 || s.index > 3)
    throw FormatError("share index out of range");
  s.bit_depth = bytes[7];
  if (s.bit_depth != ((s.scheme == Scheme::Xor) ? 4 : 8))
    throw FormatError("share bit depth does not match scheme");
  s.width = get_u32le(bytes, 8);
  s.height = get_u32le(bytes, 12);
  if (s.width == 0 || s.height == 0)
    throw FormatError("share dimensions must be positive");

  std::uint64_t n = static_cast<std::uint64_t>(s.width) * s.height;
  std::uint64_t payload = (s.bit_depth == 4) ? (n + 1) / 2 : n;
  if (bytes.size() - kShareHeaderSize != payload)
    throw FormatError("share payload length mismatch");

  std::span<const std::uint8_t> body = bytes.subspan(kShareHeaderSize);
  if (s.bit_depth == 4) {
    s.pixels.reserve(n);
    for (std::uint64_t i = 0; i < payload; ++i) {
      s.pixels.push_back(body[i] >> 4);
      std::uint8_t lo = body[i] & 0x0F;
      if (2 * i + 1 < n) {
        s.pixels.push_back(lo);
      } else if (lo != 0) {
        throw FormatError("nonzero padding nibble in share payload");
      }
    }
  } else {
    s.pixels.assign(body.begin(), body.end());
  }
  return s;
}

std::vector<std::uint8_t> write_share_pgm(const Share& s) {
  check_share(s);
  unsigned maxval = (1u << s.bit_depth) - 1;
  std::vector<std::uint8_t> out = pgm_header(s.width, s.height, maxval);
  out.insert(out.end(), s.pixels.begin(), s.pixels.end());
  return out;
}

double mse(const GrayImage& a, const GrayImage& b) {
  check_image(a);
  check_image(b);
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument("mse: image dimensions differ");
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a.pixels[i]) - b.pixels[i];
    sum += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(sum) / static_cast<double>(a.pixels.size());
}

}  // namespace sisct
