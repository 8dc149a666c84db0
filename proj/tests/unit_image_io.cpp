#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sisct/image_io.hpp"
#include "test_util.hpp"

using namespace sisct;
using testutil::make_image;

namespace {

std::vector<std::uint8_t> bytes_of(std::string_view text) {
  return {text.begin(), text.end()};
}

std::vector<std::uint8_t> cat(std::string_view header,
                              std::vector<std::uint8_t> data) {
  std::vector<std::uint8_t> out = bytes_of(header);
  out.insert(out.end(), data.begin(), data.end());
  return out;
}

}  // namespace

TEST_CASE("read_pgm decodes a minimal one-pixel image") {
  GrayImage img = read_pgm(cat("P5 1 1 255 ", {0x00}));
  CHECK(img.width == 1);
  CHECK(img.height == 1);
  REQUIRE(img.pixels.size() == 1);
  CHECK(img.pixels[0] == 0);
}

TEST_CASE("read_pgm decodes a 2x2 block") {
  GrayImage img = read_pgm(cat("P5 2 2 255 ", {157, 160, 89, 255}));
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.pixels == std::vector<std::uint8_t>{157, 160, 89, 255});
  CHECK(img.at(0, 0) == 157);
  CHECK(img.at(1, 0) == 160);
  CHECK(img.at(0, 1) == 89);
  CHECK(img.at(1, 1) == 255);
}

TEST_CASE("read_pgm accepts comments and mixed whitespace in the header") {
  GrayImage img = read_pgm(
      cat("P5\n# scanner note\n2 1\n# another\n255\n", {9, 10}));
  CHECK(img.width == 2);
  CHECK(img.height == 1);
  CHECK(img.pixels == std::vector<std::uint8_t>{9, 10});
}

TEST_CASE("read_pgm rejects malformed input with distinct messages") {
  CHECK_THROWS_WITH_AS(read_pgm(cat("P2 1 1 255 ", {0x30})),
                       doctest::Contains("P5"), FormatError);
  CHECK_THROWS_WITH_AS(read_pgm(cat("P5 1 1 65535 ", {0, 0})),
                       doctest::Contains("maxval"), FormatError);
  // header claims 4x4 = 16 pixels but only 15 bytes follow
  std::vector<std::uint8_t> fifteen(15, 7);
  CHECK_THROWS_WITH_AS(read_pgm(cat("P5 4 4 255 ", fifteen)),
                       doctest::Contains("truncated"), FormatError);
  CHECK_THROWS_AS(read_pgm(cat("P5 x 4 255 ", {})), FormatError);
  CHECK_THROWS_AS(read_pgm(std::vector<std::uint8_t>{}), FormatError);
  // one byte too many
  CHECK_THROWS_WITH_AS(read_pgm(cat("P5 1 1 255 ", {1, 2})),
                       doctest::Contains("trailing"), FormatError);
}

TEST_CASE("write_pgm emits the canonical single-pixel encoding") {
  std::vector<std::uint8_t> bytes = write_pgm(make_image(1, 1, {255}));
  CHECK(bytes == cat("P5\n1 1\n255\n", {0xFF}));
}

TEST_CASE("pgm round-trip is the identity") {
  GrayImage golden = testutil::golden_secret();
  CHECK(read_pgm(write_pgm(golden)) == golden);

  for (std::uint64_t seed = 0; seed < 256; ++seed) {
    std::uint32_t w = 1 + seed % 31;
    std::uint32_t h = 1 + (seed * 7) % 29;
    GrayImage img = testutil::random_image(seed, w, h);
    CAPTURE(seed);
    CHECK(read_pgm(write_pgm(img)) == img);
  }
}

TEST_CASE("share container packs 4-bit pixels two per byte, high nibble first") {
  Share s = testutil::make_share(Scheme::Xor, 1, 4, 1, {7, 0, 6, 0});
  std::vector<std::uint8_t> bytes = write_share(s);
  REQUIRE(bytes.size() == 16 + 2);
  CHECK(bytes[16] == 0x70);
  CHECK(bytes[17] == 0x60);

  // header layout
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "SIS1");
  CHECK(bytes[4] == 0x01);  // version
  CHECK(bytes[5] == 0x01);  // scheme Xor
  CHECK(bytes[6] == 1);     // index
  CHECK(bytes[7] == 4);     // bit depth
  CHECK(bytes[8] == 4);     // width, little-endian
  CHECK(bytes[9] == 0);
  CHECK(bytes[12] == 1);  // height
}

TEST_CASE("share container pads an odd pixel count with a zero nibble") {
  Share s = testutil::make_share(Scheme::Xor, 2, 3, 1, {1, 2, 3});
  std::vector<std::uint8_t> bytes = write_share(s);
  REQUIRE(bytes.size() == 16 + 2);
  CHECK(bytes[16] == 0x12);
  CHECK(bytes[17] == 0x30);
}

TEST_CASE("share container stores 8-bit pixels verbatim") {
  Share s = testutil::make_share(Scheme::Partition, 3, 1, 1, {0xAB});
  std::vector<std::uint8_t> bytes = write_share(s);
  REQUIRE(bytes.size() == 16 + 1);
  CHECK(bytes[16] == 0xAB);
  CHECK(bytes[5] == 0x02);  // scheme Partition
  CHECK(bytes[7] == 8);     // bit depth
}

TEST_CASE("share container payload sizes match the packing rule") {
  for (auto [w, h] : {std::pair<std::uint32_t, std::uint32_t>{4, 4},
                      {5, 3},
                      {1, 1},
                      {7, 1}}) {
    std::size_t count = std::size_t(w) * h;
    Share xs = testutil::make_share(Scheme::Xor, 1, w, h,
                                    std::vector<std::uint8_t>(count, 5));
    CHECK(write_share(xs).size() == 16 + (count + 1) / 2);
    Share ps = testutil::make_share(Scheme::Partition, 1, w, h,
                                    std::vector<std::uint8_t>(count, 99));
    CHECK(write_share(ps).size() == 16 + count);
  }
}

TEST_CASE("share container round-trip is the identity") {
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    std::uint32_t w = 1 + seed % 13;
    std::uint32_t h = 1 + (seed * 5) % 11;
    GrayImage img = testutil::random_image(seed, w, h);

    std::vector<std::uint8_t> nibbles = img.pixels;
    for (auto& v : nibbles) v &= 0x0F;
    Share xs = testutil::make_share(Scheme::Xor, int(1 + seed % 3), w, h, nibbles);
    CAPTURE(seed);
    CHECK(read_share(write_share(xs)) == xs);

    Share ps =
        testutil::make_share(Scheme::Partition, int(1 + seed % 3), w, h, img.pixels);
    CHECK(read_share(write_share(ps)) == ps);
  }
}

TEST_CASE("read_share rejects corrupted containers") {
  Share s = testutil::make_share(Scheme::Xor, 1, 2, 1, {7, 3});
  std::vector<std::uint8_t> good = write_share(s);

  auto corrupt = [&](std::size_t at, std::uint8_t value) {
    std::vector<std::uint8_t> bad = good;
    bad[at] = value;
    return bad;
  };

  CHECK_THROWS_WITH_AS(read_share(corrupt(0, 'X')), doctest::Contains("magic"),
                       FormatError);
  CHECK_THROWS_WITH_AS(read_share(corrupt(4, 0x02)),
                       doctest::Contains("version"), FormatError);
  CHECK_THROWS_AS(read_share(corrupt(5, 0x07)), FormatError);  // scheme byte
  CHECK_THROWS_AS(read_share(corrupt(6, 0)), FormatError);     // index low
  CHECK_THROWS_AS(read_share(corrupt(6, 4)), FormatError);     // index high
  CHECK_THROWS_AS(read_share(corrupt(7, 8)), FormatError);     // depth vs scheme

  std::vector<std::uint8_t> short_payload(good.begin(), good.end() - 1);
  CHECK_THROWS_WITH_AS(read_share(short_payload), doctest::Contains("payload"),
                       FormatError);
  std::vector<std::uint8_t> long_payload = good;
  long_payload.push_back(0);
  CHECK_THROWS_AS(read_share(long_payload), FormatError);

  // odd pixel count: the padding nibble must stay zero
  Share odd = testutil::make_share(Scheme::Xor, 1, 3, 1, {1, 2, 3});
  std::vector<std::uint8_t> padded = write_share(odd);
  padded.back() |= 0x0F;
  CHECK_THROWS_WITH_AS(read_share(padded), doctest::Contains("padding"),
                       FormatError);
}

TEST_CASE("write_share rejects shares violating their own invariants") {
  Share bad_nibble = testutil::make_share(Scheme::Xor, 1, 1, 1, {16});
  CHECK_THROWS_AS((void)write_share(bad_nibble), std::invalid_argument);

  Share bad_count = testutil::make_share(Scheme::Xor, 1, 2, 2, {1, 2, 3});
  CHECK_THROWS_AS((void)write_share(bad_count), std::invalid_argument);

  Share bad_index = testutil::make_share(Scheme::Partition, 4, 1, 1, {0});
  CHECK_THROWS_AS((void)write_share(bad_index), std::invalid_argument);
}

TEST_CASE("share PGM preview uses the share's own bit depth as maxval") {
  Share xs = testutil::make_share(Scheme::Xor, 1, 2, 1, {15, 3});
  std::vector<std::uint8_t> preview = write_share_pgm(xs);
  CHECK(preview == cat("P5\n2 1\n15\n", {15, 3}));

  Share ps = testutil::make_share(Scheme::Partition, 2, 1, 1, {200});
  CHECK(write_share_pgm(ps) == cat("P5\n1 1\n255\n", {200}));
}

TEST_CASE("mse is zero exactly on identical images") {
  GrayImage img = testutil::random_image(41, 16, 16);
  CHECK(mse(img, img) == 0.0);

  GrayImage other = img;
  other.pixels[40] ^= 1;
  CHECK(mse(img, other) > 0.0);
}

TEST_CASE("mse of single pixels 0 and 2 is 4") {
  CHECK(mse(make_image(1, 1, {0}), make_image(1, 1, {2})) == 4.0);
}

TEST_CASE("mse matches a direct summation oracle") {
  GrayImage a = testutil::random_image(7, 23, 9);
  GrayImage b = testutil::random_image(8, 23, 9);

  double sum = 0.0;
  for (std::uint32_t y = 0; y < a.height; ++y)
    for (std::uint32_t x = 0; x < a.width; ++x) {
      double d = double(a.at(x, y)) - double(b.at(x, y));
      sum += d * d;
    }
  double expected = sum / (23.0 * 9.0);
  CHECK(mse(a, b) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mse refuses mismatched dimensions") {
  CHECK_THROWS_AS((void)mse(make_image(1, 1, {0}), make_image(1, 2, {0, 0})),
                  std::invalid_argument);
}
