#pragma once

#include <cstdint>
#include <random>

namespace sisct {

// Byte source abstraction. Splitting and commitment generation take one of
// these so callers choose between reproducible and cryptographic randomness.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual std::uint8_t next_byte() = 0;

  std::uint64_t next_u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | next_byte();
    return v;
  }
};

// Deterministic stream for tests and reproducible runs. mt19937_64 output is
// fully specified, so a seed yields the same bytes on every platform.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  std::uint8_t next_byte() override {
    return static_cast<std::uint8_t>(engine_() & 0xFF);
  }

 private:
  std::mt19937_64 engine_;
};

// OS entropy, for production share generation.
class SystemRandom final : public RandomSource {
 public:
  std::uint8_t next_byte() override;

 private:
  std::uint8_t buf_[256];
  std::size_t avail_ = 0;
};

}  // namespace sisct
