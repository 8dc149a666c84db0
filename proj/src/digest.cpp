#include "sisct/digest.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace sisct {

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != out.size())
    throw std::runtime_error("sha256 digest failed");
  return out;
}

std::string sha256_hex(std::span<const std::uint8_t> data) {
  static const char* hex = "0123456789abcdef";
  auto d = sha256(data);
  std::string s;
  s.reserve(64);
  for (std::uint8_t b : d) {
    s.push_back(hex[b >> 4]);
    s.push_back(hex[b & 0x0F]);
  }
  return s;
}

}  // namespace sisct
