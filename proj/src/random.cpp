#include "sisct/random.hpp"

#include <openssl/rand.h>

#include <stdexcept>

namespace sisct {

std::uint8_t SystemRandom::next_byte() {
  if (avail_ == 0) {
    if (RAND_bytes(buf_, sizeof(buf_)) != 1)
      throw std::runtime_error("system entropy source failed");
    avail_ = sizeof(buf_);
  }
  return buf_[sizeof(buf_) - avail_--];
}

}  // namespace sisct
