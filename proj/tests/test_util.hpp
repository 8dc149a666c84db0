#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "sisct/image_io.hpp"
#include "sisct/random.hpp"

namespace testutil {

// 4x4 sample cheque block and the share matrices the XOR scheme must
// produce from it. These are frozen golden vectors; do not regenerate.
inline const std::array<std::uint8_t, 16> kSecret4x4 = {
    157, 160, 190, 130,  //
    89,  255, 224, 192,  //
    10,  220, 255, 224,  //
    64,  128, 192, 255};
inline const std::array<std::uint8_t, 16> kSc1_4x4 = {
    7, 0, 6, 0, 13, 15, 8, 8, 0, 14, 15, 8, 8, 0, 8, 15};
inline const std::array<std::uint8_t, 16> kSc2_4x4 = {
    10, 12, 15, 9, 2, 15, 12, 8, 3, 10, 15, 12, 0, 8, 8, 15};
inline const std::array<std::uint8_t, 16> kSc3_4x4 = {
    13, 12, 9, 9, 15, 0, 4, 0, 3, 4, 0, 4, 8, 8, 0, 0};

inline sisct::GrayImage make_image(std::uint32_t w, std::uint32_t h,
                                   std::vector<std::uint8_t> pixels) {
  return {w, h, std::move(pixels)};
}

inline sisct::GrayImage golden_secret() {
  return make_image(4, 4, {kSecret4x4.begin(), kSecret4x4.end()});
}

inline sisct::GrayImage random_image(std::uint64_t seed, std::uint32_t w,
                                     std::uint32_t h) {
  std::mt19937_64 eng(seed);
  sisct::GrayImage img{w, h, {}};
  img.pixels.resize(std::size_t(w) * h);
  for (auto& px : img.pixels) px = static_cast<std::uint8_t>(eng() & 0xFF);
  return img;
}

inline sisct::Share make_share(sisct::Scheme scheme, int index,
                               std::uint32_t w, std::uint32_t h,
                               std::vector<std::uint8_t> pixels) {
  sisct::Share s;
  s.scheme = scheme;
  s.index = static_cast<std::uint8_t>(index);
  s.bit_depth = (scheme == sisct::Scheme::Xor) ? 4 : 8;
  s.width = w;
  s.height = h;
  s.pixels = std::move(pixels);
  return s;
}

// Fixed-output generator for forcing the partition scheme's mask byte.
struct ConstRandom : sisct::RandomSource {
  std::uint8_t value;
  explicit ConstRandom(std::uint8_t v) : value(v) {}
  std::uint8_t next_byte() override { return value; }
};

// Self-deleting scratch directory, one per test case.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::atomic<int> counter{0};
    path = std::filesystem::temp_directory_path() /
           ("sisct_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

#ifdef SISCT_CLI_PATH
struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the installed CLI through the shell. env_prefix goes in front of the
// binary path ("SISCT_TEST_MODE=1" etc.); stderr is captured via a file.
inline CliResult run_cli(const std::string& args,
                         const std::string& env_prefix = "") {
  static std::atomic<int> counter{0};
  std::filesystem::path errfile =
      std::filesystem::temp_directory_path() /
      ("sisct_cli_err_" + std::to_string(::getpid()) + "_" +
       std::to_string(counter++) + ".txt");

  std::string cmd;
  if (!env_prefix.empty()) cmd += env_prefix + " ";
  cmd += std::string(SISCT_CLI_PATH) + " " + args + " 2>" + errfile.string();

  CliResult res;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe != nullptr) {
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int status = ::pclose(pipe);
    if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  }
  res.err = slurp(errfile.string());
  std::error_code ec;
  std::filesystem::remove(errfile, ec);
  return res;
}
#endif

}  // namespace testutil
