#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sisct/image_io.hpp"
#include "sisct/random.hpp"

namespace sisct {

// Dealer-side commitment and receiver-side cheater identification.
//
// The dealer hashes each share's container bytes, reduces the digest mod a
// prime p, and packs the three hash values into one integer T in base p with
// a random buffer digit c between them:
//
//   T = h1 + c*p + h2*p^2 + c*p^3 + h3*p^4
//
// (T, p) is published. A verifier recomputes T' from the presented shares,
// using only the even digit positions, and checks for each claimant j that
// floor((T - T') / p^(2(j-1))) mod p == 0. The buffer digits absorb borrows
// when a tampered hash makes a digit of T - T' negative, so each verdict is
// independent of what the other participants presented. The dealer's c is
// never needed again after T is formed.
//
// All arithmetic is arbitrary-precision with floor semantics (division
// rounds toward negative infinity); T - T' can be negative.

inline constexpr int kParticipants = 3;
inline constexpr const char* kHashId = "sha256";

// 2^61 - 1, the default modulus. Prime, and wide enough that a tampered
// share slips through only with probability about 4e-19.
mpz_class default_prime();

bool is_probable_prime(const mpz_class& p);

// Digit packing used by the commitment.
enum class DigitLayout {
  Plain,   // T = sum a_i * p^(i-1);     digit j sits at exponent j-1
  Spaced,  // T = sum a_i * p^(2(i-1)) + buffer digits at odd exponents
};

// floor(T / p^e) mod p for the exponent e selected by j and the layout.
// Valid for negative T; the residue is always in [0, p). j is 1-based.
mpz_class radix_digit(const mpz_class& T, const mpz_class& p, int j,
                      DigitLayout layout);

// sum digits[i] * p^(i-1), i = 1..n.
mpz_class encode_plain(const std::vector<mpz_class>& digits, const mpz_class& p);

// sum digits[i] * p^(2(i-1)) + sum_{i=1..n-1} c * p^(2i-1).
mpz_class encode_spaced(const std::vector<mpz_class>& digits, const mpz_class& c,
                        const mpz_class& p);

// SHA-256 of the canonical container bytes, big-endian, reduced mod p.
mpz_class share_hash_bytes(std::span<const std::uint8_t> container,
                           const mpz_class& p);
mpz_class share_hash(const Share& s, const mpz_class& p);

// Published verification pair for one cheque's share triple. c is absent on
// purpose: it is dealer-ephemeral and verification never uses it.
struct PublicParams {
  Scheme scheme = Scheme::Xor;
  mpz_class p;
  mpz_class T;
  int n = kParticipants;
  std::string hash_id = kHashId;
};

// Commit to a share triple (indices 1..3 in any order, same scheme and
// dimensions). The first form draws the buffer digit c from rng; the second
// takes an explicit c in [1, p).
PublicParams make_params(const std::array<Share, 3>& shares, const mpz_class& p,
                         RandomSource& rng);
PublicParams make_params(const std::array<Share, 3>& shares, const mpz_class& p,
                         const mpz_class& c);

enum class Verdict { Honest, Cheater };

struct ParticipantVerdict {
  int index = 0;
  Verdict verdict = Verdict::Honest;
  mpz_class residual;  // extracted digit; zero iff Honest
};

struct VerificationReport {
  std::vector<ParticipantVerdict> participants;

  bool all_honest() const;
  const ParticipantVerdict* find(int index) const;
};

// A claimant presents its share as the exact container bytes it holds, so
// tampering anywhere in the container is caught before any parse.
struct ClaimBytes {
  int index = 0;
  std::vector<std::uint8_t> container;
};

// Check each claimant in G against the published (T, p). Claims must have
// distinct indices in 1..n; absent participants do not affect the verdicts.
VerificationReport verify(const PublicParams& params,
                          const std::vector<ClaimBytes>& claims);
VerificationReport verify(const PublicParams& params,
                          const std::vector<std::pair<int, Share>>& claims);

// Params file, line-oriented text:
//   sisct-params v1
//   scheme=<xor|partition>
//   p=<decimal>
//   T=<decimal>
//   n=3
//   hash=sha256
// write_params/read_params round-trip byte-exactly.
std::string write_params(const PublicParams& params);
PublicParams read_params(std::string_view text);

}  // namespace sisct
