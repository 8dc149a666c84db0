#include "sisct/cheat_detect.hpp"

#include <algorithm>

#include "sisct/digest.hpp"

namespace sisct {

namespace {

mpz_class pow_p(const mpz_class& p, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), e);
  return out;
}

void check_prime(const mpz_class& p) {
  if (!is_probable_prime(p))
    throw std::invalid_argument("modulus p is not prime");
}

// Uniform-enough draw of c in [1, p): interpret bits(p)+64 random bits as an
// integer and reduce mod p-1. The excess 64 bits make the bias negligible.
mpz_class draw_c(const mpz_class& p, RandomSource& rng) {
  std::size_t nbytes = (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8 + 8;
  mpz_class v = 0;
  for (std::size_t i = 0; i < nbytes; ++i) {
    v <<= 8;
    v += rng.next_byte();
  }
  mpz_class c;
  mpz_class span = p - 1;
  mpz_fdiv_r(c.get_mpz_t(), v.get_mpz_t(), span.get_mpz_t());
  return c + 1;
}

PublicParams make_params_impl(const std::array<Share, 3>& shares,
                              const mpz_class& p, const mpz_class& c) {
  check_prime(p);
  if (c < 1 || c >= p)
    throw std::invalid_argument("buffer digit c must be in [1, p)");

  std::array<const Share*, 3> by_index{};
  for (const Share& s : shares) {
    if (s.index < 1 || s.index > 3)
      throw std::invalid_argument("share index must be 1..3");
    if (by_index[s.index - 1])
      throw std::invalid_argument("duplicate share index");
    by_index[s.index - 1] = &s;
  }
  for (int i = 1; i < 3; ++i) {
    if (by_index[i]->scheme != by_index[0]->scheme ||
        by_index[i]->width != by_index[0]->width ||
        by_index[i]->height != by_index[0]->height)
      throw std::invalid_argument("shares disagree on scheme or dimensions");
  }

  std::vector<mpz_class> hashes;
  hashes.reserve(3);
  for (const Share* s : by_index) hashes.push_back(share_hash(*s, p));

  PublicParams params;
  params.scheme = by_index[0]->scheme;
  params.p = p;
  params.T = encode_spaced(hashes, c, p);
  return params;
}

bool parse_decimal(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  out = mpz_class(std::string(s), 10);
  return true;
}

}  // namespace

mpz_class default_prime() { return mpz_class("2305843009213693951"); }

bool is_probable_prime(const mpz_class& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 30) != 0;
}

mpz_class radix_digit(const mpz_class& T, const mpz_class& p, int j,
                      DigitLayout layout) {
  if (j < 1) throw std::invalid_argument("digit index j must be >= 1");
  unsigned long e = (layout == DigitLayout::Plain)
                        ? static_cast<unsigned long>(j - 1)
                        : static_cast<unsigned long>(2 * (j - 1));
  mpz_class q, r, pe = pow_p(p, e);
  mpz_fdiv_q(q.get_mpz_t(), T.get_mpz_t(), pe.get_mpz_t());
  mpz_fdiv_r(r.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class encode_plain(const std::vector<mpz_class>& digits, const mpz_class& p) {
  mpz_class T = 0;
  for (std::size_t i = 0; i < digits.size(); ++i)
    T += digits[i] * pow_p(p, static_cast<unsigned long>(i));
  return T;
}

mpz_class encode_spaced(const std::vector<mpz_class>& digits, const mpz_class& c,
                        const mpz_class& p) {
  mpz_class T = 0;
  for (std::size_t i = 0; i < digits.size(); ++i)
    T += digits[i] * pow_p(p, static_cast<unsigned long>(2 * i));
  for (std::size_t i = 0; i + 1 < digits.size(); ++i)
    T += c * pow_p(p, static_cast<unsigned long>(2 * i + 1));
  return T;
}

mpz_class share_hash_bytes(std::span<const std::uint8_t> container,
                           const mpz_class& p) {
  if (p < 2) throw std::invalid_argument("modulus p must be >= 2");
  auto digest = sha256(container);
  mpz_class v;
  mpz_import(v.get_mpz_t(), digest.size(), 1 /* big-endian words */, 1, 0, 0,
             digest.data());
  mpz_class h;
  mpz_fdiv_r(h.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return h;
}

mpz_class share_hash(const Share& s, const mpz_class& p) {
  return share_hash_bytes(write_share(s), p);
}

PublicParams make_params(const std::array<Share, 3>& shares, const mpz_class& p,
                         RandomSource& rng) {
  check_prime(p);
  return make_params_impl(shares, p, draw_c(p, rng));
}

PublicParams make_params(const std::array<Share, 3>& shares, const mpz_class& p,
                         const mpz_class& c) {
  return make_params_impl(shares, p, c);
}

bool VerificationReport::all_honest() const {
  return std::all_of(participants.begin(), participants.end(),
                     [](const ParticipantVerdict& v) {
                       return v.verdict == Verdict::Honest;
                     });
}

const ParticipantVerdict* VerificationReport::find(int index) const {
  for (const auto& v : participants)
    if (v.index == index) return &v;
  return nullptr;
}

VerificationReport verify(const PublicParams& params,
                          const std::vector<ClaimBytes>& claims) {
  if (claims.empty()) throw std::invalid_argument("verify: no claims");
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (claims[i].index < 1 || claims[i].index > params.n)
      throw std::invalid_argument("verify: claim index out of range");
    for (std::size_t k = 0; k < i; ++k)
      if (claims[k].index == claims[i].index)
        throw std::invalid_argument("verify: duplicate claim index");
  }

  // T' over exactly the claimant set; absent digits stay untouched in T - T'.
  mpz_class t_prime = 0;
  for (const ClaimBytes& cl : claims) {
    mpz_class h = share_hash_bytes(cl.container, params.p);
    t_prime += h * pow_p(params.p, static_cast<unsigned long>(2 * (cl.index - 1)));
  }
  mpz_class diff = params.T - t_prime;

  VerificationReport report;
  report.participants.reserve(claims.size());
  for (const ClaimBytes& cl : claims) {
    ParticipantVerdict v;
    v.index = cl.index;
    v.residual = radix_digit(diff, params.p, cl.index, DigitLayout::Spaced);
    v.verdict = (v.residual == 0) ? Verdict::Honest : Verdict::Cheater;
    report.participants.push_back(std::move(v));
  }
  return report;
}

VerificationReport verify(const PublicParams& params,
                          const std::vector<std::pair<int, Share>>& claims) {
  std::vector<ClaimBytes> raw;
  raw.reserve(claims.size());
  for (const auto& [index, share] : claims)
    raw.push_back({index, write_share(share)});
  return verify(params, raw);
}

std::string write_params(const PublicParams& params) {
  std::string out = "sisct-params v1\n";
  out += "scheme=";
  out += scheme_name(params.scheme);
  out += "\np=" + params.p.get_str(10);
  out += "\nT=" + params.T.get_str(10);
  out += "\nn=" + std::to_string(params.n);
  out += "\nhash=" + params.hash_id + "\n";
  return out;
}

PublicParams read_params(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos)
      throw FormatError("params file: missing final newline");
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.size() != 6)
    throw FormatError("params file: expected exactly 6 lines");
  if (lines[0] != "sisct-params v1")
    throw FormatError("params file: bad signature line");

  auto field = [&](std::size_t i, std::string_view key) -> std::string_view {
    std::string_view line = lines[i];
    if (line.substr(0, key.size()) != key)
      throw FormatError("params file: expected line '" + std::string(key) + "...'");
    return line.substr(key.size());
  };

  PublicParams params;
  std::string_view scheme = field(1, "scheme=");
  if (scheme == "xor")
    params.scheme = Scheme::Xor;
  else if (scheme == "partition")
    params.scheme = Scheme::Partition;
  else
    throw FormatError("params file: unknown scheme");

  if (!parse_decimal(field(2, "p="), params.p))
    throw FormatError("params file: p is not a decimal integer");
  if (!parse_decimal(field(3, "T="), params.T))
    throw FormatError("params file: T is not a decimal integer");

  std::string_view n = field(4, "n=");
  if (n != "3") throw FormatError("params file: unsupported participant count");
  params.n = 3;

  std::string_view hash = field(5, "hash=");
  if (hash != kHashId) throw FormatError("params file: unknown hash id");
  params.hash_id = std::string(hash);

  if (!is_probable_prime(params.p))
    throw FormatError("params file: p is not prime");
  // Layout bound: n even digits plus n-1 buffer digits fit below this.
  mpz_class limit = pow_p(params.p, static_cast<unsigned long>(2 * params.n - 1)) +
                    pow_p(params.p, static_cast<unsigned long>(2 * params.n - 2)) *
                        params.p;
  if (params.T < 0 || params.T >= limit)
    throw FormatError("params file: T exceeds the digit layout bound");
  return params;
}

}  // namespace sisct
