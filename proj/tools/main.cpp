// sisct: command-line front end for the share toolkit and the clearing
// simulator. Every subcommand is a thin wrapper over the library; the only
// logic here is flag handling and the exit-code mapping:
//   0  success (all Honest where verification is involved)
//   1  usage error
//   2  I/O or format error
//   3  verification failure (some claimed share is a Cheater)
//   4  simulated scenario rejected

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sisct/cheat_detect.hpp"
#include "sisct/cts_sim.hpp"
#include "sisct/file_io.hpp"
#include "sisct/image_io.hpp"
#include "sisct/partition_scheme.hpp"
#include "sisct/random.hpp"
#include "sisct/xor_scheme.hpp"

namespace {

using namespace sisct;

bool test_mode() {
  const char* v = std::getenv("SISCT_TEST_MODE");
  return v != nullptr && *v != '\0';
}

// Seeded stream when --seed is given; OS entropy otherwise. Under
// SISCT_TEST_MODE the seed is mandatory so test runs stay reproducible.
std::unique_ptr<RandomSource> make_rng(const std::optional<std::uint64_t>& seed) {
  if (seed) return std::make_unique<SeededRandom>(*seed);
  if (test_mode())
    throw std::invalid_argument("--seed is required under SISCT_TEST_MODE");
  return std::make_unique<SystemRandom>();
}

std::string as_text(const std::vector<std::uint8_t>& bytes) {
  return {bytes.begin(), bytes.end()};
}

std::vector<std::uint8_t> as_bytes(const std::string& text) {
  return {text.begin(), text.end()};
}

struct SplitArgs {
  std::string scheme;
  std::string in_path;
  std::string out_prefix;
  std::optional<std::uint64_t> seed;
  bool pgm_previews = false;
};

int run_split(const SplitArgs& a) {
  GrayImage img = read_pgm(read_file(a.in_path));
  std::unique_ptr<RandomSource> rng = make_rng(a.seed);

  std::array<Share, 3> shares;
  if (a.scheme == "xor") {
    XorShareTriple t = xor_split(img);
    shares = {std::move(t.sc1), std::move(t.sc2), std::move(t.sc3)};
  } else {
    PartitionShareTriple t = partition_split(img, *rng);
    shares = {std::move(t.sc1), std::move(t.sc2), std::move(t.sc3)};
  }
  PublicParams params = make_params(shares, default_prime(), *rng);

  for (const Share& s : shares) {
    std::string base = a.out_prefix + "." + std::to_string(s.index);
    write_file(base + ".shr", write_share(s));
    if (a.pgm_previews) write_file(base + ".pgm", write_share_pgm(s));
  }
  write_file(a.out_prefix + ".params", as_bytes(write_params(params)));
  return 0;
}

struct ReconstructArgs {
  std::vector<std::string> share_paths;
  std::string out_path;
  std::string params_path;
};

int run_reconstruct(const ReconstructArgs& a) {
  std::vector<std::uint8_t> bytes_a = read_file(a.share_paths[0]);
  std::vector<std::uint8_t> bytes_b = read_file(a.share_paths[1]);
  Share sa = read_share(bytes_a);
  Share sb = read_share(bytes_b);

  if (sa.scheme != sb.scheme) {
    std::cerr << "error: shares use different schemes (" << scheme_name(sa.scheme)
              << " vs " << scheme_name(sb.scheme) << ")\n";
    return 2;
  }
  if (sa.index == sb.index) {
    std::cerr << "error: both shares carry index " << int(sa.index) << "\n";
    return 1;
  }

  if (!a.params_path.empty()) {
    PublicParams params = read_params(as_text(read_file(a.params_path)));
    if (params.scheme != sa.scheme) {
      std::cerr << "error: params file is for scheme " << scheme_name(params.scheme)
                << ", shares are " << scheme_name(sa.scheme) << "\n";
      return 2;
    }
    VerificationReport report =
        verify(params, {{sa.index, bytes_a}, {sb.index, bytes_b}});
    if (!report.all_honest()) {
      for (const ParticipantVerdict& v : report.participants)
        if (v.verdict == Verdict::Cheater)
          std::cerr << "share " << v.index << ": Cheater\n";
      std::cerr << "error: refusing to reconstruct from tampered shares\n";
      return 3;
    }
  }

  GrayImage img = (sa.scheme == Scheme::Xor) ? xor_reconstruct(sa, sb)
                                             : partition_reconstruct(sa, sb);
  write_file(a.out_path, write_pgm(img));
  return 0;
}

struct VerifyArgs {
  std::string params_path;
  std::vector<std::string> claims;  // idx=path
};

int run_verify(const VerifyArgs& a) {
  PublicParams params = read_params(as_text(read_file(a.params_path)));

  std::vector<ClaimBytes> claims;
  for (const std::string& claim_arg : a.claims) {
    std::size_t eq = claim_arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == claim_arg.size())
      throw std::invalid_argument("--claim expects idx=path, got '" + claim_arg + "'");
    int idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoi(claim_arg.substr(0, eq), &used);
      if (used != eq) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("--claim index is not a number in '" + claim_arg + "'");
    }
    claims.push_back({idx, read_file(claim_arg.substr(eq + 1))});
  }

  VerificationReport report = verify(params, claims);
  for (const ParticipantVerdict& v : report.participants)
    std::cout << v.index << ": "
              << (v.verdict == Verdict::Honest ? "Honest" : "Cheater") << "\n";
  return report.all_honest() ? 0 : 3;
}

struct ParamsArgs {
  std::vector<std::string> share_paths;
  std::string out_path;
  std::string p_decimal;
  std::optional<std::uint64_t> seed;
  std::string show_path;
};

int run_params(const ParamsArgs& a) {
  if (!a.show_path.empty()) {
    PublicParams params = read_params(as_text(read_file(a.show_path)));
    std::cout << write_params(params);
    return 0;
  }

  if (a.share_paths.size() != 3 || a.out_path.empty())
    throw std::invalid_argument(
        "params needs either --show or --shares (three files) with --out");

  std::array<Share, 3> shares;
  std::array<bool, 3> filled{};
  for (const std::string& path : a.share_paths) {
    Share s = read_share(read_file(path));
    if (filled[s.index - 1])
      throw std::invalid_argument("two share files carry index " +
                                  std::to_string(int(s.index)));
    filled[s.index - 1] = true;
    shares[s.index - 1] = std::move(s);
  }

  mpz_class p = a.p_decimal.empty() ? default_prime() : mpz_class(a.p_decimal);
  std::unique_ptr<RandomSource> rng = make_rng(a.seed);
  PublicParams params = make_params(shares, p, *rng);
  write_file(a.out_path, as_bytes(write_params(params)));
  return 0;
}

struct SimulateArgs {
  std::string config_path;
  std::string transcript_dir;
};

int run_simulate(const SimulateArgs& a) {
  ScenarioConfig cfg = parse_scenario_config(as_text(read_file(a.config_path)));
  ScenarioResult res = run_scenario(cfg);

  std::string dir = a.transcript_dir.empty() ? a.config_path + ".transcript"
                                             : a.transcript_dir;
  write_transcript_files(res.transcript, dir);

  if (!res.outcome.accepted()) {
    std::cout << "outcome: Rejected(" << res.outcome.rejected_index << ")\n";
    return 4;
  }
  std::cout << "outcome: Accepted\n";
  std::cout << "mse: " << *res.reconstruction_mse << "\n";
  return 0;
}

struct TamperArgs {
  std::string share_path;
  std::size_t offset = 0;
  unsigned xor_byte = 0;
  std::string out_path;
};

int run_tamper(const TamperArgs& a) {
  std::vector<std::uint8_t> bytes = read_file(a.share_path);
  read_share(bytes);  // insist on a well-formed container before tampering

  constexpr std::size_t kPayloadStart = 16;
  if (a.offset >= bytes.size() - kPayloadStart)
    throw FormatError("offset " + std::to_string(a.offset) +
                      " is outside the payload (" +
                      std::to_string(bytes.size() - kPayloadStart) + " bytes)");
  bytes[kPayloadStart + a.offset] ^= static_cast<std::uint8_t>(a.xor_byte);

  write_file(a.out_path.empty() ? a.share_path : a.out_path, bytes);
  return 0;
}

struct MseArgs {
  std::string a_path;
  std::string b_path;
};

int run_mse(const MseArgs& a) {
  GrayImage ia = read_pgm(read_file(a.a_path));
  GrayImage ib = read_pgm(read_file(a.b_path));
  std::cout << mse(ia, ib) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(2,3) secret-image-sharing toolkit and cheque-clearing simulator"};
  app.require_subcommand(1);

  SplitArgs split_args;
  CLI::App* split = app.add_subcommand(
      "split", "Split a PGM image into three shares plus a params file");
  split->add_option("--scheme", split_args.scheme, "xor or partition")
      ->required()
      ->check(CLI::IsMember({"xor", "partition"}));
  split->add_option("--in", split_args.in_path, "input PGM image")->required();
  split->add_option("--out-prefix", split_args.out_prefix,
                    "writes <prefix>.{1,2,3}.shr and <prefix>.params")
      ->required();
  split->add_option("--seed", split_args.seed, "RNG seed (reproducible split)");
  split->add_flag("--pgm", split_args.pgm_previews,
                  "also write a PGM preview per share");

  ReconstructArgs rec_args;
  CLI::App* rec = app.add_subcommand(
      "reconstruct", "Rebuild the image from any two shares");
  rec->add_option("--shares", rec_args.share_paths, "two share files")
      ->required()
      ->expected(2);
  rec->add_option("--out", rec_args.out_path, "output PGM path")->required();
  rec->add_option("--params", rec_args.params_path,
                  "verify both shares first; refuse on any Cheater");

  VerifyArgs ver_args;
  CLI::App* ver = app.add_subcommand(
      "verify", "Check claimed shares against a params file");
  ver->add_option("--params", ver_args.params_path, "params file")->required();
  ver->add_option("--claim", ver_args.claims, "idx=share.shr (repeatable)")
      ->required();

  ParamsArgs par_args;
  CLI::App* par = app.add_subcommand(
      "params", "Generate a params file from three shares, or print one");
  par->add_option("--shares", par_args.share_paths, "the three share files")
      ->expected(3);
  par->add_option("--out", par_args.out_path, "params output path");
  par->add_option("--p", par_args.p_decimal, "prime modulus, decimal");
  par->add_option("--seed", par_args.seed, "RNG seed for the buffer digit");
  par->add_option("--show", par_args.show_path, "parse and print a params file");

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Run a clearing-workflow scenario and export its transcript");
  sim->add_option("--config", sim_args.config_path, "scenario file")->required();
  sim->add_option("--transcript-dir", sim_args.transcript_dir,
                  "default: <config>.transcript");

  TamperArgs tam_args;
  CLI::App* tam = app.add_subcommand(
      "tamper", "Flip one payload byte of a share container");
  tam->add_option("--share", tam_args.share_path, "share file")->required();
  tam->add_option("--offset", tam_args.offset, "payload byte offset")->required();
  tam->add_option("--xor-byte", tam_args.xor_byte, "XOR mask, 1..255")
      ->required()
      ->check(CLI::Range(1, 255));
  tam->add_option("--out", tam_args.out_path, "default: tamper in place");

  MseArgs mse_args;
  CLI::App* msec = app.add_subcommand(
      "mse", "Mean squared error between two PGM images");
  msec->add_option("--a", mse_args.a_path)->required();
  msec->add_option("--b", mse_args.b_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (split->parsed()) return run_split(split_args);
    if (rec->parsed()) return run_reconstruct(rec_args);
    if (ver->parsed()) return run_verify(ver_args);
    if (par->parsed()) return run_params(par_args);
    if (sim->parsed()) return run_simulate(sim_args);
    if (tam->parsed()) return run_tamper(tam_args);
    if (msec->parsed()) return run_mse(mse_args);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
