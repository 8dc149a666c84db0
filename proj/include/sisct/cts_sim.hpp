#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sisct/cheat_detect.hpp"
#include "sisct/image_io.hpp"

namespace sisct {

// Deterministic simulator of the image-based cheque clearing workflow.
//
// Six roles exchange messages over in-process FIFO mailboxes:
//   Customer -> PresentingBank -> PresentingCHI -> ClearingHouse
//                                              -> DraweeCHI -> DraweeBank
// The presenting bank is the dealer: it captures the cheque image, splits it
// into three shares, and commits to them with make_params. Share 1 travels
// through the clearing house to the drawee side, share 2 goes to the customer
// (used later to authenticate a processing-status inquiry), and share 3 is
// handed over on request. The drawee-side CHI verifies both shares in hand
// against the published params and reconstructs only if both are honest; a
// cheater verdict aborts the run with a resend request naming the index.
// An adversary hook can flip one payload byte of a chosen share transfer.
//
// A run is fully determined by its config: same config, same seed, byte-for-
// byte identical transcript.

enum class RoleId {
  Customer,
  PresentingBank,
  PresentingCHI,
  ClearingHouse,
  DraweeCHI,
  DraweeBank,
};

enum class MsgKind {
  SubmitCheque,
  ShareTransfer,
  DataTransfer,
  ShareRequest,
  InquiryRequest,
  InquiryResponse,
  VerificationResult,
  ProcessingResult,
  ResendRequest,
};

const char* role_name(RoleId r);
const char* msg_kind_name(MsgKind k);

struct CtsMessage {
  std::uint64_t msg_id = 0;  // monotone from 1
  int step = 0;              // workflow step 1..12 that produced the message
  RoleId from = RoleId::Customer;
  RoleId to = RoleId::Customer;
  MsgKind kind = MsgKind::DataTransfer;
  std::vector<std::uint8_t> payload;
};

// One byte-flip applied in flight to the transfer of the target share at the
// given workflow step. The offset indexes the pixel payload, past the 16-byte
// container header, so the flipped message still parses as a share.
// xor_byte must be nonzero.
struct AdversarySpec {
  int target_index = 0;   // 1..3
  std::size_t offset = 0; // into the share payload bytes
  int step = 0;           // 1..12
  std::uint8_t xor_byte = 0xFF;
};

struct ScenarioConfig {
  Scheme scheme = Scheme::Partition;
  std::uint64_t seed = 0;
  std::string image_path;
  std::optional<std::string> micr;  // defaults to a digest-derived tag
  std::optional<AdversarySpec> adversary;
};

// Line-oriented key=value scenario file. '#' lines and blank lines are
// ignored; spaces and tabs around keys and values are not significant.
// Keys: scheme, seed, image, micr, adversary.target,
// adversary.offset, adversary.step, adversary.xor. scheme, seed and image
// are required; the three main adversary keys come together or not at all.
ScenarioConfig parse_scenario_config(std::string_view text);

enum class OutcomeKind { Accepted, Rejected };

struct ScenarioOutcome {
  OutcomeKind kind = OutcomeKind::Accepted;
  int rejected_index = 0;  // set when kind == Rejected

  bool accepted() const { return kind == OutcomeKind::Accepted; }
};

struct ScenarioResult {
  ScenarioOutcome outcome;
  std::vector<CtsMessage> transcript;
  GrayImage captured;                        // image as captured at step 2
  std::optional<GrayImage> reconstructed;    // present iff Accepted
  std::optional<double> reconstruction_mse;  // vs captured, iff Accepted
  std::optional<VerificationReport> verification;  // step-10 report
  std::string inquiry_status;                // customer inquiry outcome
  PublicParams params;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Customer-side authentication with share 2: verify it alone against the
// published params; only an honest share unlocks the processing status.
// Throws std::invalid_argument when params were never published.
struct InquiryResult {
  bool granted = false;
  std::string status;  // processing status, or "auth-failed"
};

InquiryResult customer_inquiry(std::span<const std::uint8_t> sc2_container,
                               const std::optional<PublicParams>& params,
                               const std::string& processing_status);

// Newline-delimited JSON, one object per message with fields msg_id, step,
// from, to, kind, payload_digest, payload_size. Payload bytes are not
// inlined; they are referenced by sha256 digest.
std::string export_transcript(const std::vector<CtsMessage>& transcript);

// Writes <dir>/transcript.ndjson plus one <digest>.bin file per distinct
// payload, so a transcript can be replayed or audited offline.
void write_transcript_files(const std::vector<CtsMessage>& transcript,
                            const std::string& dir);

}  // namespace sisct
