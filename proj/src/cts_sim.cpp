#include "sisct/cts_sim.hpp"

#include <array>
#include <charconv>
#include <deque>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "sisct/digest.hpp"
#include "sisct/file_io.hpp"
#include "sisct/partition_scheme.hpp"
#include "sisct/xor_scheme.hpp"

namespace sisct {

namespace {

std::vector<std::uint8_t> text_bytes(std::string_view s) {
  return {s.begin(), s.end()};
}

struct RoleState {
  std::deque<CtsMessage> mailbox;
  std::map<int, std::vector<std::uint8_t>> shares;  // index -> container bytes
  std::vector<std::uint8_t> params_bytes;
  std::string micr;
  std::string processing_status;
};

// Drives one cheque through the twelve workflow steps. Sends append to the
// recipient's FIFO mailbox and to the transcript; receivers consume their
// mailboxes in order. The adversary hook rewrites a share payload in flight.
class Simulator {
 public:
  explicit Simulator(const ScenarioConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  ScenarioResult run() {
    // Step 1: the customer hands the cheque to the presenting bank.
    std::vector<std::uint8_t> cheque = read_file(cfg_.image_path);
    send(1, RoleId::Customer, RoleId::PresentingBank, MsgKind::SubmitCheque,
         cheque);
    std::vector<std::uint8_t> submitted =
        recv(RoleId::PresentingBank, MsgKind::SubmitCheque);

    // Step 2: capture. Internal to the presenting bank, no message.
    result_.captured = read_pgm(submitted);
    std::string micr =
        cfg_.micr ? *cfg_.micr
                  : "MICR:" + sha256_hex(submitted).substr(0, 16);

    // Step 3: captured data goes to the presenting-side gateway.
    send(3, RoleId::PresentingBank, RoleId::PresentingCHI, MsgKind::DataTransfer,
         text_bytes(micr));
    role(RoleId::PresentingCHI).micr =
        to_text(recv(RoleId::PresentingCHI, MsgKind::DataTransfer));

    // Step 4: the bank acts as dealer: split, commit, hand SC1 and the
    // public params to its gateway, which publishes them.
    std::array<std::vector<std::uint8_t>, 3> dealt = deal();
    result_.params = params_;
    std::vector<std::uint8_t> params_bytes = text_bytes(write_params(params_));

    send(4, RoleId::PresentingBank, RoleId::PresentingCHI, MsgKind::ShareTransfer,
         dealt[0], 1);
    send(4, RoleId::PresentingBank, RoleId::PresentingCHI, MsgKind::DataTransfer,
         params_bytes);
    store_share(RoleId::PresentingCHI, 1,
                recv(RoleId::PresentingCHI, MsgKind::ShareTransfer));
    role(RoleId::PresentingCHI).params_bytes =
        recv(RoleId::PresentingCHI, MsgKind::DataTransfer);

    // Step 5: SC1, data, and params to the clearing house.
    RoleState& pchi = role(RoleId::PresentingCHI);
    send(5, RoleId::PresentingCHI, RoleId::ClearingHouse, MsgKind::ShareTransfer,
         pchi.shares[1], 1);
    send(5, RoleId::PresentingCHI, RoleId::ClearingHouse, MsgKind::DataTransfer,
         text_bytes(pchi.micr));
    send(5, RoleId::PresentingCHI, RoleId::ClearingHouse, MsgKind::DataTransfer,
         pchi.params_bytes);
    store_share(RoleId::ClearingHouse, 1,
                recv(RoleId::ClearingHouse, MsgKind::ShareTransfer));
    role(RoleId::ClearingHouse).micr =
        to_text(recv(RoleId::ClearingHouse, MsgKind::DataTransfer));
    role(RoleId::ClearingHouse).params_bytes =
        recv(RoleId::ClearingHouse, MsgKind::DataTransfer);

    // Step 6: SC2 to the customer, kept for the later status inquiry.
    send(6, RoleId::PresentingBank, RoleId::Customer, MsgKind::ShareTransfer,
         dealt[1], 2);
    store_share(RoleId::Customer, 2, recv(RoleId::Customer, MsgKind::ShareTransfer));

    // Step 7: the clearing house forwards everything to the drawee-side CHI.
    RoleState& ch = role(RoleId::ClearingHouse);
    send(7, RoleId::ClearingHouse, RoleId::DraweeCHI, MsgKind::ShareTransfer,
         ch.shares[1], 1);
    send(7, RoleId::ClearingHouse, RoleId::DraweeCHI, MsgKind::DataTransfer,
         text_bytes(ch.micr));
    send(7, RoleId::ClearingHouse, RoleId::DraweeCHI, MsgKind::DataTransfer,
         ch.params_bytes);
    store_share(RoleId::DraweeCHI, 1,
                recv(RoleId::DraweeCHI, MsgKind::ShareTransfer));
    role(RoleId::DraweeCHI).micr =
        to_text(recv(RoleId::DraweeCHI, MsgKind::DataTransfer));
    role(RoleId::DraweeCHI).params_bytes =
        recv(RoleId::DraweeCHI, MsgKind::DataTransfer);

    // Step 8: the drawee side asks the dealer for a second share. The
    // request is honored as-is; the workflow defines no authentication of
    // the requester, so the simulator just logs it.
    send(8, RoleId::DraweeCHI, RoleId::PresentingBank, MsgKind::ShareRequest,
         text_bytes("share-request:3"));
    recv(RoleId::PresentingBank, MsgKind::ShareRequest);

    // Step 9: SC3 to the drawee-side CHI.
    send(9, RoleId::PresentingBank, RoleId::DraweeCHI, MsgKind::ShareTransfer,
         dealt[2], 3);
    store_share(RoleId::DraweeCHI, 3,
                recv(RoleId::DraweeCHI, MsgKind::ShareTransfer));

    // Step 10: verification gates reconstruction.
    RoleState& dchi = role(RoleId::DraweeCHI);
    PublicParams published = read_params(to_text(dchi.params_bytes));
    VerificationReport report =
        verify(published, {{1, dchi.shares[1]}, {3, dchi.shares[3]}});
    result_.verification = report;

    std::string verdicts;
    for (const ParticipantVerdict& v : report.participants) {
      if (!verdicts.empty()) verdicts += ";";
      verdicts += std::to_string(v.index);
      verdicts += (v.verdict == Verdict::Honest) ? "=Honest" : "=Cheater";
    }
    send(10, RoleId::DraweeCHI, RoleId::DraweeBank, MsgKind::VerificationResult,
         text_bytes(verdicts));
    recv(RoleId::DraweeBank, MsgKind::VerificationResult);

    if (!report.all_honest()) {
      std::string resend = "resend";
      int rejected = 0;
      for (const ParticipantVerdict& v : report.participants) {
        if (v.verdict == Verdict::Cheater) {
          resend += ":" + std::to_string(v.index);
          if (rejected == 0) rejected = v.index;
        }
      }
      send(10, RoleId::DraweeCHI, RoleId::PresentingBank, MsgKind::ResendRequest,
           text_bytes(resend));
      recv(RoleId::PresentingBank, MsgKind::ResendRequest);
      result_.outcome = {OutcomeKind::Rejected, rejected};
      result_.transcript = std::move(transcript_);
      return std::move(result_);
    }

    GrayImage recon = reconstruct_pair(read_share(dchi.shares[1]),
                                       read_share(dchi.shares[3]));
    result_.reconstruction_mse = mse(result_.captured, recon);
    result_.reconstructed = std::move(recon);

    // Step 11: reconstructed image and data to the drawee bank.
    send(11, RoleId::DraweeCHI, RoleId::DraweeBank, MsgKind::DataTransfer,
         write_pgm(*result_.reconstructed));
    send(11, RoleId::DraweeCHI, RoleId::DraweeBank, MsgKind::DataTransfer,
         text_bytes(dchi.micr));
    recv(RoleId::DraweeBank, MsgKind::DataTransfer);
    role(RoleId::DraweeBank).micr =
        to_text(recv(RoleId::DraweeBank, MsgKind::DataTransfer));

    // Step 12: cheque processing proper is out of scope; the drawee bank
    // reports a stubbed result back to the presenting bank.
    send(12, RoleId::DraweeBank, RoleId::PresentingBank, MsgKind::ProcessingResult,
         text_bytes("processed"));
    role(RoleId::PresentingBank).processing_status =
        to_text(recv(RoleId::PresentingBank, MsgKind::ProcessingResult));

    // Epilogue, still under the step-12 tag: the customer authenticates with
    // SC2 to view the processing status.
    RoleState& customer = role(RoleId::Customer);
    send(12, RoleId::Customer, RoleId::PresentingBank, MsgKind::InquiryRequest,
         customer.shares[2]);
    std::vector<std::uint8_t> presented =
        recv(RoleId::PresentingBank, MsgKind::InquiryRequest);
    InquiryResult inq = customer_inquiry(
        presented, params_, role(RoleId::PresentingBank).processing_status);
    std::string response = inq.granted ? "status:" + inq.status : "auth-failed";
    send(12, RoleId::PresentingBank, RoleId::Customer, MsgKind::InquiryResponse,
         text_bytes(response));
    recv(RoleId::Customer, MsgKind::InquiryResponse);
    result_.inquiry_status = response;

    result_.outcome = {OutcomeKind::Accepted, 0};
    result_.transcript = std::move(transcript_);
    return std::move(result_);
  }

 private:
  RoleState& role(RoleId id) { return roles_[static_cast<std::size_t>(id)]; }

  static std::string to_text(const std::vector<std::uint8_t>& bytes) {
    return {bytes.begin(), bytes.end()};
  }

  void store_share(RoleId id, int index, std::vector<std::uint8_t> bytes) {
    role(id).shares[index] = std::move(bytes);
  }

  // share_index tags which participant's share a ShareTransfer carries (the
  // protocol slot, independent of the payload bytes); 0 for other kinds.
  void send(int step, RoleId from, RoleId to, MsgKind kind,
            std::vector<std::uint8_t> payload, int share_index = 0) {
    if (cfg_.adversary && kind == MsgKind::ShareTransfer &&
        share_index == cfg_.adversary->target_index &&
        step == cfg_.adversary->step) {
      constexpr std::size_t kHeaderSize = 16;
      if (cfg_.adversary->offset >= payload.size() - kHeaderSize)
        throw FormatError("adversary offset out of payload bounds");
      payload[kHeaderSize + cfg_.adversary->offset] ^= cfg_.adversary->xor_byte;
    }
    CtsMessage msg{next_id_++, step, from, to, kind, std::move(payload)};
    role(to).mailbox.push_back(msg);
    transcript_.push_back(std::move(msg));
  }

  std::vector<std::uint8_t> recv(RoleId id, MsgKind expected) {
    RoleState& r = role(id);
    if (r.mailbox.empty() || r.mailbox.front().kind != expected)
      throw std::logic_error("simulator mailbox out of sync");
    std::vector<std::uint8_t> payload = std::move(r.mailbox.front().payload);
    r.mailbox.pop_front();
    return payload;
  }

  std::array<std::vector<std::uint8_t>, 3> deal() {
    std::array<Share, 3> shares;
    if (cfg_.scheme == Scheme::Xor) {
      XorShareTriple t = xor_split(result_.captured);
      shares = {std::move(t.sc1), std::move(t.sc2), std::move(t.sc3)};
    } else {
      PartitionShareTriple t = partition_split(result_.captured, rng_);
      shares = {std::move(t.sc1), std::move(t.sc2), std::move(t.sc3)};
    }
    params_ = make_params(shares, default_prime(), rng_);
    return {write_share(shares[0]), write_share(shares[1]),
            write_share(shares[2])};
  }

  GrayImage reconstruct_pair(const Share& a, const Share& b) const {
    return (cfg_.scheme == Scheme::Xor) ? xor_reconstruct(a, b)
                                        : partition_reconstruct(a, b);
  }

  ScenarioConfig cfg_;
  SeededRandom rng_;
  std::array<RoleState, 6> roles_;
  std::vector<CtsMessage> transcript_;
  std::uint64_t next_id_ = 1;
  PublicParams params_;
  ScenarioResult result_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw FormatError(std::string("scenario config: bad value for ") + what);
  return v;
}

}  // namespace

const char* role_name(RoleId r) {
  switch (r) {
    case RoleId::Customer: return "Customer";
    case RoleId::PresentingBank: return "PresentingBank";
    case RoleId::PresentingCHI: return "PresentingCHI";
    case RoleId::ClearingHouse: return "ClearingHouse";
    case RoleId::DraweeCHI: return "DraweeCHI";
    case RoleId::DraweeBank: return "DraweeBank";
  }
  return "?";
}

const char* msg_kind_name(MsgKind k) {
  switch (k) {
    case MsgKind::SubmitCheque: return "SubmitCheque";
    case MsgKind::ShareTransfer: return "ShareTransfer";
    case MsgKind::DataTransfer: return "DataTransfer";
    case MsgKind::ShareRequest: return "ShareRequest";
    case MsgKind::InquiryRequest: return "InquiryRequest";
    case MsgKind::InquiryResponse: return "InquiryResponse";
    case MsgKind::VerificationResult: return "VerificationResult";
    case MsgKind::ProcessingResult: return "ProcessingResult";
    case MsgKind::ResendRequest: return "ResendRequest";
  }
  return "?";
}

ScenarioConfig parse_scenario_config(std::string_view text) {
  ScenarioConfig cfg;
  bool have_scheme = false, have_seed = false, have_image = false;
  std::optional<int> adv_target, adv_step;
  std::optional<std::size_t> adv_offset;
  std::optional<std::uint8_t> adv_xor;
  std::map<std::string, bool> seen;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, nl - start);
    start = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw FormatError("scenario config: expected key=value, got '" +
                        std::string(line) + "'");
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (seen[key])
      throw FormatError("scenario config: duplicate key '" + key + "'");
    seen[key] = true;

    if (key == "scheme") {
      if (value == "xor")
        cfg.scheme = Scheme::Xor;
      else if (value == "partition")
        cfg.scheme = Scheme::Partition;
      else
        throw FormatError("scenario config: unknown scheme");
      have_scheme = true;
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, "seed");
      have_seed = true;
    } else if (key == "image") {
      cfg.image_path = std::string(value);
      have_image = true;
    } else if (key == "micr") {
      cfg.micr = std::string(value);
    } else if (key == "adversary.target") {
      std::uint64_t v = parse_u64(value, "adversary.target");
      if (v < 1 || v > 3)
        throw FormatError("scenario config: adversary.target must be 1..3");
      adv_target = static_cast<int>(v);
    } else if (key == "adversary.offset") {
      adv_offset = static_cast<std::size_t>(parse_u64(value, "adversary.offset"));
    } else if (key == "adversary.step") {
      std::uint64_t v = parse_u64(value, "adversary.step");
      if (v < 1 || v > 12)
        throw FormatError("scenario config: adversary.step must be 1..12");
      adv_step = static_cast<int>(v);
    } else if (key == "adversary.xor") {
      std::uint64_t v = parse_u64(value, "adversary.xor");
      if (v < 1 || v > 255)
        throw FormatError("scenario config: adversary.xor must be 1..255");
      adv_xor = static_cast<std::uint8_t>(v);
    } else {
      throw FormatError("scenario config: unknown key '" + key + "'");
    }
  }

  if (!have_scheme) throw FormatError("scenario config: missing scheme");
  if (!have_seed) throw FormatError("scenario config: missing seed");
  if (!have_image) throw FormatError("scenario config: missing image");

  if (adv_target || adv_offset || adv_step || adv_xor) {
    if (!adv_target || !adv_offset || !adv_step)
      throw FormatError(
          "scenario config: adversary needs target, offset and step");
    cfg.adversary = AdversarySpec{*adv_target, *adv_offset, *adv_step,
                                  adv_xor.value_or(0xFF)};
  }
  return cfg;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  return Simulator(cfg).run();
}

InquiryResult customer_inquiry(std::span<const std::uint8_t> sc2_container,
                               const std::optional<PublicParams>& params,
                               const std::string& processing_status) {
  if (!params)
    throw std::invalid_argument("customer_inquiry: params not published");
  VerificationReport report =
      verify(*params, std::vector<ClaimBytes>{
                          {2, {sc2_container.begin(), sc2_container.end()}}});
  if (report.all_honest()) return {true, processing_status};
  return {false, "auth-failed"};
}

std::string export_transcript(const std::vector<CtsMessage>& transcript) {
  std::string out;
  for (const CtsMessage& m : transcript) {
    nlohmann::ordered_json o;
    o["msg_id"] = m.msg_id;
    o["step"] = m.step;
    o["from"] = role_name(m.from);
    o["to"] = role_name(m.to);
    o["kind"] = msg_kind_name(m.kind);
    o["payload_digest"] = sha256_hex(m.payload);
    o["payload_size"] = m.payload.size();
    out += o.dump();
    out += '\n';
  }
  return out;
}

void write_transcript_files(const std::vector<CtsMessage>& transcript,
                            const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::filesystem::path base(dir);
  write_file((base / "transcript.ndjson").string(),
             text_bytes(export_transcript(transcript)));
  for (const CtsMessage& m : transcript) {
    std::string name = sha256_hex(m.payload) + ".bin";
    write_file((base / name).string(), m.payload);
  }
}

}  // namespace sisct
