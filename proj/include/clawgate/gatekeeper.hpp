#pragma once

#include "clawgate/trust.hpp"

#include <optional>
#include <set>
#include <string>

namespace clawgate {

enum class AdmissionReason {
    Ok,
    UnknownSigner,
    BadSignature,
    DigestMismatch,
    UndeclaredCapability,
    ChannelDenied,
    WitnessUnavailable,
};
const char* admissionReasonName(AdmissionReason r);

struct WitnessRecord {
    Digest decisionDigest{};
    Bytes signature;
    std::string witnessKeyId;
};

/// In-process witness signer; the fail-closed contract only needs the
/// engaged/disengaged distinction, not a remote service.
struct WitnessState {
    bool engaged = false;
    bool failedClosed = false;
    const Ed25519KeyPair* signer = nullptr;
    std::string keyId;
};

struct AdmissionDecision {
    bool admitted = false;
    AdmissionReason reason = AdmissionReason::WitnessUnavailable;
    std::optional<WitnessRecord> witnessRecord;
};

/// Extension admission gate. Requires a sealed runtime. Check order:
/// witness availability (when a witness is required), manifest
/// verification, capability vocabulary, channel allowlist for
/// channel-typed extensions. Every decision lands in the audit chain as a
/// gate.decision record. Once the witness is found disengaged the runtime
/// refuses every later admission in the same run.
AdmissionDecision admitExtension(Runtime& runtime, const ModuleManifest& manifest,
                                 std::string_view moduleContent,
                                 WitnessState* witness = nullptr,
                                 const std::optional<std::string>& channelId = std::nullopt);

enum class EgressDeny { CapabilityMissing, HostNotAllowlisted, VpnOnly };
const char* egressDenyName(EgressDeny d);

struct EgressDecision {
    bool allow = false;
    std::optional<EgressDeny> reason;
};

EgressDecision guardEgressRequest(const Policy& policy, const std::string& targetHost,
                                  const std::set<Capability>& grantedCaps);

/// Layer 2 consults the identical decision table so a bypass of layer 1
/// cannot widen access. Throws std::out_of_range unless 0 < port < 65536.
EgressDecision guardRawConnect(const Policy& policy, const std::string& host, int port,
                               const std::set<Capability>& grantedCaps);

}  // namespace clawgate
