#include "clawgate/gatekeeper.hpp"

#include <stdexcept>

namespace clawgate {

const char* admissionReasonName(AdmissionReason r) {
    switch (r) {
        case AdmissionReason::Ok: return "Ok";
        case AdmissionReason::UnknownSigner: return "UnknownSigner";
        case AdmissionReason::BadSignature: return "BadSignature";
        case AdmissionReason::DigestMismatch: return "DigestMismatch";
        case AdmissionReason::UndeclaredCapability: return "UndeclaredCapability";
        case AdmissionReason::ChannelDenied: return "ChannelDenied";
        case AdmissionReason::WitnessUnavailable: return "WitnessUnavailable";
    }
    return "?";
}

static AdmissionReason evaluate(const Runtime& runtime, const ModuleManifest& manifest,
                                std::string_view content, WitnessState* witness,
                                const std::optional<std::string>& channelId) {
    if (witness) {
        if (witness->failedClosed || !witness->engaged) {
            witness->failedClosed = true;
            return AdmissionReason::WitnessUnavailable;
        }
    }
    switch (verifyManifest(runtime.root(), manifest, content)) {
        case ManifestCheck::UnknownSigner: return AdmissionReason::UnknownSigner;
        case ManifestCheck::BadSignature: return AdmissionReason::BadSignature;
        case ManifestCheck::DigestMismatch: return AdmissionReason::DigestMismatch;
        case ManifestCheck::Ok: break;
    }
    for (const auto& cap : manifest.declaredCapabilities) {
        if (!parseCapability(cap)) return AdmissionReason::UndeclaredCapability;
    }
    if (channelId && !isChannelAllowed(runtime.policy(), *channelId)) {
        return AdmissionReason::ChannelDenied;
    }
    return AdmissionReason::Ok;
}

AdmissionDecision admitExtension(Runtime& runtime, const ModuleManifest& manifest,
                                 std::string_view moduleContent, WitnessState* witness,
                                 const std::optional<std::string>& channelId) {
    if (!runtime.sealed()) throw std::logic_error("admitExtension before sealBootstrap");

    AdmissionDecision decision;
    decision.reason = evaluate(runtime, manifest, moduleContent, witness, channelId);
    decision.admitted = decision.reason == AdmissionReason::Ok;

    Json body{{"cap", "tool.invoke"},
              {"target", "extension:" + manifest.name},
              {"ok", decision.admitted},
              {"reason", admissionReasonName(decision.reason)}};
    if (channelId) body["channel"] = *channelId;

    if (witness && witness->engaged && !witness->failedClosed && witness->signer) {
        WitnessRecord wr;
        wr.decisionDigest = sha256(canonicalize(body));
        std::string msg(reinterpret_cast<const char*>(wr.decisionDigest.data()),
                        wr.decisionDigest.size());
        wr.signature = witness->signer->sign(msg);
        wr.witnessKeyId = witness->keyId;
        decision.witnessRecord = wr;
    }

    runtime.audit().append(AuditChain::kGateDecision, body);
    return decision;
}

const char* egressDenyName(EgressDeny d) {
    switch (d) {
        case EgressDeny::CapabilityMissing: return "CapabilityMissing";
        case EgressDeny::HostNotAllowlisted: return "HostNotAllowlisted";
        case EgressDeny::VpnOnly: return "VpnOnly";
    }
    return "?";
}

EgressDecision guardEgressRequest(const Policy& policy, const std::string& targetHost,
                                  const std::set<Capability>& grantedCaps) {
    if (!grantedCaps.count(Capability::NetEgress)) {
        return {false, EgressDeny::CapabilityMissing};
    }
    if (!hostMatchesAllowlist(policy, targetHost)) {
        return {false, EgressDeny::HostNotAllowlisted};
    }
    if (policy.vpnOnly && (!policy.vpnGatewayHost || targetHost != *policy.vpnGatewayHost)) {
        return {false, EgressDeny::VpnOnly};
    }
    return {true, std::nullopt};
}

EgressDecision guardRawConnect(const Policy& policy, const std::string& host, int port,
                               const std::set<Capability>& grantedCaps) {
    if (port <= 0 || port >= 65536) throw std::out_of_range("port out of range");
    return guardEgressRequest(policy, host, grantedCaps);
}

}  // namespace clawgate
