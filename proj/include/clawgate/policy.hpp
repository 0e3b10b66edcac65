#pragma once

#include "clawgate/canonical.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace clawgate {

/// Closed nine-token capability vocabulary (v1).
enum class Capability {
    NetEgress,
    FsRead,
    ToolInvoke,
    Publish,
    Pay,
    FsWrite,
    ProcExec,
    Schedule,
    DeviceActuate,
};

const std::vector<std::string>& capabilityVocabulary();
std::optional<Capability> parseCapability(const std::string& token);
const std::string& capabilityToken(Capability c);

/// Bell-LaPadula levels, lowest to highest.
enum class ClassificationLevel { Public = 0, Internal = 1, Confidential = 2, Secret = 3 };

bool dominates(ClassificationLevel a, ClassificationLevel b);

/// Simple security property: no read up.
bool canRead(ClassificationLevel clearance, ClassificationLevel object);

/// Star property: no write down.
bool canWrite(ClassificationLevel clearance, ClassificationLevel object);

struct Policy {
    std::set<std::string> allowedChannels;
    std::set<std::string> allowedProviders;
    std::set<std::string> egressHostAllowlist;  // exact host or "*.suffix"
    bool vpnOnly = false;
    std::optional<std::string> vpnGatewayHost;

    static Policy fromJson(const Json& j);
    Json toJson() const;
};

/// Empty allowlists deny everything.
bool isChannelAllowed(const Policy& policy, const std::string& channelId);
bool isProviderAllowed(const Policy& policy, const std::string& providerId);

/// Exact match or leading-wildcard suffix pattern ("*.example.org").
bool hostMatchesAllowlist(const Policy& policy, const std::string& host);

}  // namespace clawgate
