#include "clawgate/policy.hpp"

#include <stdexcept>

namespace clawgate {

const std::vector<std::string>& capabilityVocabulary() {
    static const std::vector<std::string> v = {
        "net.egress", "fs.read", "tool.invoke", "publish", "pay",
        "fs.write",   "proc.exec", "schedule",  "device.actuate",
    };
    return v;
}

std::optional<Capability> parseCapability(const std::string& token) {
    const auto& vocab = capabilityVocabulary();
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (vocab[i] == token) return static_cast<Capability>(i);
    }
    return std::nullopt;
}

const std::string& capabilityToken(Capability c) {
    return capabilityVocabulary().at(static_cast<std::size_t>(c));
}

bool dominates(ClassificationLevel a, ClassificationLevel b) {
    return static_cast<int>(a) >= static_cast<int>(b);
}

bool canRead(ClassificationLevel clearance, ClassificationLevel object) {
    return dominates(clearance, object);
}

bool canWrite(ClassificationLevel clearance, ClassificationLevel object) {
    return dominates(object, clearance);
}

Policy Policy::fromJson(const Json& j) {
    Policy p;
    for (const auto& c : j.value("allowedChannels", Json::array())) p.allowedChannels.insert(c.get<std::string>());
    for (const auto& c : j.value("allowedProviders", Json::array())) p.allowedProviders.insert(c.get<std::string>());
    for (const auto& c : j.value("egressHostAllowlist", Json::array())) p.egressHostAllowlist.insert(c.get<std::string>());
    p.vpnOnly = j.value("vpnOnly", false);
    if (j.contains("vpnGatewayHost")) p.vpnGatewayHost = j["vpnGatewayHost"].get<std::string>();
    if (p.vpnOnly && !p.vpnGatewayHost) {
        throw std::invalid_argument("vpnOnly policy requires vpnGatewayHost");
    }
    return p;
}

Json Policy::toJson() const {
    Json j;
    j["allowedChannels"] = allowedChannels;
    j["allowedProviders"] = allowedProviders;
    j["egressHostAllowlist"] = egressHostAllowlist;
    j["vpnOnly"] = vpnOnly;
    if (vpnGatewayHost) j["vpnGatewayHost"] = *vpnGatewayHost;
    return j;
}

bool isChannelAllowed(const Policy& policy, const std::string& channelId) {
    return policy.allowedChannels.count(channelId) > 0;
}

bool isProviderAllowed(const Policy& policy, const std::string& providerId) {
    return policy.allowedProviders.count(providerId) > 0;
}

bool hostMatchesAllowlist(const Policy& policy, const std::string& host) {
    for (const auto& pattern : policy.egressHostAllowlist) {
        if (pattern.rfind("*.", 0) == 0) {
            std::string suffix = pattern.substr(1);  // ".example.org"
            if (host.size() > suffix.size() &&
                host.compare(host.size() - suffix.size(), suffix.size(), suffix) == 0) {
                return true;
            }
        } else if (host == pattern) {
            return true;
        }
    }
    return false;
}

}  // namespace clawgate
