#include "clawgate/policy.hpp"

#include <doctest.h>

using namespace clawgate;

static const ClassificationLevel kLevels[] = {
    ClassificationLevel::Public, ClassificationLevel::Internal,
    ClassificationLevel::Confidential, ClassificationLevel::Secret};

TEST_CASE("capability vocabulary is the closed nine-token set") {
    const auto& vocab = capabilityVocabulary();
    REQUIRE(vocab.size() == 9);
    for (const auto& token : vocab) {
        auto parsed = parseCapability(token);
        REQUIRE(parsed.has_value());
        CHECK(capabilityToken(*parsed) == token);
    }
    CHECK(!parseCapability("fs.delete").has_value());
    CHECK(!parseCapability("").has_value());
    CHECK(!parseCapability("NET.EGRESS").has_value());
}

TEST_CASE("no read up") {
    CHECK(canRead(ClassificationLevel::Secret, ClassificationLevel::Public));
    CHECK(!canRead(ClassificationLevel::Public, ClassificationLevel::Secret));
    CHECK(canRead(ClassificationLevel::Internal, ClassificationLevel::Internal));
}

TEST_CASE("no write down") {
    CHECK(canWrite(ClassificationLevel::Public, ClassificationLevel::Secret));
    CHECK(!canWrite(ClassificationLevel::Secret, ClassificationLevel::Public));
    CHECK(canWrite(ClassificationLevel::Confidential, ClassificationLevel::Confidential));
}

TEST_CASE("confinement: read and write together only at equal levels") {
    for (auto a : kLevels) {
        for (auto b : kLevels) {
            CHECK((canRead(a, b) && canWrite(a, b)) == (a == b));
        }
    }
}

TEST_CASE("dominates is a total order over the four levels") {
    for (auto a : kLevels) {
        for (auto b : kLevels) {
            CHECK((dominates(a, b) || dominates(b, a)));
            if (dominates(a, b) && dominates(b, a)) CHECK(a == b);
            for (auto c : kLevels) {
                if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
            }
        }
    }
}

TEST_CASE("channel allowlist is a plain membership test") {
    Policy p;
    p.allowedChannels = {"discord-mock"};
    CHECK(isChannelAllowed(p, "discord-mock"));
    CHECK(!isChannelAllowed(p, "telegram-mock"));
}

TEST_CASE("empty allowlists deny everything") {
    Policy p;
    CHECK(!isChannelAllowed(p, "discord-mock"));
    CHECK(!isProviderAllowed(p, "mock-llm"));
    CHECK(!hostMatchesAllowlist(p, "api.example.org"));
}

TEST_CASE("host allowlist supports exact and wildcard-suffix patterns") {
    Policy p;
    p.egressHostAllowlist = {"api.example.org", "*.mock.example.org"};
    CHECK(hostMatchesAllowlist(p, "api.example.org"));
    CHECK(hostMatchesAllowlist(p, "a.mock.example.org"));
    CHECK(!hostMatchesAllowlist(p, "mock.example.org"));
    CHECK(!hostMatchesAllowlist(p, "evil.example.com"));
    CHECK(!hostMatchesAllowlist(p, "notapi.example.org"));
}

TEST_CASE("vpnOnly policy requires a gateway host") {
    Json j{{"allowedChannels", Json::array({"c"})},
           {"allowedProviders", Json::array()},
           {"egressHostAllowlist", Json::array()},
           {"vpnOnly", true}};
    CHECK_THROWS(Policy::fromJson(j));
    j["vpnGatewayHost"] = "vpn.example.org";
    Policy p = Policy::fromJson(j);
    CHECK(p.vpnOnly);
    CHECK(p.vpnGatewayHost == "vpn.example.org");
}

TEST_CASE("policy JSON round trip") {
    Policy p;
    p.allowedChannels = {"discord-mock", "telegram-mock"};
    p.allowedProviders = {"mock-llm"};
    p.egressHostAllowlist = {"*.example.org"};
    Policy q = Policy::fromJson(p.toJson());
    CHECK(q.allowedChannels == p.allowedChannels);
    CHECK(q.allowedProviders == p.allowedProviders);
    CHECK(q.egressHostAllowlist == p.egressHostAllowlist);
    CHECK(q.vpnOnly == p.vpnOnly);
}
