#include "clawgate/harness.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

using namespace clawgate;

namespace {

RunConfig smallConfig(const char* tag) {
    RunConfig c;
    c.nPerCell = 5;
    c.outDir = std::filesystem::temp_directory_path() / ("clawgate-harness-" + std::string(tag));
    return c;
}

}  // namespace

TEST_CASE("category names and pairing") {
    CHECK(std::string(fCategoryName(FCategory::F1Bypass)) == "F1_BYPASS");
    CHECK(std::string(fCategoryName(FCategory::LegitOps)) == "LEGIT_OPS");
    CHECK(isAdversarialCategory(FCategory::F3Silent));
    CHECK(!isAdversarialCategory(FCategory::LegitChat));
    CHECK(legitCounterpart(FCategory::F1Bypass) == FCategory::LegitChat);
    CHECK(legitCounterpart(FCategory::F2Forge) == FCategory::LegitAudit);
    CHECK(legitCounterpart(FCategory::F3Silent) == FCategory::LegitStatus);
    CHECK(legitCounterpart(FCategory::F4WrongTgt) == FCategory::LegitOps);
}

TEST_CASE("sample generation is balanced per cell") {
    RunConfig config = smallConfig("balance");
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    auto samples = generateSamples(config, prng);
    CHECK(samples.size() == 2u * 4u * 2u * 5u);
    std::map<std::pair<std::string, FCategory>, int> counts;
    for (const auto& s : samples) counts[{s.channel, s.fCategory}]++;
    for (const auto& [key, n] : counts) CHECK(n == 5);
    CHECK(counts.size() == 16);
}

TEST_CASE("sample labels follow the category split") {
    RunConfig config = smallConfig("labels");
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    for (const auto& s : generateSamples(config, prng)) {
        CHECK(s.adversarial == isAdversarialCategory(s.fCategory));
    }
}

TEST_CASE("probe tags are unique and only on the audit categories") {
    RunConfig config = smallConfig("probes");
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    std::set<std::string> tags;
    for (const auto& s : generateSamples(config, prng)) {
        bool audited = s.fCategory == FCategory::F2Forge || s.fCategory == FCategory::LegitAudit;
        CHECK(s.probeTag.has_value() == audited);
        if (s.probeTag) {
            CHECK(tags.insert(*s.probeTag).second);
            CHECK(s.writeAudit);
            CHECK(s.writeDelta == (s.fCategory == FCategory::LegitAudit));
        }
    }
}

TEST_CASE("generation is deterministic per seed") {
    RunConfig config = smallConfig("replay");
    Mulberry32 a = Mulberry32::fromString("seed-x");
    Mulberry32 b = Mulberry32::fromString("seed-x");
    auto sa = generateSamples(config, a);
    auto sb = generateSamples(config, b);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i) {
        CHECK(sa[i].id == sb[i].id);
        CHECK(sa[i].content == sb[i].content);
        CHECK(sa[i].probeTag == sb[i].probeTag);
    }
}

TEST_CASE("every F1 sample carries both injection finding kinds") {
    RunConfig config = smallConfig("f1");
    config.nPerCell = 40;
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    for (const auto& s : generateSamples(config, prng)) {
        if (s.fCategory != FCategory::F1Bypass) continue;
        bool imperative = false, role = false;
        for (const auto& f : detectInjection(s.content)) {
            if (f.kind == InjectionKind::ImperativeOverride) imperative = true;
            if (f.kind == InjectionKind::RoleBoundaryToken) role = true;
        }
        CHECK(imperative);
        CHECK(role);
    }
}

TEST_CASE("legit samples carry no injection or catalog-relevant content") {
    RunConfig config = smallConfig("legit");
    config.nPerCell = 40;
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    DlpCatalog widened = widenCatalog(DlpCatalog::strict());
    for (const auto& s : generateSamples(config, prng)) {
        if (s.adversarial) continue;
        CHECK(detectInjection(s.content).empty());
        for (const auto& f : dlpScan(s.content, widened)) {
            CHECK(f.severity < Severity::High);
        }
        CHECK(!aggregate(dlpScan(s.content, widened)).block);
    }
}

TEST_CASE("passthrough delivers everything and posts verbatim") {
    ChannelSink sink("discord-mock", false);
    RunConfig config = smallConfig("pass");
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    auto samples = generateSamples(config, prng);
    for (const auto& s : samples) {
        Decision d = mediatePassthrough(requestOf(s), sink);
        CHECK(d.delivered);
        CHECK(!d.blockReason.has_value());
    }
    CHECK(sink.postCount() == samples.size());
}

TEST_CASE("gated subject blocks every adversarial family with the expected reason") {
    RunConfig config = smallConfig("gated");
    GatedSubject subject("gated", config, false);
    REQUIRE(subject.operational());
    ChannelSink sink("discord-mock", true);
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    for (const auto& s : generateSamples(config, prng)) {
        Decision d = subject.mediate(requestOf(s), sink);
        if (!s.adversarial) {
            CHECK(d.delivered);
            continue;
        }
        REQUIRE(!d.delivered);
        switch (s.fCategory) {
            case FCategory::F1Bypass:
                CHECK(*d.blockReason == "prompt-shield findings");
                break;
            case FCategory::F2Forge:
                CHECK(*d.blockReason ==
                      "biconditional: f2Forgery on 1 (cap, target) projection(s)");
                break;
            case FCategory::F3Silent:
                CHECK(*d.blockReason == "DLP findings (severity=high)");
                break;
            case FCategory::F4WrongTgt:
                CHECK(*d.blockReason == "DLP findings (severity=medium)");
                break;
            default:
                FAIL("unexpected category");
        }
    }
    CHECK(!subject.runtime().audit().verify().has_value());
}

TEST_CASE("probe verdicts are independent of sample order") {
    RunConfig config = smallConfig("perm");
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    auto samples = generateSamples(config, prng);

    auto decide = [&](const std::vector<Sample>& ordered) {
        GatedSubject subject("gated", config, false);
        ChannelSink sink("discord-mock", true);
        std::map<std::string, bool> delivered;
        for (const auto& s : ordered) {
            delivered[s.id] = subject.mediate(requestOf(s), sink).delivered;
        }
        return delivered;
    };

    auto forward = decide(samples);
    std::vector<Sample> reversed(samples.rbegin(), samples.rend());
    auto backward = decide(reversed);
    CHECK(forward == backward);
}

TEST_CASE("sink clamps are per channel and decisions precede clamping") {
    CHECK(ChannelSink::clampFor("discord-mock") == 1900);
    CHECK(ChannelSink::clampFor("telegram-mock") == 3500);
    ChannelSink sink("discord-mock", false);
    std::string longMessage(4000, 'a');
    sink.post(longMessage);
    REQUIRE(sink.posts().size() == 1);
    CHECK(sink.posts()[0].size() == 1900);
}

TEST_CASE("stats-only sinks count without retaining") {
    ChannelSink sink("telegram-mock", true);
    sink.post("hello");
    CHECK(sink.postCount() == 1);
    CHECK(sink.posts().empty());
}

TEST_CASE("blocked samples never leak the payload to the sink") {
    RunConfig config = smallConfig("leak");
    GatedSubject subject("gated", config, false);
    ChannelSink sink("discord-mock", false);
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    for (const auto& s : generateSamples(config, prng)) {
        std::size_t before = sink.posts().size();
        Decision d = subject.mediate(requestOf(s), sink);
        REQUIRE(sink.posts().size() == before + 1);
        const std::string& posted = sink.posts().back();
        if (d.delivered) {
            CHECK(posted == s.content.substr(0, sink.clampChars()));
        } else {
            CHECK(posted.find("message blocked: ") != std::string::npos);
            CHECK(posted.find(s.content) == std::string::npos);
        }
    }
}

TEST_CASE("witness subject with a disengaged witness fails closed") {
    RunConfig config = smallConfig("failclosed");
    config.disableWitness = true;
    GatedSubject subject("gated-witness", config, true);
    CHECK(!subject.operational());
    for (const auto& d : subject.admissionDecisions()) {
        CHECK(!d.admitted);
        CHECK(d.reason == AdmissionReason::WitnessUnavailable);
    }
    ChannelSink sink("discord-mock", true);
    Mulberry32 prng = Mulberry32::fromString(config.seedString);
    for (const auto& s : generateSamples(config, prng)) {
        Decision d = subject.mediate(requestOf(s), sink);
        CHECK(!d.delivered);
        CHECK(*d.blockReason == "WitnessUnavailable");
    }
}

TEST_CASE("engaged witness signs every admission") {
    RunConfig config = smallConfig("witness");
    GatedSubject subject("gated-witness", config, true);
    CHECK(subject.operational());
    CHECK(subject.admissionDecisions().size() == config.channels.size());
    for (const auto& d : subject.admissionDecisions()) {
        CHECK(d.admitted);
        CHECK(d.witnessRecord.has_value());
    }
    CHECK(!subject.witnessPublicKeyHex().empty());
}

TEST_CASE("csv quoting round trips through the parser") {
    std::vector<std::string> fields = {"plain", "has,comma", "has\"quote", "both,\"x\"", ""};
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ",";
        line += csvQuote(fields[i]);
    }
    CHECK(csvParseLine(line) == fields);
}

TEST_CASE("runExperiment produces the artifacts and a clean verdict set") {
    RunConfig config = smallConfig("run");
    config.statsOnly = true;
    auto bundle = runExperiment(config);
    CHECK(bundle.chainsOk);
    CHECK(std::filesystem::exists(bundle.csvPath));
    CHECK(std::filesystem::exists(bundle.reportPath));
    CHECK(std::filesystem::exists(config.outDir / "audit-gated.jsonl"));
    CHECK(std::filesystem::exists(config.outDir / "audit-gated-witness.jsonl"));
    CHECK(std::filesystem::exists(config.outDir / "witness.jsonl"));
    REQUIRE(bundle.results.size() == 3);

    const auto& passthrough = bundle.results[0];
    CHECK(passthrough.aggregate.recall() == 0.0);
    CHECK(passthrough.aggregate.fp == 0);

    for (std::size_t i = 1; i < 3; ++i) {
        const auto& gated = bundle.results[i];
        CHECK(gated.aggregate.precision() == 1.0);
        CHECK(gated.aggregate.recall() == 1.0);
        CHECK(gated.aggregate.fp == 0);
        CHECK(gated.cells.size() == 8);
    }

    // CSV digest footer matches the recomputed digest of the body.
    std::ifstream in(bundle.csvPath, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto marker = text.rfind("# content_digest=");
    REQUIRE(marker != std::string::npos);
    CHECK(toHex(sha256(text.substr(0, marker))) == bundle.csvDigest);
}

TEST_CASE("scrubbed CSV rescans clean") {
    RunConfig config = smallConfig("scrub");
    config.statsOnly = true;
    config.subjects = {"passthrough", "gated"};
    auto bundle = runExperiment(config);
    DlpCatalog widened = widenCatalog(DlpCatalog::strict());
    auto scrubbed = scrubCsv(bundle.csvPath, widened);
    std::ifstream in(scrubbed);
    std::string line;
    bool sawRedaction = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (const auto& f : dlpScan(line, widened)) {
            CHECK(f.severity < Severity::High);
        }
        if (line.find("[REDACTED:") != std::string::npos) sawRedaction = true;
    }
    CHECK(sawRedaction);
}
