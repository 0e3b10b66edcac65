#include "clawgate/audit.hpp"

#include "clawgate/prng.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace clawgate;

static Json payload(const char* cap, const char* target, bool ok) {
    return Json{{"cap", cap}, {"target", target}, {"ok", ok}};
}

TEST_CASE("empty chain verifies ok") {
    AuditChain chain;
    CHECK(!chain.verify().has_value());
    CHECK(chain.headHash() == AuditChain::genesis());
}

TEST_CASE("first record links to genesis") {
    AuditChain chain;
    const auto& rec = chain.append(AuditChain::kIrreversibleExecuted, payload("publish", "chA", true));
    CHECK(rec.seq == 0);
    CHECK(rec.prevHash == AuditChain::genesis());
    CHECK(!chain.verify().has_value());
}

TEST_CASE("second record links to first") {
    AuditChain chain;
    chain.append(AuditChain::kGateDecision, payload("pay", "x", true));
    const auto& second = chain.append(AuditChain::kGateDecision, payload("pay", "y", true));
    CHECK(second.seq == 1);
    CHECK(second.prevHash == chain.records()[0].hash);
}

TEST_CASE("1000 random appends verify ok") {
    AuditChain chain;
    Mulberry32 prng(7);
    for (int i = 0; i < 1000; ++i) {
        Json p{{"cap", "publish"},
               {"target", "t" + std::to_string(prng.nextUint32() % 50)},
               {"ok", prng.next() < 0.5}};
        chain.append(AuditChain::kIrreversibleExecuted, std::move(p));
    }
    CHECK(!chain.verify().has_value());
}

TEST_CASE("flipping a stored payload flag is detected at its index") {
    AuditChain chain;
    for (int i = 0; i < 3; ++i) {
        chain.append(AuditChain::kIrreversibleExecuted, payload("publish", "chA", true));
    }
    chain.recordForTamper(1).payload["ok"] = false;
    auto bad = chain.verify();
    REQUIRE(bad.has_value());
    CHECK(*bad == 1);
}

TEST_CASE("splicing a record out breaks the chain at the splice point") {
    AuditChain chain;
    AuditChain rebuilt;
    for (int i = 0; i < 3; ++i) {
        chain.append(AuditChain::kIrreversibleExecuted, payload("publish", ("ch" + std::to_string(i)).c_str(), true));
    }
    // Rebuild with record 1 removed but original hashes kept.
    rebuilt.append(AuditChain::kIrreversibleExecuted, payload("publish", "ch0", true));
    rebuilt.append(AuditChain::kIrreversibleExecuted, payload("publish", "ch2", true));
    rebuilt.recordForTamper(1) = chain.records()[2];
    rebuilt.recordForTamper(1).seq = 1;
    auto bad = rebuilt.verify();
    REQUIRE(bad.has_value());
    CHECK(*bad == 1);
}

TEST_CASE("projectS keeps only successful irreversible executions") {
    AuditChain chain;
    chain.append(AuditChain::kIrreversibleExecuted, payload("publish", "chA", true));
    chain.append(AuditChain::kIrreversibleExecuted, payload("publish", "chB", false));
    chain.append(AuditChain::kGateDecision, payload("pay", "x", true));
    KeyedMultiset s = chain.projectS();
    CHECK(s.keyCount() == 1);
    CHECK(s.count("publish", "chA") == 1);
}

TEST_CASE("projectS on an empty chain is empty") {
    AuditChain chain;
    CHECK(chain.projectS().empty());
}

TEST_CASE("projectS counts duplicate keys as a multiset") {
    AuditChain chain;
    chain.append(AuditChain::kIrreversibleExecuted, payload("publish", "chA", true));
    chain.append(AuditChain::kIrreversibleExecuted, payload("publish", "chA", true));
    CHECK(chain.projectS().count("publish", "chA") == 2);
}

TEST_CASE("projectS with a probe tag is a sub-multiset of the untagged projection") {
    AuditChain chain;
    for (int i = 0; i < 20; ++i) {
        Json p = payload("publish", "chA", i % 3 != 0);
        if (i % 2 == 0) p["probeTag"] = "probe-" + std::to_string(i % 4);
        chain.append(AuditChain::kIrreversibleExecuted, std::move(p));
    }
    KeyedMultiset all = chain.projectS();
    for (const char* tag : {"probe-0", "probe-1", "probe-2", "probe-3"}) {
        KeyedMultiset tagged = chain.projectS(std::string(tag));
        for (const auto& [key, count] : tagged.entries()) {
            CHECK(count <= all.count(key.first, key.second));
        }
    }
}

TEST_CASE("projectS is pure") {
    AuditChain chain;
    chain.append(AuditChain::kIrreversibleExecuted, payload("publish", "chA", true));
    CHECK(chain.projectS() == chain.projectS());
}

TEST_CASE("journal file mirrors appends one line per record") {
    auto path = std::filesystem::temp_directory_path() / "clawgate-test-journal.jsonl";
    {
        AuditChain chain(path);
        chain.append(AuditChain::kGateDecision, payload("pay", "x", true));
        chain.append(AuditChain::kGateDecision, payload("pay", "y", false));
    }
    std::ifstream in(path);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        Json parsed = Json::parse(line);
        CHECK(parsed.contains("hash"));
        CHECK(parsed.contains("prevHash"));
        CHECK(parsed.contains("seq"));
    }
    CHECK(lines == 2);
    std::filesystem::remove(path);
}
