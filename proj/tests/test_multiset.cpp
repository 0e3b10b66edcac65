#include "clawgate/multiset.hpp"

#include "clawgate/prng.hpp"

#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

using namespace clawgate;

namespace {

// Independent oracle: expand multisets to element lists, subtract, recount.
KeyedMultiset bruteDiff(const KeyedMultiset& a, const KeyedMultiset& b) {
    std::vector<KeyedMultiset::Key> ea, eb;
    for (const auto& [key, count] : a.entries()) {
        for (std::int64_t i = 0; i < count; ++i) ea.push_back(key);
    }
    for (const auto& [key, count] : b.entries()) {
        for (std::int64_t i = 0; i < count; ++i) eb.push_back(key);
    }
    for (const auto& k : eb) {
        auto it = std::find(ea.begin(), ea.end(), k);
        if (it != ea.end()) ea.erase(it);
    }
    KeyedMultiset out;
    for (const auto& k : ea) out.add(k.first, k.second);
    return out;
}

KeyedMultiset randomMultiset(Mulberry32& prng) {
    KeyedMultiset m;
    std::size_t keys = prng.uniformIndex(9);  // up to 8 keys
    for (std::size_t i = 0; i < keys; ++i) {
        std::string cap = "cap" + std::to_string(prng.uniformIndex(4));
        std::string target = "t" + std::to_string(prng.uniformIndex(5));
        m.add(cap, target, 1 + static_cast<std::int64_t>(prng.uniformIndex(5)));
    }
    return m;
}

}  // namespace

TEST_CASE("diff of equal multisets is empty") {
    KeyedMultiset a;
    a.add("publish", "chA", 2);
    CHECK(multisetDiff(a, a).empty());
}

TEST_CASE("diff subtracts per key and drops zero counts") {
    KeyedMultiset a, b;
    a.add("publish", "chA", 2);
    b.add("publish", "chA", 1);
    KeyedMultiset d = multisetDiff(a, b);
    CHECK(d.count("publish", "chA") == 1);
    CHECK(multisetDiff(b, a).empty());
}

TEST_CASE("diff matches the element-expansion oracle on random inputs") {
    Mulberry32 prng(42);
    for (int i = 0; i < 500; ++i) {
        KeyedMultiset a = randomMultiset(prng);
        KeyedMultiset b = randomMultiset(prng);
        CHECK(multisetDiff(a, b) == bruteDiff(a, b));
    }
}

TEST_CASE("zero and negative counts are rejected") {
    KeyedMultiset m;
    CHECK_THROWS_AS(m.add("publish", "chA", 0), std::invalid_argument);
    CHECK_THROWS_AS(m.add("publish", "chA", -2), std::invalid_argument);
    CHECK(m.empty());
}

TEST_CASE("counts saturate at the configured bound") {
    KeyedMultiset m;
    m.add("publish", "chA", KeyedMultiset::kMaxCount);
    CHECK_THROWS_AS(m.add("publish", "chA", 1), std::overflow_error);
}

TEST_CASE("equal multisets are Ok") {
    KeyedMultiset m;
    m.add("pay", "acct9");
    auto v = checkBiconditional(m, m);
    CHECK(v.kind == VerdictKind::Ok);
    CHECK(v.dMinusS.empty());
    CHECK(v.sMinusD.empty());
}

TEST_CASE("delta with no audit record is a bypass") {
    KeyedMultiset d;
    d.add("publish", "chA");
    auto v = checkBiconditional(d, KeyedMultiset{});
    CHECK(v.kind == VerdictKind::F1Bypass);
    CHECK(v.dMinusS.count("publish", "chA") == 1);
    CHECK(v.sMinusD.empty());
}

TEST_CASE("audit record with no delta is a forgery") {
    KeyedMultiset s;
    s.add("pay", "x");
    auto v = checkBiconditional(KeyedMultiset{}, s);
    CHECK(v.kind == VerdictKind::F2Forgery);
    CHECK(v.sMinusD.count("pay", "x") == 1);
}

TEST_CASE("mismatched targets populate both diffs") {
    KeyedMultiset d, s;
    d.add("publish", "chB");
    s.add("publish", "chA");
    auto v = checkBiconditional(d, s);
    CHECK(v.kind == VerdictKind::F4WrongTarget);
    CHECK(!v.dMinusS.empty());
    CHECK(!v.sMinusD.empty());
}

TEST_CASE("swapping arguments swaps bypass and forgery") {
    Mulberry32 prng(17);
    for (int i = 0; i < 200; ++i) {
        KeyedMultiset d = randomMultiset(prng);
        KeyedMultiset s = randomMultiset(prng);
        auto fwd = checkBiconditional(d, s);
        auto rev = checkBiconditional(s, d);
        if (fwd.kind == VerdictKind::F1Bypass) CHECK(rev.kind == VerdictKind::F2Forgery);
        if (fwd.kind == VerdictKind::F2Forgery) CHECK(rev.kind == VerdictKind::F1Bypass);
        CHECK(fwd.dMinusS == rev.sMinusD);
        CHECK(fwd.sMinusD == rev.dMinusS);
    }
}

TEST_CASE("verdict names match the reporting tokens") {
    CHECK(std::string(verdictName(VerdictKind::Ok)) == "ok");
    CHECK(std::string(verdictName(VerdictKind::F1Bypass)) == "f1Bypass");
    CHECK(std::string(verdictName(VerdictKind::F2Forgery)) == "f2Forgery");
    CHECK(std::string(verdictName(VerdictKind::F4WrongTarget)) == "f4WrongTarget");
}

TEST_CASE("target canonicalization lowercases URL scheme and host only") {
    CHECK(canonicalTarget("HTTPS://Example.ORG/Path") == "https://example.org/Path");
    CHECK(canonicalTarget("https://example.org/a") == "https://example.org/a");
}

TEST_CASE("target canonicalization normalizes paths") {
    CHECK(canonicalTarget("/tmp/a/../b") == "/tmp/b");
    CHECK(canonicalTarget("/tmp/./x") == "/tmp/x");
}

TEST_CASE("channel identifiers pass through verbatim") {
    CHECK(canonicalTarget("channel:Discord-Mock") == "channel:Discord-Mock");
    CHECK(canonicalTarget("chA") == "chA");
}
